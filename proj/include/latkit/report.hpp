#pragma once

// Serializable analysis document: everything `latkit analyze` prints, in
// label space, with stable key order so JSON output is byte-reproducible.

#include <algorithm>
#include <array>
#include <cctype>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latkit/audit.hpp"
#include "latkit/canonical.hpp"
#include "latkit/classes.hpp"
#include "latkit/error.hpp"
#include "latkit/ideals.hpp"
#include "latkit/lattice.hpp"
#include "latkit/polars.hpp"
#include "latkit/properties.hpp"

NLOHMANN_JSON_NAMESPACE_BEGIN
template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) {
      j = *v;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) {
      v.reset();
    } else {
      v = j.get<T>();
    }
  }
};
NLOHMANN_JSON_NAMESPACE_END

namespace latkit {

using Labels = std::vector<std::string>;
using LabelFamily = std::vector<Labels>;

struct LatticeEcho {
  std::string name;
  std::size_t size = 0;
  Labels elements;
  std::vector<std::array<std::string, 2>> covers;
  std::string bottom;
  std::string top;
  std::string canonical_form;
  friend bool operator==(const LatticeEcho&, const LatticeEcho&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LatticeEcho, name, size, elements, covers, bottom, top, canonical_form)

struct DistributivitySection {
  bool distributive = false;
  std::optional<std::array<std::string, 3>> counterexample;
  friend bool operator==(const DistributivitySection&, const DistributivitySection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DistributivitySection, distributive, counterexample)

struct WitnessEntry {
  std::string a, b, abar, bbar;
  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(WitnessEntry, a, b, abar, bbar)

struct DecomposabilitySection {
  bool decomposable = false;
  std::string reason;
  std::vector<WitnessEntry> witnesses;
  std::optional<std::array<std::string, 2>> counterexample;
  friend bool operator==(const DecomposabilitySection&, const DecomposabilitySection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DecomposabilitySection, decomposable, reason, witnesses, counterexample)

struct IdealCensus {
  std::size_t count = 0;
  LabelFamily ideals;
  LabelFamily primes;
  LabelFamily minimal_primes;
  friend bool operator==(const IdealCensus&, const IdealCensus&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IdealCensus, count, ideals, primes, minimal_primes)

struct ElementValueEntry {
  std::string element;
  std::size_t count = 0;
  LabelFamily values;
  friend bool operator==(const ElementValueEntry&, const ElementValueEntry&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ElementValueEntry, element, count, values)

struct MStarEntry {
  Labels value;
  Labels m_star;
  friend bool operator==(const MStarEntry&, const MStarEntry&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MStarEntry, value, m_star)

struct ValuesSection {
  std::vector<ElementValueEntry> per_element;
  LabelFamily all_values;
  LabelFamily special_values;
  Labels specials;
  LabelFamily essential_values;
  Labels radical;
  bool radical_of_empty_family = false;
  std::vector<MStarEntry> m_star;
  friend bool operator==(const ValuesSection&, const ValuesSection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ValuesSection, per_element, all_values, special_values, specials, essential_values,
                                   radical, radical_of_empty_family, m_star)

struct PolarsSection {
  LabelFamily polars;
  LabelFamily minimal_polars;
  LabelFamily maximal_polars;
  Labels atoms;
  Labels basic_elements;
  std::optional<Labels> basis;
  bool is_discrete = false;
  friend bool operator==(const PolarsSection&, const PolarsSection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PolarsSection, polars, minimal_polars, maximal_polars, atoms, basic_elements, basis,
                                   is_discrete)

struct UltrafilterEntry {
  Labels members;
  std::optional<std::string> principal_generator;
  friend bool operator==(const UltrafilterEntry&, const UltrafilterEntry&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(UltrafilterEntry, members, principal_generator)

struct ProjectabilitySection {
  bool projectable = false;
  std::optional<std::string> counterexample;
  friend bool operator==(const ProjectabilitySection&, const ProjectabilitySection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ProjectabilitySection, projectable, counterexample)

struct ClassEntry {
  bool member = false;
  bool finite_degenerate = false;
  std::string evidence;
  friend bool operator==(const ClassEntry&, const ClassEntry&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassEntry, member, finite_degenerate, evidence)

struct ClassesSection {
  bool vacuous = false;
  bool a = false;
  std::optional<Labels> non_minimal_prime;
  bool b = false;
  std::size_t most_minimal_primes_under_a_prime = 0;
  std::optional<Labels> b_witness_prime;
  bool b_omega = false;
  std::size_t minimal_prime_count = 0;
  ClassEntry c, c_omega, d, e, f, f_v, s, s_omega;
  std::optional<Labels> basis;
  bool t = false;
  std::optional<std::string> non_projectable;
  bool consistent = false;
  std::optional<std::array<std::string, 2>> inconsistent_pair;
  friend bool operator==(const ClassesSection&, const ClassesSection&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassesSection, vacuous, a, non_minimal_prime, b, most_minimal_primes_under_a_prime,
                                   b_witness_prime, b_omega, minimal_prime_count, c, c_omega, d, e, f, f_v, s, s_omega,
                                   basis, t, non_projectable, consistent, inconsistent_pair)

struct AnalysisDocument {
  LatticeEcho lattice;
  DistributivitySection distributivity;
  DecomposabilitySection decomposability;
  IdealCensus ideals;
  std::optional<ValuesSection> values;
  std::optional<PolarsSection> polars;
  std::optional<std::vector<UltrafilterEntry>> ultrafilters;
  ProjectabilitySection projectability;
  std::optional<ClassesSection> classes;
  std::optional<std::vector<AuditReport>> audits;
  friend bool operator==(const AnalysisDocument&, const AnalysisDocument&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AnalysisDocument, lattice, distributivity, decomposability, ideals, values, polars,
                                   ultrafilters, projectability, classes, audits)

namespace detail {

inline LabelFamily label_family(const FiniteLattice& l, const std::vector<Mask>& family) {
  LabelFamily out;
  for (Mask m : family) out.push_back(label_list(l, m));
  return out;
}

inline ClassEntry class_entry(const ClassVerdict& v) { return {v.member, v.finite_degenerate, v.evidence}; }

}  // namespace detail

/// Builds the full document. Polars need a distributive lattice, classes a
/// decomposable one; those sections are null otherwise. Audits are attached
/// only when `audit_ids` is non-null (empty means the whole registry).
inline AnalysisDocument analyze(const FiniteLattice& l, const std::vector<std::string>* audit_ids = nullptr) {
  AnalysisDocument doc;
  doc.lattice.name = l.name();
  doc.lattice.size = l.size();
  doc.lattice.elements = l.labels();
  for (const auto& [lo, hi] : l.covers()) doc.lattice.covers.push_back({l.label(lo), l.label(hi)});
  doc.lattice.bottom = l.label(l.bottom());
  doc.lattice.top = l.label(l.top());
  doc.lattice.canonical_form = to_hex(canonical_form(l));

  const auto dist = is_distributive(l);
  doc.distributivity.distributive = dist.distributive;
  if (dist.counterexample) {
    const auto& [x, y, z] = *dist.counterexample;
    doc.distributivity.counterexample = std::array<std::string, 3>{l.label(x), l.label(y), l.label(z)};
  }

  const auto dec = is_decomposable(l);
  doc.decomposability.decomposable = dec.decomposable;
  doc.decomposability.reason = dec.reason;
  for (const auto& w : dec.witnesses) {
    doc.decomposability.witnesses.push_back({l.label(w.a), l.label(w.b), l.label(w.abar), l.label(w.bbar)});
  }
  if (dec.counterexample) {
    doc.decomposability.counterexample =
        std::array<std::string, 2>{l.label((*dec.counterexample)[0]), l.label((*dec.counterexample)[1])};
  }

  const auto ideals = ideal_masks(l);
  const auto primes = enumerate_primes(l, ideals);
  doc.ideals.count = ideals.size();
  doc.ideals.ideals = detail::label_family(l, ideals);
  doc.ideals.primes = detail::label_family(l, primes);
  doc.ideals.minimal_primes = detail::label_family(l, minimal_primes(primes));

  if (l.size() >= 2) {
    const auto vr = value_spectrum(l, ideals);
    ValuesSection vs;
    for (const auto& ev : vr.per_element) {
      vs.per_element.push_back({l.label(ev.element), ev.count(), detail::label_family(l, ev.values)});
    }
    vs.all_values = detail::label_family(l, vr.all_values);
    vs.special_values = detail::label_family(l, vr.special_values);
    vs.specials = label_list(l, vr.specials);
    vs.essential_values = detail::label_family(l, vr.essential_values);
    vs.radical = label_list(l, vr.radical);
    vs.radical_of_empty_family = vr.radical_of_empty_family;
    for (const auto& [m, star] : vr.m_star) vs.m_star.push_back({label_list(l, m), label_list(l, star)});
    doc.values = std::move(vs);

    std::vector<UltrafilterEntry> ufs;
    for (const auto& u : enumerate_ultrafilters(l)) {
      UltrafilterEntry e{label_list(l, u.members), std::nullopt};
      if (u.principal_generator) e.principal_generator = l.label(*u.principal_generator);
      ufs.push_back(std::move(e));
    }
    doc.ultrafilters = std::move(ufs);
  }

  if (dist.distributive) {
    const auto pr = enumerate_polars(l);
    PolarsSection ps;
    ps.polars = detail::label_family(l, pr.polars);
    ps.minimal_polars = detail::label_family(l, pr.minimal_polars);
    ps.maximal_polars = detail::label_family(l, pr.maximal_polars);
    ps.atoms = label_list(l, pr.atoms);
    ps.basic_elements = label_list(l, pr.basic_elements);
    if (pr.basis) ps.basis = label_list(l, *pr.basis);
    ps.is_discrete = pr.is_discrete;
    doc.polars = std::move(ps);
  }

  const auto proj = is_projectable(l);
  doc.projectability.projectable = proj.projectable;
  if (proj.counterexample) doc.projectability.counterexample = l.label(*proj.counterexample);

  if (dec.decomposable) {
    const auto cr = classify(l);
    ClassesSection cs;
    cs.vacuous = cr.vacuous;
    cs.a = cr.a;
    if (cr.non_minimal_prime) cs.non_minimal_prime = label_list(l, *cr.non_minimal_prime);
    cs.b = cr.b.member;
    cs.most_minimal_primes_under_a_prime = cr.b.most_minimal_primes;
    if (cr.b.witness_prime) cs.b_witness_prime = label_list(l, *cr.b.witness_prime);
    cs.b_omega = cr.b_omega;
    cs.minimal_prime_count = cr.minimal_prime_count;
    cs.c = detail::class_entry(cr.c);
    cs.c_omega = detail::class_entry(cr.c_omega);
    cs.d = detail::class_entry(cr.d);
    cs.e = detail::class_entry(cr.e);
    cs.f = detail::class_entry(cr.f);
    cs.f_v = detail::class_entry(cr.f_v);
    cs.s = detail::class_entry(cr.s);
    cs.s_omega = detail::class_entry(cr.s_omega);
    if (cr.basis) cs.basis = label_list(l, *cr.basis);
    cs.t = cr.t;
    if (cr.non_projectable) cs.non_projectable = l.label(*cr.non_projectable);
    cs.consistent = cr.vacuous || cr.consistency.consistent;
    if (cr.consistency.counterexample) {
      const auto& [x, y] = *cr.consistency.counterexample;
      cs.inconsistent_pair = std::array<std::string, 2>{l.label(x), l.label(y)};
    }
    doc.classes = std::move(cs);
  }

  if (audit_ids) doc.audits = audit_all(l, *audit_ids);
  return doc;
}

inline std::string to_json_text(const AnalysisDocument& doc) { return nlohmann::json(doc).dump(2) + "\n"; }

inline AnalysisDocument document_from_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text).get<AnalysisDocument>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed analysis document: ") + e.what());
  }
}

// Text form: one `path = value` line per JSON leaf, values in JSON syntax.
// Empty containers appear as `[]` or `{}` so the tree can be rebuilt exactly.

namespace detail {

inline bool plain_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

inline void flatten_into(const nlohmann::json& j, const std::string& path, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) {
      const std::string step = plain_key(k) ? (path.empty() ? k : path + "." + k) : path + "[" + nlohmann::json(k).dump() + "]";
      flatten_into(v, step, out);
    }
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out += path + " = " + j.dump() + "\n";
  }
}

}  // namespace detail

inline std::string flatten_json(const nlohmann::json& j) {
  std::string out;
  detail::flatten_into(j, "", out);
  return out;
}

inline nlohmann::json unflatten_json(std::string_view text) {
  nlohmann::json root;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw Error(ErrorKind::Syntax, "text report line lacks ' = ': " + line);
    const std::string path = line.substr(0, eq);
    nlohmann::json value = nlohmann::json::parse(line.substr(eq + 3));
    nlohmann::json* node = &root;
    std::size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '.') {
        ++i;
        continue;
      }
      if (path[i] == '[') {
        if (path[i + 1] == '"') {
          // Quoted key: parse the JSON string literal up to the closing bracket.
          std::size_t j = i + 2;
          while (j < path.size() && !(path[j] == '"' && path[j - 1] != '\\')) ++j;
          const auto key = nlohmann::json::parse(path.substr(i + 1, j - i)).get<std::string>();
          node = &(*node)[key];
          i = j + 2;
        } else {
          const auto close = path.find(']', i);
          node = &(*node)[std::stoul(path.substr(i + 1, close - i - 1))];
          i = close + 1;
        }
        continue;
      }
      std::size_t j = i;
      while (j < path.size() && path[j] != '.' && path[j] != '[') ++j;
      node = &(*node)[path.substr(i, j - i)];
      i = j;
    }
    *node = std::move(value);
  }
  return root;
}

inline std::string to_text(const AnalysisDocument& doc) { return flatten_json(nlohmann::json(doc)); }

inline AnalysisDocument document_from_text(std::string_view text) {
  try {
    return unflatten_json(text).get<AnalysisDocument>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed text report: ") + e.what());
  }
}

/// Fixed-width table of a corpus sweep.
inline std::string corpus_table(const CorpusReport& r) {
  std::ostringstream out;
  out << "lattices " << r.lattices << ", audited " << r.audited << ", skipped (not decomposable) "
      << r.skipped_nondecomposable << "\n\n";
  out << std::left << std::setw(8) << "theorem" << std::right << std::setw(8) << "holds" << std::setw(8) << "fails"
      << std::setw(9) << "vacuous" << std::setw(12) << "degenerate" << "\n";
  for (const auto& t : r.tallies) {
    out << std::left << std::setw(8) << t.theorem << std::right << std::setw(8) << t.holds << std::setw(8) << t.fails
        << std::setw(9) << t.vacuous << std::setw(12) << t.degenerate << "\n";
  }
  if (!r.failures.empty()) {
    out << "\nfailures\n";
    for (const auto& f : r.failures) {
      out << "  " << f.theorem << "  " << f.lattice << "  " << f.canonical_form << "  " << f.witness.dump() << "\n";
    }
  }
  return out.str();
}

}  // namespace latkit
