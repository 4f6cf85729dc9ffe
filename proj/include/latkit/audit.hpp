#pragma once

// Extensional audits of the decomposable-lattice theorems on one finite
// lattice. Every condition of a statement is evaluated separately from the
// primitive enumerations (ideals, primes, values, polars, filters); none of
// them asks the classifier in classes.hpp for a verdict.

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latkit/bits.hpp"
#include "latkit/canonical.hpp"
#include "latkit/error.hpp"
#include "latkit/gen.hpp"
#include "latkit/ideals.hpp"
#include "latkit/lattice.hpp"
#include "latkit/polars.hpp"
#include "latkit/properties.hpp"

namespace latkit {

enum class Verdict { Holds, Fails, Vacuous, Degenerate };

NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {
                                          {Verdict::Holds, "holds"},
                                          {Verdict::Fails, "fails"},
                                          {Verdict::Vacuous, "vacuous"},
                                          {Verdict::Degenerate, "degenerate"},
                                      })

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

struct Condition {
  std::string id;
  std::string statement;
  bool value = false;
  /// Quantifies over an empty family, so the value is true by default.
  bool vacuous = false;
  /// True only because the carrier is finite.
  bool forced = false;
  std::string detail;
  friend bool operator==(const Condition&, const Condition&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Condition, id, statement, value, vacuous, forced, detail)

/// One instantiation of a statement: a particular ideal, prime, n, basis...
struct Evaluation {
  std::string subject;
  std::vector<Condition> conditions;
  bool vacuous = false;
  nlohmann::json detail = nlohmann::json::object();
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Evaluation, subject, conditions, vacuous, detail)

struct AuditReport {
  std::string theorem_id;
  std::string title;
  Verdict verdict = Verdict::Vacuous;
  std::vector<Evaluation> evaluations;
  nlohmann::json witness;  // null unless verdict is Fails
  std::string note;
  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AuditReport, theorem_id, title, verdict, evaluations, witness, note)

/// Primitive data shared by all audits of one lattice. Fields are public so
/// tests can perturb a single input and watch the affected audit disagree.
struct AuditContext {
  const FiniteLattice* lattice = nullptr;
  std::vector<Mask> ideals;
  std::vector<Mask> primes;
  std::vector<Mask> minimal_primes;
  std::vector<std::vector<Mask>> values;  // indexed by element, empty for the bottom
  std::vector<Mask> value_set;            // V(L)
  std::vector<Mask> special_values;       // S(L)
  std::vector<Mask> essential_values;     // E(L)
  Mask radical = 0;
  std::vector<Mask> perp;  // x⊥ for every element
  std::vector<Mask> polars;
  std::vector<Mask> minimal_polars;
  std::vector<Mask> maximal_polars;
  Mask atoms = 0;
  Mask basics = 0;
  std::vector<Mask> ultrafilters;

  static AuditContext build(const FiniteLattice& lattice) {
    AuditContext ctx;
    ctx.lattice = &lattice;
    ctx.ideals = ideal_masks(lattice);
    ctx.primes = enumerate_primes(lattice, ctx.ideals);
    ctx.minimal_primes = latkit::minimal_primes(ctx.primes);
    ctx.values.assign(lattice.size(), {});
    if (lattice.size() >= 2) {
      const auto spectrum = value_spectrum(lattice, ctx.ideals);
      for (const auto& ev : spectrum.per_element) ctx.values[ev.element] = ev.values;
      ctx.value_set = spectrum.all_values;
      ctx.special_values = spectrum.special_values;
      ctx.essential_values = spectrum.essential_values;
      ctx.radical = spectrum.radical;
      for (Mask u : maximal_members(filter_masks(lattice))) ctx.ultrafilters.push_back(u);
    }
    for (Elem x = 0; x < lattice.size(); ++x) ctx.perp.push_back(element_polar(lattice, x));
    const auto pr = enumerate_polars(lattice);
    ctx.polars = pr.polars;
    ctx.minimal_polars = pr.minimal_polars;
    ctx.maximal_polars = pr.maximal_polars;
    ctx.atoms = pr.atoms;
    ctx.basics = pr.basic_elements;
    return ctx;
  }
};

/// Registry order used by audit_all and the corpus sweep.
inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"L3.1", "L3.2", "T3.3", "C3.4", "L4.1", "L4.2", "T4.3",
                                               "C4.4", "C4.5", "L4.6", "T4.7", "C4.8", "T5.1", "T5.2",
                                               "L6.1", "T6.2", "L7.1", "T7.2", "T7.3", "T7.5"};
  return ids;
}

inline bool is_theorem_id(std::string_view id) {
  const auto& ids = theorem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace audit_detail {

enum class Shape {
  Identity,                 // every condition must be true
  Equivalence,              // conditions agree within each evaluation
  Implication,              // first condition implies the rest
  ConditionalEquivalence,   // first condition implies the rest agree
  Forced,                   // every condition true, forced by finiteness
  ConditionalForced,        // first condition implies the rest, all forced
};

inline bool contains(const std::vector<Mask>& family, Mask m) {
  return std::find(family.begin(), family.end(), m) != family.end();
}

class Auditor {
 public:
  explicit Auditor(const AuditContext& ctx) : ctx_(ctx), l_(*ctx.lattice) {}

  nlohmann::json set(Mask m) const { return label_list(l_, m); }
  std::string text(Mask m) const { return format_set(l_, m); }
  nlohmann::json family(const std::vector<Mask>& f) const {
    nlohmann::json out = nlohmann::json::array();
    for (Mask m : f) out.push_back(set(m));
    return out;
  }

  Mask zero() const { return bit(l_.bottom()); }
  Mask all() const { return l_.all(); }

  Mask join_all(const std::vector<Mask>& parts) const {
    Mask acc = zero();
    for (Mask p : parts) acc = join_ideals(l_, acc, p);
    return acc;
  }

  std::size_t minimal_under(Mask p) const {
    return static_cast<std::size_t>(std::count_if(ctx_.minimal_primes.begin(), ctx_.minimal_primes.end(),
                                                  [&](Mask m) { return subset(m, p); }));
  }

  // Calls f on every k-subset of `items` (as a vector) until f returns false.
  template <class T, class F>
  static void combinations(const std::vector<T>& items, std::size_t k, F&& f) {
    if (k > items.size()) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<T> pick(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) pick[i] = items[idx[i]];
      if (!f(pick)) return;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  static bool mutually_incomparable(const std::vector<Mask>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        if (subset(f[i], f[j]) || subset(f[j], f[i])) return false;
      }
    }
    return true;
  }

  // Every family of `size` pairwise disjoint nonzero elements (all of them if
  // size == 0), as element masks, until f returns false.
  template <class F>
  void disjoint_families(std::size_t size, F&& f) const {
    bool stop = false;
    auto grow = [&](auto&& self, Mask chosen, Mask allowed) -> void {
      if (stop) return;
      if (size != 0 && count(chosen) == size) {
        stop = !f(chosen);
        return;
      }
      if (size == 0 && chosen != 0 && !f(chosen)) {
        stop = true;
        return;
      }
      for_each_bit(allowed, [&](Elem x) {
        if (stop) return;
        Mask next = 0;
        for_each_bit(allowed & ~full_mask(x + 1), [&](Elem y) {
          if (l_.meet(x, y) == l_.bottom()) next |= bit(y);
        });
        self(self, chosen | bit(x), next);
      });
    };
    grow(grow, 0, l_.nonzero());
  }

  // Every basis: maximal disjoint set of basic elements.
  std::vector<Mask> bases() const {
    std::vector<Mask> out;
    auto grow = [&](auto&& self, Mask chosen, Mask allowed) -> void {
      if (allowed == 0) {
        if (chosen != 0 && (polar(l_, chosen) & l_.nonzero()) == 0) out.push_back(chosen);
        return;
      }
      const Elem x = lowest(allowed);
      Mask next = 0;
      for_each_bit(allowed & ~bit(x), [&](Elem y) {
        if (l_.meet(x, y) == l_.bottom()) next |= bit(y);
      });
      self(self, chosen | bit(x), next);
      self(self, chosen, allowed & ~bit(x));
    };
    grow(grow, 0, ctx_.basics);
    return out;
  }

  // A finite family descends forever iff strict inclusion has a cycle.
  static bool no_infinite_descent(const std::vector<Mask>& fam) {
    std::vector<int> state(fam.size(), 0);
    std::function<bool(std::size_t)> cyclic = [&](std::size_t i) {
      state[i] = 1;
      for (std::size_t j = 0; j < fam.size(); ++j) {
        if (!proper_subset(fam[j], fam[i])) continue;
        if (state[j] == 1) return true;
        if (state[j] == 0 && cyclic(j)) return true;
      }
      state[i] = 2;
      return false;
    };
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (state[i] == 0 && cyclic(i)) return false;
    }
    return true;
  }

  bool every_prime_minimal(Mask* witness) const {
    for (Mask p : ctx_.primes) {
      for (Mask q : ctx_.primes) {
        if (proper_subset(q, p)) {
          if (witness) *witness = p;
          return false;
        }
      }
    }
    return true;
  }

  std::size_t most_minimal_under_a_prime() const {
    std::size_t most = 0;
    for (Mask p : ctx_.primes) most = std::max(most, minimal_under(p));
    return most;
  }

  Condition finitely_many_values() const {
    std::size_t most = 0;
    for (const auto& v : ctx_.values) most = std::max(most, v.size());
    return {"Fv", "every nonzero element has finitely many values", true, false, true,
            "largest value count " + std::to_string(most)};
  }

  Condition finite_disjoint_families() const {
    std::size_t largest = 0;
    std::size_t families = 0;
    disjoint_families(0, [&](Mask m) {
      ++families;
      largest = std::max(largest, count(m));
      return true;
    });
    return {"F", "every disjoint subset with an upper bound is finite", true, false, true,
            std::to_string(families) + " disjoint families, largest has " + std::to_string(largest)};
  }

  Condition bounded_minimal_primes() const {
    return {"Bw", "every prime contains finitely many minimal primes", true, false, true,
            "at most " + std::to_string(most_minimal_under_a_prime()) + " under one prime"};
  }

  bool minspe_in_polars() const {
    return std::all_of(ctx_.minimal_primes.begin(), ctx_.minimal_primes.end(),
                       [&](Mask m) { return contains(ctx_.polars, m); });
  }

  bool special(Elem x) const { return ctx_.values[x].size() == 1; }

  const AuditContext& ctx_;
  const FiniteLattice& l_;
};

inline nlohmann::json condition_map(const Evaluation& e) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& c : e.conditions) out[c.id] = c.value;
  return out;
}

inline AuditReport finish(std::string id, std::string title, Shape shape, std::vector<Evaluation> evals) {
  AuditReport r{std::move(id), std::move(title), Verdict::Vacuous, std::move(evals), nullptr, ""};
  const Evaluation* failing = nullptr;
  bool exercised = false;
  for (const auto& e : r.evaluations) {
    bool bad = false;
    bool trivial = e.vacuous;
    const auto& c = e.conditions;
    switch (shape) {
      case Shape::Identity:
      case Shape::Forced:
        bad = std::any_of(c.begin(), c.end(), [](const Condition& x) { return !x.value; });
        break;
      case Shape::Equivalence:
        bad = std::any_of(c.begin(), c.end(), [&](const Condition& x) { return x.value != c.front().value; });
        break;
      case Shape::Implication:
      case Shape::ConditionalForced:
        trivial = trivial || !c.front().value;
        bad = c.front().value && std::any_of(c.begin() + 1, c.end(), [](const Condition& x) { return !x.value; });
        break;
      case Shape::ConditionalEquivalence:
        trivial = trivial || !c.front().value;
        bad = c.front().value &&
              std::any_of(c.begin() + 1, c.end(), [&](const Condition& x) { return x.value != c[1].value; });
        break;
    }
    if (bad && !failing) failing = &e;
    exercised = exercised || !trivial;
  }
  if (failing) {
    r.verdict = Verdict::Fails;
    r.witness = {{"subject", failing->subject}, {"conditions", condition_map(*failing)}, {"detail", failing->detail}};
  } else if (!exercised) {
    r.verdict = Verdict::Vacuous;
  } else if (shape == Shape::Forced || shape == Shape::ConditionalForced) {
    r.verdict = Verdict::Degenerate;
    r.note = "every condition is forced true by finiteness; all were still evaluated";
  } else {
    r.verdict = Verdict::Holds;
  }
  return r;
}

// ---------------------------------------------------------------------------

inline AuditReport audit_l31(const Auditor& a) {
  std::vector<Evaluation> evals;
  for (Mask p : a.ctx_.primes) {
    Mask lhs = 0;
    for_each_bit(a.all() & ~p, [&](Elem x) { lhs |= a.ctx_.perp[x]; });
    Mask rhs = a.all();
    for (Mask m : a.ctx_.minimal_primes) {
      if (subset(m, p)) rhs &= m;
    }
    Evaluation e{"P=" + a.text(p),
                 {{"identity", "union of a⊥ over a∉P equals the meet of minimal primes inside P", lhs == rhs, false,
                   false, a.text(lhs) + " vs " + a.text(rhs)}},
                 false,
                 {{"union_of_polars", a.set(lhs)}, {"meet_of_minimal_primes", a.set(rhs)}}};
    evals.push_back(std::move(e));
  }
  return finish("L3.1", "union of polars outside a prime equals the meet of the minimal primes inside it",
                Shape::Identity, std::move(evals));
}

inline AuditReport audit_l32(const Auditor& a) {
  const auto& l = a.l_;
  std::size_t configurations = 0;
  std::size_t n1_without_strict = 0;
  bool all_solved = true;
  nlohmann::json first_unsolved;
  for (std::size_t k = 1; k <= a.ctx_.primes.size(); ++k) {
    Auditor::combinations(a.ctx_.primes, k, [&](const std::vector<Mask>& qs) {
      if (!Auditor::mutually_incomparable(qs)) return true;
      Mask covered = 0;
      for (Mask q : qs) covered |= q;
      for_each_bit(l.all() & ~covered, [&](Elem top) {
        ++configurations;
        // Candidate a_i: in every other Q_j, outside Q_i, nonzero and below top.
        std::vector<Mask> candidates(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
          Mask c = l.down(top) & l.nonzero() & ~qs[i];
          for (std::size_t j = 0; j < k; ++j) {
            if (j != i) c &= qs[j];
          }
          candidates[i] = c;
        }
        auto solve = [&](bool strict) {
          std::vector<Elem> pick;
          std::function<bool(std::size_t)> go = [&](std::size_t i) {
            if (i == k) return true;
            bool found = false;
            for_each_bit(candidates[i] & (strict ? ~bit(top) : ~Mask{0}), [&](Elem x) {
              if (found) return;
              for (Elem y : pick) {
                if (l.meet(x, y) != l.bottom()) return;
              }
              pick.push_back(x);
              if (go(i + 1)) {
                found = true;
                return;
              }
              pick.pop_back();
            });
            return found;
          };
          return go(0);
        };
        const bool solved = solve(k >= 2);
        if (k == 1 && !solve(true)) ++n1_without_strict;
        if (!solved && all_solved) {
          all_solved = false;
          first_unsolved = {{"primes", a.family(qs)}, {"a", l.label(top)}};
        }
      });
      return true;
    });
  }
  Evaluation e{"all configurations",
               {{"exists", "pairwise disjoint a_i in the other primes but not Q_i, 0<a_i<=a (strict for n>=2)",
                 all_solved, configurations == 0, false,
                 std::to_string(configurations) + " configurations checked"}},
               configurations == 0,
               {{"configurations", configurations}, {"n1_without_strict_solution", n1_without_strict}}};
  if (!all_solved) e.detail["first_unsolved"] = first_unsolved;
  std::vector<Evaluation> evals{std::move(e)};
  auto r = finish("L3.2", "incomparable primes admit pairwise disjoint separating elements below any outsider",
                  Shape::Identity, std::move(evals));
  if (n1_without_strict > 0) {
    r.note = std::to_string(n1_without_strict) + " single-prime configurations admit only a_1 = a";
  }
  return r;
}

inline AuditReport audit_t33(const Auditor& a) {
  const auto& ctx = a.ctx_;
  std::vector<Evaluation> evals;
  const std::size_t top_n = std::max<std::size_t>(3, ctx.minimal_primes.size());
  for (std::size_t n = 1; n <= top_n; ++n) {
    Evaluation e{"n=" + std::to_string(n), {}, false, nlohmann::json::object()};
    const std::size_t most = a.most_minimal_under_a_prime();
    e.conditions.push_back({"1", "every prime contains at most n minimal primes", most <= n, false, false,
                            "most under one prime: " + std::to_string(most)});

    auto family_condition = [&](std::string id, std::string statement, const std::vector<Mask>& pool,
                                bool need_incomparable) {
      std::size_t tried = 0;
      bool ok = true;
      Auditor::combinations(pool, n + 1, [&](const std::vector<Mask>& pick) {
        if (need_incomparable && !Auditor::mutually_incomparable(pick)) return true;
        ++tried;
        if (a.join_all(pick) != a.all()) {
          ok = false;
          e.detail["counterexample_" + id] = a.family(pick);
          return false;
        }
        return true;
      });
      e.conditions.push_back({std::move(id), std::move(statement), ok, tried == 0, false,
                              std::to_string(tried) + " families"});
    };
    family_condition("2", "any n+1 distinct minimal primes join to L", ctx.minimal_primes, false);
    family_condition("3", "any n+1 mutually incomparable values join to L", ctx.value_set, true);
    family_condition("4", "any n+1 mutually incomparable primes join to L", ctx.primes, true);

    std::size_t tried = 0;
    bool ok = true;
    a.disjoint_families(n + 1, [&](Mask fam) {
      ++tried;
      std::vector<Mask> perps;
      for_each_bit(fam, [&](Elem x) { perps.push_back(ctx.perp[x]); });
      if (a.join_all(perps) != a.all()) {
        ok = false;
        e.detail["counterexample_5"] = a.set(fam);
        return false;
      }
      return true;
    });
    e.conditions.push_back({"5", "for any n+1 mutually disjoint elements the polars join to L", ok, tried == 0, false,
                            std::to_string(tried) + " families"});
    e.vacuous = std::all_of(e.conditions.begin() + 1, e.conditions.end(), [](const Condition& c) { return c.vacuous; });
    evals.push_back(std::move(e));
  }
  return finish("T3.3", "at most n minimal primes under each prime, via joins of n+1 primes, values or polars",
                Shape::Equivalence, std::move(evals));
}

inline AuditReport audit_c34(const Auditor& a) {
  bool hyp = true;
  nlohmann::json detail = nlohmann::json::object();
  for (Mask m : a.ctx_.minimal_primes) {
    if (join_ideals(a.l_, m, polar(a.l_, m)) != a.all()) {
      hyp = false;
      detail["minimal_prime_not_splitting"] = a.set(m);
      break;
    }
  }
  const std::size_t most = a.most_minimal_under_a_prime();
  Evaluation e{"L",
               {{"hyp", "L = M ∨ M⊥ for every minimal prime M", hyp, false, false, ""},
                {"B", "every prime contains exactly one minimal prime", most <= 1, false, false,
                 "most under one prime: " + std::to_string(most)}},
               false,
               detail};
  return finish("C3.4", "minimal primes that split L force the unique-minimal-prime property", Shape::Implication, {e});
}

inline AuditReport audit_l41(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto& l = a.l_;
  std::vector<Mask> chain_ideals;
  for (Mask i : ctx.ideals) {
    if (is_chain(l, i)) chain_ideals.push_back(i);
  }
  std::vector<Evaluation> evals;
  for (Mask ideal : ctx.ideals) {
    if (ideal == a.zero()) continue;
    const Mask ip = polar(l, ideal);
    const Mask ipp = polar(l, ip);
    bool same_polars = true;
    bool all_special = true;
    for_each_bit(ideal & l.nonzero(), [&](Elem x) {
      same_polars = same_polars && ctx.perp[x] == ip;
      all_special = all_special && a.special(x);
    });
    const bool maximal_chain = contains(chain_ideals, ipp) &&
                               std::none_of(chain_ideals.begin(), chain_ideals.end(),
                                            [&](Mask c) { return proper_subset(ipp, c); });
    Evaluation e{"I=" + a.text(ideal),
                 {{"1", "I is totally ordered", is_chain(l, ideal), false, false, ""},
                  {"2", "a⊥ = I⊥ for every 0<a∈I", same_polars, false, false, ""},
                  {"3", "I⊥ is prime", contains(ctx.primes, ip), false, false, "I⊥=" + a.text(ip)},
                  {"4", "I⊥ is a minimal prime", contains(ctx.minimal_primes, ip), false, false, ""},
                  {"5", "I⊥⊥ is a maximal totally ordered ideal", maximal_chain, false, false, "I⊥⊥=" + a.text(ipp)},
                  {"6", "I⊥⊥ is a minimal nonzero polar", contains(ctx.minimal_polars, ipp), false, false, ""},
                  {"7", "I⊥ is a maximal proper polar", contains(ctx.maximal_polars, ip), false, false, ""},
                  {"8", "every 0<a∈I is special", all_special, false, false, ""}},
                 false,
                 nlohmann::json::object()};
    evals.push_back(std::move(e));
  }
  return finish("L4.1", "totally ordered ideals and their polars", Shape::Equivalence, std::move(evals));
}

inline AuditReport audit_l42(const Auditor& a) {
  const auto& ctx = a.ctx_;
  std::vector<Evaluation> evals;
  for (Mask p : ctx.primes) {
    Mask union_outside = 0;
    for_each_bit(a.all() & ~p, [&](Elem x) { union_outside |= ctx.perp[x]; });
    bool escapes = true;
    for_each_bit(p, [&](Elem x) { escapes = escapes && !subset(ctx.perp[x], p); });
    evals.push_back(Evaluation{"P=" + a.text(p),
                               {{"1", "P is a minimal prime", contains(ctx.minimal_primes, p), false, false, ""},
                                {"2", "P = union of a⊥ over a∉P", union_outside == p, false, false, a.text(union_outside)},
                                {"3", "x⊥ ⊄ P for every x∈P", escapes, false, false, ""}},
                               false,
                               nlohmann::json::object()});
  }
  return finish("L4.2", "minimal primes via polars of outside elements", Shape::Equivalence, std::move(evals));
}

inline AuditReport audit_t43(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto& l = a.l_;
  const auto bases = a.bases();
  bool above_basic = true;
  for_each_bit(l.nonzero(), [&](Elem x) { above_basic = above_basic && (l.down(x) & ctx.basics) != 0; });

  bool atomic = true;
  std::size_t middle = 0;
  bool meets = true;
  for (Mask p : ctx.polars) {
    if (p != a.zero() && p != a.all()) {
      ++middle;
      atomic = atomic && std::any_of(ctx.minimal_polars.begin(), ctx.minimal_polars.end(),
                                     [&](Mask b) { return subset(b, p); });
    }
    if (p != a.all()) {
      Mask meet = a.all();
      for (Mask q : ctx.maximal_polars) {
        if (subset(p, q)) meet &= q;
      }
      meets = meets && meet == p;
    }
  }
  Mask all_max = a.all();
  for (Mask q : ctx.maximal_polars) all_max &= q;
  Evaluation e{"L",
               {{"1", "L has a basis", !bases.empty(), false, false, std::to_string(bases.size()) + " bases"},
                {"2", "every nonzero element exceeds a basic element", above_basic, false, false, ""},
                {"3", "P(L) is atomic", atomic, middle == 0, false, ""},
                {"4", "every proper polar is the meet of the maximal polars above it", meets, false, false, ""},
                {"5", "the maximal polars meet in 0", all_max == a.zero(), false, false, a.text(all_max)}},
               false,
               nlohmann::json::object()};
  return finish("T4.3", "existence of a basis", Shape::Equivalence, {e});
}

inline AuditReport audit_c44(const Auditor& a) {
  const auto bases = a.bases();
  Evaluation e{"L",
               {{"hyp", "every minimal prime is a polar", a.minspe_in_polars(), false, false, ""},
                {"S", "L has a basis", !bases.empty(), false, false, ""}},
               false,
               nlohmann::json::object()};
  return finish("C4.4", "minimal primes that are polars force a basis", Shape::Implication, {e});
}

inline AuditReport audit_c45(const Auditor& a) {
  const auto& ctx = a.ctx_;
  Mask special_meet = a.all();
  for (Mask m : ctx.special_values) special_meet &= m;
  Mask radical = a.all();
  for (Mask m : ctx.essential_values) radical &= m;
  Evaluation e{"L",
               {a.bounded_minimal_primes(),
                {"1", "L has a basis", !a.bases().empty(), false, false, ""},
                {"2", "the special values meet in 0", special_meet == a.zero(), ctx.special_values.empty(), false,
                 a.text(special_meet)},
                {"3", "Rad(L) = 0", radical == a.zero(), ctx.essential_values.empty(), false, a.text(radical)}},
               false,
               nlohmann::json::object()};
  return finish("C4.5", "basis, special values and the radical", Shape::ConditionalEquivalence, {e});
}

inline AuditReport audit_l46(const Auditor& a) {
  const auto& l = a.l_;
  std::vector<Evaluation> evals;
  for (Mask basis : a.bases()) {
    const auto elems = members(basis);
    std::vector<Mask> parts;
    for (Elem x : elems) parts.push_back(double_polar(l, bit(x)));
    Evaluation e{"basis=" + a.text(basis), {}, false, nlohmann::json::object()};
    const std::size_t k = elems.size();
    for (Mask delta = 0; delta < (Mask{1} << k); ++delta) {
      std::vector<Mask> in;
      std::vector<Mask> out;
      for (std::size_t i = 0; i < k; ++i) (has(delta, i) ? in : out).push_back(parts[i]);
      const Mask lhs = polar(l, a.join_all(in));
      const Mask rhs = double_polar(l, a.join_all(out));
      std::string name = "{";
      for (std::size_t i = 0; i < k; ++i) {
        if (has(delta, i)) name += (name.size() > 1 ? "," : "") + l.label(elems[i]);
      }
      name += "}";
      e.conditions.push_back({"Δ=" + name, "(join of A_i in Δ)⊥ = (join of the others)⊥⊥", lhs == rhs, false, false,
                              a.text(lhs) + " vs " + a.text(rhs)});
    }
    evals.push_back(std::move(e));
  }
  return finish("L4.6", "complementary joins of basis polars", Shape::Identity, std::move(evals));
}

inline AuditReport audit_t47(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto bases = a.bases();
  Evaluation e{"L",
               {{"1", "L has a finite basis", !bases.empty(), false, true, ""},
                {"2", "P(L) is finite", true, false, true, std::to_string(ctx.polars.size()) + " polars"},
                {"3", "P(L) satisfies DCC", Auditor::no_infinite_descent(ctx.polars), false, true, ""}},
               false,
               nlohmann::json::object()};
  return finish("T4.7", "finite basis and finiteness of the polar lattice", Shape::Forced, {e});
}

inline AuditReport audit_c48(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto& l = a.l_;
  const Mask zero = a.zero();
  std::optional<Mask> large_chain_join;
  for (Mask ideal : ctx.ideals) {
    const bool large = std::all_of(ctx.ideals.begin(), ctx.ideals.end(),
                                   [&](Mask j) { return j == zero || (ideal & j) != zero; });
    if (!large) continue;
    std::vector<Mask> chains;
    for_each_bit(ideal & ctx.basics, [&](Elem x) { chains.push_back(l.down(x)); });
    if (!chains.empty() && a.join_all(chains) == ideal) {
      large_chain_join = ideal;
      break;
    }
  }
  std::optional<Elem> unit;
  for_each_bit(l.nonzero(), [&](Elem u) {
    if (unit) return;
    bool ok = true;
    for_each_bit(l.nonzero(), [&](Elem x) { ok = ok && l.meet(u, x) != l.bottom(); });
    if (ok) unit = u;
  });
  Evaluation e{"L",
               {a.bounded_minimal_primes(),
                {"1", "L has a finite basis", !a.bases().empty(), false, false, ""},
                {"2", "some large ideal is a finite join of totally ordered principal ideals",
                 large_chain_join.has_value(), false, false, large_chain_join ? a.text(*large_chain_join) : ""},
                {"3", "L has a unit with finitely many values", unit.has_value(), false, false,
                 unit ? "u=" + l.label(*unit) + ", v(u)=" + std::to_string(ctx.values[*unit].size()) : ""}},
               false,
               nlohmann::json::object()};
  return finish("C4.8", "finite basis, large ideals and units", Shape::ConditionalEquivalence, {e});
}

inline AuditReport audit_t51(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto& l = a.l_;
  bool discrete = true;
  for_each_bit(l.nonzero(), [&](Elem x) { discrete = discrete && (l.down(x) & ctx.atoms) != 0; });
  const bool atom_outside = std::all_of(ctx.minimal_primes.begin(), ctx.minimal_primes.end(),
                                        [&](Mask m) { return (ctx.atoms & ~m) != 0; });
  const bool principal = std::all_of(ctx.ultrafilters.begin(), ctx.ultrafilters.end(), [&](Mask u) {
    const Elem g = l.meet_of(u);
    return has(u, g) && l.up(g) == u;
  });
  Evaluation e{"L",
               {{"1", "L is compact", true, false, true,
                 "every family of a " + std::to_string(l.size()) + "-element carrier is finite"},
                {"2", "L is discrete and every minimal prime is a polar", discrete && a.minspe_in_polars(), false, false,
                 ""},
                {"3", "every minimal prime misses some atom", atom_outside, false, false, ""},
                {"4", "every ultrafilter is principal", principal, ctx.ultrafilters.empty(), false,
                 std::to_string(ctx.ultrafilters.size()) + " ultrafilters"}},
               false,
               nlohmann::json::object()};
  return finish("T5.1", "compactness", Shape::Forced, {e});
}

inline AuditReport audit_t52(const Auditor& a) {
  std::size_t chain_ideals = 0;
  for (Mask i : a.ctx_.ideals) {
    if (is_chain(a.l_, i)) ++chain_ideals;
  }
  Evaluation e{"L",
               {{"hyp", "every minimal prime is a polar", a.minspe_in_polars(), false, false, ""},
                {"1", "L is countably compact", true, false, true, "countable families repeat finitely many elements"},
                {"2", "every totally ordered ideal is countably compact", true, false, true,
                 std::to_string(chain_ideals) + " totally ordered ideals, each finite"}},
               false,
               nlohmann::json::object()};
  return finish("T5.2", "countable compactness", Shape::ConditionalForced, {e});
}

inline AuditReport audit_l61(const Auditor& a) {
  const auto& ctx = a.ctx_;
  std::vector<Mask> spe = ctx.primes;
  std::vector<Mask> v = ctx.value_set;
  std::sort(spe.begin(), spe.end());
  std::sort(v.begin(), v.end());
  Evaluation e{"L",
               {{"1", "V(L) satisfies DCC", Auditor::no_infinite_descent(ctx.value_set), false, true, ""},
                {"2", "Spe(L) = V(L)", spe == v, false, false,
                 std::to_string(spe.size()) + " primes, " + std::to_string(v.size()) + " values"}},
               false,
               nlohmann::json::object()};
  return finish("L6.1", "descending chains of values", Shape::Equivalence, {e});
}

inline AuditReport audit_t62(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const bool v_dcc = Auditor::no_infinite_descent(ctx.value_set);
  const bool p_dcc = Auditor::no_infinite_descent(ctx.polars);
  Evaluation e{"L",
               {{"1", "Ide(L) satisfies DCC", Auditor::no_infinite_descent(ctx.ideals), false, true, ""},
                {"2", "V(L) and P(L) satisfy DCC", v_dcc && p_dcc, false, true, ""},
                {"3", "V(L) satisfies DCC and L has a finite basis", v_dcc && !a.bases().empty(), false, true, ""}},
               false,
               nlohmann::json::object()};
  return finish("T6.2", "descending chains of ideals", Shape::Forced, {e});
}

inline AuditReport audit_l71(const Auditor& a) {
  const auto& l = a.l_;
  std::optional<Elem> undecomposed;
  for_each_bit(l.nonzero(), [&](Elem x) {
    if (undecomposed) return;
    Mask specials = 0;
    for_each_bit(l.down(x) & l.nonzero(), [&](Elem y) {
      if (a.special(y)) specials |= bit(y);
    });
    // Search disjoint families of specials below x whose join is x.
    bool found = false;
    auto go = [&](auto&& self, Mask chosen, Elem joined, Mask allowed) -> void {
      if (found) return;
      if (chosen != 0 && joined == x) {
        found = true;
        return;
      }
      for_each_bit(allowed, [&](Elem y) {
        if (found) return;
        Mask next = 0;
        for_each_bit(allowed & ~full_mask(y + 1), [&](Elem z) {
          if (l.meet(y, z) == l.bottom()) next |= bit(z);
        });
        self(self, chosen | bit(y), l.join(joined, y), next);
      });
    };
    go(go, 0, l.bottom(), specials);
    if (!found) undecomposed = x;
  });
  Evaluation e{"L",
               {a.finitely_many_values(),
                {"2", "every nonzero element is a join of pairwise disjoint special elements", !undecomposed.has_value(),
                 false, false, undecomposed ? "fails at " + l.label(*undecomposed) : ""}},
               false,
               nlohmann::json::object()};
  e.conditions.front().id = "1";
  return finish("L7.1", "finitely many values via disjoint special decompositions", Shape::Equivalence, {e});
}

inline AuditReport audit_t72(const Auditor& a) {
  const auto& ctx = a.ctx_;
  Mask non_minimal = 0;
  const bool every_minimal = a.every_prime_minimal(&non_minimal);
  std::vector<Mask> v = ctx.value_set;
  std::vector<Mask> s = ctx.special_values;
  std::sort(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  Evaluation e{"L",
               {a.finite_disjoint_families(),
                {"A", "every prime is minimal", every_minimal, false, false,
                 every_minimal ? "" : "non-minimal prime " + a.text(non_minimal)},
                {"V=S", "every value is special", v == s, false, false, ""}},
               false,
               nlohmann::json::object()};
  if (!every_minimal) e.detail["non_minimal_prime"] = a.set(non_minimal);
  return finish("T7.2", "finite disjoint families force all primes minimal and all values special",
                Shape::Implication, {e});
}

inline AuditReport audit_t73(const Auditor& a) {
  const bool every_minimal = a.every_prime_minimal(nullptr);
  auto fv = a.finitely_many_values();
  Evaluation e{"L",
               {{"hyp", "every prime is minimal and every nonzero element has finitely many values",
                 every_minimal && fv.value, false, false, fv.detail},
                a.finite_disjoint_families()},
               false,
               nlohmann::json::object()};
  return finish("T7.3", "all primes minimal with finitely many values force finite disjoint families",
                Shape::Implication, {e});
}

inline AuditReport audit_t75(const Auditor& a) {
  const auto& ctx = a.ctx_;
  const auto& l = a.l_;
  std::optional<Elem> not_projectable;
  for (Elem x = 0; x < l.size() && !not_projectable; ++x) {
    if (join_ideals(l, polar(l, ctx.perp[x]), ctx.perp[x]) != a.all()) not_projectable = x;
  }
  std::optional<std::pair<Elem, Elem>> inconsistent;
  for_each_bit(l.nonzero(), [&](Elem x) {
    for_each_bit(l.up(x), [&](Elem y) {
      if (!inconsistent && ctx.values[x].size() > ctx.values[y].size()) inconsistent = std::pair{x, y};
    });
  });
  const std::size_t most = a.most_minimal_under_a_prime();
  auto fv = a.finitely_many_values();
  Evaluation e{"L",
               {fv,
                {"1", "L is projectable", !not_projectable, false, false,
                 not_projectable ? "fails at " + l.label(*not_projectable) : ""},
                {"2", "every prime contains exactly one minimal prime", most <= 1, false, false,
                 "most under one prime: " + std::to_string(most)},
                {"3", "L is consistent", !inconsistent, false, false,
                 inconsistent ? "v(" + l.label(inconsistent->first) + ") > v(" + l.label(inconsistent->second) + ")"
                              : ""}},
               false,
               nlohmann::json::object()};
  return finish("T7.5", "projectable, unique minimal primes and consistency", Shape::ConditionalEquivalence, {e});
}

using AuditFn = AuditReport (*)(const Auditor&);

inline AuditFn lookup(std::string_view id) {
  static const std::map<std::string, AuditFn, std::less<>> table = {
      {"L3.1", audit_l31}, {"L3.2", audit_l32}, {"T3.3", audit_t33}, {"C3.4", audit_c34}, {"L4.1", audit_l41},
      {"L4.2", audit_l42}, {"T4.3", audit_t43}, {"C4.4", audit_c44}, {"C4.5", audit_c45}, {"L4.6", audit_l46},
      {"T4.7", audit_t47}, {"C4.8", audit_c48}, {"T5.1", audit_t51}, {"T5.2", audit_t52}, {"L6.1", audit_l61},
      {"T6.2", audit_t62}, {"L7.1", audit_l71}, {"T7.2", audit_t72}, {"T7.3", audit_t73}, {"T7.5", audit_t75},
  };
  auto it = table.find(id);
  if (it == table.end()) throw Error(ErrorKind::UnknownTheorem, "unknown theorem id '" + std::string(id) + "'");
  return it->second;
}

}  // namespace audit_detail

/// Audits one statement against precomputed primitives. The caller is
/// responsible for the lattice being decomposable.
inline AuditReport audit(const AuditContext& ctx, std::string_view theorem_id) {
  const auto fn = audit_detail::lookup(theorem_id);
  if (ctx.lattice->size() == 1) {
    return AuditReport{std::string(theorem_id), "", Verdict::Vacuous, {}, nullptr,
                       "one-element lattice: no element 0<x exists"};
  }
  return fn(audit_detail::Auditor(ctx));
}

inline void require_decomposable(const FiniteLattice& lattice) {
  const auto d = is_decomposable(lattice);
  if (!d.decomposable) {
    throw Error(ErrorKind::NotDecomposable, "lattice '" + lattice.name() + "' is not decomposable: " + d.reason);
  }
}

inline AuditReport audit(const FiniteLattice& lattice, std::string_view theorem_id) {
  audit_detail::lookup(theorem_id);
  require_decomposable(lattice);
  return audit(AuditContext::build(lattice), theorem_id);
}

/// Runs the given theorems (registry order when empty) on one lattice.
inline std::vector<AuditReport> audit_all(const FiniteLattice& lattice, const std::vector<std::string>& ids = {}) {
  const auto& which = ids.empty() ? theorem_ids() : ids;
  for (const auto& id : which) audit_detail::lookup(id);
  require_decomposable(lattice);
  const auto ctx = AuditContext::build(lattice);
  std::vector<AuditReport> out;
  for (const auto& id : which) out.push_back(audit(ctx, id));
  return out;
}

struct TheoremTally {
  std::string theorem;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t vacuous = 0;
  std::size_t degenerate = 0;
  friend bool operator==(const TheoremTally&, const TheoremTally&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TheoremTally, theorem, holds, fails, vacuous, degenerate)

struct CorpusFailure {
  std::string canonical_form;
  std::string lattice;
  std::string theorem;
  nlohmann::json witness;
  friend bool operator==(const CorpusFailure&, const CorpusFailure&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CorpusFailure, canonical_form, lattice, theorem, witness)

struct CorpusReport {
  std::size_t lattices = 0;
  std::size_t audited = 0;
  std::size_t skipped_nondecomposable = 0;
  std::vector<TheoremTally> tallies;
  std::vector<CorpusFailure> failures;
  friend bool operator==(const CorpusReport&, const CorpusReport&) = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CorpusReport, lattices, audited, skipped_nondecomposable, tallies, failures)

/// Audits every decomposable lattice of the corpus, in parallel, and merges
/// results in canonical-form order. Non-decomposable members are counted and
/// skipped.
inline CorpusReport audit_corpus(const std::vector<CorpusEntry>& entries, const std::vector<std::string>& ids,
                                 std::size_t jobs = 0) {
  const auto& which = ids.empty() ? theorem_ids() : ids;
  for (const auto& id : which) audit_detail::lookup(id);

  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return entries[x].form < entries[y].form; });

  std::vector<std::vector<AuditReport>> results(entries.size());
  std::vector<bool> decomposable(entries.size(), false);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& entry = entries[i];
      decomposable[i] = entry.decomposable && is_decomposable(entry.lattice).decomposable;
      if (!decomposable[i]) continue;
      const auto ctx = AuditContext::build(entry.lattice);
      for (const auto& id : which) results[i].push_back(audit(ctx, id));
    }
  };
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(entries.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
  }

  CorpusReport report;
  report.lattices = entries.size();
  for (const auto& id : which) report.tallies.push_back(TheoremTally{id});
  for (std::size_t i : order) {
    if (!decomposable[i]) {
      ++report.skipped_nondecomposable;
      continue;
    }
    ++report.audited;
    for (std::size_t k = 0; k < results[i].size(); ++k) {
      const auto& r = results[i][k];
      auto& tally = report.tallies[k];
      switch (r.verdict) {
        case Verdict::Holds: ++tally.holds; break;
        case Verdict::Fails: ++tally.fails; break;
        case Verdict::Vacuous: ++tally.vacuous; break;
        case Verdict::Degenerate: ++tally.degenerate; break;
      }
      if (r.verdict == Verdict::Fails) {
        report.failures.push_back(CorpusFailure{to_hex(entries[i].form), entries[i].lattice.name(), r.theorem_id, r.witness});
      }
    }
  }
  return report;
}

}  // namespace latkit
