#pragma once

// Command-line front end. run_cli is the whole program minus main(), so tests
// drive it with string streams.
//
// Exit codes: 0 ok, 1 usage or cap, 2 invalid lattice, 3 not decomposable,
// 4 unexpected audit outcome.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latkit/audit.hpp"
#include "latkit/error.hpp"
#include "latkit/gen.hpp"
#include "latkit/io.hpp"
#include "latkit/query.hpp"
#include "latkit/report.hpp"

namespace latkit {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvalid = 2, kExitPrecondition = 3, kExitUnexpected = 4 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::Cycle:
    case ErrorKind::NotALattice:
    case ErrorKind::NoBottom:
      return kExitInvalid;
    case ErrorKind::NotDecomposable:
      return kExitPrecondition;
    default:
      return kExitUsage;
  }
}

/// Theorems expected to fail in a sweep. A failure is expected when an entry
/// names its theorem and either lists its canonical form or says "any".
/// Forms under must_include have to fail whenever they are in the corpus.
struct ManifestEntry {
  std::string theorem;
  bool any_lattice = false;
  std::set<std::string> lattices;
  std::vector<std::string> must_include;
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  bool expects(const std::string& theorem, const std::string& form) const {
    return std::any_of(entries.begin(), entries.end(), [&](const ManifestEntry& e) {
      return e.theorem == theorem && (e.any_lattice || e.lattices.count(form) > 0);
    });
  }
};

inline constexpr std::string_view kDefaultManifest = R"({
  "expected_failures": [
    {
      "theorem": "T7.2",
      "lattices": "any",
      "must_include": ["039b80"],
      "note": "non-Boolean decomposable lattices are in F but not in A; 039b80 is the 3-element chain"
    }
  ]
}
)";

inline Manifest parse_manifest(std::string_view text) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& e : j.at("expected_failures")) {
      ManifestEntry entry;
      entry.theorem = e.at("theorem").get<std::string>();
      if (!is_theorem_id(entry.theorem)) {
        throw Error(ErrorKind::UnknownTheorem, "manifest names unknown theorem '" + entry.theorem + "'");
      }
      const auto& lat = e.at("lattices");
      if (lat.is_string() && lat.get<std::string>() == "any") {
        entry.any_lattice = true;
      } else {
        for (const auto& f : lat) entry.lattices.insert(f.get<std::string>());
      }
      if (e.contains("must_include")) entry.must_include = e.at("must_include").get<std::vector<std::string>>();
      m.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::BadArgument, std::string("malformed manifest: ") + ex.what());
  }
  return m;
}

struct ManifestCheck {
  std::vector<CorpusFailure> unexpected;
  std::vector<std::pair<std::string, std::string>> missing;  // (theorem, canonical form)
  bool ok() const { return unexpected.empty() && missing.empty(); }
};

inline ManifestCheck check_manifest(const Manifest& manifest, const CorpusReport& report,
                                    const std::set<std::string>& audited_forms) {
  ManifestCheck out;
  std::set<std::pair<std::string, std::string>> failed;
  for (const auto& f : report.failures) {
    failed.insert({f.theorem, f.canonical_form});
    if (!manifest.expects(f.theorem, f.canonical_form)) out.unexpected.push_back(f);
  }
  for (const auto& e : manifest.entries) {
    const bool swept = std::any_of(report.tallies.begin(), report.tallies.end(),
                                   [&](const TheoremTally& t) { return t.theorem == e.theorem; });
    if (!swept) continue;
    for (const auto& form : e.must_include) {
      if (audited_forms.count(form) && !failed.count({e.theorem, form})) out.missing.push_back({e.theorem, form});
    }
  }
  return out;
}

namespace cli_detail {

inline std::vector<std::string> theorem_list(const std::string& spec) {
  if (spec.empty() || spec == "all") return {};
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    if (!is_theorem_id(id)) throw Error(ErrorKind::UnknownTheorem, "unknown theorem id '" + id + "'");
    out.push_back(id);
  }
  return out;
}

inline std::size_t element_cap() {
  const char* env = std::getenv("LATKIT_MAX_N");
  if (!env || !*env) return kMaxElements;
  const std::string text(env);
  if (text.size() > 6 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::BadArgument, "LATKIT_MAX_N must be a positive integer, got '" + text + "'");
  }
  const auto n = std::stoul(text);
  if (n == 0) throw Error(ErrorKind::BadArgument, "LATKIT_MAX_N must be positive");
  return std::min<std::size_t>(n, kMaxElements);
}

inline Manifest load_manifest(const std::string& path) {
  return parse_manifest(path.empty() ? std::string(kDefaultManifest) : read_file(path));
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::BadArgument, "cannot write '" + path + "'");
  f << text;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"latkit: finite decomposable lattice analysis", "latkit"};
  app.require_subcommand(1);

  std::string file;
  std::string expression;
  std::string theorems = "all";
  std::string audit_spec;
  std::string manifest_path;
  std::string out_path;
  std::string spec;
  std::string format = "lat";
  bool as_text = false;
  bool as_json = false;
  std::size_t max_poset = 0;
  std::size_t jobs = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "full report for one lattice");
  analyze_cmd->add_option("file", file, "lattice file (.lat or .json)")->required();
  auto* text_flag = analyze_cmd->add_flag("--text", as_text, "flattened text output");
  analyze_cmd->add_flag("--json", as_json, "JSON output (default)")->excludes(text_flag);
  analyze_cmd->add_option("--audit", audit_spec, "theorem ids, comma separated, or 'all'");

  auto* audit_cmd = app.add_subcommand("audit", "audit theorems on one lattice");
  audit_cmd->add_option("file", file, "lattice file")->required();
  audit_cmd->add_option("--theorems", theorems, "theorem ids or 'all'");
  audit_cmd->add_option("--manifest", manifest_path, "expected-failure manifest");
  audit_cmd->add_flag("--text", as_text, "flattened text output");

  auto* gen_cmd = app.add_subcommand("gen", "emit a generated lattice, or posets:N");
  gen_cmd->add_option("spec", spec, "chain:n boolean:k divisor:m product:A*B plustop:A downsets:FILE posets:N")
      ->required();
  gen_cmd->add_option("--format", format, "lat or json")->check(CLI::IsMember({"lat", "json"}));
  gen_cmd->add_option("--out", out_path, "write to a file instead of stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "audit the down-set lattices of all small posets");
  sweep_cmd->add_option("--max-poset", max_poset, "largest poset size")->required();
  sweep_cmd->add_option("--theorems", theorems, "theorem ids or 'all'");
  sweep_cmd->add_option("--out", out_path, "also write the JSON report here");
  sweep_cmd->add_option("--manifest", manifest_path, "expected-failure manifest");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  sweep_cmd->add_flag("--text", as_text, "print a table instead of JSON");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a query expression");
  eval_cmd->add_option("file", file, "lattice file")->required();
  eval_cmd->add_option("expr", expression, "expression")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::size_t cap = cli_detail::element_cap();

    if (*analyze_cmd) {
      const auto lattice = load_lattice(file, cap);
      std::vector<std::string> ids;
      const bool auditing = analyze_cmd->count("--audit") > 0;
      if (auditing) {
        ids = cli_detail::theorem_list(audit_spec);
        require_decomposable(lattice);
      }
      const auto doc = analyze(lattice, auditing ? &ids : nullptr);
      out << (as_text ? to_text(doc) : to_json_text(doc));
      return kExitOk;
    }

    if (*audit_cmd) {
      const auto lattice = load_lattice(file, cap);
      const auto ids = cli_detail::theorem_list(theorems);
      const auto manifest = cli_detail::load_manifest(manifest_path);
      const auto reports = audit_all(lattice, ids);
      const auto form = to_hex(canonical_form(lattice));
      const nlohmann::json j = reports;
      out << (as_text ? flatten_json(j) : j.dump(2) + "\n");
      int code = kExitOk;
      for (const auto& r : reports) {
        if (r.verdict == Verdict::Fails && !manifest.expects(r.theorem_id, form)) {
          err << "unexpected failure: " << r.theorem_id << " on " << lattice.name() << "\n";
          code = kExitUnexpected;
        }
      }
      return code;
    }

    if (*gen_cmd) {
      if (spec.rfind("posets:", 0) == 0) {
        const auto n = detail::parse_count(std::string_view(spec).substr(7), spec);
        std::string text;
        for (const auto& p : enumerate_posets(n)) text += (text.empty() ? "" : "\n") + emit_poset(p);
        cli_detail::write_output(text, out_path, out);
        return kExitOk;
      }
      const auto lattice = gen_named(spec, cap);
      cli_detail::write_output(emit_lattice(lattice, format == "json" ? Format::Json : Format::Lat), out_path, out);
      return kExitOk;
    }

    if (*sweep_cmd) {
      const auto ids = cli_detail::theorem_list(theorems);
      const auto manifest = cli_detail::load_manifest(manifest_path);
      const auto entries = corpus(max_poset, kMaxPosetSize, cap);
      const auto report = audit_corpus(entries, ids, jobs);
      std::set<std::string> audited;
      for (const auto& e : entries) {
        if (e.decomposable) audited.insert(to_hex(e.form));
      }
      const auto json_text = nlohmann::json(report).dump(2) + "\n";
      if (!out_path.empty()) cli_detail::write_output(json_text, out_path, out);
      out << (as_text ? corpus_table(report) : json_text);
      const auto check = check_manifest(manifest, report, audited);
      for (const auto& f : check.unexpected) {
        err << "unexpected failure: " << f.theorem << " on " << f.lattice << " (" << f.canonical_form << ")\n";
      }
      for (const auto& [theorem, form] : check.missing) {
        err << "expected failure missing: " << theorem << " on " << form << "\n";
      }
      return check.ok() ? kExitOk : kExitUnexpected;
    }

    if (*eval_cmd) {
      const auto lattice = load_lattice(file, cap);
      out << format_value(lattice, evaluate(lattice, expression));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "latkit: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace latkit
