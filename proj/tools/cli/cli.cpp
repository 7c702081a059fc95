// Copyright 2026 The cdc-pda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cdc/analysis.hpp"
#include "cdc/builders.hpp"
#include "cdc/compile.hpp"
#include "cdc/pda.hpp"
#include "cdc/scheme_json.hpp"
#include "cdc/sim.hpp"
#include "reports.hpp"

namespace cdc::cli {

namespace {

constexpr const char* kSynopsis =
    "usage: cdc <command> [options]\n"
    "  pda build --family subset|partition|partition-complement --K K --t t [--out F]\n"
    "  pda build --family partition|partition-complement --q q --m m\n"
    "  pda validate <file|fixture>\n"
    "  pda show <file|fixture> [--format pretty|json]\n"
    "  scheme compile --pda <file|fixture> (--s s | --assign a,b,...) [--uncoded-fallback]\n"
    "  scheme describe <scheme.json> [--format pretty|json]\n"
    "  sim run (--scheme F | --pda P --s s) [--seed N] [--T bits] [--D bits] [--B bits]\n"
    "          [--trace F.csv] [--out F]\n"
    "  analyze table --K K [--scheme 1|2|3] [--all] [--format csv|json]\n"
    "  analyze scan --scheme 1|2|3 [--Kmax K] [--bound p/q] [--long-run] [--exact]\n"
    "  analyze compare --K K --r r --s s [--format csv|json]\n"
    "  analyze thresholds [--r r --s s] [--scheme 1|2|3] [--samples n]\n"
    "  analyze lemma5 (--a a1,a2,... --K K | --trials n [--seed N])\n"
    "  reproduce <table-5|table-6|table-7|table-8|example-2|example-3|all> [--out DIR]\n";

// Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maps to exit code 1.
class Invalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path.string() + "'");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

// A readable file wins; otherwise the name (with any ".pda" suffix dropped)
// must be a built-in fixture.
Pda load_pda(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return parse_pda(read_file(source));
  std::string name = std::filesystem::path(source).filename().string();
  if (name.size() > 4 && name.ends_with(".pda")) name.resize(name.size() - 4);
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return fixture(name);
  throw UsageError("no such PDA file or fixture '" + source + "'");
}

FunctionAssignment make_assignment(const Pda& pda, std::size_t s, const std::vector<std::size_t>& custom) {
  if (!custom.empty()) {
    if (s != 0) throw UsageError("--s and --assign are mutually exclusive");
    return custom_assignment(custom);
  }
  if (s == 0) throw UsageError("one of --s or --assign is required");
  return window_assignment(pda.num_nodes(), s);
}

std::string pda_pretty(const Pda& pda, const PdaProfile& profile) {
  std::ostringstream os;
  os << "valid " << profile.signature() << "\n";
  os << "K=" << profile.num_nodes << " N=" << profile.num_files << " Z=" << profile.stars_per_column
     << " S=" << profile.num_labels << " coded_entries=" << profile.coded_entries << "\n";
  std::string text = render_pda(pda);
  os << text.substr(text.find('\n') + 1);
  const auto table = occurrence_table(pda);
  for (std::size_t u = 0; u < table.size(); ++u) {
    os << "label " << u << ":";
    for (const auto& p : table[u]) os << " (" << p.row << "," << p.col << ")";
    os << "\n";
  }
  return os.str();
}

std::string pda_json(const Pda& pda, const PdaProfile& profile) {
  using Json = nlohmann::ordered_json;
  Json rows = Json::array();
  for (std::size_t n = 0; n < pda.num_files(); ++n) {
    Json row = Json::array();
    for (const auto& e : pda.row(n)) row.push_back(e.is_star() ? Json("*") : Json(e.label()));
    rows.push_back(std::move(row));
  }
  Json occ = Json::array();
  for (const auto& list : occurrence_table(pda)) {
    Json l = Json::array();
    for (const auto& p : list) l.push_back(Json::array({p.row, p.col}));
    occ.push_back(std::move(l));
  }
  Json doc{{"K", profile.num_nodes},
           {"N", profile.num_files},
           {"Z", profile.stars_per_column},
           {"S", profile.num_labels},
           {"g", profile.regularity ? Json(*profile.regularity) : Json(nullptr)},
           {"rows", std::move(rows)},
           {"occurrences", std::move(occ)}};
  return doc.dump(2) + "\n";
}

Rational parse_bound(const std::string& text, SchemeId scheme) {
  if (text.empty()) return scheme == SchemeId::k1 ? Rational(2) : Rational(21, 10);
  try {
    if (text.find('.') != std::string::npos) {
      // Decimal literal: exact value of the digits as written.
      const auto dot = text.find('.');
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, text.size() - dot - 1);
      return Rational(BigInt(digits), scale);
    }
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError("bad --bound '" + text + "'");
  }
}

struct Args {
  // pda build
  std::string family;
  std::size_t K = 0, t = 0, q = 0, m = 0;
  std::string out;
  // inputs
  std::string input;
  std::string format;
  // scheme / sim
  std::size_t s = 0;
  std::vector<std::size_t> assign;
  bool fallback = false;
  std::string scheme_path;
  std::uint64_t seed = 1;
  std::size_t T = 0, D = 256, B = 256;
  std::string trace;
  bool lenient = false;
  // analyze
  std::string scheme_id = "1";
  bool all = false;
  std::uint64_t k_max = 60;
  std::string bound;
  bool long_run = false;
  bool exact = false;
  bool per_k = false;
  std::uint64_t r = 0;
  std::size_t samples = 5;
  std::vector<std::uint64_t> a;
  std::size_t trials = 0;
  // reproduce
  std::string target;
};

int run_pda_build(const Args& args, std::ostream& out) {
  const Family family = parse_family(args.family);
  Pda pda = [&] {
    if (family == Family::kFixture) throw UsageError("use `pda show <fixture>` for fixtures");
    if (args.q != 0 || args.m != 0) {
      if (family == Family::kSubset) throw UsageError("--q/--m apply to the partition families");
      if (args.K != 0 || args.t != 0) throw UsageError("give either --K/--t or --q/--m");
      return family == Family::kPartition ? build_partition(args.q, args.m)
                                          : build_partition_complement(args.q, args.m);
    }
    if (args.K == 0 || args.t == 0) throw UsageError("--K and --t are required");
    return build({family, args.K, args.t, {}});
  }();
  emit(render_pda(pda), args.out, out);
  return kExitOk;
}

int run_pda_validate(const Args& args, std::ostream& out) {
  Pda pda = load_pda(args.input);
  try {
    const std::string signature = validate(pda).signature();
    out << "valid " << signature << "\n";
    return kExitOk;
  } catch (const PdaError& e) {
    out << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run_pda_show(const Args& args, std::ostream& out) {
  Pda pda = load_pda(args.input);
  const PdaProfile profile = validate(pda);
  if (args.format == "json") {
    out << pda_json(pda, profile);
  } else if (args.format.empty() || args.format == "pretty") {
    out << pda_pretty(pda, profile);
  } else {
    throw UsageError("--format must be pretty or json");
  }
  return kExitOk;
}

CompiledScheme compile_from(const Args& args) {
  Pda pda = load_pda(args.input);
  return compile(pda, make_assignment(pda, args.s, args.assign), {args.fallback});
}

int run_scheme_compile(const Args& args, std::ostream& out) {
  emit(scheme_to_json(compile_from(args)), args.out, out);
  return kExitOk;
}

int run_scheme_describe(const Args& args, std::ostream& out) {
  const CompiledScheme scheme = scheme_from_json(read_file(args.input));
  if (args.format == "json") {
    out << scheme_to_json(scheme);
  } else if (args.format.empty() || args.format == "pretty") {
    out << describe_scheme(scheme);
  } else {
    throw UsageError("--format must be pretty or json");
  }
  return kExitOk;
}

int run_sim(const Args& args, std::ostream& out) {
  CompiledScheme scheme = [&] {
    if (!args.scheme_path.empty()) {
      if (!args.input.empty()) throw UsageError("--scheme and --pda are mutually exclusive");
      return scheme_from_json(read_file(args.scheme_path));
    }
    if (args.input.empty()) throw UsageError("one of --scheme or --pda is required");
    return compile_from(args);
  }();
  SimConfig config;
  config.iva_bits = args.T;
  config.output_bits = args.B;
  config.strict = !args.lenient;
  const Dataset data = gen_dataset(scheme.num_files(), args.D, args.seed);
  const Simulation sim = simulate(scheme, data, config);
  emit(report_to_json(sim.report), args.out, out);
  if (!args.trace.empty()) write_file(args.trace, trace_to_csv(sim.log));
  if (!sim.report.all_decoded() || !sim.report.oracle_equal.value_or(false)) {
    throw Invalid("decoding failed or outputs differ from the oracle");
  }
  return kExitOk;
}

int run_table(const Args& args, std::ostream& out) {
  if (args.K < 2) throw UsageError("--K must be at least 2");
  const SchemeId scheme = parse_scheme(args.scheme_id);
  const auto pairs = table_pairs(args.K, scheme, args.all);
  if (args.format == "json") {
    out << ratio_table_json(args.K, scheme, pairs);
  } else if (args.format.empty() || args.format == "csv") {
    out << ratio_table_csv(args.K, scheme, pairs);
  } else {
    throw UsageError("--format must be csv or json");
  }
  return kExitOk;
}

int run_scan(const Args& args, std::ostream& out) {
  const SchemeId scheme = parse_scheme(args.scheme_id);
  if (args.k_max > 60 && !args.long_run) {
    throw UsageError("--Kmax above 60 needs --long-run");
  }
  ScanOptions options;
  options.fast = args.long_run && !args.exact;
  const ScanResult result = scan_h(args.k_max, scheme, parse_bound(args.bound, scheme), options);
  out << scan_summary(result, options.fast);
  if (args.per_k) out << scan_per_k_csv(result);
  return result.violations.empty() ? kExitOk : kExitInvalid;
}

int run_compare(const Args& args, std::ostream& out) {
  if (args.K == 0 || args.r == 0 || args.s == 0) throw UsageError("--K, --r and --s are required");
  const std::vector<FileComparison> rows{q_file_comparison(args.K, args.r, args.s)};
  if (args.format == "json") {
    out << compare_json(rows);
  } else if (args.format.empty() || args.format == "csv") {
    out << compare_csv(rows);
  } else {
    throw UsageError("--format must be csv or json");
  }
  return kExitOk;
}

int run_thresholds(const Args& args, std::ostream& out) {
  struct Row {
    SchemeId scheme;
    std::uint64_t r, s;
  };
  std::vector<Row> rows;
  if (args.r == 0 && args.s == 0) {
    rows = {{SchemeId::k1, 2, 2}, {SchemeId::k1, 8, 8}, {SchemeId::k2, 4, 2}};
  } else if (args.r == 0 || args.s == 0) {
    throw UsageError("give both --r and --s");
  } else {
    rows = {{parse_scheme(args.scheme_id), args.r, static_cast<std::uint64_t>(args.s)}};
  }
  bool ok = true;
  out << "rule,r,s,threshold,decimal,sampled_K,holds\n";
  for (const auto& row : rows) {
    const ThresholdCheck check = check_threshold(row.scheme, row.r, row.s, args.samples);
    std::string sampled;
    for (std::size_t i = 0; i < check.sampled.size(); ++i) {
      sampled += (i ? ";" : "") + std::to_string(check.sampled[i]);
    }
    out << (row.scheme == SchemeId::k1 ? "lemma4" : "theorem4") << ',' << row.r << ',' << row.s
        << ',' << check.threshold.str() << ',' << check.threshold.decimal(2) << ',' << sampled
        << ',' << (check.holds() ? "yes" : "no") << "\n";
    ok = ok && check.holds();
  }
  return ok ? kExitOk : kExitInvalid;
}

int run_lemma5(const Args& args, std::ostream& out) {
  if (!args.a.empty()) {
    if (args.K == 0) throw UsageError("--K is required with --a");
    const SymPolyVerdict v = sym_poly_check(args.a, args.K);
    out << "b=";
    for (std::size_t h = 0; h < v.b.size(); ++h) out << (h ? "," : "") << to_string(v.b[h]);
    out << "\n";
    for (std::size_t h = 0; h < v.part1.size(); ++h) {
      out << "h=" << h << " part1=" << (v.part1[h] ? "ok" : "FAIL") << " part2="
          << (v.part2[h] ? (*v.part2[h] ? "ok" : "FAIL") : "n/a") << "\n";
    }
    out << (v.holds() ? "holds" : "violated") << "\n";
    return v.holds() ? kExitOk : kExitInvalid;
  }
  if (args.trials == 0) throw UsageError("give --a/--K or --trials");
  std::mt19937_64 rng(args.seed);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_int_distribution<std::uint64_t> value(1, 20);
  std::uniform_int_distribution<std::uint64_t> slack(1, 50);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < args.trials; ++i) {
    std::vector<std::uint64_t> a(len(rng));
    std::uint64_t total = 0;
    for (auto& x : a) total += x = value(rng);
    if (!sym_poly_check(a, total + slack(rng)).holds()) ++failures;
  }
  out << "trials=" << args.trials << " counterexamples=" << failures << "\n";
  return failures == 0 ? kExitOk : kExitInvalid;
}

int run_reproduce(const Args& args, std::ostream& out) {
  const std::vector<Artifact> files = reproduce(args.target);
  const std::filesystem::path dir = args.out.empty() ? "repro" : args.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create '" + dir.string() + "'");
  for (const auto& f : files) {
    write_file(dir / f.name, f.content);
    out << (dir / f.name).string() << "\n";
  }
  write_file(dir / "manifest.json", manifest_json(args.target, files));
  out << (dir / "manifest.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Args args;
  CLI::App app{"Placement delivery arrays and cascaded coded distributed computing"};
  app.name("cdc");
  app.require_subcommand(1, 1);

  std::function<int(const Args&, std::ostream&)> action;
  auto bind = [&action](CLI::App* sub, int (*fn)(const Args&, std::ostream&)) {
    sub->callback([&action, fn] { action = fn; });
  };

  auto* pda = app.add_subcommand("pda", "Build, validate and inspect PDAs");
  pda->require_subcommand(1, 1);
  auto* build_cmd = pda->add_subcommand("build", "Emit a PDA from a builder family");
  build_cmd->add_option("--family", args.family, "subset | partition | partition-complement")->required();
  build_cmd->add_option("--K", args.K, "number of nodes");
  build_cmd->add_option("--t", args.t, "family parameter t");
  build_cmd->add_option("--q", args.q, "partition alphabet size");
  build_cmd->add_option("--m", args.m, "partition dimension (t - 1)");
  build_cmd->add_option("--out", args.out, "write to file instead of stdout");
  bind(build_cmd, run_pda_build);
  auto* validate_cmd = pda->add_subcommand("validate", "Check the PDA conditions");
  validate_cmd->add_option("input", args.input, "PDA file or fixture name")->required();
  bind(validate_cmd, run_pda_validate);
  auto* show_cmd = pda->add_subcommand("show", "Print a PDA with its profile");
  show_cmd->add_option("input", args.input, "PDA file or fixture name")->required();
  show_cmd->add_option("--format", args.format, "pretty | json");
  bind(show_cmd, run_pda_show);

  auto* scheme = app.add_subcommand("scheme", "Compile PDAs into CDC schemes");
  scheme->require_subcommand(1, 1);
  auto* compile_cmd = scheme->add_subcommand("compile", "Compile a PDA into a scheme document");
  compile_cmd->add_option("--pda", args.input, "PDA file or fixture name")->required();
  compile_cmd->add_option("--s", args.s, "replication factor (window assignment)");
  compile_cmd->add_option("--assign", args.assign, "custom per-node function ids")->delimiter(',');
  compile_cmd->add_flag("--uncoded-fallback", args.fallback, "send whole IVAs when coding does not pay");
  compile_cmd->add_option("--out", args.out, "write to file instead of stdout");
  bind(compile_cmd, run_scheme_compile);
  auto* describe_cmd = scheme->add_subcommand("describe", "Summarize a scheme document");
  describe_cmd->add_option("input", args.input, "scheme JSON file")->required();
  describe_cmd->add_option("--format", args.format, "pretty | json");
  bind(describe_cmd, run_scheme_describe);

  auto* sim = app.add_subcommand("sim", "Run schemes on synthetic data");
  sim->require_subcommand(1, 1);
  auto* run_cmd = sim->add_subcommand("run", "Map, shuffle and reduce; emit a run report");
  run_cmd->add_option("--scheme", args.scheme_path, "scheme JSON file");
  run_cmd->add_option("--pda", args.input, "PDA file or fixture name (compiled on the fly)");
  run_cmd->add_option("--s", args.s, "replication factor with --pda");
  run_cmd->add_option("--assign", args.assign, "custom assignment with --pda")->delimiter(',');
  run_cmd->add_flag("--uncoded-fallback", args.fallback, "with --pda");
  run_cmd->add_option("--seed", args.seed, "dataset seed");
  run_cmd->add_option("--T", args.T, "IVA bits (default (g-1)*64)");
  run_cmd->add_option("--D", args.D, "file bits");
  run_cmd->add_option("--B", args.B, "reduce output bits");
  run_cmd->add_option("--trace", args.trace, "per-message CSV trace path");
  run_cmd->add_option("--out", args.out, "report path instead of stdout");
  run_cmd->add_flag("--lenient", args.lenient, "record decode failures instead of stopping");
  bind(run_cmd, run_sim);

  auto* analyze = app.add_subcommand("analyze", "Exact load formulas, tables and scans");
  analyze->require_subcommand(1, 1);
  auto* table_cmd = analyze->add_subcommand("table", "Ratio table for one K");
  table_cmd->add_option("--K", args.K, "number of nodes")->required();
  table_cmd->add_option("--scheme", args.scheme_id, "1 | 2 | 3");
  table_cmd->add_flag("--all", args.all, "every (r, s) instead of the reference pairs");
  table_cmd->add_option("--format", args.format, "csv | json");
  bind(table_cmd, run_table);
  auto* scan_cmd = analyze->add_subcommand("scan", "Exhaustive ratio scan up to Kmax");
  scan_cmd->add_option("--scheme", args.scheme_id, "1 | 2 | 3");
  scan_cmd->add_option("--Kmax", args.k_max, "largest K (above 60 needs --long-run)");
  scan_cmd->add_option("--bound", args.bound, "ratio bound, p/q or decimal");
  scan_cmd->add_flag("--long-run", args.long_run, "allow large Kmax; floating-point filter with exact recheck");
  scan_cmd->add_flag("--exact", args.exact, "with --long-run: evaluate every point exactly");
  scan_cmd->add_flag("--per-k", args.per_k, "append the per-K maxima as CSV");
  bind(scan_cmd, run_scan);
  auto* compare_cmd = analyze->add_subcommand("compare", "Function and file counts vs. the Li scheme");
  compare_cmd->add_option("--K", args.K)->required();
  compare_cmd->add_option("--r", args.r)->required();
  compare_cmd->add_option("--s", args.s)->required();
  compare_cmd->add_option("--format", args.format, "csv | json");
  bind(compare_cmd, run_compare);
  auto* thresholds_cmd = analyze->add_subcommand("thresholds", "Sufficient-K thresholds and checks");
  thresholds_cmd->add_option("--r", args.r);
  thresholds_cmd->add_option("--s", args.s);
  thresholds_cmd->add_option("--scheme", args.scheme_id, "1 | 2 | 3");
  thresholds_cmd->add_option("--samples", args.samples, "K values checked at or above the threshold");
  bind(thresholds_cmd, run_thresholds);
  auto* lemma5_cmd = analyze->add_subcommand("lemma5", "Elementary symmetric sum inequalities");
  lemma5_cmd->add_option("--a", args.a, "comma-separated positive integers")->delimiter(',');
  lemma5_cmd->add_option("--K", args.K);
  lemma5_cmd->add_option("--trials", args.trials, "random instances");
  lemma5_cmd->add_option("--seed", args.seed);
  bind(lemma5_cmd, run_lemma5);

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate tables and worked examples");
  reproduce_cmd->add_option("target", args.target, "table-5..table-8, example-2, example-3, all")->required();
  reproduce_cmd->add_option("--out", args.out, "output directory (default ./repro)");
  bind(reproduce_cmd, run_reproduce);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n" << kSynopsis;
    return kExitUsage;
  }
  if (!action) {
    err << kSynopsis;
    return kExitUsage;
  }

  try {
    return action(args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kSynopsis;
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace cdc::cli
