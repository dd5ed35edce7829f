#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tprim/constructions.hpp"
#include "tprim/dynamics.hpp"
#include "tprim/error.hpp"
#include "tprim/explore.hpp"
#include "tprim/graph.hpp"
#include "tprim/kernels.hpp"
#include "tprim/pattern_json.hpp"
#include "tprim/report_json.hpp"
#include "tprim/strong.hpp"
#include "tprim/verify.hpp"

namespace tprim::cli {
namespace {

using nlohmann::json;

struct Common {
  std::string isa = "auto";
  std::string format = "json";
  std::string output;
};

struct AnalyzeArgs {
  std::string input;
  bool per_j = false;
  bool strong = false;
  int cap = kDefaultStrongCap;
  bool verify_oracles = false;
};

struct ConstructArgs {
  std::string family;
  int m = 3;
  int n = 4;
  int k = 1;
  int t = 1;
};

struct VerifyArgs {
  std::string suite;
  std::string m;
  std::string n;
  std::uint64_t samples = 500;
  std::uint64_t seed = 1;
};

struct ExploreArgs {
  std::string target;
  int m = 3;
  int n = 3;
  int j = 1;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  double density = 0.15;
  unsigned workers = 1;
  bool include_constructions = false;
  std::string replay;
};

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + c.output);
  f << text;
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_text(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); }

// ---------------------------------------------------------------------------
// analyze

struct OracleCheck {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<OracleCheck> oracle_checks(const PatternTensor& t, const DegreeReport& deg, const AnalyzeArgs& a,
                                       const std::optional<StrongReport>& strong) {
  std::vector<OracleCheck> checks;
  const int n = t.dim();
  const StepOperator op(t);
  const int kmax = n >= 6 ? 64 : (1 << n) - 1;
  for (int j = 1; j <= n; ++j) {
    IndexSet s = op.initial(j);
    std::string detail = "k <= " + std::to_string(kmax);
    bool ok = true;
    for (int k = 1; k <= kmax && ok; ++k) {
      const IndexSet oracle = majorization_power_column(t, j, k);
      if (oracle != s) {
        ok = false;
        detail = "k=" + std::to_string(k) + " bitset " + s.to_string() + " recurrence " + oracle.to_string();
      }
      if (ok && t.order() == 2) {
        const IndexSet walk = walk_column(majorization(t), j, k);
        if (walk != s) {
          ok = false;
          detail = "k=" + std::to_string(k) + " bitset " + s.to_string() + " walk " + walk.to_string();
        }
      }
      s = op(s);
    }
    checks.push_back({"column " + std::to_string(j) + " recurrence", ok, detail});
  }
  if (t.order() == 2) {
    const auto e = matrix_exponent(majorization(t));
    checks.push_back({"matrix exponent", e == deg.gamma, "power " + optional_text(e) + " dynamics " + optional_text(deg.gamma)});
  }
  if (a.strong && strong && strong->conclusive()) {
    // T^k positive iff eta <= k, checked against the literal product where it fits.
    for (int k = 1; k <= 3; ++k) {
      double cells = 1;
      for (int i = 0; i < (t.order() - 1) * k + 1; ++i) cells *= n;
      if (cells > 2e6) break;
      const PatternTensor p = direct_power(t, k);
      const bool positive = p.size() == p.codec().cell_count();
      const bool family = strong->eta && *strong->eta <= k;
      checks.push_back({"power " + std::to_string(k) + " positivity", positive == family,
                        std::string("direct ") + (positive ? "positive" : "not positive") + ", family " +
                            (family ? "positive" : "not positive")});
    }
  }
  return checks;
}

int cmd_analyze(const Common& c, const AnalyzeArgs& a, std::ostream& out) {
  const PatternTensor t = read_tensor_file(a.input);
  const auto deg = primitive_degree(t);
  std::optional<Reducibility> red;
  if (t.dim() <= 24) red = is_reducible_tensor(t);
  std::optional<StrongReport> strong;
  if (a.strong) strong = strongly_primitive_degree(t, a.cap);
  std::vector<OracleCheck> oracles;
  if (a.verify_oracles) oracles = oracle_checks(t, deg, a, strong);
  const bool oracles_ok = std::all_of(oracles.begin(), oracles.end(), [](const OracleCheck& o) { return o.passed; });

  if (c.format == "json") {
    json doc = {{"order", t.order()}, {"dim", t.dim()}, {"entries", t.size()}, {"primitive", deg.primitive()},
                {"gamma", optional_json(deg.gamma)}, {"any_j_primitive", deg.any_j_primitive()}};
    if (a.per_j) {
      auto rows = json::array();
      for (int j = 1; j <= t.dim(); ++j) {
        const auto& d = deg.at(j);
        json row = {{"j", j}, {"gamma_j", optional_json(d.value)}};
        if (d.cycle) row["cycle"] = {{"start", d.cycle->start}, {"length", d.cycle->length}};
        rows.push_back(row);
      }
      doc["per_j"] = rows;
    }
    if (red) {
      doc["irreducible"] = !red->reducible;
      if (red->reducible) doc["reducibility_witness"] = red->witness.members();
    } else {
      doc["irreducible"] = nullptr;
    }
    if (strong) {
      json s = {{"eta", optional_json(strong->eta)},
                {"reason", to_string(strong->reason)},
                {"generations", strong->generations_run},
                {"conclusive", strong->conclusive()},
                {"cap", a.cap}};
      if (!strong->failing_tail.empty()) s["failing_tail"] = strong->failing_tail;
      if (strong->reason == StrongReport::Reason::FamilyCycle)
        s["cycle"] = {{"start", strong->cycle_start}, {"length", strong->cycle_length}};
      doc["strong"] = s;
    }
    if (a.verify_oracles) {
      auto rows = json::array();
      for (const auto& o : oracles) rows.push_back({{"check", o.name}, {"passed", o.passed}, {"detail", o.detail}});
      doc["oracles"] = rows;
    }
    emit(c, doc.dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    s << "tensor       order " << t.order() << ", dim " << t.dim() << ", " << t.size() << " entries\n";
    s << "primitive    " << (deg.primitive() ? "yes, gamma = " + std::to_string(*deg.gamma) : std::string("not primitive"))
      << "\n";
    if (a.per_j)
      for (int j = 1; j <= t.dim(); ++j) {
        const auto& d = deg.at(j);
        s << "gamma_" << std::left << std::setw(7) << j << std::right;
        if (d.value) {
          s << *d.value << "\n";
        } else if (d.cycle) {
          s << "none (cycle from k=" << d.cycle->start << ", length " << d.cycle->length << ")\n";
        } else {
          s << "none\n";
        }
      }
    if (red) {
      s << "irreducible  " << (red->reducible ? "no, witness " + red->witness.to_string() : std::string("yes")) << "\n";
    } else {
      s << "irreducible  unknown (n > 24)\n";
    }
    if (strong) {
      s << "eta          " << optional_text(strong->eta);
      if (!strong->eta) s << " (" << to_string(strong->reason) << ")";
      s << "\n";
    }
    for (const auto& o : oracles) s << (o.passed ? "ok    " : "FAIL  ") << o.name << "  " << o.detail << "\n";
    emit(c, s.str(), out);
  }
  return oracles_ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// construct

PatternTensor build_family(const ConstructArgs& a) {
  const std::string& f = a.family;
  if (f == "m1") return matrix_tensor(wielandt_matrix(a.n));
  if (f == "m2") return matrix_tensor(m2_matrix(a.n));
  if (f == "a0") return tensor_a0(a.m, a.n);
  if (f == "ak") return tensor_ak(a.m, a.n, a.k);
  if (f == "bt") return tensor_bt(a.m, a.n, a.t);
  if (f == "chain") return chain_tensor(a.m, a.n);
  if (f == "exp-matrix") return matrix_tensor(exponent_t_matrix(a.n, a.t));
  if (f == "example415") return example_415();
  throw Error(ErrorKind::BadShape, "unknown family '" + f + "'");
}

int cmd_construct(const Common& c, const ConstructArgs& a, std::ostream& out) {
  emit(c, tensor_to_json(build_family(a)).dump() + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out) {
  VerifyOptions o;
  if (!a.m.empty()) o.m = IntRange::parse(a.m);
  if (!a.n.empty()) o.n = IntRange::parse(a.n);
  o.samples = a.samples;
  o.seed = a.seed;
  const auto results = run_suite(a.suite, o);
  bool ok = true;
  if (c.format == "json") {
    auto rows = json::array();
    for (const auto& r : results) {
      std::vector<std::string> failures;
      for (const auto& f : r.failures) failures.push_back(f.to_string());
      rows.push_back({{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", failures}});
      ok = ok && r.passed();
    }
    emit(c, json{{"suites", rows}, {"passed", ok}, {"seed", a.seed}}.dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    for (const auto& r : results) {
      ok = ok && r.passed();
      s << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(14) << r.name << std::right << std::setw(8)
        << r.checks << " checks  " << std::fixed << std::setprecision(3) << r.seconds << "s\n";
      for (const auto& f : r.failures) s << "      " << f.to_string() << "\n";
    }
    emit(c, s.str(), out);
  }
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// explore

int cmd_explore(const Common& c, const ExploreArgs& a, std::ostream& out) {
  ScanConfig cfg;
  cfg.m = a.m;
  cfg.n = a.n;
  cfg.j = a.j;
  cfg.seed = a.seed;
  cfg.density = a.density;
  cfg.workers = a.workers;
  cfg.include_constructions = a.include_constructions;
  if (a.samples > 0) {
    if (a.exhaustive) throw Error(ErrorKind::BadShape, "--exhaustive and --samples are exclusive");
    cfg.mode = ScanMode::Sampled;
    cfg.count = a.samples;
  }
  AtlasReport report;
  if (a.target == "conjecture45") {
    report = conjecture45_scan(cfg);
  } else if (a.target == "rj") {
    report = rj_scan(cfg);
  } else if (a.target == "r2") {
    report = r2_exhaustive(a.n, a.workers);
  } else if (a.target == "exponent-atlas") {
    report = exponent_scan(a.m, a.n);
  } else {
    throw Error(ErrorKind::BadShape, "unknown target '" + a.target + "'");
  }
  if (c.format == "json") {
    emit(c, report_to_json(report).dump(2) + "\n", out);
  } else if (c.format == "csv") {
    emit(c, report_to_csv(report), out);
  } else {
    emit(c, report_to_text(report), out);
  }
  if (!a.replay.empty()) {
    std::ofstream f(a.replay);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write " + a.replay);
    f << replay_json(report).dump(2) << "\n";
  }
  return report.ok() ? kExitOk : kExitFailure;
}

void apply_isa(const std::string& isa) {
  if (isa == "auto") return;
  kernels::select(kernels::isa_from_string(isa));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitivity degrees of nonnegative tensor zero patterns"};
  app.name("tprim");
  app.require_subcommand(1);
  Common common;
  app.add_option("--isa", common.isa, "Kernel: auto, scalar, avx2, neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}))
      ->capture_default_str();
  app.set_version_flag("--version", TPRIM_VERSION);

  auto add_output = [&common](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("-o,--output", common.output, "Output file (default stdout)");
    const std::string fmt_help = "Output format";
    sub->add_option("--format", common.format, fmt_help)->check(CLI::IsMember(formats))->capture_default_str();
  };

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Degrees, irreducibility and strong primitivity of a pattern file");
  an->add_option("input", analyze.input, "Pattern-tensor JSON file")->required();
  an->add_flag("--per-j", analyze.per_j, "Report gamma_j for every column j");
  an->add_flag("--strong", analyze.strong, "Compute eta (strong primitivity)");
  an->add_option("--cap", analyze.cap, "Generation cap for eta")->check(CLI::PositiveNumber)->capture_default_str();
  an->add_flag("--verify-oracles", analyze.verify_oracles, "Cross-check against brute-force oracles");
  add_output(an, {"json", "text"});

  ConstructArgs construct;
  auto* co = app.add_subcommand("construct", "Write a named construction as pattern-tensor JSON");
  co->add_option("family", construct.family, "m1, m2, a0, ak, bt, chain, exp-matrix, example415")
      ->required()
      ->check(CLI::IsMember({"m1", "m2", "a0", "ak", "bt", "chain", "exp-matrix", "example415"}));
  co->add_option("--m", construct.m, "Order")->capture_default_str();
  co->add_option("--n", construct.n, "Dimension")->capture_default_str();
  co->add_option("--k", construct.k, "Index for ak, 1 <= k <= n^2-3n+2")->capture_default_str();
  co->add_option("--t", construct.t, "Target exponent for bt and exp-matrix")->capture_default_str();
  co->add_option("-o,--output", common.output, "Output file (default stdout)");

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Run property suites over parameter ranges");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  ve->add_option("suite", verify.suite, "a0, ak, exponent-set, m2, chain, lift, oracles, all")
      ->required()
      ->check(CLI::IsMember(suites));
  ve->add_option("--m", verify.m, "Order range, e.g. 3 or 3..4 (suite default when omitted)");
  ve->add_option("--n", verify.n, "Dimension range, e.g. 3..7 (suite default when omitted)");
  ve->add_option("--samples", verify.samples, "Random tensors for lift and oracles")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ve->add_option("--seed", verify.seed, "Seed for lift and oracles")->capture_default_str();
  add_output(ve, {"text", "json"});

  ExploreArgs explore;
  auto* ex = app.add_subcommand("explore", "Scan pattern spaces and report achieved degrees");
  ex->add_option("target", explore.target, "conjecture45, rj, r2, exponent-atlas")
      ->required()
      ->check(CLI::IsMember({"conjecture45", "rj", "r2", "exponent-atlas"}));
  ex->add_option("--m", explore.m, "Order")->capture_default_str();
  ex->add_option("--n", explore.n, "Dimension")->capture_default_str();
  ex->add_option("--j", explore.j, "Column for rj")->capture_default_str();
  ex->add_flag("--exhaustive", explore.exhaustive, "Enumerate the whole space (default unless --samples)");
  ex->add_option("--samples", explore.samples, "Sample this many random patterns instead of enumerating");
  ex->add_option("--seed", explore.seed, "Sampler seed")->capture_default_str();
  ex->add_option("--density", explore.density, "Cell inclusion probability when sampling")->capture_default_str();
  ex->add_option("--workers", explore.workers, "Worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  ex->add_flag("--include-constructions", explore.include_constructions, "rj: also scan the chain tensor");
  ex->add_option("--replay", explore.replay, "Write candidate counterexamples to this file");
  add_output(ex, {"json", "text", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_isa(common.isa);
    if (*an) {
      if (common.format != "json" && common.format != "text") common.format = "json";
      return cmd_analyze(common, analyze, out);
    }
    if (*co) return cmd_construct(common, construct, out);
    if (*ve) {
      if (ve->count("--format") == 0) common.format = "text";
      return cmd_verify(common, verify, out);
    }
    if (*ex) return cmd_explore(common, explore, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool bug = e.kind() == ErrorKind::InvariantViolation || e.kind() == ErrorKind::SelfCheckFailed;
    return bug ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tprim::cli
