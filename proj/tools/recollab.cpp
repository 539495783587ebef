// recollab: command-line front end.
//
//   recollab define FILE
//   recollab stratify FILE --idempotent SPEC [--max-degree N]
//   recollab verify FILE --idempotent SPEC [--suite S] [--max-degree N] [--cutoff C]
//   recollab hochschild FILE [--max-degree N] [--oracle]
//
// Exit codes: 0 success, 1 usage or parse error, 2 failed precondition,
// 3 falsification or internal failure, 4 budget exhausted.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "recollab/io.hpp"

using namespace recollab;
using io::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPrecondition = 2, kFalsified = 3, kBudget = 4 };

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kPrecondition: return "precondition_failed";
    case kFalsified: return "falsified";
    case kBudget: return "budget_exceeded";
    default: return "error";
  }
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotStratifying:
    case ErrorCode::NotPerfect:
    case ErrorCode::QuotientIsZero:
    case ErrorCode::TransferFailed:
      return kPrecondition;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::DepthInsufficient:
      return kBudget;
    case ErrorCode::Internal:
      return kFalsified;
    default:
      return kUsage;
  }
}

struct Options {
  std::string file;
  std::string idempotent;
  std::string suite = "all";
  int max_degree = 4;
  int cutoff = 8;
  bool oracle = false;
  long budget = 20000;
  bool matrices = false;
  int jobs = 1;
  std::string report;
  std::string cache_dir;
  bool no_cache = false;
  bool timing = false;
};

using Clock = std::chrono::steady_clock;

struct Run {
  const Options& opt;
  std::string command;
  io::Document doc;
  Json results = Json::object();
  Json config = Json::object();
  std::map<std::string, double> times;
  std::string algebra_hash = std::string(16, '0');
  std::vector<std::string> text;

  template <class F>
  auto timed(const std::string& name, F&& f) {
    auto t0 = Clock::now();
    auto out = f();
    times[name] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return out;
  }
};

std::string dims_line(const GradedDims& d) {
  std::string s;
  for (int n = d.lo; n <= d.hi(); ++n) s += (s.empty() ? "" : " ") + std::to_string(d.at(n));
  return s;
}

template <class S>
void summarize(Run& run, const AlgebraPtr<S>& a) {
  run.algebra_hash = io::hex64(a->hash());
  Json prims = Json::array();
  if (a->has_primitives())
    for (std::size_t i = 0; i < a->primitives().size(); ++i)
      prims.push_back({{"label", a->primitive_labels()[i]}, {"coords", io::to_json<S>(a->primitives()[i])}});
  Json radical = nullptr;
  if (a->has_radical() || a->field().is_rational()) radical = a->radical().dim();
  run.results["algebra"] = {{"dim", a->dim()},
                            {"labels", a->labels()},
                            {"center_dim", center(*a).dim()},
                            {"radical_dim", radical},
                            {"primitive_idempotents", prims}};
  std::string line = "algebra: dim " + std::to_string(a->dim()) + ", center " + std::to_string(center(*a).dim());
  if (!radical.is_null()) line += ", radical " + std::to_string(radical.get<Index>());
  run.text.push_back(line);
  if (!prims.empty()) {
    std::string names;
    for (const auto& p : prims) names += " " + p["label"].get<std::string>();
    run.text.push_back("primitive idempotents:" + names);
  }
}

template <class S>
Vec<S> idempotent(Run& run, const AlgebraPtr<S>& a) {
  if (run.opt.idempotent.empty()) throw Error(ErrorCode::ParseError, "--idempotent is required");
  auto spec = io::idempotent_arg(run.opt.idempotent);
  auto e = io::parse_idempotent(*a, spec);
  run.config["idempotent"] = spec;
  run.results["idempotent"] = io::to_json<S>(e);
  return e;
}

template <class S>
int cmd_define(Run& run) {
  auto a = run.timed("build", [&] { return io::build_algebra<S>(run.doc); });
  summarize(run, a);
  return kOk;
}

template <class S>
int cmd_stratify(Run& run) {
  auto a = run.timed("build", [&] { return io::build_algebra<S>(run.doc); });
  summarize(run, a);
  auto e = idempotent(run, a);
  run.config["max_degree"] = run.opt.max_degree;
  auto rep = run.timed("stratify", [&] { return check_stratifying(a, e, run.opt.max_degree); });
  run.results["stratifying"] = io::to_json(rep);
  run.text.push_back("Tor^{eAe}_n(Ae, eA), n = 0.." + std::to_string(rep.tor.hi()) + ": " + dims_line(rep.tor));
  run.text.push_back("Ae (x) eA -> AeA: " + std::string(rep.mult_iso ? "isomorphism" : "not an isomorphism") + " (" +
                     std::to_string(rep.tensor_dim) + " -> " + std::to_string(rep.ideal_dim) + ")");
  run.text.push_back("pd A/AeA: " + rep.pd_quotient.format() + ", perfect: " + to_string(rep.perfect_ideal));
  if (!rep.stratifying) {
    run.text.push_back("NOT STRATIFYING: " + rep.failure());
    return kPrecondition;
  }
  run.text.push_back("stratifying");
  return kOk;
}

Json equivalence_suite(const EquivalenceReport& r, std::vector<std::string>& text) {
  std::string line = r.invariant + ": " + to_string(r.verdict);
  for (const auto& s : r.sides) line += "  " + s.name + "=" + s.bound.format();
  text.push_back(line);
  return io::to_json(r);
}

template <class S>
int cmd_verify(Run& run) {
  const auto& opt = run.opt;
  static const std::vector<std::string> all{"cohomology", "gldim", "keller", "smoothness"};
  std::vector<std::string> suites;
  if (opt.suite == "all") {
    suites = all;
  } else if (std::find(all.begin(), all.end(), opt.suite) != all.end()) {
    suites = {opt.suite};
  } else {
    throw Error(ErrorCode::ParseError, "unknown suite \"" + opt.suite + "\"");
  }
  run.config["suite"] = opt.suite;
  run.config["max_degree"] = opt.max_degree;
  run.config["cutoff"] = opt.cutoff;
  run.config["matrices"] = opt.matrices;

  auto a = run.timed("build", [&] { return io::build_algebra<S>(run.doc); });
  summarize(run, a);
  auto e = idempotent(run, a);
  auto r = run.timed("certify", [&] { return from_idempotent(a, e, opt.max_degree); });
  run.results["recollement"] = {{"flavor", to_string(r.flavor)},
                                {"perfect", to_string(r.perfect)},
                                {"degenerate", !r.a1.has_value()},
                                {"left_dim", r.a1 ? Json((*r.a1)->dim()) : Json(0)},
                                {"right_dim", (*r.a2)->dim()},
                                {"stratifying", io::to_json(r.stratifying)},
                                {"certificate", io::to_json(r.certificate)}};
  run.text.push_back("recollement: A1 dim " + std::to_string(r.a1 ? (*r.a1)->dim() : 0) + ", A2 dim " +
                     std::to_string((*r.a2)->dim()) + ", perfect " + to_string(r.perfect) +
                     (r.a1 ? "" : " (degenerate: e generates A)"));

  struct Outcome {
    Json json;
    bool falsified = false;
    std::vector<std::string> text;
    double ms = 0;
  };
  auto run_suite = [&](const std::string& name) {
    Outcome o;
    auto t0 = Clock::now();
    if (name == "keller") {
      auto k = keller_homology(r, opt.max_degree);
      o.json = io::to_json(k, opt.matrices);
      o.falsified = !k.ok();
      o.text.push_back(std::string("keller: ") + (k.ok() ? "ok" : "FALSIFIED") + (k.degenerate ? " (degenerate)" : ""));
      o.text.push_back("  HH_*(A)   " + dims_line(k.hh));
      o.text.push_back("  HH_*(A1)  " + dims_line(k.hh_quotient));
      o.text.push_back("  HH_*(A2)  " + dims_line(k.hh_corner));
      if (k.additive) o.text.push_back(std::string("  additive: ") + (*k.additive ? "yes" : "NO"));
    } else if (name == "cohomology") {
      auto c = cohomology_les(r, opt.max_degree);
      o.json = io::to_json(c, opt.matrices);
      o.falsified = !c.ok();
      o.text.push_back(std::string("cohomology: ") + (c.ok() ? "ok" : "FALSIFIED") + (c.degenerate ? " (degenerate)" : ""));
      for (const auto& s : c.sequences)
        o.text.push_back("  " + s.terms[0].label + " -> " + s.terms[1].label + " -> " + s.terms[2].label + ": " +
                         (s.exact ? "exact" : "NOT EXACT"));
    } else {
      auto eq = name == "smoothness" ? smoothness_equivalence(r, opt.cutoff) : gldim_equivalence(r, opt.cutoff);
      o.json = equivalence_suite(eq, o.text);
      o.falsified = eq.verdict == Verdict::Falsified;
    }
    o.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return o;
  };

  std::map<std::string, Outcome> outcomes;
  if (opt.jobs > 1) {
    std::map<std::string, std::future<Outcome>> pending;
    for (const auto& s : suites) pending[s] = std::async(std::launch::async, run_suite, s);
    for (auto& [name, f] : pending) outcomes[name] = f.get();
  } else {
    for (const auto& s : suites) outcomes[s] = run_suite(s);
  }
  bool falsified = false;
  Json suites_json = Json::object();
  for (auto& [name, o] : outcomes) {
    suites_json[name] = std::move(o.json);
    falsified = falsified || o.falsified;
    for (auto& line : o.text) run.text.push_back(std::move(line));
    run.times[name] = o.ms;
  }
  run.results["suites"] = std::move(suites_json);
  if (falsified) {
    run.text.push_back("FALSIFIED: a verified statement failed on this instance");
    return kFalsified;
  }
  return kOk;
}

template <class S>
int cmd_hochschild(Run& run) {
  const auto& opt = run.opt;
  run.config["max_degree"] = opt.max_degree;
  run.config["oracle"] = opt.oracle;
  if (opt.oracle) run.config["budget"] = opt.budget;
  auto a = run.timed("build", [&] { return io::build_algebra<S>(run.doc); });
  summarize(run, a);
  auto hh = run.timed("homology", [&] { return hochschild_homology(a, opt.max_degree); });
  auto hc = run.timed("cohomology", [&] { return hochschild_cohomology(a, opt.max_degree); });
  run.results["homology"] = io::to_json(hh);
  run.results["cohomology"] = io::to_json(hc);
  run.text.push_back("n      " + [&] {
    std::string s;
    for (int n = 0; n <= opt.max_degree; ++n) s += " " + std::to_string(n);
    return s;
  }());
  run.text.push_back("HH_n    " + dims_line(hh));
  run.text.push_back("HH^n    " + dims_line(hc));
  if (!opt.oracle) return kOk;
  try {
    auto bar = run.timed("oracle", [&] { return bar_oracle(*a, opt.max_degree, opt.budget); });
    Json agree = Json::array();
    bool all = true;
    for (int n = 0; n <= opt.max_degree; ++n) {
      bool ok = bar.homology.at(n) == hh.at(n) && bar.cohomology.at(n) == hc.at(n);
      agree.push_back(ok);
      all = all && ok;
    }
    run.results["oracle"] = {{"status", "ran"},
                             {"homology", io::to_json(bar.homology)},
                             {"cohomology", io::to_json(bar.cohomology)},
                             {"agrees", agree}};
    run.text.push_back(std::string("oracle  ") + (all ? "agrees in every degree" : "DISAGREES"));
    return all ? kOk : kFalsified;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    run.results["oracle"] = {{"status", "skipped"}, {"reason", e.what()}};
    run.text.push_back("oracle  skipped: budget exceeded");
    return kOk;
  }
}

template <class S>
int dispatch(Run& run) {
  if (run.command == "define") return cmd_define<S>(run);
  if (run.command == "stratify") return cmd_stratify<S>(run);
  if (run.command == "verify") return cmd_verify<S>(run);
  return cmd_hochschild<S>(run);
}

int execute(const std::string& command, const Options& opt) {
  if (opt.no_cache) {
    set_resolution_cache(std::nullopt);
  } else if (!opt.cache_dir.empty()) {
    set_resolution_cache(std::filesystem::path(opt.cache_dir));
  } else if (const char* env = std::getenv("RECOLLAB_CACHE_DIR"); env && *env) {
    set_resolution_cache(std::filesystem::path(env));
  }

  Run run{opt, command, {}};
  int code = kOk;
  std::string error;
  bool loaded = false;
  try {
    run.doc = io::load_document(opt.file);
    loaded = true;
    code = run.doc.field.is_rational() ? dispatch<Rational>(run) : dispatch<Zp>(run);
  } catch (const Error& e) {
    code = exit_for(e.code());
    error = e.what();
  } catch (const std::exception& e) {
    code = kFalsified;
    error = std::string("internal: ") + e.what();
  }

  if (opt.report != "-")
    for (const auto& line : run.text) std::cout << line << '\n';
  if (!error.empty()) std::cerr << "recollab: " << error << '\n';
  if (code == kFalsified) std::cerr << "recollab: *** FALSIFIED ***\n";

  if (!opt.report.empty() && loaded) {
    Json report{{"tool", "recollab"},
                {"command", command},
                {"inputs",
                 {{"file_hash", run.doc.hash},
                  {"algebra_hash", run.algebra_hash},
                  {"field", run.doc.field.to_string()},
                  {"config", run.config}}},
                {"status", status_name(code)},
                {"exit_code", code},
                {"results", run.results}};
    if (!error.empty()) report["error"] = error;
    if (opt.timing) report["wall_times_ms"] = run.times;
    if (auto v = io::schema_violation(report, "run_report"))
      throw std::logic_error("report violates the schema at " + v->first.to_string() + ": " + v->second);
    auto text = io::dump(report);
    if (opt.report == "-") {
      std::cout << text;
    } else {
      std::ofstream out(opt.report, std::ios::binary);
      if (!out) {
        std::cerr << "recollab: cannot write " << opt.report << '\n';
        return kUsage;
      }
      out << text;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with recollements of derived module categories"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--cache-dir", opt.cache_dir, "Resolution cache directory (overrides RECOLLAB_CACHE_DIR)");
  app.add_flag("--no-cache", opt.no_cache, "Do not use an on-disk resolution cache");
  app.add_option("--report", opt.report, "Write the JSON report here ('-' for stdout)");
  app.add_flag("--timing", opt.timing, "Include wall times in the report (makes it nondeterministic)");

  auto file_opt = [&](CLI::App* c) { c->add_option("file", opt.file, "Algebra description (JSON)")->required(); };
  auto* define = app.add_subcommand("define", "Build an algebra and summarize it");
  file_opt(define);
  auto* stratify = app.add_subcommand("stratify", "Check whether AeA is a stratifying ideal");
  file_opt(stratify);
  stratify->add_option("--idempotent,-e", opt.idempotent, "e:v, e:v1+v2 or [coordinates]")->required();
  stratify->add_option("--max-degree", opt.max_degree, "Highest Tor degree checked")->check(CLI::Range(0, 64));
  auto* verify = app.add_subcommand("verify", "Run the verification suites on the recollement of e");
  file_opt(verify);
  verify->add_option("--idempotent,-e", opt.idempotent, "e:v, e:v1+v2 or [coordinates]")->required();
  verify->add_option("--suite", opt.suite, "keller, cohomology, smoothness, gldim or all")
      ->check(CLI::IsMember({"keller", "cohomology", "smoothness", "gldim", "all"}));
  verify->add_option("--max-degree", opt.max_degree, "Window for the long exact sequences")->check(CLI::Range(0, 64));
  verify->add_option("--cutoff", opt.cutoff, "Resolution cutoff for dimension bounds")->check(CLI::Range(0, 64));
  verify->add_flag("--matrices", opt.matrices, "Include the maps of each sequence in the report");
  verify->add_option("--jobs,-j", opt.jobs, "Run suites concurrently")->check(CLI::Range(1, 64));
  auto* hochschild = app.add_subcommand("hochschild", "Hochschild homology and cohomology");
  file_opt(hochschild);
  hochschild->add_option("--max-degree", opt.max_degree, "Highest degree")->check(CLI::Range(0, 64));
  hochschild->add_flag("--oracle", opt.oracle, "Cross-check against the bar complex");
  hochschild->add_option("--budget", opt.budget, "Largest bar-complex term the oracle may build");

  // Options are accepted before or after the subcommand.
  for (auto* sub : {define, stratify, verify, hochschild}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  std::string command = app.get_subcommands().front()->get_name();
  try {
    return execute(command, opt);
  } catch (const std::exception& e) {
    std::cerr << "recollab: internal: " << e.what() << '\n';
    return kFalsified;
  }
}
