#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>

#include "opentropy/adversarial_search.hpp"
#include "opentropy/entropy_functionals.hpp"
#include "opentropy/instance_gen.hpp"
#include "opentropy/matrix_json.hpp"
#include "opentropy/suite_runner.hpp"

namespace opentropy::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ToleranceFlags {
  std::optional<double> tol_eig;
  std::optional<double> tol_order;
  std::optional<double> eig_floor;

  void attach(CLI::App* app) {
    app->add_option("--tol-eig", tol_eig, "spectral accuracy");
    app->add_option("--tol-order", tol_order, "relative Loewner slack (overrides OPENTROPY_TOL)");
    app->add_option("--eig-floor", eig_floor, "smallest eigenvalue counted as positive");
  }

  ToleranceConfig resolve() const {
    ToleranceConfig tol;
    if (!tol_order) {
      try {
        tol = ToleranceConfig::from_environment();
      } catch (const Error& e) {
        throw UsageError(std::string("OPENTROPY_TOL: ") + e.what());
      }
    }
    if (tol_eig) tol.tol_eig = *tol_eig;
    if (tol_order) tol.tol_order = *tol_order;
    if (eig_floor) tol.eig_floor = *eig_floor;
    tol.validate();
    return tol;
  }
};

struct ParamFlags {
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> t;

  void attach(CLI::App* app) {
    app->add_option("--p", p, "parameter p");
    app->add_option("--q", q, "parameter q");
    app->add_option("--t", t, "interpolation parameter t");
  }

  std::optional<double> value() const {
    const int given = (p ? 1 : 0) + (q ? 1 : 0) + (t ? 1 : 0);
    if (given > 1) throw UsageError("give at most one of --p, --q, --t");
    return p ? p : (q ? q : t);
  }
};

std::string suite_list() {
  std::string s;
  for (const auto& id : suite_ids()) s += "  " + id + "  " + suite_description(id) + "\n";
  return s;
}

// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string suite = "all";
  int trials = 100;
  std::vector<int> dims{4};
  std::vector<int> ns{3};
  ParamFlags param;
  std::optional<double> t0;
  std::optional<std::string> f;
  std::uint64_t seed = 0;
  int threads = 1;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  int worst_k = 5;
  ToleranceFlags tol;
  std::string out;
  std::string summary;
  std::string format = "json";
};

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids;
  if (o.suite == "all") {
    ids = suite_ids();
  } else {
    std::string rest = o.suite;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      ids.push_back(rest.substr(0, comma));
      rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    }
  }
  for (const auto& id : ids) {
    if (!is_known_suite(id)) {
      err << "unknown suite '" << id << "'; available suites:\n" << suite_list();
      return kUsage;
    }
  }
  const std::optional<double> param = o.param.value();
  if (ids.size() > 1 && (param || o.t0 || o.f)) {
    throw UsageError("--p/--q/--t, --t0 and --f need a single suite");
  }
  const ToleranceConfig tol = o.tol.resolve();

  std::vector<SuiteConfig> configs;
  for (const auto& id : ids) {
    SuiteConfig cfg;
    cfg.suite_id = id;
    cfg.trials = o.trials;
    cfg.dims = o.dims;
    cfg.ns = o.ns;
    cfg.param = param;
    cfg.t0 = o.t0;
    cfg.f = o.f;
    cfg.eig_lo = o.eig_lo;
    cfg.eig_hi = o.eig_hi;
    cfg.tol = tol;
    cfg.master_seed = o.seed;
    cfg.threads = o.threads;
    cfg.worst_k = o.worst_k;
    cfg.validate();
    configs.push_back(cfg);
  }

  std::vector<SuiteReport> reports;
  for (const auto& cfg : configs) reports.push_back(run_suite(cfg));

  // Thread count is left out so runs differ only in the timestamp.
  const nlohmann::json header = {{"timestamp", utc_timestamp()},
                                 {"version", kVersion},
                                 {"suites", ids},
                                 {"trials", o.trials},
                                 {"dims", o.dims},
                                 {"ns", o.ns},
                                 {"master_seed", o.seed},
                                 {"tol_eig", tol.tol_eig},
                                 {"tol_order", tol.tol_order},
                                 {"eig_floor", tol.eig_floor}};
  nlohmann::json summary = {{"version", kVersion}, {"master_seed", o.seed}};
  std::size_t fails = 0, errors = 0;
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& r : reports) {
    suites.push_back(summary_to_json(r));
    fails += r.count(Verdict::Fail);
    errors += r.count(Verdict::Error);
  }
  summary["suites"] = suites;
  summary["fail"] = fails;
  summary["error"] = errors;

  const std::string jsonl = to_jsonl(reports, header);
  if (!o.out.empty()) emit(o.out, jsonl, out);
  if (!o.summary.empty()) emit(o.summary, summary.dump(2) + "\n", out);
  if (o.format == "jsonl") {
    if (o.out.empty()) out << jsonl;
  } else if (o.format == "csv-summary") {
    out << summary_csv(reports);
  } else if (o.summary.empty()) {
    out << summary.dump(2) << '\n';
  }
  for (const auto& r : reports) {
    err << r.suite_id << ": " << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::Fail)
        << " fail, " << r.count(Verdict::HypothesisUnmet) << " hypothesis_unmet, "
        << r.count(Verdict::Error) << " error\n";
  }
  return fails + errors == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct ComputeOptions {
  std::string functional;
  std::vector<std::string> a;
  std::vector<std::string> b;
  ParamFlags param;
  std::string f = "log";
  ToleranceFlags tol;
  std::string out;
};

int cmd_compute(const ComputeOptions& o, std::ostream& out) {
  const ToleranceConfig tol = o.tol.resolve();
  const auto load = [&tol](const std::vector<std::string>& paths, const char* flag) {
    if (paths.empty()) throw UsageError(std::string("missing ") + flag);
    std::vector<HermitianMatrix> ms;
    for (const auto& p : paths) ms.push_back(load_matrix_file(p, tol.tol_eig));
    return ms;
  };
  const auto single = [&](const std::vector<std::string>& paths, const char* flag) {
    if (paths.size() != 1) throw UsageError(std::string(flag) + " takes exactly one file here");
    return load(paths, flag).front();
  };
  const auto need_param = [&](const char* name) {
    const auto v = o.param.value();
    if (!v) throw UsageError(std::string("missing ") + name);
    return *v;
  };

  std::optional<HermitianMatrix> result;
  const std::string& fn = o.functional;
  if (fn == "natural-power-mean") {
    const double q = need_param("--q");
    result = natural_power_mean(single(o.a, "--a"), single(o.b, "--b"), q, tol);
  } else if (fn == "relative-entropy") {
    result = relative_operator_entropy(single(o.a, "--a"), single(o.b, "--b"), tol);
  } else if (fn == "furuta") {
    const double p = need_param("--p");
    result = furuta_entropy(single(o.a, "--a"), single(o.b, "--b"), p, tol);
  } else if (fn == "generalized") {
    const double q = need_param("--q");
    const ScalarFunction f = catalog_lookup(o.f);
    if (o.a.size() == 1 && o.b.size() == 1) {
      result = generalized_entropy_term(single(o.a, "--a"), single(o.b, "--b"), q, f, tol);
    } else {
      result = generalized_entropy_sum(OperatorTuple(load(o.a, "--a"), tol),
                                       OperatorTuple(load(o.b, "--b"), tol), q, f, tol);
    }
  } else if (fn == "perspective") {
    result = perspective(single(o.b, "--b"), single(o.a, "--a"), catalog_lookup(o.f), tol);
  } else if (fn == "divergence") {
    result = f_divergence(OperatorTuple(load(o.b, "--b"), tol), OperatorTuple(load(o.a, "--a"), tol),
                          catalog_lookup(o.f), tol);
  } else {
    throw UsageError("unknown functional '" + fn + "'");
  }
  emit(o.out, matrix_to_json(*result).dump(2) + "\n", out);
  return kPass;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string object;
  std::string suite;
  std::optional<std::uint64_t> trial;
  int dim = 3;
  int n = 3;
  int m = 0;
  int k = 3;
  int dim_out = 0;
  std::string kind = "kraus";
  ParamFlags param;
  std::uint64_t seed = 0;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  ToleranceFlags tol;
  std::string out;
};

nlohmann::json real_rows(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const ToleranceConfig tol = o.tol.resolve();
  const std::optional<double> param = o.param.value();
  GeneratorConfig cfg{o.seed, o.dim, o.n, o.eig_lo, o.eig_hi, o.trial.value_or(0)};
  cfg.validate(tol);
  nlohmann::json doc;

  if (!o.suite.empty()) {
    if (!o.object.empty()) throw UsageError("give either --object or --suite");
    if (!is_known_suite(o.suite)) throw UsageError("unknown suite '" + o.suite + "'");
    if (!o.trial) throw UsageError("--suite needs --trial");
    doc = {{"suite_id", o.suite},
           {"master_seed", o.seed},
           {"trial_index", *o.trial},
           {"stream_seed", trial_seed(o.seed, o.suite, *o.trial)},
           {"dim", o.dim},
           {"n", o.n},
           {"instance", instance_to_json(generate_instance(o.suite, cfg, param, tol))}};
    emit(o.out, doc.dump(2) + "\n", out);
    return kPass;
  }

  Rng rng(trial_seed(o.seed, "gen:" + o.object, cfg.trial_index));
  nlohmann::json value;
  if (o.object == "hpd") {
    value = matrix_to_json(random_hpd(cfg, rng));
  } else if (o.object == "hermitian") {
    value = matrix_to_json(random_hermitian(o.dim, -o.eig_hi, o.eig_hi, rng));
  } else if (o.object == "unitary") {
    value = matrix_to_json(random_unitary(o.dim, rng));
  } else if (o.object == "resolution") {
    value = nlohmann::json::array();
    const OperatorTuple r = random_resolution_of_identity(cfg, rng, tol);
    for (const auto& a : r.entries()) {
      value.push_back(matrix_to_json(a));
    }
  } else if (o.object == "doubly-stochastic") {
    value = real_rows(random_doubly_stochastic(o.n, o.k, rng).entries());
  } else if (o.object == "weight-function") {
    const WeightFunction w = random_weight_function(o.m > 0 ? o.m : o.n, o.n, rng);
    value = {{"mu", w.mu}, {"lambda", w.lambda}, {"omega", real_rows(w.omega)}};
  } else if (o.object == "positive-map") {
    const PositiveMap phi = random_positive_map(positive_map_kind_from_string(o.kind), o.dim,
                                                o.dim_out > 0 ? o.dim_out : o.dim, o.k, rng, tol);
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& v : phi.kraus_operators()) blocks.push_back(matrix_to_json(v));
    value = {{"kind", std::string(to_string(phi.kind()))},
             {"dim_in", phi.dim_in()},
             {"dim_out", phi.dim_out()},
             {"kraus", blocks}};
  } else if (o.object == "contractions") {
    value = nlohmann::json::array();
    for (const auto& c : random_contractions(o.n, o.dim, rng)) value.push_back(matrix_to_json(c));
  } else if (o.object == "two-operator-pair") {
    const TwoOperatorPair pair = generate_two_operator_pair(cfg, param.value_or(0.5), rng, tol);
    value = {{"a", matrix_to_json(pair.a)}, {"b", matrix_to_json(pair.b)},
             {"attempts", pair.attempts}};
  } else if (o.object == "probability") {
    value = random_probability_vector(o.n, rng);
  } else if (o.object.empty()) {
    throw UsageError("gen needs --object or --suite");
  } else {
    throw UsageError("unknown object '" + o.object + "'");
  }
  doc = {{"object", o.object}, {"seed", o.seed}, {"value", value}};
  emit(o.out, doc.dump(2) + "\n", out);
  return kPass;
}

// ---------------------------------------------------------------------------

struct SearchOptions {
  std::string suite;
  int dim = 3;
  int n = 3;
  ParamFlags param;
  std::optional<double> t0;
  std::optional<std::string> f;
  std::uint64_t seed = 0;
  int budget = 1000;
  int restart_every = 200;
  double step = 0.1;
  bool free_tuples = false;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  ToleranceFlags tol;
  std::string out;
};

int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  if (!is_known_suite(o.suite)) {
    err << "unknown suite '" << o.suite << "'; available suites:\n" << suite_list();
    return kUsage;
  }
  SearchConfig cfg;
  cfg.suite_id = o.suite;
  cfg.dim = o.dim;
  cfg.n = o.n;
  cfg.param = o.param.value();
  cfg.t0 = o.t0;
  cfg.f = o.f;
  cfg.eig_lo = o.eig_lo;
  cfg.eig_hi = o.eig_hi;
  cfg.tol = o.tol.resolve();
  cfg.master_seed = o.seed;
  cfg.budget = o.budget;
  cfg.restart_every = o.restart_every;
  cfg.step = o.step;
  cfg.free_tuples = o.free_tuples;
  cfg.validate();
  const WorstInstanceReport report = adversarial_search(cfg);
  emit(o.out, worst_report_to_json(report).dump(2) + "\n", out);
  return report.fail_count == 0 ? kPass : kFail;
}

int cmd_catalog(std::ostream& out) {
  nlohmann::json functions = nlohmann::json::array();
  for (const auto& f : catalog()) {
    functions.push_back({{"name", f.name},
                         {"domain_floor", f.has_bounded_domain() ? nlohmann::json(f.domain_floor)
                                                                 : nlohmann::json(nullptr)},
                         {"operator_monotone", f.is_operator_monotone},
                         {"operator_concave", f.is_operator_concave},
                         {"nonnegative_on_domain", f.is_nonnegative_on_domain}});
  }
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& id : suite_ids()) {
    suites.push_back({{"id", id}, {"description", suite_description(id)}});
  }
  out << nlohmann::json{{"functions", functions}, {"suites", suites}}.dump(2) << '\n';
  return kPass;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::DomainViolation:
    case ErrorCode::NotStrictlyPositive:
      return kDomain;
    case ErrorCode::InvalidInput:
    case ErrorCode::NotHermitian:
    case ErrorCode::DimensionMismatch:
      return kIo;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of generalized operator entropy inequalities", "opentropy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "run inequality suites");
  c->add_option("--suite", check.suite, "suite id, comma list, or 'all'");
  c->add_option("--trials", check.trials, "trials per parameter case");
  c->add_option("--dim", check.dims, "dimension(s), cycled over trials")->expected(1, -1);
  c->add_option("--n", check.ns, "tuple length(s), cycled over trials")->expected(1, -1);
  check.param.attach(c);
  c->add_option("--t0", check.t0, "fixed t0 > 0");
  c->add_option("--f", check.f, "scalar function from the catalog");
  c->add_option("--seed", check.seed, "master seed");
  c->add_option("--threads", check.threads, "worker threads")->check(CLI::PositiveNumber);
  c->add_option("--eig-lo", check.eig_lo, "smallest sampled eigenvalue");
  c->add_option("--eig-hi", check.eig_hi, "largest sampled eigenvalue");
  c->add_option("--worst-k", check.worst_k, "worst records kept per case");
  check.tol.attach(c);
  c->add_option("--out", check.out, "JSONL trial records");
  c->add_option("--summary", check.summary, "summary JSON");
  c->add_option("--format", check.format, "stdout format")
      ->check(CLI::IsMember({"json", "jsonl", "csv-summary"}));

  ComputeOptions compute;
  auto* cp = app.add_subcommand("compute", "evaluate a functional on matrix files");
  cp->add_option("functional", compute.functional,
                 "natural-power-mean | relative-entropy | furuta | generalized | perspective | "
                 "divergence")
      ->required();
  cp->add_option("--a", compute.a, "matrix JSON file(s) for A")->expected(1, -1);
  cp->add_option("--b", compute.b, "matrix JSON file(s) for B")->expected(1, -1);
  compute.param.attach(cp);
  cp->add_option("--f", compute.f, "scalar function from the catalog");
  compute.tol.attach(cp);
  cp->add_option("--out", compute.out, "output file");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "emit a reproducible random object or suite instance");
  g->add_option("--object", gen.object,
                "hpd | hermitian | unitary | resolution | doubly-stochastic | weight-function | "
                "positive-map | contractions | two-operator-pair | probability");
  g->add_option("--suite", gen.suite, "regenerate a suite instance");
  g->add_option("--trial", gen.trial, "trial index of the instance");
  g->add_option("--dim", gen.dim, "dimension");
  g->add_option("--n", gen.n, "count");
  g->add_option("--m", gen.m, "rows of a weight function (default n)");
  g->add_option("--k", gen.k, "permutations / Kraus blocks");
  g->add_option("--dim-out", gen.dim_out, "output dimension of a positive map");
  g->add_option("--kind", gen.kind, "identity | compression | kraus | depolarizing");
  gen.param.attach(g);
  g->add_option("--seed", gen.seed, "master seed");
  g->add_option("--eig-lo", gen.eig_lo, "smallest sampled eigenvalue");
  g->add_option("--eig-hi", gen.eig_hi, "largest sampled eigenvalue");
  gen.tol.attach(g);
  g->add_option("--out", gen.out, "output file");

  SearchOptions search;
  auto* s = app.add_subcommand("search", "hill-climb toward the smallest slack");
  s->add_option("--suite", search.suite, "suite id")->required();
  s->add_option("--dim", search.dim, "dimension");
  s->add_option("--n", search.n, "tuple length");
  search.param.attach(s);
  s->add_option("--t0", search.t0, "fixed t0 > 0");
  s->add_option("--f", search.f, "scalar function from the catalog");
  s->add_option("--seed", search.seed, "master seed");
  s->add_option("--budget", search.budget, "evaluations");
  s->add_option("--restart-every", search.restart_every, "evaluations per restart");
  s->add_option("--step", search.step, "initial perturbation size");
  s->add_flag("--free-tuples", search.free_tuples, "do not re-normalize resolutions");
  s->add_option("--eig-lo", search.eig_lo, "smallest sampled eigenvalue");
  s->add_option("--eig-hi", search.eig_hi, "largest sampled eigenvalue");
  search.tol.attach(s);
  s->add_option("--out", search.out, "output file");

  auto* cat = app.add_subcommand("catalog", "list scalar functions and suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_check(check, out, err);
    if (cp->parsed()) return cmd_compute(compute, out);
    if (g->parsed()) return cmd_gen(gen, out);
    if (s->parsed()) return cmd_search(search, out, err);
    if (cat->parsed()) return cmd_catalog(out);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "io: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << e.what();
    if (e.value()) err << " (value " << *e.value() << ")";
    err << '\n';
    return exit_for(e);
  }
  return kUsage;
}

}  // namespace opentropy::cli
