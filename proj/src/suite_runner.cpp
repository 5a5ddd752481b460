#include "opentropy/suite_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "opentropy/matrix_json.hpp"

namespace opentropy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SuiteDef {
  std::string id;
  std::string description;
  std::vector<double> params;  // empty: the suite takes no parameter
  std::vector<double> t0s;     // empty: no t0
  std::vector<std::string> fs; // empty: f is fixed by the check
  std::string fixed_f;
  double param_lo = -std::numeric_limits<double>::infinity();
  double param_hi = std::numeric_limits<double>::infinity();
  bool instance_depends_on_param = false;
};

const std::vector<double> kUnitGrid = {0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<double> kT0Grid = {0.1, 1.0, 10.0};
const std::vector<std::string> kMonotoneFs = {"pow_0.5", "ratio", "log1p"};

const std::vector<SuiteDef>& suite_table() {
  static const std::vector<SuiteDef> s = {
      {"thm-upper", "generalized Shannon entropy upper bound, p in [0,1]", kUnitGrid, kT0Grid,
       kMonotoneFs, "", 0.0, 1.0},
      {"thm-lower", "generalized Shannon entropy lower bound, p in [2,3]", {2.0, 2.5, 3.0},
       kT0Grid, kMonotoneFs, ""},
      {"furuta", "Furuta entropy chain with f = log under sum A#_pB <= I", kUnitGrid, kT0Grid, {},
       "log", 0.0, 1.0},
      {"cor-2.4", "f(sum B A^-1 B) >= S_1^f and f(1) I >= S_0^f", {}, {}, kMonotoneFs, ""},
      {"cor-2.5", "log(sum A^-1) >= (log n) I - (1/n) sum log A", {}, {}, {}, "log"},
      {"cor-2.6", "operator entropy inequality -sum A log A <= (log n) I", {}, {}, {}, "log"},
      {"kl", "Kullback-Leibler divergence is nonnegative", {}, {}, {}, "log"},
      {"thm-2.8", "two-operator bounds under A#_{p-2}B <= I and B^2 <= A^2", kUnitGrid, kT0Grid,
       kMonotoneFs, "", 0.0, 1.0, true},
      {"jensen", "refined operator Jensen inequality with a weight function", {}, {},
       {"pow_0.5", "log", "neg_entropy"}, ""},
      {"thm-2.10", "interpolated Jensen chain and concavity in t", {}, {}, {"pow_0.5", "log"}, ""},
      {"cor-2.11", "refined operator entropy inequality via doubly stochastic mixing",
       {0.0, 0.5, 1.0}, {}, {}, "neg_entropy", 0.0, 1.0},
      {"duality", "S_q(A|B) = -S_{1-q}(B|A)", {-1.0, 0.0, 0.3, 0.5, 1.0, 2.0}, {}, {}, "log"},
      {"subadditivity", "sum A#_qB <= (sum A)#_q(sum B), q in [0,1]", kUnitGrid, {}, {}, "",
       0.0, 1.0},
      {"hanp", "Jensen inequality for contractions with sum C*C <= I", {}, kT0Grid,
       {"pow_0.5", "log"}, ""},
  };
  return s;
}

const SuiteDef& def_for(const std::string& id) {
  for (const auto& s : suite_table()) {
    if (s.id == id) return s;
  }
  throw Error(ErrorCode::InvalidInput, "unknown suite '" + id + "'");
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::vector<HermitianMatrix> hpd_list(int n, int dim, double lo, double hi, Rng& rng) {
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back(random_hpd(dim, lo, hi, rng));
  return out;
}

SlackReport error_report(const std::string& what) {
  SlackReport r = unmet_report("trial", kNaN, what);
  r.verdict = Verdict::Error;
  return r;
}

void stamp_trial(std::vector<SlackReport>& rs, const std::string& suite_id,
                 const GeneratorConfig& gen, const SuiteCase& c) {
  const ReplayHandle handle{gen.master_seed, suite_id, gen.trial_index,
                            trial_seed(gen.master_seed, suite_id, gen.trial_index)};
  for (auto& r : rs) {
    r.suite_id = suite_id;
    r.trial_index = gen.trial_index;
    r.instance_seed = handle;
    if (r.verdict == Verdict::Error || r.component == "gate") {
      r.dim = gen.dim;
      r.n = gen.n;
      r.param = c.param;
      r.t0 = c.t0;
      r.f = c.f;
    }
  }
}

// NaN sorts last.
bool slack_before(const SlackReport& x, const SlackReport& y) {
  const double a = x.relative_slack();
  const double b = y.relative_slack();
  const bool an = std::isnan(a), bn = std::isnan(b);
  if (an != bn) return bn;
  if (!an && a != b) return a < b;
  return x.trial_index < y.trial_index;
}

}  // namespace

double Instance::max_input_norm() const {
  double m = 0.0;
  for (const auto* list : {&a, &b, &operands}) {
    for (const auto& h : *list) m = std::max(m, h.frobenius_norm());
  }
  for (const auto& c : contractions) m = std::max(m, c.norm());
  return m;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j = nlohmann::json::object();
  const auto matrices = [](const std::vector<HermitianMatrix>& hs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& h : hs) arr.push_back(matrix_to_json(h));
    return arr;
  };
  const auto real_matrix = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
      rows.push_back(row);
    }
    return rows;
  };
  if (!inst.a.empty()) j["a"] = matrices(inst.a);
  if (!inst.b.empty()) j["b"] = matrices(inst.b);
  if (!inst.operands.empty()) j["operands"] = matrices(inst.operands);
  if (!inst.contractions.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : inst.contractions) arr.push_back(matrix_to_json(c));
    j["contractions"] = arr;
  }
  if (!inst.stochastic.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : inst.stochastic) arr.push_back(real_matrix(s.entries()));
    j["doubly_stochastic"] = arr;
  }
  if (!inst.weights.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& w : inst.weights) {
      arr.push_back({{"mu", w.mu}, {"lambda", w.lambda}, {"omega", real_matrix(w.omega)}});
    }
    j["weights"] = arr;
  }
  if (inst.map) {
    nlohmann::json kraus = nlohmann::json::array();
    for (const auto& v : inst.map->kraus_operators()) kraus.push_back(matrix_to_json(v));
    j["map"] = {{"kind", std::string(to_string(inst.map->kind()))},
                {"dim_in", inst.map->dim_in()},
                {"dim_out", inst.map->dim_out()},
                {"kraus", kraus}};
  }
  if (!inst.prob_a.empty()) j["prob_a"] = inst.prob_a;
  if (!inst.prob_b.empty()) j["prob_b"] = inst.prob_b;
  if (inst.attempts > 0) j["attempts"] = inst.attempts;
  return j;
}

std::string SuiteCase::label() const {
  std::string s;
  const auto add = [&s](const std::string& part) {
    if (!s.empty()) s += ',';
    s += part;
  };
  if (param) add("param=" + format_number(*param));
  if (t0) add("t0=" + format_number(*t0));
  if (!f.empty()) add("f=" + f);
  return s.empty() ? "default" : s;
}

void SuiteConfig::validate() const {
  const SuiteDef& s = def_for(suite_id);
  if (trials < 0) throw Error(ErrorCode::ParameterOutOfRange, "trials must be >= 0", trials);
  if (dims.empty() || ns.empty()) {
    throw Error(ErrorCode::ParameterOutOfRange, "dims and ns must be non-empty");
  }
  for (int d : dims) {
    if (d < 1) throw Error(ErrorCode::ParameterOutOfRange, "dim must be >= 1", d);
  }
  for (int n : ns) {
    if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "n must be >= 1", n);
  }
  if (threads < 1) throw Error(ErrorCode::ParameterOutOfRange, "threads must be >= 1", threads);
  if (worst_k < 0) throw Error(ErrorCode::ParameterOutOfRange, "worst_k must be >= 0", worst_k);
  tol.validate();
  GeneratorConfig{master_seed, 1, 1, eig_lo, eig_hi, 0}.validate(tol);
  if (param) {
    if (s.params.empty()) {
      throw Error(ErrorCode::ParameterOutOfRange, suite_id + " takes no parameter", *param);
    }
    if (!std::isfinite(*param) || *param < s.param_lo || *param > s.param_hi) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  "parameter out of range for " + suite_id, *param);
    }
  }
  if (t0) {
    if (s.t0s.empty()) throw Error(ErrorCode::ParameterOutOfRange, suite_id + " takes no t0", *t0);
    if (!(*t0 > 0.0) || !std::isfinite(*t0)) {
      throw Error(ErrorCode::ParameterOutOfRange, "t0 must be > 0", *t0);
    }
  }
  if (f) {
    if (s.fs.empty()) {
      throw Error(ErrorCode::ParameterOutOfRange, suite_id + " fixes f = " + s.fixed_f);
    }
    catalog_lookup(*f);
  }
}

int SuiteConfig::dim_for(std::uint64_t trial) const {
  return dims[static_cast<size_t>(trial % dims.size())];
}

int SuiteConfig::n_for(std::uint64_t trial) const {
  return ns[static_cast<size_t>((trial / dims.size()) % ns.size())];
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const SlackReport& r) {
        return r.verdict == v;
      }));
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : suite_table()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

bool is_known_suite(const std::string& id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string suite_description(const std::string& id) { return def_for(id).description; }

std::vector<SuiteCase> expand_cases(const SuiteConfig& cfg) {
  const SuiteDef& s = def_for(cfg.suite_id);
  std::vector<std::optional<double>> params;
  if (s.params.empty()) {
    params.push_back(std::nullopt);
  } else if (cfg.param) {
    params.push_back(cfg.param);
  } else {
    params.assign(s.params.begin(), s.params.end());
  }
  std::vector<std::optional<double>> t0s;
  if (s.t0s.empty()) {
    t0s.push_back(std::nullopt);
  } else if (cfg.t0) {
    t0s.push_back(cfg.t0);
  } else {
    t0s.assign(s.t0s.begin(), s.t0s.end());
  }
  std::vector<std::string> fs;
  if (s.fs.empty()) {
    fs.push_back(s.fixed_f);
  } else if (cfg.f) {
    fs.push_back(*cfg.f);
  } else {
    fs = s.fs;
  }
  std::vector<SuiteCase> out;
  for (const auto& p : params) {
    for (const auto& t0 : t0s) {
      for (const auto& f : fs) out.push_back(SuiteCase{p, t0, f});
    }
  }
  return out;
}

Instance generate_instance(const std::string& suite_id, const GeneratorConfig& cfg,
                           std::optional<double> param, const ToleranceConfig& tol) {
  cfg.validate(tol);
  def_for(suite_id);
  Rng rng = cfg.stream(suite_id);
  const int d = cfg.dim;
  const int n = cfg.n;
  Instance inst;

  if (suite_id == "thm-upper" || suite_id == "thm-lower" || suite_id == "cor-2.4") {
    inst.a = random_resolution_of_identity(cfg, rng, tol).entries();
    inst.b = random_resolution_of_identity(cfg, rng, tol).entries();
  } else if (suite_id == "cor-2.5" || suite_id == "cor-2.6") {
    inst.a = random_resolution_of_identity(cfg, rng, tol).entries();
  } else if (suite_id == "furuta") {
    // Spectra in [0.05, 1] * s / n; s > 1 sometimes breaks the gate on purpose.
    const double s = std::uniform_real_distribution<double>(0.6, 1.2)(rng) / n;
    const double lo = std::max(0.05 * s, tol.eig_floor);
    inst.a = hpd_list(n, d, lo, s, rng);
    inst.b = hpd_list(n, d, lo, s, rng);
  } else if (suite_id == "kl") {
    inst.prob_a = random_probability_vector(n, rng);
    inst.prob_b = random_probability_vector(n, rng);
  } else if (suite_id == "thm-2.8") {
    const double p = param.value_or(0.5);
    TwoOperatorPair pair = generate_two_operator_pair(cfg, p, rng, tol);
    inst.a = {pair.a};
    inst.b = {pair.b};
    inst.attempts = pair.attempts;
  } else if (suite_id == "jensen") {
    inst.operands = hpd_list(n, d, cfg.eig_lo, cfg.eig_hi, rng);
    inst.map = random_positive_map(PositiveMapKind::Kraus, d, d, 3, rng, tol);
    inst.weights = {random_weight_function(n, n, rng)};
  } else if (suite_id == "thm-2.10") {
    inst.operands = hpd_list(n, d, cfg.eig_lo, cfg.eig_hi, rng);
    inst.map = random_positive_map(PositiveMapKind::Kraus, d, d, 3, rng, tol);
    const std::vector<double> mu = random_probability_vector(n, rng);
    const std::vector<double> lambda = random_probability_vector(n, rng);
    inst.weights = {random_weight_function(mu, lambda, rng),
                    random_weight_function(mu, lambda, rng)};
    inst.stochastic = {random_doubly_stochastic(n, n + 1, rng),
                       random_doubly_stochastic(n, n + 1, rng)};
  } else if (suite_id == "cor-2.11") {
    inst.a = random_resolution_of_identity(cfg, rng, tol).entries();
    inst.stochastic = {random_doubly_stochastic(n, n + 1, rng),
                       random_doubly_stochastic(n, n + 1, rng)};
  } else if (suite_id == "duality") {
    inst.a = {random_hpd(cfg, rng)};
    inst.b = {random_hpd(cfg, rng)};
  } else if (suite_id == "subadditivity") {
    inst.a = hpd_list(n, d, cfg.eig_lo, cfg.eig_hi, rng);
    inst.b = hpd_list(n, d, cfg.eig_lo, cfg.eig_hi, rng);
  } else if (suite_id == "hanp") {
    inst.contractions = random_contractions(n, d, rng);
    inst.operands = hpd_list(n, d, cfg.eig_lo, cfg.eig_hi, rng);
  }
  return inst;
}

std::vector<SlackReport> evaluate_instance(const std::string& suite_id, const Instance& inst,
                                           const SuiteCase& c, const ToleranceConfig& tol) {
  const auto f = [&c] { return catalog_lookup(c.f); };
  const auto tuple = [&tol](const std::vector<HermitianMatrix>& xs) {
    return OperatorTuple(xs, tol);
  };
  const double param = c.param.value_or(0.5);
  const double t0 = c.t0.value_or(1.0);

  if (suite_id == "thm-upper") {
    return check_theorem_upper(tuple(inst.a), tuple(inst.b), param, f(), t0, tol);
  }
  if (suite_id == "thm-lower") {
    return check_theorem_lower(tuple(inst.a), tuple(inst.b), param, f(), t0, tol);
  }
  if (suite_id == "furuta") return check_furuta_chain(tuple(inst.a), tuple(inst.b), param, t0, tol);
  if (suite_id == "cor-2.4") {
    return check_monotone_concave_bounds(tuple(inst.a), tuple(inst.b), f(), tol);
  }
  if (suite_id == "cor-2.5") return check_inverse_sum_log(tuple(inst.a), tol);
  if (suite_id == "cor-2.6") return check_operator_entropy_bound(tuple(inst.a), tol);
  if (suite_id == "kl") return check_kl_scalar(inst.prob_a, inst.prob_b, tol);
  if (suite_id == "thm-2.8") {
    return check_two_operator_bounds(inst.a.at(0), inst.b.at(0), param, f(), t0, tol);
  }
  if (suite_id == "jensen") {
    return check_jensen_refinement(inst.weights.at(0), *inst.map, inst.operands, f(), tol);
  }
  if (suite_id == "thm-2.10") {
    auto out = check_interpolated_jensen(inst.weights.at(0), inst.weights.at(1), *inst.map,
                                         inst.operands, f(), InterpolationGrid{}, tol);
    auto bc = check_interpolated_jensen(inst.stochastic.at(0), inst.stochastic.at(1), *inst.map,
                                        inst.operands, f(), InterpolationGrid{}, tol);
    out.insert(out.end(), std::make_move_iterator(bc.begin()), std::make_move_iterator(bc.end()));
    return out;
  }
  if (suite_id == "cor-2.11") {
    return check_refined_entropy(tuple(inst.a), inst.stochastic.at(0), inst.stochastic.at(1),
                                 param, tol);
  }
  if (suite_id == "duality") return check_entropy_duality(inst.a.at(0), inst.b.at(0), param, tol);
  if (suite_id == "subadditivity") {
    return check_natural_subadditivity(tuple(inst.a), tuple(inst.b), param, tol);
  }
  if (suite_id == "hanp") return check_contraction_jensen(inst.contractions, inst.operands, t0, f(), tol);
  throw Error(ErrorCode::InvalidInput, "unknown suite '" + suite_id + "'");
}

std::vector<SlackReport> evaluate_instance_safely(const std::string& suite_id,
                                                  const Instance& inst, const SuiteCase& c,
                                                  const ToleranceConfig& tol) {
  try {
    return evaluate_instance(suite_id, inst, c, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesisUnmet) {
      return {unmet_report("gate", inst.max_input_norm(), e.what())};
    }
    return {error_report(e.what())};
  } catch (const std::exception& e) {
    return {error_report(e.what())};
  }
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const SuiteDef& def = def_for(cfg.suite_id);
  const std::vector<SuiteCase> cases = expand_cases(cfg);
  const auto trials = static_cast<std::size_t>(cfg.trials);

  // results[case][trial]; every slot is written by exactly one worker.
  std::vector<std::vector<std::vector<SlackReport>>> results(
      cases.size(), std::vector<std::vector<SlackReport>>(trials));

  const auto run_trial = [&](std::size_t t) {
    GeneratorConfig gen{cfg.master_seed, cfg.dim_for(t), cfg.n_for(t), cfg.eig_lo, cfg.eig_hi, t};
    std::map<std::optional<double>, Instance> by_param;
    std::map<std::optional<double>, std::string> failures;
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
      const SuiteCase& c = cases[ci];
      const std::optional<double> key = def.instance_depends_on_param ? c.param : std::nullopt;
      if (!by_param.count(key) && !failures.count(key)) {
        try {
          by_param.emplace(key, generate_instance(cfg.suite_id, gen, key, cfg.tol));
        } catch (const std::exception& e) {
          failures.emplace(key, e.what());
        }
      }
      std::vector<SlackReport> rs;
      if (auto it = failures.find(key); it != failures.end()) {
        rs = {error_report(it->second)};
      } else {
        rs = evaluate_instance_safely(cfg.suite_id, by_param.at(key), c, cfg.tol);
      }
      if (!cfg.keep_slack) {
        for (auto& r : rs) r.slack.reset();
      }
      stamp_trial(rs, cfg.suite_id, gen, c);
      results[ci][t] = std::move(rs);
    }
  };

  const int workers = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(cfg.threads), std::max<std::size_t>(trials, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < trials; t = next++) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  SuiteReport report;
  report.suite_id = cfg.suite_id;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    CaseSummary summary;
    summary.suite_case = cases[ci];
    std::vector<SlackReport> case_records;
    for (auto& trial_records : results[ci]) {
      for (auto& r : trial_records) {
        ++summary.records;
        switch (r.verdict) {
          case Verdict::Pass: ++summary.pass; break;
          case Verdict::Fail: ++summary.fail; break;
          case Verdict::HypothesisUnmet: ++summary.hypothesis_unmet; break;
          case Verdict::Error: ++summary.error; break;
        }
        if (r.hypothesis_satisfied && !r.equality_check && !std::isnan(r.slack_min_eig)) {
          summary.worst_satisfied_slack =
              std::min(summary.worst_satisfied_slack.value_or(r.slack_min_eig), r.slack_min_eig);
        }
        case_records.push_back(std::move(r));
      }
    }
    std::vector<SlackReport> ranked = case_records;
    const auto k = std::min(ranked.size(), static_cast<std::size_t>(cfg.worst_k));
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end(), slack_before);
    ranked.resize(k);
    summary.worst = std::move(ranked);
    report.records.insert(report.records.end(), std::make_move_iterator(case_records.begin()),
                          std::make_move_iterator(case_records.end()));
    report.cases.push_back(std::move(summary));
  }
  return report;
}

nlohmann::json report_to_json(const SlackReport& r) {
  const auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {
      {"type", "trial"},
      {"suite_id", r.suite_id},
      {"component", r.component},
      {"trial_index", r.trial_index},
      {"dim", r.dim},
      {"n", r.n},
      {"param", opt(r.param)},
      {"t0", opt(r.t0)},
      {"f", r.f},
      {"equality_check", r.equality_check},
      {"hypothesis_satisfied", r.hypothesis_satisfied},
      {"slack_min_eig", r.slack_min_eig},
      {"slack_max_eig", r.slack_max_eig},
      {"slack_norm", r.slack_norm},
      {"slack_condition", r.slack_condition},
      {"scale", r.scale},
      {"verdict", std::string(to_string(r.verdict))},
      {"instance_seed",
       {{"master_seed", r.instance_seed.master_seed},
        {"suite_id", r.instance_seed.suite_id},
        {"trial_index", r.instance_seed.trial_index},
        {"stream_seed", r.instance_seed.stream_seed}}},
  };
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json summary_to_json(const SuiteReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json worst = nlohmann::json::array();
    for (const auto& w : c.worst) worst.push_back(report_to_json(w));
    cases.push_back({
        {"case", c.suite_case.label()},
        {"param", c.suite_case.param ? nlohmann::json(*c.suite_case.param) : nullptr},
        {"t0", c.suite_case.t0 ? nlohmann::json(*c.suite_case.t0) : nullptr},
        {"f", c.suite_case.f},
        {"records", c.records},
        {"pass", c.pass},
        {"fail", c.fail},
        {"hypothesis_unmet", c.hypothesis_unmet},
        {"error", c.error},
        {"unmet_rate", c.unmet_rate()},
        {"worst_satisfied_slack",
         c.worst_satisfied_slack ? nlohmann::json(*c.worst_satisfied_slack) : nullptr},
        {"worst", worst},
    });
  }
  return {{"suite_id", report.suite_id},
          {"records", report.records.size()},
          {"pass", report.count(Verdict::Pass)},
          {"fail", report.count(Verdict::Fail)},
          {"hypothesis_unmet", report.count(Verdict::HypothesisUnmet)},
          {"error", report.count(Verdict::Error)},
          {"cases", cases}};
}

std::string to_jsonl(const std::vector<SuiteReport>& reports, const nlohmann::json& header) {
  std::ostringstream out;
  nlohmann::json h = header;
  h["type"] = "header";
  out << h.dump() << '\n';
  for (const auto& rep : reports) {
    for (const auto& r : rep.records) out << report_to_json(r).dump() << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<SuiteReport>& reports) {
  std::ostringstream out;
  out << "suite_id,case,records,pass,fail,hypothesis_unmet,error,unmet_rate,"
         "worst_satisfied_slack\n";
  char buf[64];
  for (const auto& rep : reports) {
    for (const auto& c : rep.cases) {
      out << rep.suite_id << ",\"" << c.suite_case.label() << "\"," << c.records << ','
          << c.pass << ',' << c.fail << ',' << c.hypothesis_unmet << ',' << c.error << ',';
      std::snprintf(buf, sizeof buf, "%.6g", c.unmet_rate());
      out << buf << ',';
      if (c.worst_satisfied_slack) {
        std::snprintf(buf, sizeof buf, "%.17g", *c.worst_satisfied_slack);
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace opentropy
