#include "opentropy/adversarial_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opentropy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool needs_resolution(const std::string& suite_id) {
  return suite_id == "thm-upper" || suite_id == "thm-lower" || suite_id == "cor-2.4" ||
         suite_id == "cor-2.5" || suite_id == "cor-2.6" || suite_id == "cor-2.11";
}

// G X G* with G = I + eps Z / sqrt(d), Z complex Gaussian.
HermitianMatrix congruence_step(const HermitianMatrix& x, double eps, Rng& rng) {
  const int d = x.dim();
  const ComplexMatrix g = ComplexMatrix::Identity(d, d) +
                          (eps / std::sqrt(static_cast<double>(d))) *
                              random_complex_gaussian(d, d, rng);
  return congruence(g.adjoint(), x);
}

std::vector<HermitianMatrix> congruence_all(const std::vector<HermitianMatrix>& xs, double eps,
                                            Rng& rng) {
  std::vector<HermitianMatrix> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(congruence_step(x, eps, rng));
  return out;
}

std::vector<double> perturb_probability(const std::vector<double>& p, double eps, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> out(p.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] * std::exp(eps * z(rng));
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

WeightFunction perturb_weights(const WeightFunction& w, double eps, Rng& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd kernel(w.m(), w.n());
  for (int j = 0; j < w.n(); ++j) {
    for (int i = 0; i < w.m(); ++i) {
      kernel(i, j) = w.omega(i, j) * w.mu[static_cast<size_t>(i)] *
                     w.lambda[static_cast<size_t>(j)] * std::exp(eps * z(rng));
    }
  }
  // Zero entries of a Birkhoff-like omega would stall Sinkhorn.
  kernel = kernel.cwiseMax(1e-300);
  return weight_function_from_coupling(sinkhorn_coupling(kernel, w.mu, w.lambda), w.mu, w.lambda);
}

DoublyStochasticMatrix perturb_stochastic(const DoublyStochasticMatrix& b, double eps, Rng& rng) {
  const double mix = std::min(eps, 0.5);
  DoublyStochasticMatrix p = doubly_stochastic_from({random_permutation(b.n(), rng)}, {1.0});
  return DoublyStochasticMatrix((1.0 - mix) * b.entries() + mix * p.entries());
}

struct Evaluation {
  std::vector<SlackReport> records;
  bool all_satisfied = true;
  bool any_error = false;
  double objective_all = kInf;
  double objective_satisfied = kInf;
  int arg_all = -1;
  int arg_satisfied = -1;
};

Evaluation evaluate(const SearchConfig& cfg, const Instance& inst, const SuiteCase& c) {
  Evaluation e;
  e.records = evaluate_instance_safely(cfg.suite_id, inst, c, cfg.tol);
  for (std::size_t i = 0; i < e.records.size(); ++i) {
    const SlackReport& r = e.records[i];
    if (r.verdict == Verdict::Error) e.any_error = true;
    if (!r.hypothesis_satisfied) e.all_satisfied = false;
    const double s = r.relative_slack();
    if (std::isnan(s)) continue;
    if (s < e.objective_all) {
      e.objective_all = s;
      e.arg_all = static_cast<int>(i);
    }
    if (r.hypothesis_satisfied && s < e.objective_satisfied) {
      e.objective_satisfied = s;
      e.arg_satisfied = static_cast<int>(i);
    }
  }
  return e;
}

void keep_if_lower(std::optional<SearchFinding>& slot, double objective, const SlackReport& r,
                   const Instance& inst, int restart) {
  if (!slot || objective < slot->objective) slot = SearchFinding{objective, r, inst, restart};
}

}  // namespace

void SearchConfig::validate() const {
  if (budget < 0) throw Error(ErrorCode::ParameterOutOfRange, "budget must be >= 0", budget);
  if (restart_every < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "restart_every must be >= 1", restart_every);
  }
  if (!(step > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "step must be > 0", step);
  SuiteConfig suite;
  suite.suite_id = suite_id;
  suite.dims = {dim};
  suite.ns = {n};
  suite.param = param;
  suite.t0 = t0;
  suite.f = f;
  suite.eig_lo = eig_lo;
  suite.eig_hi = eig_hi;
  suite.tol = tol;
  suite.validate();
}

Instance perturb_instance(const std::string& suite_id, const Instance& inst, double eps, Rng& rng,
                          const ToleranceConfig& tol, bool keep_resolution) {
  Instance out = inst;
  if (!inst.a.empty()) out.a = congruence_all(inst.a, eps, rng);
  if (!inst.b.empty()) out.b = congruence_all(inst.b, eps, rng);
  if (keep_resolution && needs_resolution(suite_id)) {
    if (!out.a.empty()) out.a = normalize_to_resolution(out.a, tol).entries();
    if (!out.b.empty()) out.b = normalize_to_resolution(out.b, tol).entries();
  }
  if (!inst.operands.empty()) out.operands = congruence_all(inst.operands, eps, rng);
  if (!inst.contractions.empty()) {
    const int d = static_cast<int>(inst.contractions.front().cols());
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (auto& c : out.contractions) {
      const ComplexMatrix g = ComplexMatrix::Identity(d, d) +
                              (eps / std::sqrt(static_cast<double>(d))) *
                                  random_complex_gaussian(d, d, rng);
      c = c * g;
      total += c.adjoint() * c;
    }
    // Rescale back under sum C*C <= I.
    const double top = max_eigenvalue(HermitianMatrix::hermitian_part(total));
    if (top > 1.0) {
      for (auto& c : out.contractions) c /= std::sqrt(top) * (1.0 + 1e-12);
    }
  }
  for (auto& s : out.stochastic) s = perturb_stochastic(s, eps, rng);
  for (auto& w : out.weights) w = perturb_weights(w, eps, rng);
  if (!inst.prob_a.empty()) out.prob_a = perturb_probability(inst.prob_a, eps, rng);
  if (!inst.prob_b.empty()) out.prob_b = perturb_probability(inst.prob_b, eps, rng);
  return out;
}

WorstInstanceReport adversarial_search(const SearchConfig& cfg) {
  cfg.validate();
  SuiteConfig suite;
  suite.suite_id = cfg.suite_id;
  suite.param = cfg.param;
  suite.t0 = cfg.t0;
  suite.f = cfg.f;
  const SuiteCase c = expand_cases(suite).front();

  WorstInstanceReport report;
  report.suite_id = cfg.suite_id;
  report.suite_case = c;
  report.free_tuples = cfg.free_tuples;
  Rng rng(trial_seed(cfg.master_seed, "search:" + cfg.suite_id, 0));

  const auto record = [&](const Evaluation& e, const Instance& inst, int restart) {
    ++report.evaluations;
    if (e.any_error) ++report.error_count;
    bool unmet = false;
    for (const auto& r : e.records) {
      const double s = r.relative_slack();
      if (r.verdict == Verdict::Fail) ++report.fail_count;
      if (r.verdict == Verdict::HypothesisUnmet) {
        unmet = true;
        if (!std::isnan(s)) {
          if (s < 0.0) ++report.unmet_negative;
          keep_if_lower(report.worst_unmet, s, r, inst, restart);
        }
      }
    }
    if (unmet) ++report.unmet_evaluations;
    if (e.arg_all >= 0) {
      keep_if_lower(report.worst, e.objective_all, e.records[e.arg_all], inst, restart);
    }
    if (e.arg_satisfied >= 0) {
      keep_if_lower(report.worst_satisfied, e.objective_satisfied, e.records[e.arg_satisfied],
                    inst, restart);
    }
  };

  std::uint64_t restart_index = 0;
  while (report.evaluations < cfg.budget) {
    GeneratorConfig gen{cfg.master_seed, cfg.dim, cfg.n, cfg.eig_lo, cfg.eig_hi, restart_index};
    const int restart = report.restarts++;
    ++restart_index;
    Instance current;
    try {
      current = generate_instance(cfg.suite_id, gen, c.param, cfg.tol);
    } catch (const Error&) {
      ++report.evaluations;
      ++report.error_count;
      continue;
    }
    Evaluation cur = evaluate(cfg, current, c);
    record(cur, current, restart);
    const bool inside = cur.all_satisfied && !cur.any_error;
    const auto objective = [inside](const Evaluation& e) {
      return inside ? e.objective_satisfied : e.objective_all;
    };
    double eps = cfg.step;
    for (int s = 1; s < cfg.restart_every && report.evaluations < cfg.budget; ++s) {
      Instance candidate;
      try {
        candidate = perturb_instance(cfg.suite_id, current, eps, rng, cfg.tol, !cfg.free_tuples);
      } catch (const Error&) {
        eps *= 0.7;
        continue;
      }
      Evaluation next = evaluate(cfg, candidate, c);
      record(next, candidate, restart);
      const bool admissible = !next.any_error && (!inside || next.all_satisfied);
      if (admissible && objective(next) < objective(cur)) {
        current = std::move(candidate);
        cur = std::move(next);
        ++report.accepted;
        eps = std::min(eps * 1.5, 1.0);
      } else {
        eps = std::max(eps * 0.7, 1e-6);
      }
    }
  }
  return report;
}

nlohmann::json worst_report_to_json(const WorstInstanceReport& r) {
  const auto finding = [](const std::optional<SearchFinding>& f) -> nlohmann::json {
    if (!f) return nullptr;
    return {{"objective", f->objective},
            {"restart", f->restart},
            {"record", report_to_json(f->report)},
            {"instance", instance_to_json(f->instance)}};
  };
  return {{"suite_id", r.suite_id},
          {"case", r.suite_case.label()},
          {"evaluations", r.evaluations},
          {"restarts", r.restarts},
          {"accepted", r.accepted},
          {"free_tuples", r.free_tuples},
          {"fail_count", r.fail_count},
          {"error_count", r.error_count},
          {"worst", finding(r.worst)},
          {"worst_satisfied", finding(r.worst_satisfied)},
          {"exploration",
           {{"unmet_evaluations", r.unmet_evaluations},
            {"unmet_negative_slack", r.unmet_negative},
            {"worst_unmet", finding(r.worst_unmet)}}}};
}

}  // namespace opentropy
