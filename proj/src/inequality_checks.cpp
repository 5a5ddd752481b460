#include "opentropy/inequality_checks.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace opentropy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

const ScalarFunction& fn(const char* name) {
  static const std::map<std::string, ScalarFunction> cache = [] {
    std::map<std::string, ScalarFunction> m;
    for (const char* n : {"log", "neg_entropy"}) m.emplace(n, catalog_lookup(n));
    return m;
  }();
  return cache.at(name);
}

// Evaluates `build` unless the hypothesis is already known to fail and the
// evaluation leaves the domain, in which case the record is unmet.
template <typename Build>
SlackReport guarded(const std::string& component, double scale, bool hypothesis,
                    const ToleranceConfig& tol, Build&& build) {
  try {
    return make_report(component, build(), scale, hypothesis, tol);
  } catch (const Error& e) {
    const bool domain = e.code() == ErrorCode::DomainViolation ||
                        e.code() == ErrorCode::NotStrictlyPositive;
    if (hypothesis || !domain) throw;
    return unmet_report(component, scale, e.what());
  }
}

double max_norm(const std::vector<HermitianMatrix>& xs) {
  double m = 0.0;
  for (const auto& x : xs) m = std::max(m, x.frobenius_norm());
  return m;
}

std::vector<SandwichKernel> kernels(const OperatorTuple& a, const OperatorTuple& b,
                                    const ToleranceConfig& tol) {
  if (a.n() != b.n()) throw Error(ErrorCode::LengthMismatch, "tuples differ in length");
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "tuples differ in dim");
  std::vector<SandwichKernel> out;
  out.reserve(static_cast<size_t>(a.n()));
  for (int j = 0; j < a.n(); ++j) out.emplace_back(a[j], b[j], tol);
  return out;
}

HermitianMatrix sum_power_means(const std::vector<SandwichKernel>& ks, double q) {
  HermitianMatrix s = HermitianMatrix::zero(ks.front().dim());
  for (const auto& k : ks) s = s + k.power_mean(q);
  return s;
}

HermitianMatrix sum_entropy_terms(const std::vector<SandwichKernel>& ks, double q,
                                  const ScalarFunction& f) {
  HermitianMatrix s = HermitianMatrix::zero(ks.front().dim());
  for (const auto& k : ks) s = s + k.entropy_term(q, f);
  return s;
}

void stamp(std::vector<SlackReport>& reports, int dim, int n, std::optional<double> param,
           std::optional<double> t0, const std::string& f) {
  for (auto& r : reports) {
    r.dim = dim;
    r.n = n;
    r.param = param;
    r.t0 = t0;
    r.f = f;
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::HypothesisUnmet: return "hypothesis_unmet";
    case Verdict::Error: return "error";
  }
  return "error";
}

double SlackReport::relative_slack() const {
  const double denom = std::max(1.0, scale);
  return equality_check ? -slack_norm / denom : slack_min_eig / denom;
}

Verdict decide_verdict(const SlackReport& r, const ToleranceConfig& tol) {
  if (!r.hypothesis_satisfied) return Verdict::HypothesisUnmet;
  const double bound = tol.tol_order * std::max(1.0, r.scale);
  if (r.equality_check) return r.slack_norm <= bound ? Verdict::Pass : Verdict::Fail;
  return r.slack_min_eig >= -bound ? Verdict::Pass : Verdict::Fail;
}

SlackReport make_report(std::string component, const HermitianMatrix& slack, double scale,
                        bool hypothesis_satisfied, const ToleranceConfig& tol, bool keep_slack) {
  SlackReport r;
  r.component = std::move(component);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(slack.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IterationLimit, "slack eigensolver did not converge");
  }
  r.slack_min_eig = solver.eigenvalues()(0);
  r.slack_max_eig = solver.eigenvalues()(solver.eigenvalues().size() - 1);
  r.slack_norm = slack.frobenius_norm();
  const RealVector mags = solver.eigenvalues().cwiseAbs();
  r.slack_condition = mags.minCoeff() > 0.0 ? mags.maxCoeff() / mags.minCoeff()
                                            : std::numeric_limits<double>::infinity();
  r.scale = scale;
  r.hypothesis_satisfied = hypothesis_satisfied;
  r.dim = slack.dim();
  if (keep_slack) r.slack = slack;
  r.verdict = decide_verdict(r, tol);
  return r;
}

SlackReport unmet_report(std::string component, double scale, std::string note) {
  SlackReport r;
  r.component = std::move(component);
  r.slack_min_eig = kNaN;
  r.slack_max_eig = kNaN;
  r.slack_norm = kNaN;
  r.slack_condition = kNaN;
  r.scale = scale;
  r.hypothesis_satisfied = false;
  r.verdict = Verdict::HypothesisUnmet;
  r.note = std::move(note);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<SlackReport> check_theorem_upper(const OperatorTuple& a, const OperatorTuple& b,
                                             double p, const ScalarFunction& f, double t0,
                                             const ToleranceConfig& tol) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "t0 must be > 0", t0);
  const auto ks = kernels(a, b, tol);
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  const bool hypothesis = a.sums_to_identity() && b.sums_to_identity() && in_unit_interval(p) &&
                          f.is_monotone_concave_nonnegative();
  const double scale = std::max(a.max_frobenius_norm(), b.max_frobenius_norm());

  std::vector<SlackReport> out;
  out.push_back(guarded("upper", scale, hypothesis, tol, [&] {
    const HermitianMatrix gap = id - sum_power_means(ks, p);
    const HermitianMatrix bracket = sum_power_means(ks, p + 1.0) + t0 * gap;
    return apply_function(bracket, f, tol) - f(t0) * gap - sum_entropy_terms(ks, p, f);
  }));
  stamp(out, a.dim(), a.n(), p, t0, f.name);
  return out;
}

std::vector<SlackReport> check_theorem_lower(const OperatorTuple& a, const OperatorTuple& b,
                                             double p, const ScalarFunction& f, double t0,
                                             const ToleranceConfig& tol) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "t0 must be > 0", t0);
  const auto ks = kernels(a, b, tol);
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  const double scale = std::max(a.max_frobenius_norm(), b.max_frobenius_norm());
  bool hypothesis = a.sums_to_identity() && b.sums_to_identity() && p >= 2.0 && p <= 3.0 &&
                    f.is_monotone_concave_nonnegative();

  std::vector<SlackReport> out;
  const HermitianMatrix gap = id - sum_power_means(ks, p);
  const HermitianMatrix bracket = sum_power_means(ks, p - 1.0) + t0 * gap;
  const double bracket_min = min_eigenvalue(bracket);
  if (!f.admits(bracket_min, tol)) {
    out.push_back(unmet_report("lower", scale,
                               "f-argument eigenvalue " + std::to_string(bracket_min) +
                                   " outside the domain of " + f.name));
  } else {
    out.push_back(guarded("lower", scale, hypothesis, tol, [&] {
      return sum_entropy_terms(ks, p, f) + apply_function(bracket, f, tol) - f(t0) * gap;
    }));
  }
  stamp(out, a.dim(), a.n(), p, t0, f.name);
  return out;
}

std::vector<SlackReport> check_furuta_chain(const OperatorTuple& a, const OperatorTuple& b,
                                            double p, double t0, const ToleranceConfig& tol) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "t0 must be > 0", t0);
  const ScalarFunction& log = fn("log");
  const auto ks = kernels(a, b, tol);
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  const double scale = std::max(a.max_frobenius_norm(), b.max_frobenius_norm());
  const HermitianMatrix mean_p = sum_power_means(ks, p);
  const bool gate = loewner_leq(mean_p, id, tol).verdict.holds;
  const bool hypothesis = gate && in_unit_interval(p);
  const HermitianMatrix gap = id - mean_p;
  const HermitianMatrix entropy = sum_entropy_terms(ks, p, log);

  std::vector<SlackReport> out;
  out.push_back(guarded("upper", scale, hypothesis, tol, [&] {
    return apply_function(sum_power_means(ks, p + 1.0) + t0 * gap, log, tol) -
           std::log(t0) * gap - entropy;
  }));
  out.push_back(guarded("lower", scale, hypothesis, tol, [&] {
    return entropy + apply_function(sum_power_means(ks, p - 1.0) + t0 * gap, log, tol) -
           std::log(t0) * gap;
  }));
  if (!gate) {
    for (auto& r : out) r.note = "gate sum A_j#_pB_j <= I failed";
  }
  stamp(out, a.dim(), a.n(), p, t0, "log");
  return out;
}

std::vector<SlackReport> check_monotone_concave_bounds(const OperatorTuple& a,
                                                       const OperatorTuple& b,
                                                       const ScalarFunction& f,
                                                       const ToleranceConfig& tol) {
  const auto ks = kernels(a, b, tol);
  const double scale = std::max(a.max_frobenius_norm(), b.max_frobenius_norm());
  const bool hypothesis =
      a.sums_to_identity() && b.sums_to_identity() && f.is_monotone_concave_nonnegative();
  const int d = a.dim();

  std::vector<SlackReport> out;
  out.push_back(guarded("i", scale, hypothesis, tol, [&] {
    HermitianMatrix quad = HermitianMatrix::zero(d);
    for (int j = 0; j < a.n(); ++j) {
      const HermitianMatrix a_inv = matrix_power(a[j], -1.0, tol);
      quad = quad + HermitianMatrix::hermitian_part(b[j].matrix() * a_inv.matrix() * b[j].matrix());
    }
    return apply_function(quad, f, tol) - sum_entropy_terms(ks, 1.0, f);
  }));
  out.push_back(guarded("ii", scale, hypothesis, tol, [&] {
    return f(1.0) * HermitianMatrix::identity(d) - sum_entropy_terms(ks, 0.0, f);
  }));
  stamp(out, d, a.n(), std::nullopt, std::nullopt, f.name);
  return out;
}

std::vector<SlackReport> check_inverse_sum_log(const OperatorTuple& a, const ToleranceConfig& tol) {
  const ScalarFunction& log = fn("log");
  const int d = a.dim();
  const double n = a.n();
  std::vector<SlackReport> out;
  out.push_back(guarded("inverse_sum", a.max_frobenius_norm(), a.sums_to_identity(), tol, [&] {
    HermitianMatrix inv_sum = HermitianMatrix::zero(d);
    HermitianMatrix log_sum = HermitianMatrix::zero(d);
    for (const auto& x : a.entries()) {
      const SpectralDecomposition s = spectral_decompose(x);
      inv_sum = inv_sum + matrix_power(s, -1.0, tol);
      log_sum = log_sum + apply_function(s, log, tol);
    }
    return apply_function(inv_sum, log, tol) - std::log(n) * HermitianMatrix::identity(d) +
           (1.0 / n) * log_sum;
  }));
  stamp(out, d, a.n(), std::nullopt, std::nullopt, "log");
  return out;
}

std::vector<SlackReport> check_operator_entropy_bound(const OperatorTuple& a,
                                                      const ToleranceConfig& tol) {
  const ScalarFunction& log = fn("log");
  const int d = a.dim();
  const double scale = a.max_frobenius_norm();
  const HermitianMatrix bound = std::log(static_cast<double>(a.n())) * HermitianMatrix::identity(d);
  std::vector<SlackReport> out;
  out.push_back(guarded("symmetrized", scale, a.sums_to_identity(), tol, [&] {
    HermitianMatrix s = bound;
    for (const auto& x : a.entries()) {
      const SpectralDecomposition spec = spectral_decompose(x);
      s = s + conjugate(matrix_power(spec, 0.5, tol), apply_function(spec, log, tol));
    }
    return s;
  }));
  out.push_back(guarded("plain", scale, a.sums_to_identity(), tol, [&] {
    HermitianMatrix s = bound;
    for (const auto& x : a.entries()) {
      s = s + HermitianMatrix::hermitian_part(x.matrix() * apply_function(x, log, tol).matrix());
    }
    return s;
  }));
  stamp(out, d, a.n(), std::nullopt, std::nullopt, "log");
  return out;
}

std::vector<SlackReport> check_kl_scalar(const std::vector<double>& a, const std::vector<double>& b,
                                         const ToleranceConfig& tol) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::LengthMismatch, "probability vectors differ in length");
  }
  double sa = 0.0;
  double sb = 0.0;
  bool positive = true;
  double kl = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    positive = positive && a[j] > 0.0 && b[j] > 0.0;
    sa += a[j];
    sb += b[j];
  }
  if (!positive) throw Error(ErrorCode::DomainViolation, "probability vectors must be positive");
  for (size_t j = 0; j < a.size(); ++j) kl -= a[j] * std::log(b[j] / a[j]);
  const bool normalized = std::abs(sa - 1.0) <= 1e-12 && std::abs(sb - 1.0) <= 1e-12;
  std::vector<SlackReport> out;
  out.push_back(make_report("kl", HermitianMatrix::scalar(kl), 1.0, normalized, tol));
  stamp(out, 1, static_cast<int>(a.size()), std::nullopt, std::nullopt, "log");
  return out;
}

std::vector<SlackReport> check_two_operator_bounds(const HermitianMatrix& a,
                                                   const HermitianMatrix& b, double p,
                                                   const ScalarFunction& f, double t0,
                                                   const ToleranceConfig& tol) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "t0 must be > 0", t0);
  require_same_dim(a, b, "two-operator bounds");
  require_strictly_positive(a, tol, "A");
  require_strictly_positive(b, tol, "B");
  const SandwichKernel k(a, b, tol);
  const HermitianMatrix id = HermitianMatrix::identity(a.dim());
  const double scale = std::max(a.frobenius_norm(), b.frobenius_norm());

  const bool shadow = loewner_leq(k.power_mean(p - 2.0), id, tol).verdict.holds;
  const bool squares = loewner_leq(HermitianMatrix::hermitian_part(b.matrix() * b.matrix()),
                                   HermitianMatrix::hermitian_part(a.matrix() * a.matrix()), tol)
                           .verdict.holds;
  const bool pair_ok = shadow && squares && in_unit_interval(p);
  const bool hypothesis = pair_ok && f.is_monotone_concave_nonnegative();

  const HermitianMatrix mean_p = k.power_mean(p);
  const HermitianMatrix gap = id - mean_p;
  std::vector<SlackReport> out;
  out.push_back(guarded("upper", scale, hypothesis, tol, [&] {
    return apply_function(k.power_mean(p + 1.0) + t0 * gap, f, tol) - f(t0) * gap -
           k.entropy_term(p, f);
  }));
  out.push_back(guarded("lower", scale, hypothesis, tol, [&] {
    return k.entropy_term(p, f) + apply_function(k.power_mean(p - 1.0) + t0 * gap, f, tol) -
           f(t0) * gap;
  }));
  out.push_back(make_report("intermediate", gap, scale, pair_ok, tol));
  if (!pair_ok) {
    std::string note;
    if (!shadow) note += "A#_{p-2}B <= I failed; ";
    if (!squares) note += "B^2 <= A^2 failed; ";
    if (!in_unit_interval(p)) note += "p outside [0,1]; ";
    for (auto& r : out) r.note += note;
  }
  stamp(out, a.dim(), 1, p, t0, f.name);
  return out;
}

// ---------------------------------------------------------------------------
// Jensen-type checks

namespace {

struct JensenSides {
  HermitianMatrix top;
  HermitianMatrix bottom;
};

bool map_normalized(const PositiveMap& phi, const ToleranceConfig& tol) {
  return phi.normalization_residual() <= tol.tol_eig * std::max(1, phi.dim_out());
}

// Phi(A_j) and the two outer sides of the chain, which do not depend on omega.
JensenSides jensen_sides(const std::vector<double>& lambda, const std::vector<HermitianMatrix>& images,
                         const PositiveMap& phi, const std::vector<HermitianMatrix>& operands,
                         const ScalarFunction& f, const ToleranceConfig& tol) {
  const int d = phi.dim_out();
  HermitianMatrix mean = HermitianMatrix::zero(d);
  HermitianMatrix bottom = HermitianMatrix::zero(d);
  for (size_t j = 0; j < operands.size(); ++j) {
    mean = mean + lambda[j] * images[j];
    bottom = bottom + lambda[j] * phi.apply(apply_function(operands[j], f, tol));
  }
  return JensenSides{apply_function(mean, f, tol), bottom};
}

// f(sum_j omega(i,j) lambda_j Y_j) for one row.
HermitianMatrix row_term(const Eigen::MatrixXd& omega, int i, const std::vector<double>& lambda,
                         const std::vector<HermitianMatrix>& images, const ScalarFunction& f,
                         const ToleranceConfig& tol) {
  HermitianMatrix s = HermitianMatrix::zero(images.front().dim());
  for (size_t j = 0; j < images.size(); ++j) {
    s = s + (omega(i, static_cast<Eigen::Index>(j)) * lambda[j]) * images[j];
  }
  return apply_function(s, f, tol);
}

HermitianMatrix middle_term(const std::vector<double>& mu, const Eigen::MatrixXd& omega,
                            const std::vector<double>& lambda,
                            const std::vector<HermitianMatrix>& images, const ScalarFunction& f,
                            const ToleranceConfig& tol) {
  HermitianMatrix s = HermitianMatrix::zero(images.front().dim());
  for (size_t i = 0; i < mu.size(); ++i) {
    s = s + mu[i] * row_term(omega, static_cast<int>(i), lambda, images, f, tol);
  }
  return s;
}

std::vector<HermitianMatrix> map_images(const PositiveMap& phi,
                                        const std::vector<HermitianMatrix>& operands) {
  std::vector<HermitianMatrix> out;
  out.reserve(operands.size());
  for (const auto& x : operands) out.push_back(phi.apply(x));
  return out;
}

void require_weight_shape(const WeightFunction& w, const std::vector<HermitianMatrix>& operands) {
  if (operands.empty() || static_cast<int>(operands.size()) != w.n()) {
    throw Error(ErrorCode::LengthMismatch, "weight function length != number of operands");
  }
}

std::vector<SlackReport> interpolated_jensen(const WeightFunction& w1, const WeightFunction& w2,
                                             const PositiveMap& phi,
                                             const std::vector<HermitianMatrix>& operands,
                                             const ScalarFunction& f,
                                             const InterpolationGrid& grid,
                                             const ToleranceConfig& tol, const std::string& prefix) {
  require_weight_shape(w1, operands);
  if (w1.mu != w2.mu || w1.lambda != w2.lambda) {
    throw Error(ErrorCode::InvalidInput, "weight functions must share mu and lambda");
  }
  const double scale = max_norm(operands);
  const bool hypothesis = f.is_operator_concave && map_normalized(phi, tol);
  const auto images = map_images(phi, operands);
  const JensenSides sides = jensen_sides(w1.lambda, images, phi, operands, f, tol);

  auto weights_at = [&](double t) -> Eigen::MatrixXd { return (1.0 - t) * w1.omega + t * w2.omega; };
  std::map<double, HermitianMatrix> cache;
  auto big_f = [&](double t) -> const HermitianMatrix& {
    auto it = cache.find(t);
    if (it == cache.end()) {
      it = cache.emplace(t, middle_term(w1.mu, weights_at(t), w1.lambda, images, f, tol)).first;
    }
    return it->second;
  };

  std::vector<SlackReport> out;
  for (double t : grid.t) {
    const HermitianMatrix& mid = big_f(t);
    SlackReport up = make_report(prefix + "chain_upper", sides.top - mid, scale, hypothesis, tol);
    SlackReport lo = make_report(prefix + "chain_lower", mid - sides.bottom, scale, hypothesis, tol);
    out.push_back(std::move(up));
    out.push_back(std::move(lo));
  }

  std::map<std::pair<double, int>, HermitianMatrix> row_cache;
  auto row_at = [&](double t, int i) -> const HermitianMatrix& {
    auto it = row_cache.find({t, i});
    if (it == row_cache.end()) {
      it = row_cache.emplace(std::make_pair(t, i), row_term(weights_at(t), i, w1.lambda, images, f, tol))
               .first;
    }
    return it->second;
  };

  std::optional<SlackReport> worst_row;
  for (double t1 : grid.t) {
    for (double t2 : grid.t) {
      if (t1 == t2) continue;  // zero slack by construction
      for (double eta : grid.eta) {
        const double tm = eta * t1 + (1.0 - eta) * t2;
        SlackReport r = make_report(prefix + "concavity",
                                    big_f(tm) - eta * big_f(t1) - (1.0 - eta) * big_f(t2), scale,
                                    hypothesis, tol);
        r.note = "t1=" + std::to_string(t1) + " t2=" + std::to_string(t2) +
                 " eta=" + std::to_string(eta);
        out.push_back(std::move(r));
        for (int i = 0; i < w1.m(); ++i) {
          const HermitianMatrix& g1 = row_at(t1, i);
          const HermitianMatrix& g2 = row_at(t2, i);
          const HermitianMatrix& gm = row_at(tm, i);
          SlackReport rr = make_report(prefix + "row_concavity",
                                       gm - eta * g1 - (1.0 - eta) * g2, scale, hypothesis, tol);
          if (!worst_row || rr.slack_min_eig < worst_row->slack_min_eig) {
            rr.note = "row=" + std::to_string(i) + " t1=" + std::to_string(t1) +
                      " t2=" + std::to_string(t2) + " eta=" + std::to_string(eta);
            worst_row = std::move(rr);
          }
        }
      }
    }
  }
  if (worst_row) out.push_back(std::move(*worst_row));
  stamp(out, phi.dim_out(), w1.n(), std::nullopt, std::nullopt, f.name);
  // chain records carry their grid point as the parameter
  for (size_t k = 0; k < 2 * grid.t.size(); ++k) out[k].param = grid.t[k / 2];
  return out;
}

}  // namespace

std::vector<SlackReport> check_jensen_refinement(const WeightFunction& w, const PositiveMap& phi,
                                                 const std::vector<HermitianMatrix>& operands,
                                                 const ScalarFunction& f,
                                                 const ToleranceConfig& tol) {
  require_weight_shape(w, operands);
  const double scale = max_norm(operands);
  const bool hypothesis = f.is_operator_concave && map_normalized(phi, tol);
  const auto images = map_images(phi, operands);
  const JensenSides sides = jensen_sides(w.lambda, images, phi, operands, f, tol);
  const HermitianMatrix mid = middle_term(w.mu, w.omega, w.lambda, images, f, tol);
  std::vector<SlackReport> out;
  out.push_back(make_report("chain_upper", sides.top - mid, scale, hypothesis, tol));
  out.push_back(make_report("chain_lower", mid - sides.bottom, scale, hypothesis, tol));
  stamp(out, phi.dim_out(), w.n(), std::nullopt, std::nullopt, f.name);
  return out;
}

std::vector<SlackReport> check_interpolated_jensen(const WeightFunction& w1,
                                                   const WeightFunction& w2,
                                                   const PositiveMap& phi,
                                                   const std::vector<HermitianMatrix>& operands,
                                                   const ScalarFunction& f,
                                                   const InterpolationGrid& grid,
                                                   const ToleranceConfig& tol) {
  return interpolated_jensen(w1, w2, phi, operands, f, grid, tol, "");
}

std::vector<SlackReport> check_interpolated_jensen(const DoublyStochasticMatrix& b,
                                                   const DoublyStochasticMatrix& c,
                                                   const PositiveMap& phi,
                                                   const std::vector<HermitianMatrix>& operands,
                                                   const ScalarFunction& f,
                                                   const InterpolationGrid& grid,
                                                   const ToleranceConfig& tol) {
  const int n = b.n();
  if (c.n() != n) throw Error(ErrorCode::DimensionMismatch, "stochastic matrices differ in size");
  const std::vector<double> uniform(static_cast<size_t>(n), 1.0 / n);
  const WeightFunction w1{uniform, uniform, n * b.entries()};
  const WeightFunction w2{uniform, uniform, n * c.entries()};
  w1.validate();
  w2.validate();
  return interpolated_jensen(w1, w2, phi, operands, f, grid, tol, "bc_");
}

std::vector<SlackReport> check_refined_entropy(const OperatorTuple& a,
                                               const DoublyStochasticMatrix& b,
                                               const DoublyStochasticMatrix& c, double t,
                                               const ToleranceConfig& tol) {
  const int n = a.n();
  if (b.n() != n || c.n() != n) {
    throw Error(ErrorCode::DimensionMismatch, "stochastic matrices must be n x n");
  }
  if (!in_unit_interval(t)) throw Error(ErrorCode::ParameterOutOfRange, "t must lie in [0,1]", t);
  const ScalarFunction& eta = fn("neg_entropy");
  const int d = a.dim();
  const double scale = a.max_frobenius_norm();

  HermitianMatrix mixed_entropy = HermitianMatrix::zero(d);
  for (int i = 0; i < n; ++i) {
    HermitianMatrix mix = HermitianMatrix::zero(d);
    for (int j = 0; j < n; ++j) mix = mix + ((1.0 - t) * b(i, j) + t * c(i, j)) * a[j];
    const double lo = min_eigenvalue(mix);
    if (lo < tol.eig_floor) {
      throw Error(ErrorCode::DomainViolation,
                  "mixed operator " + std::to_string(i) + " has eigenvalue " + std::to_string(lo),
                  lo);
    }
    mixed_entropy = mixed_entropy + apply_function(mix, eta, tol);
  }
  HermitianMatrix plain_entropy = HermitianMatrix::zero(d);
  for (const auto& x : a.entries()) plain_entropy = plain_entropy + apply_function(x, eta, tol);

  const bool hypothesis = a.sums_to_identity();
  std::vector<SlackReport> out;
  out.push_back(make_report(
      "upper", std::log(static_cast<double>(n)) * HermitianMatrix::identity(d) - mixed_entropy,
      scale, hypothesis, tol));
  out.push_back(make_report("lower", mixed_entropy - plain_entropy, scale, hypothesis, tol));
  stamp(out, d, n, t, std::nullopt, "neg_entropy");
  return out;
}

std::vector<SlackReport> check_entropy_duality(const HermitianMatrix& a, const HermitianMatrix& b,
                                               double q, const ToleranceConfig& tol) {
  const HermitianMatrix forward = log_entropy(a, b, q, tol);
  const HermitianMatrix swapped = log_entropy(b, a, 1.0 - q, tol);
  SlackReport r = make_report("duality", forward + swapped,
                              a.frobenius_norm() + b.frobenius_norm(), true, tol);
  r.equality_check = true;
  r.verdict = decide_verdict(r, tol);
  std::vector<SlackReport> out{std::move(r)};
  stamp(out, a.dim(), 1, q, std::nullopt, "log");
  return out;
}

std::vector<SlackReport> check_natural_subadditivity(const OperatorTuple& a,
                                                     const OperatorTuple& b, double q,
                                                     const ToleranceConfig& tol) {
  const auto ks = kernels(a, b, tol);
  const double scale = std::max(a.max_frobenius_norm(), b.max_frobenius_norm());
  std::vector<SlackReport> out;
  out.push_back(guarded("subadditivity", scale, in_unit_interval(q), tol, [&] {
    return natural_power_mean(a.sum(), b.sum(), q, tol) - sum_power_means(ks, q);
  }));
  stamp(out, a.dim(), a.n(), q, std::nullopt, "");
  return out;
}

std::vector<SlackReport> check_contraction_jensen(const std::vector<ComplexMatrix>& contractions,
                                                  const std::vector<HermitianMatrix>& operands,
                                                  double t0, const ScalarFunction& f,
                                                  const ToleranceConfig& tol) {
  if (contractions.empty() || contractions.size() != operands.size()) {
    throw Error(ErrorCode::LengthMismatch, "need one contraction per operand");
  }
  const int d = operands.front().dim();
  const HermitianMatrix id = HermitianMatrix::identity(d);
  HermitianMatrix gram = HermitianMatrix::zero(d);
  for (const auto& c : contractions) gram = gram + congruence(c, id);
  const auto gate = loewner_leq(gram, id, tol);
  if (!gate.verdict.holds) {
    throw Error(ErrorCode::HypothesisUnmet, "sum C_j* C_j <= I failed",
                gate.verdict.slack_min_eig);
  }
  if (!f.admits(t0, tol)) {
    throw Error(ErrorCode::DomainViolation, "t0 outside the domain of " + f.name, t0);
  }
  double scale = max_norm(operands);
  HermitianMatrix inner = HermitianMatrix::zero(d);
  HermitianMatrix outer = HermitianMatrix::zero(d);
  for (size_t j = 0; j < operands.size(); ++j) {
    inner = inner + congruence(contractions[j], operands[j]);
    outer = outer + congruence(contractions[j], apply_function(operands[j], f, tol));
    scale = std::max(scale, contractions[j].norm());
  }
  const HermitianMatrix gap = id - gram;
  std::vector<SlackReport> out;
  out.push_back(make_report("contraction",
                            apply_function(inner + t0 * gap, f, tol) - outer - f(t0) * gap, scale,
                            f.is_operator_concave, tol));
  stamp(out, d, static_cast<int>(operands.size()), std::nullopt, t0, f.name);
  return out;
}

}  // namespace opentropy
