#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opentropy/entropy_functionals.hpp"
#include "opentropy/instance_gen.hpp"
#include "opentropy/matrix_core.hpp"

namespace opentropy {

enum class Verdict { Pass, Fail, HypothesisUnmet, Error };

std::string_view to_string(Verdict v);

// (master_seed, suite_id, trial_index) regenerates the instance; stream_seed
// is the derived per-trial seed, recorded for convenience.
struct ReplayHandle {
  std::uint64_t master_seed = 0;
  std::string suite_id;
  std::uint64_t trial_index = 0;
  std::uint64_t stream_seed = 0;
};

// One inequality evaluated on one instance. The slack is (greater side) -
// (lesser side); the inequality holds iff it is PSD. For identities
// (equality_check) the verdict is decided by slack_norm instead.
//
// Non-computable slacks (the instance left the domain of f because a
// hypothesis failed) are NaN and serialize as null.
struct SlackReport {
  std::string suite_id;
  std::string component;
  std::uint64_t trial_index = 0;
  int dim = 0;
  int n = 0;
  std::optional<double> param;  // p, q or t depending on the suite
  std::optional<double> t0;
  std::string f;
  bool equality_check = false;
  bool hypothesis_satisfied = false;
  double slack_min_eig = 0.0;
  double slack_max_eig = 0.0;
  double slack_norm = 0.0;
  double scale = 0.0;
  // max|eig| / min|eig| of the slack, the triage aid for near-zero fails.
  double slack_condition = 0.0;
  Verdict verdict = Verdict::Error;
  ReplayHandle instance_seed;
  std::string note;
  std::optional<HermitianMatrix> slack;  // kept in memory, never serialized

  // Slack measured in units of max(1, scale); NaN when not computable.
  double relative_slack() const;
};

// verdict = hypothesis_unmet  iff  !hypothesis_satisfied
// verdict = pass  iff  hypothesis_satisfied and
//     slack_min_eig >= -tol_order * max(1, scale)      (inequalities)
//     slack_norm    <=  tol_order * max(1, scale)      (identities)
Verdict decide_verdict(const SlackReport& r, const ToleranceConfig& tol);

// Fills the eigen statistics from `slack`, sets the verdict.
SlackReport make_report(std::string component, const HermitianMatrix& slack, double scale,
                        bool hypothesis_satisfied, const ToleranceConfig& tol,
                        bool keep_slack = true);
// Hypothesis-unmet record whose slack could not be formed.
SlackReport unmet_report(std::string component, double scale, std::string note);

// ---------------------------------------------------------------------------
// One check per inequality. Each returns its reports in a fixed order; the
// runner stamps suite, trial and replay fields.

// f[sum A_j#_{p+1}B_j + t0(I - sum A_j#_pB_j)] - f(t0)(I - sum A_j#_pB_j) >= S_p^f(A|B)
// for identity-summing tuples, p in [0,1], f monotone, concave, nonnegative.
std::vector<SlackReport> check_theorem_upper(const OperatorTuple& a, const OperatorTuple& b,
                                             double p, const ScalarFunction& f, double t0,
                                             const ToleranceConfig& tol = {});

// S_p^f(A|B) >= -f[sum A_j#_{p-1}B_j + t0(I - sum A_j#_pB_j)] + f(t0)(I - sum A_j#_pB_j)
// for p in [2,3]. The bracket may leave dom(f); such trials are unmet.
std::vector<SlackReport> check_theorem_lower(const OperatorTuple& a, const OperatorTuple& b,
                                             double p, const ScalarFunction& f, double t0,
                                             const ToleranceConfig& tol = {});

// Both sides of the f = log chain under the gate sum A_j#_pB_j <= I.
// Components: "upper", "lower".
std::vector<SlackReport> check_furuta_chain(const OperatorTuple& a, const OperatorTuple& b,
                                            double p, double t0, const ToleranceConfig& tol = {});

// (i) f(sum B_j A_j^{-1} B_j) >= S_1^f   (ii) f(1) I >= S_0^f.
std::vector<SlackReport> check_monotone_concave_bounds(const OperatorTuple& a,
                                                       const OperatorTuple& b,
                                                       const ScalarFunction& f,
                                                       const ToleranceConfig& tol = {});

// log(sum A_j^{-1}) >= (log n) I - (1/n) sum log A_j.
std::vector<SlackReport> check_inverse_sum_log(const OperatorTuple& a,
                                               const ToleranceConfig& tol = {});

// -sum A_j log A_j <= (log n) I, both as A^{1/2} log A A^{1/2}
// ("symmetrized") and as A log A ("plain").
std::vector<SlackReport> check_operator_entropy_bound(const OperatorTuple& a,
                                                      const ToleranceConfig& tol = {});

// -sum a_j log(b_j / a_j) >= 0 for strictly positive probability vectors.
std::vector<SlackReport> check_kl_scalar(const std::vector<double>& a,
                                         const std::vector<double>& b,
                                         const ToleranceConfig& tol = {});

// Single-pair bounds under A#_{p-2}B <= I and B^2 <= A^2, p in [0,1].
// Components: "upper", "lower", "intermediate" (I - A#_pB).
std::vector<SlackReport> check_two_operator_bounds(const HermitianMatrix& a,
                                                   const HermitianMatrix& b, double p,
                                                   const ScalarFunction& f, double t0,
                                                   const ToleranceConfig& tol = {});

// f(sum lambda_j Phi(A_j)) >= sum_i mu_i f(sum_j omega(i,j) lambda_j Phi(A_j))
//                          >= sum lambda_j Phi(f(A_j)).
// Components: "chain_upper", "chain_lower".
std::vector<SlackReport> check_jensen_refinement(const WeightFunction& w, const PositiveMap& phi,
                                                 const std::vector<HermitianMatrix>& operands,
                                                 const ScalarFunction& f,
                                                 const ToleranceConfig& tol = {});

struct InterpolationGrid {
  std::vector<double> t = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> eta = {0.25, 0.5};
};

// Chain at every grid t for F(t) = sum_i mu_i f(sum_j [(1-t)w1 + t w2](i,j)
// lambda_j Phi(A_j)), and the Loewner concavity inequality
//   F(eta t1 + (1-eta) t2) >= eta F(t1) + (1-eta) F(t2)
// for every (t1 != t2, eta) in grid; "row_concavity" is the worst of the same
// inequality over the individual rows i. w1 and w2 must share (mu, lambda).
std::vector<SlackReport> check_interpolated_jensen(const WeightFunction& w1,
                                                   const WeightFunction& w2,
                                                   const PositiveMap& phi,
                                                   const std::vector<HermitianMatrix>& operands,
                                                   const ScalarFunction& f,
                                                   const InterpolationGrid& grid = {},
                                                   const ToleranceConfig& tol = {});

// The same with m = n, lambda = mu = 1/n, omega1 = n B, omega2 = n C; the
// components carry a "bc_" prefix.
std::vector<SlackReport> check_interpolated_jensen(const DoublyStochasticMatrix& b,
                                                   const DoublyStochasticMatrix& c,
                                                   const PositiveMap& phi,
                                                   const std::vector<HermitianMatrix>& operands,
                                                   const ScalarFunction& f,
                                                   const InterpolationGrid& grid = {},
                                                   const ToleranceConfig& tol = {});

// M(t) = sum_i eta(sum_j [(1-t)b_ij + t c_ij] A_j), eta(x) = -x log x:
//   (log n) I >= M(t) >= -sum A_j log A_j.
// Components: "upper", "lower".
std::vector<SlackReport> check_refined_entropy(const OperatorTuple& a,
                                               const DoublyStochasticMatrix& b,
                                               const DoublyStochasticMatrix& c, double t,
                                               const ToleranceConfig& tol = {});

// ||S_q(A|B) + S_{1-q}(B|A)||_F, scale = ||A||_F + ||B||_F.
std::vector<SlackReport> check_entropy_duality(const HermitianMatrix& a, const HermitianMatrix& b,
                                               double q, const ToleranceConfig& tol = {});

// (sum A_j) #_q (sum B_j) - sum A_j #_q B_j, q in [0,1].
std::vector<SlackReport> check_natural_subadditivity(const OperatorTuple& a,
                                                     const OperatorTuple& b, double q,
                                                     const ToleranceConfig& tol = {});

// f(sum C_j* X_j C_j + t0(I - sum C_j* C_j)) >= sum C_j* f(X_j) C_j + f(t0)(I - sum C_j* C_j)
// for sum C_j* C_j <= I. Throws HypothesisUnmet when that gate fails.
std::vector<SlackReport> check_contraction_jensen(const std::vector<ComplexMatrix>& contractions,
                                                  const std::vector<HermitianMatrix>& operands,
                                                  double t0, const ScalarFunction& f,
                                                  const ToleranceConfig& tol = {});

}  // namespace opentropy
