#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "opentropy/entropy_functionals.hpp"
#include "opentropy/matrix_core.hpp"

namespace opentropy {

using Rng = std::mt19937_64;

// Stream seed for one trial: a splitmix64 chain over (master, FNV-1a of the
// suite id, trial index). Trials never share a stream, so they can run in
// any order or on any thread.
std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view suite_id,
                         std::uint64_t trial_index);

struct GeneratorConfig {
  std::uint64_t master_seed = 0;
  int dim = 3;
  int n = 3;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  std::uint64_t trial_index = 0;

  void validate(const ToleranceConfig& tol = {}) const;  // ParameterOutOfRange
  Rng stream(std::string_view suite_id) const {
    return Rng(trial_seed(master_seed, suite_id, trial_index));
  }
};

struct WeightFunction {
  std::vector<double> mu;      // length m
  std::vector<double> lambda;  // length n
  Eigen::MatrixXd omega;       // m x n, nonnegative

  int m() const { return static_cast<int>(mu.size()); }
  int n() const { return static_cast<int>(lambda.size()); }

  // Throws InvalidInput unless both marginal identities hold to `tol`:
  //   sum_i omega(i,j) mu_i = 1 for all j,  sum_j omega(i,j) lambda_j = 1 for all i.
  void validate(double tol = 1e-10) const;

  // omega == 1 everywhere.
  static WeightFunction trivial(std::vector<double> mu, std::vector<double> lambda);
};

class DoublyStochasticMatrix {
 public:
  // Throws InvalidInput unless square, nonnegative, with unit row and column
  // sums to `tol`.
  explicit DoublyStochasticMatrix(Eigen::MatrixXd entries, double tol = 1e-10);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double max_marginal_error() const;

  static DoublyStochasticMatrix identity(int n);

 private:
  Eigen::MatrixXd entries_;
};

// Complex Gaussian matrix, entries with E|z|^2 = 1.
ComplexMatrix random_complex_gaussian(int rows, int cols, Rng& rng);
// Haar-distributed unitary (QR with phase correction).
ComplexMatrix random_unitary(int dim, Rng& rng);

// U diag(lambda) U* with lambda uniform in [lo, hi] and U Haar unitary.
HermitianMatrix random_hpd(int dim, double lo, double hi, Rng& rng);
HermitianMatrix random_hpd(const GeneratorConfig& cfg, Rng& rng);

// Random Hermitian with spectrum uniform in [lo, hi] (lo may be negative).
inline HermitianMatrix random_hermitian(int dim, double lo, double hi, Rng& rng) {
  return random_hpd(dim, lo, hi, rng);
}

// A_j = S^{-1/2} X_j S^{-1/2} with S = sum_j X_j. Throws DegenerateInstance
// when a normalized entry falls below the eigenvalue floor.
OperatorTuple normalize_to_resolution(const std::vector<HermitianMatrix>& xs,
                                      const ToleranceConfig& tol = {});

// Resolution of identity from random HPD X_j, regenerating up to 100 times.
OperatorTuple random_resolution_of_identity(const GeneratorConfig& cfg, Rng& rng,
                                            const ToleranceConfig& tol = {});

// Probability vector: Dirichlet(1) sample mixed so every coordinate is at
// least `floor`.
std::vector<double> random_probability_vector(int n, Rng& rng, double floor = 1e-3);

// Uniform random permutation of {0..n-1} (Fisher-Yates).
std::vector<int> random_permutation(int n, Rng& rng);

// sum_t w_t P_t.
DoublyStochasticMatrix doubly_stochastic_from(const std::vector<std::vector<int>>& perms,
                                              const std::vector<double>& weights);
// Birkhoff combination of k uniform permutations with Dirichlet weights.
DoublyStochasticMatrix random_doubly_stochastic(int n, int k, Rng& rng);
// Sinkhorn-scaled positive matrix; the dense alternative to the Birkhoff form.
DoublyStochasticMatrix random_doubly_stochastic_sinkhorn(int n, Rng& rng);

// Scales the positive matrix `kernel` to a coupling with row sums mu and
// column sums lambda. Stops when every relative marginal error is <= 1e-12;
// throws SinkhornNonConvergence after `max_iterations`.
Eigen::MatrixXd sinkhorn_coupling(const Eigen::MatrixXd& kernel, const std::vector<double>& mu,
                                  const std::vector<double>& lambda, int max_iterations = 10000);

WeightFunction weight_function_from_coupling(const Eigen::MatrixXd& coupling,
                                             std::vector<double> mu, std::vector<double> lambda);
WeightFunction random_weight_function(const std::vector<double>& mu,
                                      const std::vector<double>& lambda, Rng& rng);
WeightFunction random_weight_function(int m, int n, Rng& rng);

// kind = kraus builds k blocks from the QR factor of a (k dim_in) x dim_out
// complex Gaussian. compression is the k = 1 case with dim_out <= dim_in.
PositiveMap random_positive_map(PositiveMapKind kind, int dim_in, int dim_out, int k, Rng& rng,
                                const ToleranceConfig& tol = {});

// Contractions C_j = G_j / ||G_j||_2 * u_j / sqrt(n), u_j uniform in [0.5, 1].
std::vector<ComplexMatrix> random_contractions(int n, int dim, Rng& rng);

struct TwoOperatorPair {
  HermitianMatrix a;
  HermitianMatrix b;
  int attempts = 0;  // draws consumed, including the accepted one
};

// Rejection sampler for pairs with A natural_{p-2} B <= I and B^2 <= A^2.
// Both hypotheses force A <= I, so A is drawn with spectrum in
// [max(eig_floor, lo'), 1]; C = A^{-1/2} B A^{-1/2} is drawn with spectrum in
// [lambda_max(A)^{1/(2-p)}, 1] and B is shrunk until B^2 <= A^2. Each pair
// is re-verified with loewner_leq before it is returned.
TwoOperatorPair generate_two_operator_pair(const GeneratorConfig& cfg, double p, Rng& rng,
                                           const ToleranceConfig& tol = {},
                                           int max_attempts = 1000);

}  // namespace opentropy
