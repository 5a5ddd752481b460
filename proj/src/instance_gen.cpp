#include "opentropy/instance_gen.hpp"

#include <cmath>
#include <numeric>

namespace opentropy {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view suite_id,
                         std::uint64_t trial_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ fnv1a(suite_id));
  return splitmix64(h ^ trial_index);
}

void GeneratorConfig::validate(const ToleranceConfig& tol) const {
  if (dim < 1) throw Error(ErrorCode::ParameterOutOfRange, "dim must be >= 1", dim);
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "n must be >= 1", n);
  if (!(eig_lo >= tol.eig_floor) || !(eig_lo <= eig_hi)) {
    throw Error(ErrorCode::ParameterOutOfRange, "need eig_floor <= eig_lo <= eig_hi", eig_lo);
  }
}

// ---------------------------------------------------------------------------
// WeightFunction / DoublyStochasticMatrix

void WeightFunction::validate(double tol) const {
  if (mu.empty() || lambda.empty() || omega.rows() != m() || omega.cols() != n()) {
    throw Error(ErrorCode::InvalidInput, "weight function shape mismatch");
  }
  if ((omega.array() < 0.0).any()) throw Error(ErrorCode::InvalidInput, "negative weight");
  for (int j = 0; j < n(); ++j) {
    double s = 0.0;
    for (int i = 0; i < m(); ++i) s += omega(i, j) * mu[static_cast<size_t>(i)];
    if (std::abs(s - 1.0) > tol) {
      throw Error(ErrorCode::InvalidInput, "sum_i omega(i,j) mu_i != 1", s);
    }
  }
  for (int i = 0; i < m(); ++i) {
    double s = 0.0;
    for (int j = 0; j < n(); ++j) s += omega(i, j) * lambda[static_cast<size_t>(j)];
    if (std::abs(s - 1.0) > tol) {
      throw Error(ErrorCode::InvalidInput, "sum_j omega(i,j) lambda_j != 1", s);
    }
  }
}

WeightFunction WeightFunction::trivial(std::vector<double> mu, std::vector<double> lambda) {
  WeightFunction w{std::move(mu), std::move(lambda), {}};
  w.omega = Eigen::MatrixXd::Ones(w.m(), w.n());
  w.validate();
  return w;
}

DoublyStochasticMatrix::DoublyStochasticMatrix(Eigen::MatrixXd entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::InvalidInput, "doubly stochastic matrix must be square");
  }
  if ((entries_.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidInput, "doubly stochastic matrix has a negative entry");
  }
  const double err = max_marginal_error();
  if (err > tol) throw Error(ErrorCode::InvalidInput, "row/column sums differ from 1", err);
}

double DoublyStochasticMatrix::max_marginal_error() const {
  const double rows = (entries_.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(int n) {
  return DoublyStochasticMatrix(Eigen::MatrixXd::Identity(n, n));
}

// ---------------------------------------------------------------------------
// Matrices

ComplexMatrix random_complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(rows, cols);
  // Column-major fill order, fixed so that streams are reproducible.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

namespace {

// Thin Q factor with the phases of R's diagonal divided out.
ComplexMatrix orthonormal_columns(const ComplexMatrix& z) {
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(z.rows(), z.cols());
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

ComplexMatrix random_unitary(int dim, Rng& rng) {
  return orthonormal_columns(random_complex_gaussian(dim, dim, rng));
}

HermitianMatrix random_hpd(int dim, double lo, double hi, Rng& rng) {
  RealVector lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = lo == hi ? lo : uniform(rng, lo, hi);
  const ComplexMatrix u = random_unitary(dim, rng);
  return HermitianMatrix::hermitian_part(u * lambda.asDiagonal() * u.adjoint());
}

HermitianMatrix random_hpd(const GeneratorConfig& cfg, Rng& rng) {
  return random_hpd(cfg.dim, cfg.eig_lo, cfg.eig_hi, rng);
}

OperatorTuple normalize_to_resolution(const std::vector<HermitianMatrix>& xs,
                                      const ToleranceConfig& tol) {
  if (xs.empty()) throw Error(ErrorCode::LengthMismatch, "empty tuple");
  HermitianMatrix s = HermitianMatrix::zero(xs.front().dim());
  for (const auto& x : xs) s = s + x;
  const HermitianMatrix s_inv_half = matrix_power(s, -0.5, tol);
  std::vector<HermitianMatrix> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    HermitianMatrix a = conjugate(s_inv_half, x);
    const double lo = min_eigenvalue(a);
    if (lo < tol.eig_floor) {
      throw Error(ErrorCode::DegenerateInstance, "normalized entry below the eigenvalue floor", lo);
    }
    out.push_back(std::move(a));
  }
  return OperatorTuple(std::move(out), tol);
}

OperatorTuple random_resolution_of_identity(const GeneratorConfig& cfg, Rng& rng,
                                            const ToleranceConfig& tol) {
  cfg.validate(tol);
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<HermitianMatrix> xs;
    for (int j = 0; j < cfg.n; ++j) xs.push_back(random_hpd(cfg, rng));
    try {
      OperatorTuple t = normalize_to_resolution(xs, tol);
      if (t.sums_to_identity()) return t;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateInstance) throw;
    }
  }
  throw Error(ErrorCode::DegenerateInstance, "no admissible resolution of identity in 100 draws");
}

// ---------------------------------------------------------------------------
// Stochastic objects

std::vector<double> random_probability_vector(int n, Rng& rng, double floor) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "probability vector length < 1");
  if (floor * n >= 1.0) floor = 0.0;
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(static_cast<size_t>(n));
  for (auto& v : x) v = expo(rng);
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  const double mass = 1.0 - floor * n;
  for (auto& v : x) v = floor + mass * v / total;
  // Renormalize so the sum is 1 to rounding.
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& v : x) v /= s;
  return x;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = std::uniform_int_distribution<int>(0, i)(rng);
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }
  return perm;
}

DoublyStochasticMatrix doubly_stochastic_from(const std::vector<std::vector<int>>& perms,
                                              const std::vector<double>& weights) {
  if (perms.empty() || perms.size() != weights.size()) {
    throw Error(ErrorCode::LengthMismatch, "need one weight per permutation");
  }
  const int n = static_cast<int>(perms.front().size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (size_t t = 0; t < perms.size(); ++t) {
    if (static_cast<int>(perms[t].size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "permutations of different lengths");
    }
    for (int i = 0; i < n; ++i) d(i, perms[t][static_cast<size_t>(i)]) += weights[t];
  }
  return DoublyStochasticMatrix(std::move(d));
}

DoublyStochasticMatrix random_doubly_stochastic(int n, int k, Rng& rng) {
  if (n < 1 || k < 1) throw Error(ErrorCode::ParameterOutOfRange, "need n >= 1 and k >= 1");
  std::vector<std::vector<int>> perms;
  for (int t = 0; t < k; ++t) perms.push_back(random_permutation(n, rng));
  return doubly_stochastic_from(perms, random_probability_vector(k, rng, 0.0));
}

Eigen::MatrixXd sinkhorn_coupling(const Eigen::MatrixXd& kernel, const std::vector<double>& mu,
                                  const std::vector<double>& lambda, int max_iterations) {
  const auto m = static_cast<Eigen::Index>(mu.size());
  const auto n = static_cast<Eigen::Index>(lambda.size());
  if (kernel.rows() != m || kernel.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Sinkhorn kernel shape mismatch");
  }
  if ((kernel.array() <= 0.0).any()) {
    throw Error(ErrorCode::InvalidInput, "Sinkhorn kernel must be strictly positive");
  }
  const Eigen::Map<const Eigen::VectorXd> row_target(mu.data(), m);
  const Eigen::Map<const Eigen::VectorXd> col_target(lambda.data(), n);
  Eigen::MatrixXd p = kernel;
  constexpr double kThreshold = 1e-12;
  for (int it = 0; it < max_iterations; ++it) {
    p.array().colwise() *= (row_target.array() / p.rowwise().sum().array());
    p.array().rowwise() *= (col_target.array() / p.colwise().sum().transpose().array()).transpose();
    // Columns are exact after the last sweep; measure the rows relatively.
    const double row_err =
        (p.rowwise().sum().array() / row_target.array() - 1.0).abs().maxCoeff();
    if (row_err <= kThreshold) return p;
  }
  throw Error(ErrorCode::SinkhornNonConvergence,
              "Sinkhorn scaling hit the iteration cap of " + std::to_string(max_iterations));
}

DoublyStochasticMatrix random_doubly_stochastic_sinkhorn(int n, Rng& rng) {
  Eigen::MatrixXd kernel(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) kernel(i, j) = uniform(rng, 0.05, 1.0);
  const std::vector<double> ones(static_cast<size_t>(n), 1.0);
  return DoublyStochasticMatrix(sinkhorn_coupling(kernel, ones, ones));
}

WeightFunction weight_function_from_coupling(const Eigen::MatrixXd& coupling,
                                             std::vector<double> mu, std::vector<double> lambda) {
  WeightFunction w{std::move(mu), std::move(lambda), coupling};
  for (int i = 0; i < w.m(); ++i)
    for (int j = 0; j < w.n(); ++j)
      w.omega(i, j) = coupling(i, j) / (w.mu[static_cast<size_t>(i)] * w.lambda[static_cast<size_t>(j)]);
  w.validate();
  return w;
}

WeightFunction random_weight_function(const std::vector<double>& mu,
                                      const std::vector<double>& lambda, Rng& rng) {
  const int m = static_cast<int>(mu.size());
  const int n = static_cast<int>(lambda.size());
  Eigen::MatrixXd kernel(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) kernel(i, j) = std::exp(uniform(rng, -1.5, 1.5));
  return weight_function_from_coupling(sinkhorn_coupling(kernel, mu, lambda), mu, lambda);
}

WeightFunction random_weight_function(int m, int n, Rng& rng) {
  if (m < 1 || n < 1) throw Error(ErrorCode::ParameterOutOfRange, "need m, n >= 1");
  std::vector<double> mu = random_probability_vector(m, rng);
  std::vector<double> lambda = random_probability_vector(n, rng);
  return random_weight_function(mu, lambda, rng);
}

PositiveMap random_positive_map(PositiveMapKind kind, int dim_in, int dim_out, int k, Rng& rng,
                                const ToleranceConfig& tol) {
  switch (kind) {
    case PositiveMapKind::Identity:
      if (dim_in != dim_out) throw Error(ErrorCode::DimensionMismatch, "identity map needs equal dims");
      return PositiveMap::identity(dim_in);
    case PositiveMapKind::Depolarizing:
      return PositiveMap::depolarizing(dim_in, dim_out);
    case PositiveMapKind::Compression: {
      if (dim_out > dim_in) throw Error(ErrorCode::DimensionMismatch, "compression needs dim_out <= dim_in");
      return PositiveMap::compression(orthonormal_columns(random_complex_gaussian(dim_in, dim_out, rng)), tol);
    }
    case PositiveMapKind::Kraus: {
      if (k < 1 || k * dim_in < dim_out) {
        throw Error(ErrorCode::ParameterOutOfRange, "Kraus construction needs k * dim_in >= dim_out");
      }
      const ComplexMatrix q = orthonormal_columns(random_complex_gaussian(k * dim_in, dim_out, rng));
      std::vector<ComplexMatrix> blocks;
      for (int t = 0; t < k; ++t) blocks.push_back(q.block(t * dim_in, 0, dim_in, dim_out));
      return PositiveMap::kraus(std::move(blocks), tol);
    }
  }
  throw Error(ErrorCode::InvalidKind, "unknown positive map kind");
}

std::vector<ComplexMatrix> random_contractions(int n, int dim, Rng& rng) {
  std::vector<ComplexMatrix> out;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix g = random_complex_gaussian(dim, dim, rng);
    Eigen::JacobiSVD<ComplexMatrix> svd(g);
    const double norm = svd.singularValues()(0);
    const double u = uniform(rng, 0.5, 1.0);
    out.push_back(g * (u / (norm * std::sqrt(static_cast<double>(n)))));
  }
  return out;
}

TwoOperatorPair generate_two_operator_pair(const GeneratorConfig& cfg, double p, Rng& rng,
                                           const ToleranceConfig& tol, int max_attempts) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "two-operator pairs need p in [0, 1]", p);
  }
  const HermitianMatrix id = HermitianMatrix::identity(cfg.dim);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    const double a_hi = uniform(rng, 0.3, 1.0);
    const double a_lo = uniform(rng, std::max(0.05, tol.eig_floor), a_hi);
    const HermitianMatrix a = random_hpd(cfg.dim, a_lo, a_hi, rng);
    const double c_lo = std::pow(max_eigenvalue(a), 1.0 / (2.0 - p));
    const HermitianMatrix c = random_hpd(cfg.dim, c_lo, uniform(rng, c_lo, 1.0), rng);
    HermitianMatrix b = conjugate(matrix_power(a, 0.5, tol), c);

    // B^2 <= A^2  iff  ||B A^{-1}||_2 <= 1.
    const ComplexMatrix ba_inv = b.matrix() * matrix_power(a, -1.0, tol).matrix();
    const double norm = Eigen::JacobiSVD<ComplexMatrix>(ba_inv).singularValues()(0);
    if (norm > 1.0) b = b * ((1.0 - 1e-9) / norm);

    const auto first = loewner_leq(natural_power_mean(a, b, p - 2.0, tol), id, tol);
    const auto second = loewner_leq(
        HermitianMatrix::hermitian_part(b.matrix() * b.matrix()),
        HermitianMatrix::hermitian_part(a.matrix() * a.matrix()), tol);
    if (first.verdict.holds && second.verdict.holds) return TwoOperatorPair{a, b, attempt};
  }
  throw Error(ErrorCode::RejectionBudgetExhausted,
              "no admissible two-operator pair in " + std::to_string(max_attempts) + " draws");
}

}  // namespace opentropy
