#include "opentropy/matrix_core.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace opentropy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::DegenerateInstance: return "DegenerateInstance";
    case ErrorCode::SinkhornNonConvergence: return "SinkhornNonConvergence";
    case ErrorCode::InvalidKind: return "InvalidKind";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  if (!(tol_eig > 0.0) || !(tol_order > 0.0) || !(eig_floor > 0.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "tolerances must be strictly positive");
  }
  if (tol_eig > tol_order) {
    throw Error(ErrorCode::ParameterOutOfRange, "tol_eig must not exceed tol_order",
                tol_eig);
  }
}

ToleranceConfig ToleranceConfig::from_environment() {
  ToleranceConfig tol;
  if (const char* env = std::getenv("OPENTROPY_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw Error(ErrorCode::ParameterOutOfRange,
                  std::string("OPENTROPY_TOL is not a number: ") + env);
    }
    tol.tol_order = v;
  }
  tol.validate();
  return tol;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix HermitianMatrix::from_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidInput, "matrix must be square with dim >= 1");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  }
  const double drift = (m - m.adjoint()).norm();
  if (drift > tol * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::NotHermitian, "||M - M*||_F exceeds tolerance", drift);
  }
  return hermitian_part(m);
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& m, double tol) {
  return from_matrix(m.cast<Complex>(), tol);
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::InvalidInput, "empty diagonal");
  const auto d = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = values[static_cast<size_t>(i)];
  return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(*this, o, "add");
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(*this, o, "subtract");
  return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(-m_); }

HermitianMatrix HermitianMatrix::operator*(double c) const { return HermitianMatrix(c * m_); }

// ---------------------------------------------------------------------------
// Spectral calculus

HermitianMatrix SpectralDecomposition::map(const std::function<double(double)>& g) const {
  RealVector mapped(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) mapped(i) = g(eigenvalues(i));
  return HermitianMatrix::hermitian_part(eigenvectors * mapped.asDiagonal() *
                                         eigenvectors.adjoint());
}

HermitianMatrix SpectralDecomposition::reconstruct() const {
  return map([](double x) { return x; });
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IterationLimit, "Hermitian eigensolver did not converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix apply_function(const SpectralDecomposition& spec, const ScalarFunction& f,
                               const ToleranceConfig& tol) {
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lambda = spec.eigenvalues(i);
    if (!f.admits(lambda, tol)) {
      throw Error(ErrorCode::DomainViolation,
                  "eigenvalue " + std::to_string(lambda) + " outside the domain of " + f.name,
                  lambda);
    }
  }
  return spec.map(f.eval);
}

HermitianMatrix apply_function(const HermitianMatrix& h, const ScalarFunction& f,
                               const ToleranceConfig& tol) {
  return apply_function(spectral_decompose(h), f, tol);
}

namespace {
bool is_nonnegative_integer(double q) { return q >= 0.0 && std::floor(q) == q; }
}  // namespace

HermitianMatrix matrix_power(const SpectralDecomposition& spec, double q,
                             const ToleranceConfig& tol) {
  if (q == 0.0) return HermitianMatrix::identity(spec.dim());
  if (!is_nonnegative_integer(q) && spec.min_eigenvalue() < tol.eig_floor) {
    throw Error(ErrorCode::NotStrictlyPositive,
                "non-integer power of a matrix that is not strictly positive",
                spec.min_eigenvalue());
  }
  return spec.map([q](double x) { return std::pow(x, q); });
}

HermitianMatrix matrix_power(const HermitianMatrix& h, double q, const ToleranceConfig& tol) {
  if (q == 1.0) return h;
  return matrix_power(spectral_decompose(h), q, tol);
}

HermitianMatrix conjugate(const HermitianMatrix& m, const HermitianMatrix& x) {
  require_same_dim(m, x, "conjugate");
  return HermitianMatrix::hermitian_part(m.matrix() * x.matrix() * m.matrix());
}

HermitianMatrix congruence(const ComplexMatrix& v, const HermitianMatrix& x) {
  if (v.rows() != x.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "congruence: rows(V) != dim(X)");
  }
  return HermitianMatrix::hermitian_part(v.adjoint() * x.matrix() * v);
}

LoewnerComparison loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y,
                              const ToleranceConfig& tol) {
  require_same_dim(x, y, "loewner_leq");
  HermitianMatrix slack = y - x;
  OrderVerdict v;
  v.slack_min_eig = min_eigenvalue(slack);
  v.slack_norm = slack.frobenius_norm();
  v.tolerance_used = tol.tol_order * std::max(1.0, v.slack_norm);
  v.holds = v.slack_min_eig >= -v.tolerance_used;
  return LoewnerComparison{v, std::move(slack)};
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IterationLimit, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::IterationLimit, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

double frobenius_norm(const HermitianMatrix& h) { return h.frobenius_norm(); }
HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b) { return a + b; }
HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b) { return a - b; }
HermitianMatrix scale(const HermitianMatrix& a, double c) { return a * c; }

void require_strictly_positive(const HermitianMatrix& h, const ToleranceConfig& tol,
                               const char* what) {
  const double lo = min_eigenvalue(h);
  if (lo < tol.eig_floor) {
    throw Error(ErrorCode::NotStrictlyPositive,
                std::string(what) + ": min eigenvalue " + std::to_string(lo) +
                    " below floor",
                lo);
  }
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

}  // namespace opentropy
