#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "opentropy/errors.hpp"
#include "opentropy/scalar_functions.hpp"
#include "opentropy/tolerance.hpp"

namespace opentropy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Dense complex Hermitian matrix. Immutable once built; the stored entries
// are exactly Hermitian (symmetrized after validation).
class HermitianMatrix {
 public:
  // Validates ||M - M*||_F <= tol * max(1, ||M||_F), then symmetrizes.
  // Throws NotHermitian / InvalidInput.
  static HermitianMatrix from_matrix(const ComplexMatrix& m,
                                     double tol = ToleranceConfig{}.tol_eig);
  static HermitianMatrix from_real(const Eigen::MatrixXd& m,
                                   double tol = ToleranceConfig{}.tol_eig);

  // Takes the Hermitian part (M + M*)/2 without validation. Used for
  // composite results whose hermiticity only drifts by rounding.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const std::vector<double>& values);
  static HermitianMatrix scalar(double value) { return diagonal({value}); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double c) const;
  friend HermitianMatrix operator*(double c, const HermitianMatrix& h) {
    return h * c;
  }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Eigenvalues ascending, eigenvectors as the columns of a unitary matrix.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }

  // U diag(g(lambda_i)) U*.
  HermitianMatrix map(const std::function<double(double)>& g) const;
  HermitianMatrix reconstruct() const;
};

struct OrderVerdict {
  bool holds = false;
  double slack_min_eig = 0.0;
  double slack_norm = 0.0;
  double tolerance_used = 0.0;
};

struct LoewnerComparison {
  OrderVerdict verdict;
  HermitianMatrix slack;  // Y - X
};

// Throws IterationLimit if the eigensolver does not converge.
SpectralDecomposition spectral_decompose(const HermitianMatrix& h);

// f(H) by spectral calculus. Throws DomainViolation carrying the first
// eigenvalue outside f's domain.
HermitianMatrix apply_function(const HermitianMatrix& h, const ScalarFunction& f,
                               const ToleranceConfig& tol = {});
HermitianMatrix apply_function(const SpectralDecomposition& spec,
                               const ScalarFunction& f,
                               const ToleranceConfig& tol = {});

// H^q. Nonnegative integer q is accepted for any Hermitian H; otherwise H
// must be strictly positive (NotStrictlyPositive).
HermitianMatrix matrix_power(const HermitianMatrix& h, double q,
                             const ToleranceConfig& tol = {});
HermitianMatrix matrix_power(const SpectralDecomposition& spec, double q,
                             const ToleranceConfig& tol = {});

// M X M for Hermitian M.
HermitianMatrix conjugate(const HermitianMatrix& m, const HermitianMatrix& x);
// V* X V for a rectangular V (rows = dim(X)).
HermitianMatrix congruence(const ComplexMatrix& v, const HermitianMatrix& x);

// X <= Y in the Loewner order, with the relative rule
//   holds  iff  min eig(Y - X) >= -tol_order * max(1, ||Y - X||_F).
LoewnerComparison loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y,
                              const ToleranceConfig& tol = {});

double min_eigenvalue(const HermitianMatrix& h);
double max_eigenvalue(const HermitianMatrix& h);
double frobenius_norm(const HermitianMatrix& h);
HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix subtract(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix scale(const HermitianMatrix& a, double c);

// Throws NotStrictlyPositive when min eig < tol.eig_floor.
void require_strictly_positive(const HermitianMatrix& h, const ToleranceConfig& tol,
                               const char* what);
void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b,
                      const char* what);

}  // namespace opentropy
