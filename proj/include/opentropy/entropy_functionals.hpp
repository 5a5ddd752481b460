#pragma once

#include <string>
#include <vector>

#include "opentropy/matrix_core.hpp"
#include "opentropy/scalar_functions.hpp"

namespace opentropy {

// Finite sequence (A_1, ..., A_n) of strictly positive matrices of one
// dimension. sums_to_identity() is computed at construction, never asserted.
class OperatorTuple {
 public:
  // Throws LengthMismatch (empty), DimensionMismatch, NotStrictlyPositive.
  explicit OperatorTuple(std::vector<HermitianMatrix> entries,
                         const ToleranceConfig& tol = {});

  int n() const { return static_cast<int>(entries_.size()); }
  int dim() const { return entries_.front().dim(); }
  const HermitianMatrix& operator[](int j) const { return entries_[static_cast<size_t>(j)]; }
  const std::vector<HermitianMatrix>& entries() const { return entries_; }
  bool sums_to_identity() const { return sums_to_identity_; }
  double identity_residual() const { return identity_residual_; }
  HermitianMatrix sum() const;
  double max_frobenius_norm() const;

 private:
  std::vector<HermitianMatrix> entries_;
  bool sums_to_identity_ = false;
  double identity_residual_ = 0.0;
};

// Everything computed from a pair (A, B) goes through one decomposition of
// A and one of C = A^{-1/2} B A^{-1/2}:
//   A natural_q B        = A^{1/2} C^q A^{1/2}
//   S_q^f(A|B)           = A^{1/2} C^q f(C) A^{1/2}
//   perspective g(B, A)  = A^{1/2} f(C) A^{1/2}
// B only has to be Hermitian; operations that take powers of C require it
// to be strictly positive.
class SandwichKernel {
 public:
  SandwichKernel(const HermitianMatrix& a, const HermitianMatrix& b,
                 const ToleranceConfig& tol = {});

  int dim() const { return a_half_.dim(); }
  const HermitianMatrix& a_half() const { return a_half_; }
  const HermitianMatrix& a_inv_half() const { return a_inv_half_; }
  const SpectralDecomposition& inner() const { return inner_; }

  // A^{1/2} g(C) A^{1/2} without domain checks.
  HermitianMatrix sandwich(const std::function<double(double)>& g) const;

  HermitianMatrix power_mean(double q) const;
  HermitianMatrix entropy_term(double q, const ScalarFunction& f) const;
  HermitianMatrix perspective(const ScalarFunction& f) const;

 private:
  void require_inner_positive(const char* what) const;

  ToleranceConfig tol_;
  HermitianMatrix a_half_;
  HermitianMatrix a_inv_half_;
  SpectralDecomposition inner_;
};

// X natural_q Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^q X^{1/2}, any real q.
HermitianMatrix natural_power_mean(const HermitianMatrix& x, const HermitianMatrix& y,
                                   double q, const ToleranceConfig& tol = {});

// S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}.
HermitianMatrix relative_operator_entropy(const HermitianMatrix& a, const HermitianMatrix& b,
                                          const ToleranceConfig& tol = {});

// S_p(A|B) with p in [0, 1] (ParameterOutOfRange otherwise).
HermitianMatrix furuta_entropy(const HermitianMatrix& a, const HermitianMatrix& b, double p,
                               const ToleranceConfig& tol = {});

// S_q(A|B) with f = log and unrestricted q.
HermitianMatrix log_entropy(const HermitianMatrix& a, const HermitianMatrix& b, double q,
                            const ToleranceConfig& tol = {});

// S_q^f(A|B) = A^{1/2} C^q f(C) A^{1/2}, q unrestricted.
HermitianMatrix generalized_entropy_term(const HermitianMatrix& a, const HermitianMatrix& b,
                                         double q, const ScalarFunction& f,
                                         const ToleranceConfig& tol = {});

// sum_j S_q^f(A_j|B_j), summed in ascending j.
HermitianMatrix generalized_entropy_sum(const OperatorTuple& a, const OperatorTuple& b,
                                        double q, const ScalarFunction& f,
                                        const ToleranceConfig& tol = {});

// -S_{1-q}(B|A); equals S_q(A|B) by the swap identity.
HermitianMatrix entropy_dual(const HermitianMatrix& a, const HermitianMatrix& b, double q,
                             const ToleranceConfig& tol = {});

// g(B, A) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}; B Hermitian, A > 0.
HermitianMatrix perspective(const HermitianMatrix& b, const HermitianMatrix& a,
                            const ScalarFunction& f, const ToleranceConfig& tol = {});

// Theta(B, A) = sum_i g(B_i, A_i).
HermitianMatrix f_divergence(const OperatorTuple& b, const OperatorTuple& a,
                             const ScalarFunction& f, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Normalized positive maps

enum class PositiveMapKind { Identity, Compression, Kraus, Depolarizing };

std::string_view to_string(PositiveMapKind kind);
PositiveMapKind positive_map_kind_from_string(const std::string& s);  // InvalidKind

// Phi(X) = sum_k V_k* X V_k with V_k of shape dim_in x dim_out and
// sum_k V_k* V_k = I_out. Identity and depolarizing kinds carry no Kraus
// blocks; compression is a single isometry.
class PositiveMap {
 public:
  static PositiveMap identity(int dim);
  static PositiveMap depolarizing(int dim_in, int dim_out);
  static PositiveMap compression(ComplexMatrix isometry, const ToleranceConfig& tol = {});
  static PositiveMap kraus(std::vector<ComplexMatrix> blocks, const ToleranceConfig& tol = {});

  PositiveMapKind kind() const { return kind_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus_operators() const { return blocks_; }

  // ||Phi(I_in) - I_out||_F.
  double normalization_residual() const;

  HermitianMatrix apply(const HermitianMatrix& x) const;

 private:
  PositiveMap(PositiveMapKind kind, int dim_in, int dim_out, std::vector<ComplexMatrix> blocks)
      : kind_(kind), dim_in_(dim_in), dim_out_(dim_out), blocks_(std::move(blocks)) {}

  PositiveMapKind kind_;
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> blocks_;
};

inline HermitianMatrix apply_positive_map(const PositiveMap& phi, const HermitianMatrix& x) {
  return phi.apply(x);
}

}  // namespace opentropy
