#include "opentropy/entropy_functionals.hpp"

#include <cmath>

namespace opentropy {

// ---------------------------------------------------------------------------
// OperatorTuple

OperatorTuple::OperatorTuple(std::vector<HermitianMatrix> entries, const ToleranceConfig& tol)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorCode::LengthMismatch, "operator tuple is empty");
  for (const auto& e : entries_) {
    require_same_dim(entries_.front(), e, "operator tuple");
    require_strictly_positive(e, tol, "operator tuple entry");
  }
  identity_residual_ = (sum() - HermitianMatrix::identity(dim())).frobenius_norm();
  sums_to_identity_ = identity_residual_ <= n() * tol.tol_eig;
}

HermitianMatrix OperatorTuple::sum() const {
  HermitianMatrix s = HermitianMatrix::zero(dim());
  for (const auto& e : entries_) s = s + e;
  return s;
}

double OperatorTuple::max_frobenius_norm() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.frobenius_norm());
  return m;
}

// ---------------------------------------------------------------------------
// SandwichKernel

SandwichKernel::SandwichKernel(const HermitianMatrix& a, const HermitianMatrix& b,
                               const ToleranceConfig& tol)
    : tol_(tol),
      a_half_(HermitianMatrix::zero(a.dim())),
      a_inv_half_(HermitianMatrix::zero(a.dim())) {
  require_same_dim(a, b, "sandwich kernel");
  const SpectralDecomposition a_spec = spectral_decompose(a);
  if (a_spec.min_eigenvalue() < tol.eig_floor) {
    throw Error(ErrorCode::NotStrictlyPositive,
                "A must be strictly positive (min eigenvalue " +
                    std::to_string(a_spec.min_eigenvalue()) + ")",
                a_spec.min_eigenvalue());
  }
  a_half_ = a_spec.map([](double x) { return std::sqrt(x); });
  a_inv_half_ = a_spec.map([](double x) { return 1.0 / std::sqrt(x); });
  inner_ = spectral_decompose(conjugate(a_inv_half_, b));
}

HermitianMatrix SandwichKernel::sandwich(const std::function<double(double)>& g) const {
  return conjugate(a_half_, inner_.map(g));
}

void SandwichKernel::require_inner_positive(const char* what) const {
  if (inner_.min_eigenvalue() < tol_.eig_floor) {
    throw Error(ErrorCode::NotStrictlyPositive,
                std::string(what) + ": A^{-1/2} B A^{-1/2} has eigenvalue " +
                    std::to_string(inner_.min_eigenvalue()),
                inner_.min_eigenvalue());
  }
}

HermitianMatrix SandwichKernel::power_mean(double q) const {
  if (q == 0.0) return conjugate(a_half_, HermitianMatrix::identity(dim()));
  require_inner_positive("power mean");
  return sandwich([q](double c) { return std::pow(c, q); });
}

HermitianMatrix SandwichKernel::entropy_term(double q, const ScalarFunction& f) const {
  require_inner_positive("entropy term");
  for (Eigen::Index i = 0; i < inner_.eigenvalues.size(); ++i) {
    const double c = inner_.eigenvalues(i);
    if (!f.admits(c, tol_)) {
      throw Error(ErrorCode::DomainViolation,
                  "eigenvalue " + std::to_string(c) + " of A^{-1/2} B A^{-1/2} outside the domain of " +
                      f.name,
                  c);
    }
  }
  return sandwich([q, &f](double c) { return std::pow(c, q) * f.eval(c); });
}

HermitianMatrix SandwichKernel::perspective(const ScalarFunction& f) const {
  return conjugate(a_half_, apply_function(inner_, f, tol_));
}

// ---------------------------------------------------------------------------
// Functionals

namespace {

void require_both_positive(const HermitianMatrix& a, const HermitianMatrix& b,
                           const ToleranceConfig& tol) {
  require_same_dim(a, b, "entropy functional");
  require_strictly_positive(a, tol, "A");
  require_strictly_positive(b, tol, "B");
}

const ScalarFunction& log_fn() {
  static const ScalarFunction f = catalog_lookup("log");
  return f;
}

}  // namespace

HermitianMatrix natural_power_mean(const HermitianMatrix& x, const HermitianMatrix& y, double q,
                                   const ToleranceConfig& tol) {
  require_both_positive(x, y, tol);
  return SandwichKernel(x, y, tol).power_mean(q);
}

HermitianMatrix relative_operator_entropy(const HermitianMatrix& a, const HermitianMatrix& b,
                                          const ToleranceConfig& tol) {
  return log_entropy(a, b, 0.0, tol);
}

HermitianMatrix furuta_entropy(const HermitianMatrix& a, const HermitianMatrix& b, double p,
                               const ToleranceConfig& tol) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "Furuta entropy needs p in [0, 1]", p);
  }
  return log_entropy(a, b, p, tol);
}

HermitianMatrix log_entropy(const HermitianMatrix& a, const HermitianMatrix& b, double q,
                            const ToleranceConfig& tol) {
  return generalized_entropy_term(a, b, q, log_fn(), tol);
}

HermitianMatrix generalized_entropy_term(const HermitianMatrix& a, const HermitianMatrix& b,
                                         double q, const ScalarFunction& f,
                                         const ToleranceConfig& tol) {
  require_both_positive(a, b, tol);
  return SandwichKernel(a, b, tol).entropy_term(q, f);
}

HermitianMatrix generalized_entropy_sum(const OperatorTuple& a, const OperatorTuple& b, double q,
                                        const ScalarFunction& f, const ToleranceConfig& tol) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::LengthMismatch,
                "tuples of length " + std::to_string(a.n()) + " and " + std::to_string(b.n()));
  }
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "tuple dimensions differ");
  HermitianMatrix total = HermitianMatrix::zero(a.dim());
  for (int j = 0; j < a.n(); ++j) {
    total = total + SandwichKernel(a[j], b[j], tol).entropy_term(q, f);
  }
  return total;
}

HermitianMatrix entropy_dual(const HermitianMatrix& a, const HermitianMatrix& b, double q,
                             const ToleranceConfig& tol) {
  return -log_entropy(b, a, 1.0 - q, tol);
}

HermitianMatrix perspective(const HermitianMatrix& b, const HermitianMatrix& a,
                            const ScalarFunction& f, const ToleranceConfig& tol) {
  require_same_dim(a, b, "perspective");
  return SandwichKernel(a, b, tol).perspective(f);
}

HermitianMatrix f_divergence(const OperatorTuple& b, const OperatorTuple& a,
                             const ScalarFunction& f, const ToleranceConfig& tol) {
  if (a.n() != b.n()) throw Error(ErrorCode::LengthMismatch, "f-divergence tuple lengths differ");
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "tuple dimensions differ");
  HermitianMatrix total = HermitianMatrix::zero(a.dim());
  for (int i = 0; i < a.n(); ++i) total = total + perspective(b[i], a[i], f, tol);
  return total;
}

// ---------------------------------------------------------------------------
// PositiveMap

std::string_view to_string(PositiveMapKind kind) {
  switch (kind) {
    case PositiveMapKind::Identity: return "identity";
    case PositiveMapKind::Compression: return "compression";
    case PositiveMapKind::Kraus: return "kraus";
    case PositiveMapKind::Depolarizing: return "depolarizing";
  }
  return "unknown";
}

PositiveMapKind positive_map_kind_from_string(const std::string& s) {
  if (s == "identity") return PositiveMapKind::Identity;
  if (s == "compression") return PositiveMapKind::Compression;
  if (s == "kraus") return PositiveMapKind::Kraus;
  if (s == "depolarizing") return PositiveMapKind::Depolarizing;
  throw Error(ErrorCode::InvalidKind,
              "unknown positive map kind '" + s + "' (identity | compression | kraus | depolarizing)");
}

PositiveMap PositiveMap::identity(int dim) {
  return PositiveMap(PositiveMapKind::Identity, dim, dim, {});
}

PositiveMap PositiveMap::depolarizing(int dim_in, int dim_out) {
  return PositiveMap(PositiveMapKind::Depolarizing, dim_in, dim_out, {});
}

namespace {

void require_kraus_normalized(const std::vector<ComplexMatrix>& blocks,
                              const ToleranceConfig& tol) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidKind, "Kraus map needs at least one block");
  const auto rows = blocks.front().rows();
  const auto cols = blocks.front().cols();
  ComplexMatrix total = ComplexMatrix::Zero(cols, cols);
  for (const auto& v : blocks) {
    if (v.rows() != rows || v.cols() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus blocks must share one shape");
    }
    total += v.adjoint() * v;
  }
  const double residual = (total - ComplexMatrix::Identity(cols, cols)).norm();
  if (residual > tol.tol_eig * std::max<double>(1.0, static_cast<double>(cols))) {
    throw Error(ErrorCode::InvalidKind, "sum_k V_k* V_k is not the identity", residual);
  }
}

}  // namespace

PositiveMap PositiveMap::compression(ComplexMatrix isometry, const ToleranceConfig& tol) {
  std::vector<ComplexMatrix> blocks;
  blocks.push_back(std::move(isometry));
  require_kraus_normalized(blocks, tol);
  const int in = static_cast<int>(blocks.front().rows());
  const int out = static_cast<int>(blocks.front().cols());
  return PositiveMap(PositiveMapKind::Compression, in, out, std::move(blocks));
}

PositiveMap PositiveMap::kraus(std::vector<ComplexMatrix> blocks, const ToleranceConfig& tol) {
  require_kraus_normalized(blocks, tol);
  const int in = static_cast<int>(blocks.front().rows());
  const int out = static_cast<int>(blocks.front().cols());
  return PositiveMap(PositiveMapKind::Kraus, in, out, std::move(blocks));
}

double PositiveMap::normalization_residual() const {
  return (apply(HermitianMatrix::identity(dim_in_)) - HermitianMatrix::identity(dim_out_))
      .frobenius_norm();
}

HermitianMatrix PositiveMap::apply(const HermitianMatrix& x) const {
  if (x.dim() != dim_in_) {
    throw Error(ErrorCode::DimensionMismatch, "positive map input has dim " +
                                                  std::to_string(x.dim()) + ", expected " +
                                                  std::to_string(dim_in_));
  }
  switch (kind_) {
    case PositiveMapKind::Identity:
      return x;
    case PositiveMapKind::Depolarizing:
      return HermitianMatrix::identity(dim_out_) * (x.trace() / dim_in_);
    case PositiveMapKind::Compression:
    case PositiveMapKind::Kraus: {
      ComplexMatrix total = ComplexMatrix::Zero(dim_out_, dim_out_);
      for (const auto& v : blocks_) total += v.adjoint() * x.matrix() * v;
      return HermitianMatrix::hermitian_part(total);
    }
  }
  return x;
}

}  // namespace opentropy
