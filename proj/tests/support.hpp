#pragma once

#include <doctest.h>

#include "opentropy/matrix_core.hpp"

namespace support {

using opentropy::ComplexMatrix;
using opentropy::HermitianMatrix;

inline double rel_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x - y).norm() / std::max(1.0, std::max(x.norm(), y.norm()));
}

inline double rel_diff(const HermitianMatrix& x, const HermitianMatrix& y) {
  return rel_diff(x.matrix(), y.matrix());
}

inline HermitianMatrix diag(std::initializer_list<double> v) {
  return HermitianMatrix::diagonal(std::vector<double>(v));
}

inline HermitianMatrix real(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return HermitianMatrix::from_real(m);
}

}  // namespace support

#define CHECK_CLOSE(x, y, tol) CHECK(support::rel_diff((x), (y)) <= (tol))
