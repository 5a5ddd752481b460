#pragma once

namespace opentropy {

// Numerical tolerances shared by every module.
//   tol_eig    accuracy expected from spectral computations
//   tol_order  relative slack allowed in Loewner comparisons
//   eig_floor  smallest eigenvalue still counted as strictly positive
struct ToleranceConfig {
  double tol_eig = 1e-10;
  double tol_order = 1e-8;
  double eig_floor = 1e-8;

  // Throws ParameterOutOfRange unless all positive and tol_eig <= tol_order.
  void validate() const;

  // Defaults, with tol_order taken from OPENTROPY_TOL when that is set.
  static ToleranceConfig from_environment();
};

}  // namespace opentropy
