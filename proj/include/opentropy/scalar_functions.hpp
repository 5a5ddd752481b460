#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "opentropy/tolerance.hpp"

namespace opentropy {

class HermitianMatrix;

// A scalar function together with the operator-theoretic facts the
// inequality checks rely on. The flags are asserted metadata; see
// check_operator_concavity_numeric for a sampling sanity gate.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;
  // -infinity for functions defined on the whole line, otherwise the open
  // lower end of the domain.
  double domain_floor = -std::numeric_limits<double>::infinity();
  bool is_operator_monotone = false;
  bool is_operator_concave = false;
  bool is_nonnegative_on_domain = false;

  double operator()(double t) const { return eval(t); }

  bool has_bounded_domain() const {
    return domain_floor > -std::numeric_limits<double>::infinity();
  }

  // An eigenvalue is admissible when it clears the domain floor by at
  // least eig_floor, which is how strict positivity is operationalized.
  bool admits(double eigenvalue, const ToleranceConfig& tol) const {
    return !has_bounded_domain() || eigenvalue >= domain_floor + tol.eig_floor;
  }

  // f : (0,inf) -> [0,inf), operator monotone and operator concave.
  bool is_monotone_concave_nonnegative() const {
    return is_operator_monotone && is_operator_concave &&
           is_nonnegative_on_domain;
  }
};

// Accepted names: log | pow_<r> with r in (0,1] | ratio | log1p |
// neg_entropy | identity. Throws UnknownFunction otherwise.
ScalarFunction catalog_lookup(const std::string& name);

// The six catalog entries (pow_r represented by pow_0.5).
std::vector<ScalarFunction> catalog();

// Samples (A, B, lambda) with spectra in [0.1, 10] and tests
//   lambda f(A) + (1 - lambda) f(B) <= f(lambda A + (1 - lambda) B).
// Returns false on the first violation beyond tol.tol_order.
bool check_operator_concavity_numeric(const ScalarFunction& f, int trials,
                                      int dim, std::mt19937_64& rng,
                                      const ToleranceConfig& tol = {});

}  // namespace opentropy
