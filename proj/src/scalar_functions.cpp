#include "opentropy/scalar_functions.hpp"

#include <cmath>
#include <cstdlib>

#include "opentropy/instance_gen.hpp"
#include "opentropy/matrix_core.hpp"

namespace opentropy {

namespace {

ScalarFunction make(std::string name, std::function<double(double)> eval, double floor,
                    bool monotone, bool concave, bool nonnegative) {
  return ScalarFunction{std::move(name), std::move(eval), floor, monotone, concave, nonnegative};
}

}  // namespace

ScalarFunction catalog_lookup(const std::string& name) {
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "log") {
    return make(name, [](double t) { return std::log(t); }, 0.0, true, true, false);
  }
  if (name == "ratio") {
    return make(name, [](double t) { return t / (1.0 + t); }, 0.0, true, true, true);
  }
  if (name == "log1p") {
    return make(name, [](double t) { return std::log1p(t); }, 0.0, true, true, true);
  }
  if (name == "neg_entropy") {
    // Operator concave, not monotone (decreasing beyond 1/e), negative on (1, inf).
    return make(name, [](double t) { return -t * std::log(t); }, 0.0, false, true, false);
  }
  if (name == "identity") {
    return make(name, [](double t) { return t; }, -inf, true, true, true);
  }
  if (name.rfind("pow_", 0) == 0) {
    const std::string tail = name.substr(4);
    char* end = nullptr;
    const double r = std::strtod(tail.c_str(), &end);
    if (tail.empty() || *end != '\0' || !std::isfinite(r)) {
      throw Error(ErrorCode::UnknownFunction, "cannot parse exponent in " + name);
    }
    // t^r is operator monotone exactly for r in [0, 1]; 0 would be constant.
    if (!(r > 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::UnknownFunction, "pow_r requires r in (0, 1]: " + name, r);
    }
    return make(name, [r](double t) { return std::pow(t, r); }, 0.0, true, true, true);
  }
  throw Error(ErrorCode::UnknownFunction,
              "unknown function '" + name +
                  "' (expected log | pow_<r> | ratio | log1p | neg_entropy | identity)");
}

std::vector<ScalarFunction> catalog() {
  std::vector<ScalarFunction> out;
  for (const char* n : {"log", "pow_0.5", "ratio", "log1p", "neg_entropy", "identity"}) {
    out.push_back(catalog_lookup(n));
  }
  return out;
}

bool check_operator_concavity_numeric(const ScalarFunction& f, int trials, int dim,
                                      std::mt19937_64& rng, const ToleranceConfig& tol) {
  // Sample inside the domain even for functions defined on the whole line.
  const double lo = std::max(0.1, f.has_bounded_domain() ? f.domain_floor + 0.1 : 0.1);
  const double hi = lo + 9.9;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const HermitianMatrix a = random_hpd(dim, lo, hi, rng);
    const HermitianMatrix b = random_hpd(dim, lo, hi, rng);
    const double lambda = unit(rng);
    const HermitianMatrix mix = lambda * a + (1.0 - lambda) * b;
    const HermitianMatrix lhs =
        lambda * apply_function(a, f, tol) + (1.0 - lambda) * apply_function(b, f, tol);
    const HermitianMatrix rhs = apply_function(mix, f, tol);
    if (!loewner_leq(lhs, rhs, tol).verdict.holds) return false;
  }
  return true;
}

}  // namespace opentropy
