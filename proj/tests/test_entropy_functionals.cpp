#include <doctest.h>

#include <cmath>

#include "opentropy/entropy_functionals.hpp"
#include "opentropy/instance_gen.hpp"
#include "support.hpp"

using namespace opentropy;
using support::diag;

namespace {

Rng& rng() {
  static Rng r(21);
  return r;
}

HermitianMatrix hpd(int d = 3) { return random_hpd(d, 0.2, 5.0, rng()); }

}  // namespace

TEST_CASE("natural power mean examples") {
  const HermitianMatrix y = hpd();
  for (double q : {-1.0, 0.3, 2.0}) {
    CHECK_CLOSE(natural_power_mean(HermitianMatrix::identity(3), y, q), matrix_power(y, q), 1e-12);
    CHECK_CLOSE(natural_power_mean(y, y, q), y, 1e-12);
  }
  CHECK_CLOSE(natural_power_mean(diag({4}), diag({9}), 0.5), diag({6}), 1e-15);
  const HermitianMatrix x = hpd();
  CHECK_CLOSE(natural_power_mean(x, y, 0.0), x, 1e-12);
  CHECK_CLOSE(natural_power_mean(x, y, 1.0), y, 1e-12);
  CHECK_THROWS_AS(natural_power_mean(x, hpd(2), 0.5), Error);
  CHECK_THROWS_AS(natural_power_mean(diag({1, -1}), diag({1, 1}), 0.5), Error);
}

TEST_CASE("natural power mean homogeneity and commuting case") {
  const HermitianMatrix x = hpd(), y = hpd();
  CHECK_CLOSE(natural_power_mean(x * 2.5, y * 2.5, 0.4), natural_power_mean(x, y, 0.4) * 2.5,
              1e-10);
  const HermitianMatrix a = diag({1, 2, 3}), b = diag({5, 0.5, 2});
  CHECK_CLOSE(natural_power_mean(a, b, 0.7),
              diag({std::pow(1, 0.3) * std::pow(5, 0.7), std::pow(2, 0.3) * std::pow(0.5, 0.7),
                    std::pow(3, 0.3) * std::pow(2, 0.7)}),
              1e-13);
}

TEST_CASE("relative operator entropy examples") {
  const HermitianMatrix a = hpd();
  CHECK(relative_operator_entropy(a, a).frobenius_norm() < 1e-12);
  CHECK_CLOSE(relative_operator_entropy(diag({1}), diag({std::exp(1.0)})), diag({1}), 1e-15);
  CHECK(relative_operator_entropy(diag({4}), diag({1}))(0, 0).real() ==
        doctest::Approx(4 * std::log(0.25)));
  for (int t = 0; t < 10; ++t) {
    const HermitianMatrix b = hpd();
    const HermitianMatrix big = b + random_hpd(3, 0.0, 2.0, rng());
    CHECK(max_eigenvalue(relative_operator_entropy(big, b)) <= 1e-8);
  }
}

TEST_CASE("furuta entropy examples") {
  const HermitianMatrix a = hpd(), b = hpd();
  CHECK_CLOSE(furuta_entropy(a, b, 0.0), relative_operator_entropy(a, b), 1e-12);
  CHECK(furuta_entropy(diag({1}), diag({4}), 1.0)(0, 0).real() ==
        doctest::Approx(4 * std::log(4.0)));
  CHECK(furuta_entropy(a, a, 0.6).frobenius_norm() < 1e-12);
  CHECK_THROWS_AS(furuta_entropy(a, b, 1.5), Error);
  CHECK_THROWS_AS(furuta_entropy(a, b, -0.1), Error);
}

TEST_CASE("generalized entropy examples") {
  const auto root = catalog_lookup("pow_0.5");
  CHECK(generalized_entropy_term(diag({1}), diag({4}), 2.0, root)(0, 0).real() ==
        doctest::Approx(32.0));
  const HermitianMatrix a = hpd(), b = hpd();
  CHECK_CLOSE(generalized_entropy_term(a, b, 0.0, catalog_lookup("identity")), b, 1e-12);
  CHECK_CLOSE(generalized_entropy_term(a, b, 0.0, catalog_lookup("log")),
              relative_operator_entropy(a, b), 1e-12);
  CHECK_CLOSE(generalized_entropy_term(a, b, 0.35, catalog_lookup("log")), log_entropy(a, b, 0.35),
              1e-12);
  for (double q : {-1.0, 0.0, 0.5, 2.0}) {
    for (const auto& f : catalog()) {
      if (!f.is_nonnegative_on_domain) continue;
      CHECK(min_eigenvalue(generalized_entropy_term(a, b, q, f)) >=
            -1e-8 * std::max(a.frobenius_norm(), b.frobenius_norm()));
    }
  }
}

TEST_CASE("generalized entropy sum") {
  const auto log = catalog_lookup("log");
  const OperatorTuple a({diag({0.5}), diag({0.5})});
  const OperatorTuple b({diag({0.25}), diag({0.75})});
  CHECK(generalized_entropy_sum(a, b, 0.0, log)(0, 0).real() ==
        doctest::Approx(0.5 * std::log(0.5) + 0.5 * std::log(1.5)));
  CHECK(generalized_entropy_sum(a, b, 0.0, log)(0, 0).real() == doctest::Approx(-0.1438410362));
  const OperatorTuple t({hpd(), hpd()});
  CHECK(generalized_entropy_sum(t, t, 1.7, log).frobenius_norm() < 1e-11);
  const HermitianMatrix x = hpd(), y = hpd();
  CHECK_CLOSE(generalized_entropy_sum(OperatorTuple({x}), OperatorTuple({y}), 0.4, log),
              generalized_entropy_term(x, y, 0.4, log), 0.0);
  CHECK_THROWS_AS(generalized_entropy_sum(t, OperatorTuple({hpd()}), 0.5, log), Error);
}

TEST_CASE("entropy duality") {
  const auto log = catalog_lookup("log");
  for (int t = 0; t < 10; ++t) {
    const HermitianMatrix a = hpd(), b = hpd();
    const double scale = a.frobenius_norm() + b.frobenius_norm();
    for (double q : {-1.0, 0.0, 0.3, 0.5, 1.0, 2.0}) {
      const HermitianMatrix lhs = generalized_entropy_term(a, b, q, log);
      const HermitianMatrix rhs = generalized_entropy_term(b, a, 1.0 - q, log) * -1.0;
      CHECK((lhs - rhs).frobenius_norm() <= 1e-8 * scale);
      CHECK((entropy_dual(a, b, q) - lhs).frobenius_norm() <= 1e-8 * scale);
    }
    CHECK((log_entropy(a, b, 1.0) + relative_operator_entropy(b, a)).frobenius_norm() <=
          1e-8 * scale);
  }
  const HermitianMatrix a = hpd();
  CHECK(entropy_dual(a, a, 0.3).frobenius_norm() < 1e-12);
}

TEST_CASE("perspective and f-divergence") {
  const auto log = catalog_lookup("log");
  const HermitianMatrix b = hpd();
  CHECK_CLOSE(perspective(b, HermitianMatrix::identity(3), log), apply_function(b, log), 1e-12);
  const HermitianMatrix a = hpd();
  CHECK_CLOSE(perspective(b, a, catalog_lookup("identity")), b, 1e-12);
  CHECK(perspective(diag({6}), diag({2}), log)(0, 0).real() == doctest::Approx(2 * std::log(3.0)));
  const HermitianMatrix negative = diag({-1, 2});
  CHECK_NOTHROW(perspective(negative, HermitianMatrix::identity(2), catalog_lookup("identity")));
  CHECK_THROWS_AS(perspective(negative, HermitianMatrix::identity(2), log), Error);

  const OperatorTuple bs({hpd(), hpd(), hpd()});
  const OperatorTuple as({hpd(), hpd(), hpd()});
  CHECK_CLOSE(f_divergence(bs, as, catalog_lookup("identity")), bs.sum(), 1e-12);
  CHECK_CLOSE(f_divergence(OperatorTuple({b}), OperatorTuple({a}), log), perspective(b, a, log),
              0.0);
  for (const auto& f : catalog()) {
    CHECK_CLOSE(f_divergence(bs, as, f), generalized_entropy_sum(as, bs, 0.0, f), 1e-12);
  }
}

TEST_CASE("operator tuple certificates") {
  OperatorTuple uniform(std::vector<HermitianMatrix>(4, HermitianMatrix::identity(2) * 0.25));
  CHECK(uniform.sums_to_identity());
  CHECK(uniform.n() == 4);
  OperatorTuple off({HermitianMatrix::identity(2) * 0.3});
  CHECK_FALSE(off.sums_to_identity());
  CHECK_THROWS_AS(OperatorTuple(std::vector<HermitianMatrix>{}), Error);
  CHECK_THROWS_AS(OperatorTuple({diag({1, 1}), diag({1})}), Error);
  CHECK_THROWS_AS(OperatorTuple({diag({1, 0})}), Error);
}

TEST_CASE("positive maps") {
  const HermitianMatrix a = hpd();
  CHECK_CLOSE(PositiveMap::identity(3).apply(a), a, 0.0);
  CHECK_CLOSE(PositiveMap::depolarizing(2, 2).apply(diag({1, 3})), diag({2, 2}), 1e-15);
  const ComplexMatrix v = random_unitary(3, rng());
  const PositiveMap conj = PositiveMap::kraus({v});
  const auto s1 = spectral_decompose(conj.apply(a));
  const auto s2 = spectral_decompose(a);
  CHECK((s1.eigenvalues - s2.eigenvalues).norm() < 1e-12);
  CHECK_THROWS_AS(PositiveMap::kraus({v * 2.0}), Error);
  CHECK_THROWS_AS(conj.apply(hpd(2)), Error);

  const PositiveMap phi = random_positive_map(PositiveMapKind::Kraus, 3, 2, 3, rng());
  CHECK(phi.normalization_residual() <= 1e-12);
  CHECK_CLOSE(phi.apply(HermitianMatrix::identity(3)), HermitianMatrix::identity(2), 1e-12);
  for (int t = 0; t < 10; ++t) {
    const HermitianMatrix x = hpd();
    const HermitianMatrix y = x + random_hpd(3, 0.0, 1.0, rng());
    CHECK(loewner_leq(phi.apply(x), phi.apply(y)).verdict.holds);
    CHECK(min_eigenvalue(phi.apply(x)) >= 0.0);
  }
  CHECK(positive_map_kind_from_string("kraus") == PositiveMapKind::Kraus);
  CHECK(to_string(PositiveMapKind::Depolarizing) == "depolarizing");
  CHECK_THROWS_AS(positive_map_kind_from_string("unitary"), Error);
}
