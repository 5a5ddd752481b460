#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "opentropy/instance_gen.hpp"
#include "opentropy/matrix_core.hpp"
#include "opentropy/matrix_json.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace opentropy;
using support::diag;

TEST_CASE("hermitian construction validates and symmetrizes") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(2.0, 1.0), Complex(2.0, -1.0), 3.0;
  const HermitianMatrix h = HermitianMatrix::from_matrix(m);
  CHECK(h.dim() == 2);
  CHECK(h(0, 1) == std::conj(h(1, 0)));

  ComplexMatrix bad = m;
  bad(0, 1) = 5.0;
  CHECK_THROWS_AS(HermitianMatrix::from_matrix(bad), Error);
  try {
    HermitianMatrix::from_matrix(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CHECK_THROWS_AS(HermitianMatrix::from_matrix(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("spectral_decompose examples") {
  const auto s = spectral_decompose(diag({3, 1}));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(3.0));
  CHECK((s.eigenvectors.cwiseAbs() - Eigen::MatrixXd{{0, 1}, {1, 0}}).norm() < 1e-12);

  const auto id = spectral_decompose(HermitianMatrix::identity(4));
  for (int i = 0; i < 4; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));

  const auto swap = spectral_decompose(support::real({{0, 1}, {1, 0}}));
  CHECK(swap.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(swap.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("apply_function examples") {
  const auto log = catalog_lookup("log");
  CHECK_CLOSE(apply_function(diag({1, std::exp(1.0)}), log), diag({0, 1}), 1e-14);
  for (const auto& f : catalog()) {
    CHECK_CLOSE(apply_function(HermitianMatrix::identity(3), f),
                HermitianMatrix::identity(3) * f(1.0), 1e-14);
  }
  const HermitianMatrix h = support::real({{2, 1}, {1, 2}});
  const auto r = spectral_decompose(apply_function(h, catalog_lookup("pow_0.5")));
  CHECK(r.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(r.eigenvalues(1) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("apply_function reports the offending eigenvalue") {
  try {
    apply_function(diag({-0.5, 2.0}), catalog_lookup("log"));
    FAIL("expected DomainViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
    REQUIRE(e.value().has_value());
    CHECK(*e.value() == doctest::Approx(-0.5));
  }
  CHECK_NOTHROW(apply_function(diag({-0.5, 2.0}), catalog_lookup("identity")));
}

TEST_CASE("matrix_power examples") {
  CHECK_CLOSE(matrix_power(diag({4, 9}), 0.5), diag({2, 3}), 1e-14);
  CHECK_CLOSE(matrix_power(diag({8}), 2.0 / 3.0), diag({4}), 1e-14);
  Rng rng(1);
  const HermitianMatrix h = random_hpd(4, 0.1, 10.0, rng);
  CHECK(((matrix_power(h, -1.0).matrix() * h.matrix()) - ComplexMatrix::Identity(4, 4)).norm() <
        1e-10);
  CHECK_CLOSE(matrix_power(h, 0.0), HermitianMatrix::identity(4), 0.0);
  CHECK_CLOSE(matrix_power(h, 1.0), h, 0.0);
  const HermitianMatrix indefinite = diag({-1, 2});
  CHECK_CLOSE(matrix_power(indefinite, 2.0), diag({1, 4}), 1e-14);
  try {
    matrix_power(indefinite, 0.5);
    FAIL("expected NotStrictlyPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStrictlyPositive);
  }
}

TEST_CASE("conjugate and congruence examples") {
  Rng rng(2);
  const HermitianMatrix x = random_hermitian(3, -2, 2, rng);
  CHECK_CLOSE(conjugate(HermitianMatrix::identity(3), x), x, 1e-15);
  CHECK_CLOSE(conjugate(diag({2, 1}), diag({1, 1})), diag({4, 1}), 0.0);
  CHECK_CLOSE(conjugate(diag({3}), diag({5})), diag({45}), 0.0);
  CHECK_THROWS_AS(conjugate(diag({1, 2}), diag({1})), Error);
  const ComplexMatrix v = random_complex_gaussian(3, 2, rng);
  CHECK(congruence(v, x).dim() == 2);
}

TEST_CASE("loewner_leq examples") {
  Rng rng(3);
  const HermitianMatrix x = random_hermitian(4, -1, 1, rng);
  const auto refl = loewner_leq(x, x);
  CHECK(refl.verdict.holds);
  CHECK(std::abs(refl.verdict.slack_min_eig) < 1e-15);
  CHECK(loewner_leq(diag({1, 2}), diag({2, 3})).verdict.holds);
  const auto inc = loewner_leq(diag({1, 2}), diag({2, 1}));
  CHECK_FALSE(inc.verdict.holds);
  CHECK(inc.verdict.slack_min_eig == doctest::Approx(-1.0));
  CHECK_CLOSE(inc.slack, diag({1, -1}), 0.0);
  CHECK_THROWS_AS(loewner_leq(diag({1}), diag({1, 2})), Error);
}

TEST_CASE("arithmetic helpers") {
  CHECK(min_eigenvalue(diag({5, -2})) == doctest::Approx(-2.0));
  CHECK(frobenius_norm(HermitianMatrix::identity(4)) == doctest::Approx(2.0));
  CHECK_CLOSE(scale(HermitianMatrix::identity(3), 0.0), HermitianMatrix::zero(3), 0.0);
  CHECK_CLOSE(subtract(add(diag({1, 2}), diag({3, 4})), diag({3, 4})), diag({1, 2}), 0.0);
  CHECK_THROWS_AS(add(diag({1}), diag({1, 2})), Error);
}

TEST_CASE("eigenvalues agree with the Jacobi oracle") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 7;
    const HermitianMatrix h = random_hermitian(d, -5, 5, rng);
    const auto s = spectral_decompose(h);
    const auto ref = oracle::jacobi_eigenvalues(h.matrix());
    for (int i = 0; i < d; ++i) {
      CHECK(std::abs(s.eigenvalues(i) - ref[static_cast<size_t>(i)]) <= 1e-10 * 5.0);
    }
  }
}

TEST_CASE("spectral calculus invariants") {
  Rng rng(5);
  const ToleranceConfig tol;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 6;
    const HermitianMatrix h = random_hpd(d, 0.1, 10, rng);
    const auto s = spectral_decompose(h);
    const ComplexMatrix u = s.eigenvectors;
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm() <= tol.tol_eig);
    CHECK(support::rel_diff(s.reconstruct(), h) <= tol.tol_eig);
    for (const auto& f : catalog()) {
      const HermitianMatrix fh = apply_function(h, f);
      const auto ev = oracle::jacobi_eigenvalues(fh.matrix());
      std::vector<double> expect;
      for (int i = 0; i < d; ++i) expect.push_back(f(s.eigenvalues(i)));
      std::sort(expect.begin(), expect.end());
      for (int i = 0; i < d; ++i) {
        CHECK(std::abs(ev[static_cast<size_t>(i)] - expect[static_cast<size_t>(i)]) <=
              tol.tol_eig * std::max(1.0, std::abs(expect[static_cast<size_t>(i)])));
      }
      const ComplexMatrix comm = fh.matrix() * h.matrix() - h.matrix() * fh.matrix();
      CHECK(comm.norm() <= tol.tol_eig * h.frobenius_norm() * std::max(1.0, fh.frobenius_norm()));
      const ComplexMatrix v = random_unitary(d, rng);
      const HermitianMatrix rotated = HermitianMatrix::hermitian_part(v * h.matrix() * v.adjoint());
      CHECK(support::rel_diff(apply_function(rotated, f).matrix(), v * fh.matrix() * v.adjoint()) <=
            tol.tol_eig);
    }
    const double p = 0.3, q = -1.7;
    CHECK(support::rel_diff(matrix_power(h, p).matrix() * matrix_power(h, q).matrix(),
                            matrix_power(h, p + q).matrix()) <= tol.tol_eig);
  }
}

TEST_CASE("loewner order is invariant under congruence") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix x = random_hpd(3, 0.1, 2, rng);
    const HermitianMatrix y = x + random_hpd(3, 0.01, 1, rng);
    const HermitianMatrix m = random_hermitian(3, -2, 2, rng);
    CHECK(loewner_leq(x, y).verdict.holds);
    CHECK(loewner_leq(conjugate(m, x), conjugate(m, y)).verdict.holds);
    CHECK_FALSE(loewner_leq(y, x).verdict.holds);
  }
}

TEST_CASE("tolerance config") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.tol_eig = 1e-6;
  CHECK_THROWS_AS(t.validate(), Error);
  setenv("OPENTROPY_TOL", "1e-6", 1);
  CHECK(ToleranceConfig::from_environment().tol_order == doctest::Approx(1e-6));
  setenv("OPENTROPY_TOL", "abc", 1);
  CHECK_THROWS_AS(ToleranceConfig::from_environment(), Error);
  unsetenv("OPENTROPY_TOL");
  CHECK(ToleranceConfig::from_environment().tol_order == doctest::Approx(1e-8));
}

TEST_CASE("matrix json round trip") {
  Rng rng(7);
  const HermitianMatrix h = random_hermitian(3, -1, 1, rng);
  const HermitianMatrix back = hermitian_from_json(matrix_to_json(h));
  CHECK_CLOSE(back, h, 0.0);
  const auto real_only = matrix_to_json(diag({1, 2}));
  CHECK_FALSE(real_only.contains("im"));
  CHECK_CLOSE(hermitian_from_json(real_only), diag({1, 2}), 0.0);
  CHECK_THROWS_AS(hermitian_from_json(nlohmann::json{{"dim", 2}, {"re", {{1, 2}}}}), Error);
  CHECK_THROWS_AS(hermitian_from_json(nlohmann::json{{"dim", 2}, {"re", {{1, 2}, {3, 4}}}}),
                  Error);
  CHECK_THROWS_AS(load_matrix_file("/nonexistent/m.json"), Error);
  const ComplexMatrix v = random_complex_gaussian(3, 2, rng);
  CHECK((complex_from_json(matrix_to_json(v)) - v).norm() == 0.0);
}
