#include <doctest.h>

#include <algorithm>
#include <set>

#include "opentropy/instance_gen.hpp"
#include "support.hpp"

using namespace opentropy;

TEST_CASE("trial seeds are deterministic and distinct") {
  CHECK(trial_seed(1, "kl", 3) == trial_seed(1, "kl", 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100; ++t) seen.insert(trial_seed(7, "thm-upper", t));
  seen.insert(trial_seed(7, "thm-lower", 0));
  seen.insert(trial_seed(8, "thm-upper", 0));
  CHECK(seen.size() == 102);
}

TEST_CASE("generator config validation") {
  GeneratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eig_lo = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.eig_lo = 5.0;
  cfg.eig_hi = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = GeneratorConfig{};
  cfg.dim = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("random_hpd examples") {
  Rng rng(1);
  CHECK_CLOSE(random_hpd(3, 1.0, 1.0, rng), HermitianMatrix::identity(3), 1e-14);
  const HermitianMatrix one = random_hpd(1, 0.5, 2.0, rng);
  CHECK(one(0, 0).real() >= 0.5);
  CHECK(one(0, 0).real() <= 2.0);
  Rng r1(99), r2(99);
  CHECK(random_hpd(4, 0.1, 10, r1).matrix() == random_hpd(4, 0.1, 10, r2).matrix());
  for (int t = 0; t < 20; ++t) {
    const auto s = spectral_decompose(random_hpd(5, 0.3, 4.0, rng));
    CHECK(s.min_eigenvalue() >= 0.3 - 1e-12);
    CHECK(s.max_eigenvalue() <= 4.0 + 1e-12);
  }
  const ComplexMatrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm() < 1e-13);
}

TEST_CASE("resolutions of identity") {
  Rng rng(2);
  GeneratorConfig cfg;
  cfg.n = 1;
  const OperatorTuple single = random_resolution_of_identity(cfg, rng);
  CHECK_CLOSE(single[0], HermitianMatrix::identity(cfg.dim), 1e-12);

  const HermitianMatrix x = random_hpd(3, 0.5, 2.0, rng);
  const OperatorTuple uniform = normalize_to_resolution({x, x, x, x});
  for (int j = 0; j < 4; ++j) CHECK_CLOSE(uniform[j], HermitianMatrix::identity(3) * 0.25, 1e-12);

  cfg.n = 3;
  cfg.dim = 4;
  for (int t = 0; t < 20; ++t) {
    const OperatorTuple r = random_resolution_of_identity(cfg, rng);
    CHECK(r.sums_to_identity());
    CHECK((r.sum() - HermitianMatrix::identity(4)).frobenius_norm() <= 1e-9);
    for (const auto& a : r.entries()) CHECK(min_eigenvalue(a) >= ToleranceConfig{}.eig_floor);
  }
}

TEST_CASE("degenerate normalization is rejected") {
  const HermitianMatrix big = HermitianMatrix::identity(2);
  const HermitianMatrix tiny = support::diag({1e-12, 1e-12});
  try {
    normalize_to_resolution({big, tiny});
    FAIL("expected DegenerateInstance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateInstance);
  }
}

TEST_CASE("doubly stochastic examples") {
  Rng rng(3);
  const auto perm = random_doubly_stochastic(5, 1, rng);
  for (int i = 0; i < 5; ++i) {
    int ones = 0;
    for (int j = 0; j < 5; ++j) ones += perm(i, j) == 1.0 ? 1 : 0;
    CHECK(ones == 1);
  }
  const auto half = doubly_stochastic_from({{0, 1}, {1, 0}}, {0.5, 0.5});
  CHECK((half.entries() - Eigen::MatrixXd::Constant(2, 2, 0.5)).norm() == 0.0);
  for (int t = 0; t < 10; ++t) {
    CHECK(random_doubly_stochastic(5, 8, rng).max_marginal_error() <= 1e-12);
    CHECK(random_doubly_stochastic_sinkhorn(4, rng).max_marginal_error() <= 1e-10);
  }
  CHECK_THROWS_AS(DoublyStochasticMatrix(Eigen::MatrixXd::Constant(2, 2, 0.4)), Error);
  CHECK_THROWS_AS(DoublyStochasticMatrix(Eigen::MatrixXd{{1.5, -0.5}, {-0.5, 1.5}}), Error);
  CHECK_THROWS_AS(DoublyStochasticMatrix(Eigen::MatrixXd::Constant(2, 3, 0.5)), Error);

  const auto p = random_permutation(6, rng);
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("probability vectors") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto v = random_probability_vector(5, rng);
    double s = 0.0;
    for (double x : v) {
      CHECK(x >= 1e-3 - 1e-15);
      s += x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("weight functions") {
  Rng rng(5);
  const std::vector<double> mu = {0.2, 0.3, 0.5};
  const std::vector<double> lambda = {0.1, 0.4, 0.25, 0.25};
  Eigen::MatrixXd independent(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) independent(i, j) = mu[i] * lambda[j];
  const WeightFunction trivial = weight_function_from_coupling(independent, mu, lambda);
  CHECK((trivial.omega - Eigen::MatrixXd::Ones(3, 4)).norm() < 1e-14);

  const WeightFunction one = random_weight_function(1, 1, rng);
  CHECK(one.mu == std::vector<double>{1.0});
  CHECK(one.omega(0, 0) == doctest::Approx(1.0));

  for (int t = 0; t < 20; ++t) CHECK_NOTHROW(random_weight_function(3, 4, rng).validate(1e-10));

  const Eigen::MatrixXd kernel = Eigen::MatrixXd::Random(3, 4).cwiseAbs().array() + 0.1;
  try {
    sinkhorn_coupling(kernel, mu, lambda, 1);
    FAIL("expected SinkhornNonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SinkhornNonConvergence);
  }

  WeightFunction broken = trivial;
  broken.omega(0, 0) += 0.1;
  CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("random positive maps") {
  Rng rng(6);
  CHECK(random_positive_map(PositiveMapKind::Identity, 3, 3, 1, rng).kind() ==
        PositiveMapKind::Identity);
  const PositiveMap single = random_positive_map(PositiveMapKind::Kraus, 3, 3, 1, rng);
  const ComplexMatrix v = single.kraus_operators().at(0);
  CHECK((v.adjoint() * v - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((v * v.adjoint() - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  const PositiveMap three = random_positive_map(PositiveMapKind::Kraus, 3, 3, 3, rng);
  CHECK(three.kraus_operators().size() == 3);
  CHECK(three.normalization_residual() <= 1e-12);
  const PositiveMap comp = random_positive_map(PositiveMapKind::Compression, 4, 2, 1, rng);
  CHECK(comp.normalization_residual() <= 1e-12);
  CHECK_THROWS_AS(random_positive_map(PositiveMapKind::Compression, 2, 4, 1, rng), Error);
  CHECK(random_positive_map(PositiveMapKind::Depolarizing, 3, 2, 1, rng).apply(
            HermitianMatrix::identity(3)).matrix() == ComplexMatrix::Identity(2, 2));
}

TEST_CASE("random contractions satisfy the gate") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto cs = random_contractions(3, 4, rng);
    ComplexMatrix total = ComplexMatrix::Zero(4, 4);
    for (const auto& c : cs) total += c.adjoint() * c;
    CHECK(max_eigenvalue(HermitianMatrix::hermitian_part(total)) <= 1.0);
  }
}

TEST_CASE("two-operator pairs") {
  // A = cI, B = I gives A#_{p-2}B = c^{3-p} I, so the pair is admissible
  // only for c <= 1, while B^2 <= A^2 needs c >= 1.
  for (double c : {0.5, 1.0, 2.0}) {
    const HermitianMatrix a = HermitianMatrix::identity(2) * c;
    const HermitianMatrix b = HermitianMatrix::identity(2);
    for (double p : {0.0, 0.5, 1.0}) {
      const HermitianMatrix m = natural_power_mean(a, b, p - 2.0);
      CHECK_CLOSE(m, HermitianMatrix::identity(2) * std::pow(c, 3.0 - p), 1e-13);
      CHECK(loewner_leq(m, HermitianMatrix::identity(2)).verdict.holds == (c <= 1.0));
    }
  }

  Rng rng(8);
  GeneratorConfig cfg;
  cfg.dim = 3;
  const ToleranceConfig tol;
  for (double p : {0.0, 0.5, 1.0}) {
    for (int t = 0; t < 20; ++t) {
      const TwoOperatorPair pair = generate_two_operator_pair(cfg, p, rng);
      CHECK(pair.attempts >= 1);
      CHECK(loewner_leq(natural_power_mean(pair.a, pair.b, p - 2.0),
                        HermitianMatrix::identity(3), tol).verdict.holds);
      CHECK(loewner_leq(HermitianMatrix::hermitian_part(pair.b.matrix() * pair.b.matrix()),
                        HermitianMatrix::hermitian_part(pair.a.matrix() * pair.a.matrix()), tol)
                .verdict.holds);
    }
  }
  CHECK_THROWS_AS(generate_two_operator_pair(cfg, 1.5, rng), Error);
}
