#include <doctest.h>

#include <cmath>

#include "opentropy/adversarial_search.hpp"

using namespace opentropy;

namespace {

SearchConfig search(const std::string& suite, int budget) {
  SearchConfig cfg;
  cfg.suite_id = suite;
  cfg.budget = budget;
  cfg.restart_every = budget / 2;
  cfg.master_seed = 9;
  return cfg;
}

}  // namespace

TEST_CASE("search is deterministic") {
  const auto a = worst_report_to_json(adversarial_search(search("thm-upper", 60)));
  const auto b = worst_report_to_json(adversarial_search(search("thm-upper", 60)));
  CHECK(a == b);
}

TEST_CASE("search never beats the theorem") {
  for (const char* suite : {"cor-2.5", "cor-2.4", "subadditivity", "jensen"}) {
    const auto r = adversarial_search(search(suite, 120));
    CHECK(r.evaluations == 120);
    CHECK(r.restarts == 2);
    CHECK(r.fail_count == 0);
    CHECK(r.error_count == 0);
    REQUIRE(r.worst_satisfied.has_value());
    CHECK(r.worst_satisfied->objective >= -1e-8);
  }
}

TEST_CASE("search drives the inverse sum slack toward zero") {
  auto cfg = search("cor-2.5", 400);
  cfg.restart_every = 400;
  cfg.budget = 1;
  const double start = adversarial_search(cfg).worst_satisfied->objective;
  cfg.budget = 400;
  const auto r = adversarial_search(cfg);
  CHECK(r.accepted > 0);
  CHECK(r.worst_satisfied->objective < 0.5 * start);
  CHECK(r.worst_satisfied->objective >= 0.0);
}

TEST_CASE("free tuples explore outside the resolution hypothesis") {
  auto cfg = search("thm-lower", 100);
  cfg.param = 2.0;
  cfg.t0 = 1.0;
  cfg.f = "pow_0.5";
  cfg.free_tuples = true;
  const auto r = adversarial_search(cfg);
  CHECK(r.free_tuples);
  CHECK(r.unmet_evaluations > 0);
  const auto j = worst_report_to_json(r);
  CHECK(j.contains("exploration"));
}

TEST_CASE("perturbations keep the constraint set") {
  GeneratorConfig g;
  g.dim = 3;
  const ToleranceConfig tol;
  Rng rng(3);
  Instance inst = generate_instance("thm-2.10", g, std::nullopt);
  for (int k = 0; k < 10; ++k) {
    inst = perturb_instance("thm-2.10", inst, 0.2, rng, tol);
    for (const auto& s : inst.stochastic) CHECK(s.max_marginal_error() <= 1e-9);
    for (const auto& w : inst.weights) CHECK_NOTHROW(w.validate(1e-9));
    CHECK_NOTHROW(evaluate_instance("thm-2.10", inst, {std::nullopt, std::nullopt, "log"}));
  }
  Instance res = generate_instance("cor-2.5", g, std::nullopt);
  for (int k = 0; k < 10; ++k) {
    res = perturb_instance("cor-2.5", res, 0.2, rng, tol);
    CHECK(OperatorTuple(res.a).sums_to_identity());
  }
}

TEST_CASE("search validates its config") {
  auto cfg = search("thm-upper", 10);
  cfg.param = 4.0;
  CHECK_THROWS_AS(adversarial_search(cfg), Error);
  CHECK_THROWS_AS(adversarial_search(search("nope", 10)), Error);
  cfg = search("thm-upper", 0);
  CHECK_THROWS_AS(cfg.validate(), Error);
}
