#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>

#include "opentropy/suite_runner.hpp"

namespace opentropy {

// Random-restart hill climbing that drives the smallest relative slack of one
// suite case down. Each step applies a small multiplicative perturbation and
// re-projects onto the suite's constraint set; a step is kept iff it lowers
// the objective. When the starting instance satisfies every hypothesis, steps
// that break one are rejected, so the search stays inside the theorem.
struct SearchConfig {
  std::string suite_id;
  int dim = 3;
  int n = 3;
  std::optional<double> param;
  std::optional<double> t0;
  std::optional<std::string> f;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  ToleranceConfig tol;
  std::uint64_t master_seed = 0;
  int budget = 1000;   // evaluations, restarts included
  int restart_every = 200;
  double step = 0.1;   // initial perturbation size
  // Skip re-normalization of resolutions, so steps leave sum A_j = I and the
  // search explores with that hypothesis dropped.
  bool free_tuples = false;

  void validate() const;
};

struct SearchFinding {
  double objective = 0.0;  // min relative slack over the case's records
  SlackReport report;      // the record that attains it
  Instance instance;
  int restart = 0;
};

struct WorstInstanceReport {
  std::string suite_id;
  SuiteCase suite_case;
  int evaluations = 0;
  int restarts = 0;
  int accepted = 0;
  bool free_tuples = false;
  std::optional<SearchFinding> worst;            // over every computable record
  std::optional<SearchFinding> worst_satisfied;  // hypothesis-satisfied records only
  // Exploration: records whose hypothesis failed. A negative slack there is
  // a finding about the hypothesis boundary, not a failure.
  int unmet_evaluations = 0;
  int unmet_negative = 0;
  std::optional<SearchFinding> worst_unmet;
  int fail_count = 0;  // satisfied records with a fail verdict
  int error_count = 0;
};

WorstInstanceReport adversarial_search(const SearchConfig& cfg);

// Applies one perturbation of size eps to every random object of the suite.
Instance perturb_instance(const std::string& suite_id, const Instance& inst, double eps, Rng& rng,
                          const ToleranceConfig& tol = {}, bool keep_resolution = true);

nlohmann::json worst_report_to_json(const WorstInstanceReport& r);

}  // namespace opentropy
