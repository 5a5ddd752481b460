#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "opentropy/inequality_checks.hpp"
#include "opentropy/instance_gen.hpp"

namespace opentropy {

// Every random object one trial of a suite consumes. Which fields are
// populated depends on the suite; see generate_instance.
struct Instance {
  std::vector<HermitianMatrix> a;         // tuple A, or the single A of a pair
  std::vector<HermitianMatrix> b;         // tuple B, or the single B of a pair
  std::vector<HermitianMatrix> operands;  // Jensen operands / contraction X_j
  std::vector<ComplexMatrix> contractions;
  std::vector<DoublyStochasticMatrix> stochastic;
  std::vector<WeightFunction> weights;
  std::optional<PositiveMap> map;
  std::vector<double> prob_a;
  std::vector<double> prob_b;
  int attempts = 0;  // rejection-sampler draws, for two-operator pairs

  double max_input_norm() const;
};

nlohmann::json instance_to_json(const Instance& inst);

// One parameter point of a suite (p, q or t; t0; f).
struct SuiteCase {
  std::optional<double> param;
  std::optional<double> t0;
  std::string f;

  std::string label() const;
};

struct SuiteConfig {
  std::string suite_id;
  int trials = 100;
  // Trial i runs at dims[i % |dims|] and ns[(i / |dims|) % |ns|].
  std::vector<int> dims = {4};
  std::vector<int> ns = {3};
  std::optional<double> param;
  std::optional<double> t0;
  std::optional<std::string> f;
  double eig_lo = 0.1;
  double eig_hi = 10.0;
  ToleranceConfig tol;
  std::uint64_t master_seed = 0;
  int threads = 1;
  int worst_k = 5;
  bool keep_slack = false;

  void validate() const;  // ParameterOutOfRange / UnknownFunction
  int dim_for(std::uint64_t trial) const;
  int n_for(std::uint64_t trial) const;
};

struct CaseSummary {
  SuiteCase suite_case;
  std::size_t records = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t hypothesis_unmet = 0;
  std::size_t error = 0;
  // Minimum slack_min_eig over hypothesis-satisfied inequality records.
  std::optional<double> worst_satisfied_slack;
  // k records with the smallest relative slack, ties broken by trial index.
  std::vector<SlackReport> worst;

  double unmet_rate() const {
    return records == 0 ? 0.0 : static_cast<double>(hypothesis_unmet) / records;
  }
};

struct SuiteReport {
  std::string suite_id;
  std::vector<SlackReport> records;  // case-major, then trial, then component
  std::vector<CaseSummary> cases;

  std::size_t count(Verdict v) const;
  bool clean() const { return count(Verdict::Fail) == 0 && count(Verdict::Error) == 0; }
};

// All suite identifiers accepted by run_suite and the CLI.
const std::vector<std::string>& suite_ids();
bool is_known_suite(const std::string& id);
std::string suite_description(const std::string& id);

// Parameter grid for a config: pinned values where given, the suite's
// default grid otherwise.
std::vector<SuiteCase> expand_cases(const SuiteConfig& cfg);

// Deterministic instance for (suite, cfg.trial_index); `param` is used only
// by suites whose instances depend on it (the two-operator pairs).
Instance generate_instance(const std::string& suite_id, const GeneratorConfig& cfg,
                           std::optional<double> param, const ToleranceConfig& tol = {});

// Runs the suite's check on an instance. Throws on per-trial errors.
std::vector<SlackReport> evaluate_instance(const std::string& suite_id, const Instance& inst,
                                           const SuiteCase& suite_case,
                                           const ToleranceConfig& tol = {});

// Same, but errors become records: HypothesisUnmet -> hypothesis_unmet,
// everything else -> error.
std::vector<SlackReport> evaluate_instance_safely(const std::string& suite_id,
                                                  const Instance& inst,
                                                  const SuiteCase& suite_case,
                                                  const ToleranceConfig& tol = {});

SuiteReport run_suite(const SuiteConfig& cfg);

nlohmann::json report_to_json(const SlackReport& r);
nlohmann::json summary_to_json(const SuiteReport& report);

// JSONL: one header line (carries the timestamp), then one line per record.
std::string to_jsonl(const std::vector<SuiteReport>& reports, const nlohmann::json& header);
std::string summary_csv(const std::vector<SuiteReport>& reports);

}  // namespace opentropy
