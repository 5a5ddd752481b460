#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "opentropy/matrix_json.hpp"
#include "opentropy/instance_gen.hpp"
#include "support.hpp"

using namespace opentropy;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("opentropy_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_matrix(const std::string& name, const HermitianMatrix& h) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << matrix_to_json(h).dump();
  return p.string();
}

HermitianMatrix parse_matrix(const std::string& s) { return hermitian_from_json(nlohmann::json::parse(s)); }

}  // namespace

TEST_CASE("catalog lists functions and suites") {
  const Run r = run({"catalog"});
  CHECK(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["functions"].size() == 6);
  CHECK(j["suites"].size() == 14);
}

TEST_CASE("compute natural power mean") {
  const auto a = write_matrix("a4.json", support::diag({4}));
  const auto b = write_matrix("b9.json", support::diag({9}));
  const Run r = run({"compute", "natural-power-mean", "--a", a, "--b", b, "--q", "0.5"});
  REQUIRE(r.code == cli::kPass);
  CHECK_CLOSE(parse_matrix(r.out), support::diag({6}), 1e-14);
}

TEST_CASE("compute entropies") {
  Rng rng(4);
  const HermitianMatrix x = random_hpd(3, 0.5, 2, rng);
  const HermitianMatrix y = random_hpd(3, 0.5, 2, rng);
  const auto a = write_matrix("x.json", x);
  const auto b = write_matrix("y.json", y);
  const Run self = run({"compute", "relative-entropy", "--a", a, "--b", a});
  REQUIRE(self.code == cli::kPass);
  CHECK(parse_matrix(self.out).frobenius_norm() < 1e-12);

  const Run gen = run({"compute", "generalized", "--a", a, "--b", b, "--q", "0", "--f", "identity"});
  REQUIRE(gen.code == cli::kPass);
  CHECK_CLOSE(parse_matrix(gen.out), y, 1e-12);

  const fs::path out = scratch() / "furuta.json";
  CHECK(run({"compute", "furuta", "--a", a, "--b", b, "--p", "0.5", "--out", out.string()}).code ==
        cli::kPass);
  CHECK(fs::exists(out));
}

TEST_CASE("compute error exit codes") {
  const auto neg = write_matrix("neg.json", support::diag({-1, 2}));
  const auto pos = write_matrix("pos.json", support::diag({1, 2}));
  CHECK(run({"compute", "relative-entropy", "--a", neg, "--b", pos}).code == cli::kDomain);
  CHECK(run({"compute", "relative-entropy", "--a", "/nonexistent.json", "--b", pos}).code ==
        cli::kIo);
  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"dim": 2, "re": [[1, 5], [0, 1]]})";
  CHECK(run({"compute", "relative-entropy", "--a", bad.string(), "--b", pos}).code == cli::kIo);
  CHECK(run({"compute", "natural-power-mean", "--a", pos, "--b", pos}).code == cli::kUsage);
  CHECK(run({"compute", "cosine", "--a", pos, "--b", pos}).code == cli::kUsage);
  CHECK(run({"compute", "generalized", "--a", pos, "--b", pos, "--q", "1", "--f", "cosh"}).code ==
        cli::kUsage);
}

TEST_CASE("check exit codes") {
  const Run ok = run({"check", "--suite", "cor-2.6", "--trials", "0", "--format", "jsonl"});
  CHECK(ok.code == cli::kPass);
  const auto header = nlohmann::json::parse(ok.out.substr(0, ok.out.find('\n')));
  CHECK(header["type"] == "header");

  const Run unknown = run({"check", "--suite", "thm-9", "--trials", "1"});
  CHECK(unknown.code == cli::kUsage);
  CHECK(unknown.err.find("thm-upper") != std::string::npos);

  CHECK(run({"check", "--suite", "thm-upper", "--p", "1.5", "--trials", "1"}).code == cli::kUsage);
  CHECK(run({"check", "--suite", "kl,duality", "--q", "0.5", "--trials", "1"}).code == cli::kUsage);
  CHECK(run({"check", "--bogus"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);

  // an absurd order tolerance turns rounding noise on identities into fails
  const Run strict =
      run({"check", "--suite", "duality", "--trials", "5", "--tol-order", "1e-30",
                          "--tol-eig", "1e-31"});
  CHECK(strict.code == cli::kFail);
}

TEST_CASE("check output formats") {
  const Run jsonl = run({"check", "--suite", "kl", "--trials", "4", "--seed", "2", "--format", "jsonl"});
  REQUIRE(jsonl.code == cli::kPass);
  std::istringstream lines(jsonl.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK_FALSE(nlohmann::json::parse(line).is_discarded());
    ++count;
  }
  CHECK(count == 5);

  const Run csv = run({"check", "--suite", "kl", "--trials", "4", "--format", "csv-summary"});
  CHECK(csv.out.rfind("suite_id,", 0) == 0);
  const Run json = run({"check", "--suite", "kl", "--trials", "4", "--format", "json"});
  CHECK(nlohmann::json::parse(json.out).is_object());

  const fs::path out = scratch() / "trials.jsonl";
  const fs::path summary = scratch() / "summary.json";
  CHECK(run({"check", "--suite", "kl", "--trials", "4", "--out", out.string(), "--summary",
             summary.string()})
            .code == cli::kPass);
  CHECK(fs::file_size(out) > 0);
  std::ifstream in(summary);
  CHECK(nlohmann::json::parse(in).is_object());
}

TEST_CASE("check is deterministic apart from the header") {
  const std::vector<std::string> args = {"check", "--suite", "thm-upper,jensen", "--trials", "3",
                                         "--seed", "11", "--format", "jsonl"};
  auto body = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
  const Run a = run(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const Run b = run(threaded);
  CHECK(a.code == cli::kPass);
  CHECK(body(a.out) == body(b.out));
}

TEST_CASE("gen is reproducible") {
  const std::vector<std::string> args = {"gen", "--object", "resolution", "--dim", "3", "--n", "4",
                                         "--seed", "5"};
  const Run a = run(args);
  REQUIRE(a.code == cli::kPass);
  CHECK(a.out == run(args).out);
  for (const char* object : {"hpd", "hermitian", "unitary", "doubly-stochastic", "weight-function",
                             "positive-map", "contractions", "two-operator-pair", "probability"}) {
    CHECK_MESSAGE(run({"gen", "--object", object, "--seed", "1"}).code == cli::kPass, object);
  }
  CHECK(run({"gen", "--object", "tensor"}).code == cli::kUsage);

  const Run inst = run({"gen", "--suite", "hanp", "--trial", "2", "--seed", "5"});
  REQUIRE(inst.code == cli::kPass);
  const auto j = nlohmann::json::parse(inst.out);
  CHECK(j["stream_seed"] == trial_seed(5, "hanp", 2));
  CHECK(run({"gen", "--suite", "hanp"}).code == cli::kUsage);
}

TEST_CASE("search subcommand") {
  const Run r = run({"search", "--suite", "cor-2.5", "--budget", "40", "--seed", "1"});
  REQUIRE(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["evaluations"] == 40);
  CHECK(run({"search", "--suite", "thm-9"}).code == cli::kUsage);
}

TEST_CASE("tolerance environment variable") {
  setenv("OPENTROPY_TOL", "junk", 1);
  CHECK(run({"check", "--suite", "kl", "--trials", "1"}).code != cli::kPass);
  CHECK(run({"check", "--suite", "kl", "--trials", "1", "--tol-order", "1e-8"}).code ==
        cli::kPass);
  unsetenv("OPENTROPY_TOL");
}
