#include "aplab/jobs.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

using namespace aplab;

TEST_CASE("config round trip and strict keys") {
  const std::string cfg = R"json({
    "command": "seminorm",
    "field": {"expr": "exp(i*2*t1)"},
    "seminorm": {"p": 2.0},
    "windows": {"t0": 8, "ratio": 2, "count": 8}
  })json";
  const std::string a = normalize_config(cfg);
  const std::string b = normalize_config(a);
  CHECK(a == b);

  CHECK_THROWS_AS(normalize_config(R"json({"command": "seminorm", "fild": {}})json"),
                  std::invalid_argument);
}

TEST_CASE("seminorm command on a constant field") {
  const std::string cfg = R"json({
    "command": "seminorm",
    "field": {"expr": "3"},
    "seminorm": {"p": 1.0},
    "windows": {"t0": 8, "ratio": 2, "count": 8}
  })json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 0);
  auto rep = nlohmann::json::parse(out.report_json);
  CHECK(rep["sweep"]["estimate"].get<double>() == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(rep["sweep"]["trend"] == "bounded");
  // CSV has the fixed four columns
  CHECK(out.sweep_csv.rfind("t,value_re,value_im,window_measure\n", 0) == 0);
}

TEST_CASE("seminorm command flags divergence of the tall bricks") {
  const std::string cfg = R"json({
    "command": "seminorm",
    "field": {"gallery": "brick-power", "params": {"zeta": 1.0}},
    "profile": {"phi": {"kind": "identity"}, "weight": {"kind": "power", "beta": 1.0}, "p": 1.0},
    "windows": {"t0": 64, "ratio": 2, "count": 12}
  })json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 0);
  auto rep = nlohmann::json::parse(out.report_json);
  CHECK(rep["verdict"] == "unbounded");
}

TEST_CASE("malformed expressions exit with a diagnostic") {
  const std::string cfg = R"json({"command": "seminorm", "field": {"expr": "exp(i*"}})json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 1);
  CHECK(out.error.find("parse error") != std::string::npos);
}

TEST_CASE("unknown gallery id errors") {
  const std::string cfg = R"json({"command": "gallery", "gallery": {"id": "nope", "verify": false}})json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 1);
  CHECK(out.error.find("unknown gallery id") != std::string::npos);
}

TEST_CASE("determinism: identical config and seed give identical bytes") {
  const std::string cfg = R"json({
    "command": "classify",
    "field": {"expr": "2*exp(i*5*t1)+7"},
    "profile": {"phi": {"kind": "identity"}, "weight": {"kind": "power", "beta": 0.5}, "p": 2.0},
    "classify": {"budget": 2, "frequencies": [[0], [5]]},
    "windows": {"t0": 8, "ratio": 2, "count": 8}
  })json";
  auto a = run_job(cfg, "standard", "", 7);
  auto b = run_job(cfg, "standard", "", 7);
  CHECK(a.exit_code == 0);
  CHECK(a.report_json == b.report_json);
  CHECK(a.sweep_csv == b.sweep_csv);
  auto rep = nlohmann::json::parse(a.report_json);
  CHECK(rep["verdict"] == "member-evidence");
  CHECK(rep["seed"] == 7);
}

TEST_CASE("condition command produces an l-sweep") {
  const std::string cfg = R"json({
    "command": "condition",
    "field": {"gallery": "sign-flip", "params": {"lambda0": 2.0}},
    "profile": {"phi": {"kind": "identity"}, "weight": {"kind": "power", "beta": 1.0}, "p": 1.0},
    "condition": {"which": "B", "lambda": [2.0], "ls": [1, 4, 16], "f1_beta": 1.0},
    "windows": {"t0": 256, "ratio": 2, "count": 6}
  })json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 0);
  CHECK(out.sweep_csv.rfind("l,value_re", 0) == 0);
  auto rep = nlohmann::json::parse(out.report_json);
  CHECK(rep["per_l"].size() == 3);
  const double v = rep["per_l"][0]["sweep"]["estimate"].get<double>();
  CHECK(v == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("operator command evaluates the desk convolution") {
  const std::string cfg = R"json({
    "command": "operator",
    "field": {"expr": "exp(i*t1)"},
    "operator": {"which": "convolution", "kernel": {"form": "exponential", "M": 1.0, "c": 1.0}, "t": 0.0}
  })json";
  auto out = run_job(cfg);
  CHECK(out.exit_code == 0);
  auto rep = nlohmann::json::parse(out.report_json);
  // e^{it} / (1 + i) at t = 0
  CHECK(rep["value_re"].get<double>() == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(rep["value_im"].get<double>() == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("the installed binary honours the exit-code contract") {
#ifdef APLAB_CLI_PATH
  const std::string bin = APLAB_CLI_PATH;
  const std::string dir = "./cli_smoke";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  {
    std::ofstream cfg(dir + "/job.json");
    cfg << R"json({"command": "seminorm", "field": {"expr": "1"}, "seminorm": {"p": 2.0}})json";
  }
  int rc = std::system(
      (bin + " seminorm --config " + dir + "/job.json --out " + dir + " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  std::ifstream rep(dir + "/report.json");
  CHECK(rep.good());

  rc = std::system((bin + " gallery nope --verify > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 1);

  rc = std::system((bin + " gallery > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(rc) == 0);
#endif
}
