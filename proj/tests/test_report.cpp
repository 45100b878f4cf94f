#include "psr/report.hpp"

#include "psr/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace psr;

TEST_CASE("angle parsing covers decimals and pi forms") {
  CHECK(parse_angle("0.5") == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(parse_angle("pi") == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(parse_angle("-pi/4") == doctest::Approx(-kPi / 4).epsilon(1e-15));
  CHECK(parse_angle("3pi/2") == doctest::Approx(3 * kPi / 2).epsilon(1e-15));
  CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(parse_angle(" 2pi ") == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(parse_angle("pie"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("1.2.3"), std::invalid_argument);
}

TEST_CASE("sweep grids exclude the endpoint") {
  const SweepSpec s = parse_sweep("0:2pi:64");
  const std::vector<double> grid = sweep_grid(s);
  REQUIRE(grid.size() == 64);
  CHECK(grid.front() == 0.0);
  CHECK(grid[1] == doctest::Approx(2 * kPi / 64).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(2 * kPi * 63 / 64).epsilon(1e-15));
  CHECK_THROWS_AS(parse_sweep("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep("0:1:0"), std::invalid_argument);
}

TEST_CASE("state parsing") {
  CHECK(max_abs(parse_state("0").mat - parse_state("0").mat) == 0.0);
  const DensityMatrix plus = parse_state("+");
  CHECK(plus.mat(0, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
  const DensityMatrix plus_i = parse_state("+i");
  CHECK(plus_i.mat(1, 0).imag() == doctest::Approx(0.5).epsilon(1e-15));

  const DensityMatrix bloch = parse_state("bloch:0,0,1");
  CHECK(max_abs(bloch.mat - parse_state("0").mat) < 1e-15);
  CHECK_THROWS_AS(parse_state("bloch:1,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("bloch:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state("nonsense"), std::invalid_argument);

  // haar: pure; ball: valid mixed state; both deterministic in the seed.
  const DensityMatrix h = parse_state("haar:11");
  CHECK(std::abs((h.mat * h.mat).trace().real() - 1.0) < 1e-13);
  CHECK(max_abs(h.mat - parse_state("haar:11").mat) == 0.0);
  const DensityMatrix m = parse_state("ball:11");
  CHECK(std::abs(m.mat.trace().real() - 1.0) < 1e-14);
  CHECK(min_eigenvalue(m.mat) > -1e-14);
}

TEST_CASE("exact report rows") {
  RunConfig cfg;
  cfg.scheme = Scheme::qudit;
  cfg.rounds = 3;
  cfg.phis = {0.9};
  cfg.xi = "+";
  const auto rows = run_report(cfg);
  REQUIRE(rows.size() == 4);
  double total = 0.0;
  for (const auto& r : rows) {
    CHECK(r.protocol == "qudit");
    CHECK(r.probability == doctest::Approx(0.25).epsilon(1e-13));
    total += r.probability;
    if (r.success) CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sampled report is a deterministic function of the seed") {
  RunConfig cfg;
  cfg.scheme = Scheme::qudit;
  cfg.rounds = 3;
  cfg.phis = {1.0};
  cfg.xi = "+";
  cfg.shots = 20000;
  cfg.seed = 20240817;
  const auto a = run_report(cfg);
  const auto b = run_report(cfg);
  CHECK(rows_to_csv(a) == rows_to_csv(b));
  double freq = 0.0, total = 0.0;
  for (const auto& r : a) {
    total += r.probability;
    if (r.success) freq += r.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // 3 sigma around p = 3/4 at 20000 shots.
  CHECK(std::abs(freq - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / 20000.0));

  cfg.seed = 1;
  CHECK(rows_to_csv(run_report(cfg)) != rows_to_csv(a));
}

TEST_CASE("csv layout: header, quoting, blank fidelity on dead branches") {
  RunConfig cfg;
  cfg.scheme = Scheme::vmc;
  cfg.rounds = 2;
  cfg.phis = {0.4};
  const auto rows = run_report(cfg);
  const std::string csv = rows_to_csv(rows);
  CHECK(csv.rfind("protocol,phi,outcome,probability,success,fidelity\n", 0) == 0);
  CHECK(csv.find("\"1,0\"") != std::string::npos);  // comma-bearing label quoted

  RunConfig dead;
  dead.scheme = Scheme::two_toffoli;
  dead.rounds = 2;
  dead.phis = {0.4};
  const auto drows = run_report(dead);
  const std::string dcsv = rows_to_csv(drows);
  CHECK(dcsv.find(",\"01\",0,false,\n") != std::string::npos);

  const nlohmann::json j = rows_to_json(drows);
  REQUIRE(j.size() == 4);
  bool saw_null = false;
  for (const auto& row : j)
    if (row.at("fidelity").is_null()) saw_null = true;
  CHECK(saw_null);
}

TEST_CASE("sweep rows cover the grid deterministically") {
  RunConfig cfg;
  cfg.scheme = Scheme::single;
  cfg.phis = sweep_grid({0.0, 2 * kPi, 8});
  const auto rows = run_report(cfg);
  REQUIRE(rows.size() == 16);  // 8 angles x 2 outcomes
  CHECK(rows[2].phi == doctest::Approx(2 * kPi / 8).epsilon(1e-15));
}

TEST_CASE("single-run json document") {
  RunConfig cfg;
  cfg.scheme = Scheme::single;
  cfg.phis = {kPi / 2};
  const auto outcomes = run_scheme(cfg.scheme, 1, kPi / 2, parse_state("+"));
  const nlohmann::json doc = outcome_report_json(cfg, kPi / 2, outcomes);
  CHECK(doc.at("protocol") == "single");
  CHECK(doc.at("params").at("phi").get<double>() ==
        doctest::Approx(kPi / 2).epsilon(1e-15));
  REQUIRE(doc.at("outcomes").size() == 2);
  const auto& first = doc.at("outcomes").at(0);
  CHECK(first.at("post_state_matrix").size() == 2);
  CHECK(first.at("post_state_matrix").at(0).at(0).at(0).get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("verify suites all pass") {
  for (const std::string suite : {"linalg", "circuits", "protocols", "comb"}) {
    const auto results = verify_suite(suite);
    CHECK(!results.empty());
    for (const auto& r : results) {
      INFO(r.suite, "/", r.name, " value=", r.value, " threshold=", r.threshold);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(verify_suite("bogus"), std::invalid_argument);
  const auto all = verify_suite("all");
  CHECK(all_pass(all));
  const nlohmann::json j = to_json(all);
  CHECK(j.size() == all.size());
}
