#pragma once

#include "psr/choi.hpp"
#include "psr/linalg.hpp"
#include "psr/protocols.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace psr {

// Endpoint-exclusive grid: point i is start + i * (stop - start) / points,
// so sweeps over a full period never duplicate the wrap-around angle.
struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
};
std::vector<double> sweep_grid(const SweepSpec& s);

struct RunConfig {
  Scheme scheme = Scheme::single;
  int rounds = 1;  // N for the qudit scheme, k for the iterated one
  std::vector<double> phis = {0.0};
  std::string xi = "+";
  long long shots = 0;  // 0 reports exact probabilities
  std::uint64_t seed = 1;
};

struct ReportRow {
  std::string protocol;
  double phi = 0.0;
  std::string outcome;
  double probability = 0.0;  // exact, or observed frequency when sampling
  bool success = false;
  double fidelity = 0.0;  // of the branch state against u_phi xi u_phi^dag
};

std::vector<ReportRow> run_report(const RunConfig& cfg);

// Angles accept decimals and pi forms: "pi", "-pi/4", "3pi/2", "0.5pi".
double parse_angle(const std::string& text);
// "start:stop:points", each endpoint an angle.
SweepSpec parse_sweep(const std::string& text);
// Data states: "0" "1" "+" "-" "+i" "-i", "bloch:x,y,z",
// "haar:seed" (random pure), "ball:seed" (random mixed).
DensityMatrix parse_state(const std::string& text);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
nlohmann::json rows_to_json(const std::vector<ReportRow>& rows);

// Single-run document: protocol, parameters, and every outcome with its
// post state spelled out as [[re, im], ...] rows.
nlohmann::json outcome_report_json(const RunConfig& cfg, double phi,
                                   const std::vector<ProtocolOutcome>& outcomes);

}  // namespace psr
