#include "psr/choi.hpp"
#include "psr/circuits.hpp"
#include "psr/protocols.hpp"
#include "psr/report.hpp"
#include "psr/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kUsageError = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

struct CommonOpts {
  std::string protocol = "single";
  int n = 1;
  int k = 1;
  std::string phi = "0";
  std::string phi_sweep;
  std::string xi = "+";
  long long shots = 0;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
};

void add_protocol_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--protocol", o.protocol, "single|qudit|two_toffoli|two_cnot|vmc")
      ->default_val(o.protocol);
  cmd->add_option("--n", o.n, "program uses for the qudit scheme");
  cmd->add_option("--k", o.k, "rounds for the iterated scheme");
  cmd->add_option("--xi", o.xi,
                  "data state: 0 1 + - +i -i, bloch:x,y,z, haar:seed, ball:seed");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "write here instead of stdout");
}

psr::RunConfig make_config(const CommonOpts& o, bool sweep) {
  psr::RunConfig cfg;
  cfg.scheme = psr::scheme_from_name(o.protocol);
  cfg.rounds = cfg.scheme == psr::Scheme::vmc ? o.k : o.n;
  if (sweep) {
    if (o.phi_sweep.empty())
      throw std::invalid_argument("this command needs --phi-sweep start:stop:points");
    cfg.phis = psr::sweep_grid(psr::parse_sweep(o.phi_sweep));
  } else if (!o.phi_sweep.empty()) {
    cfg.phis = psr::sweep_grid(psr::parse_sweep(o.phi_sweep));
  } else {
    cfg.phis = {psr::parse_angle(o.phi)};
  }
  cfg.xi = o.xi;
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  return cfg;
}

void emit_rows(const CommonOpts& o, const psr::RunConfig& cfg) {
  const std::vector<psr::ReportRow> rows = psr::run_report(cfg);
  emit(o.out, o.format == "json" ? psr::rows_to_json(rows).dump(2) + "\n"
                                 : psr::rows_to_csv(rows));
}

int run_verify(const std::string& suite, const CommonOpts& o) {
  const std::vector<psr::CheckResult> results = psr::verify_suite(suite);
  if (o.format == "json") {
    emit(o.out, psr::to_json(results).dump(2) + "\n");
  } else {
    std::string text;
    char line[160];
    for (const auto& r : results) {
      std::snprintf(line, sizeof line, "%-9s %-38s %12.3e <= %-9.0e %s\n",
                    r.suite.c_str(), r.name.c_str(), r.value, r.threshold,
                    r.pass ? "PASS" : "FAIL");
      text += line;
    }
    const bool ok = psr::all_pass(results);
    text += ok ? "all checks passed\n" : "CHECKS FAILED\n";
    emit(o.out, text);
  }
  return psr::all_pass(results) ? 0 : 1;
}

psr::Circuit export_circuit(const CommonOpts& o, double phi) {
  const psr::Scheme scheme = psr::scheme_from_name(o.protocol);
  switch (scheme) {
    case psr::Scheme::single: {
      psr::Circuit c({2, 2});
      c.append(psr::ry(-psr::kPi / 2), {1})
          .append(psr::phase_gate(phi), {1})
          .append(psr::cnot(), {0, 1});
      return c;
    }
    case psr::Scheme::qudit: {
      psr::Circuit c({2, o.n + 1});
      c.append(psr::controlled_shift_down(o.n + 1), {0, 1});
      return c;
    }
    case psr::Scheme::two_toffoli:
      return psr::circuit_2to1_toffoli(phi);
    case psr::Scheme::two_cnot:
      return psr::build_2to1_cnot(phi);
    case psr::Scheme::vmc: {
      // Retrieval is adaptive, so only the program preparation is a fixed
      // gate list: qubit m carries the doubled angle 2^m phi.
      psr::Circuit c(std::vector<int>(o.k, 2));
      for (int m = 0; m < o.k; ++m)
        c.append(psr::ry(-psr::kPi / 2), {m})
            .append(psr::phase_gate(std::ldexp(phi, m)), {m});
      return c;
    }
  }
  throw std::invalid_argument("unknown protocol");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact simulator and verifier for storage-and-retrieval of phase gates"};
  app.require_subcommand(1);
  CommonOpts o;

  CLI::App* run = app.add_subcommand("run", "exact outcome report for one angle");
  add_protocol_flags(run, o);
  run->add_option("--phi", o.phi, "stored phase angle (accepts pi forms)");
  add_output_flags(run, o);

  CLI::App* sweep = app.add_subcommand("sweep", "exact outcome rows over an angle grid");
  add_protocol_flags(sweep, o);
  sweep->add_option("--phi-sweep", o.phi_sweep, "start:stop:points, endpoint-exclusive");
  add_output_flags(sweep, o);

  CLI::App* sample = app.add_subcommand("sample", "finite-shot frequencies");
  add_protocol_flags(sample, o);
  sample->add_option("--phi", o.phi, "stored phase angle");
  sample->add_option("--phi-sweep", o.phi_sweep, "optional angle grid");
  sample->add_option("--shots", o.shots, "samples per angle")->required();
  sample->add_option("--seed", o.seed, "run seed (per-angle substreams)");
  add_output_flags(sample, o);

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("suite", suite, "linalg|circuits|protocols|comb|all");
  add_output_flags(verify, o);

  CLI::App* lp = app.add_subcommand("lp", "optimal success weight as a linear program");
  lp->add_option("--n", o.n, "number of stored uses")->required();
  add_output_flags(lp, o);

  CLI::App* exp = app.add_subcommand("export-circuit", "emit a circuit as JSON");
  add_protocol_flags(exp, o);
  exp->add_option("--phi", o.phi, "stored phase angle");
  add_output_flags(exp, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);
    app.exit(e);
    return kUsageError;
  }

  try {
    if (run->parsed()) {
      const psr::RunConfig cfg = make_config(o, false);
      if (o.format == "json") {
        const auto outcomes =
            psr::run_scheme(cfg.scheme, cfg.rounds, cfg.phis[0], psr::parse_state(cfg.xi));
        emit(o.out, psr::outcome_report_json(cfg, cfg.phis[0], outcomes).dump(2) + "\n");
      } else {
        emit_rows(o, cfg);
      }
    } else if (sweep->parsed()) {
      emit_rows(o, make_config(o, true));
    } else if (sample->parsed()) {
      if (o.shots < 1) throw std::invalid_argument("--shots must be positive");
      emit_rows(o, make_config(o, false));
    } else if (verify->parsed()) {
      return run_verify(suite, o);
    } else if (lp->parsed()) {
      const psr::LPResult r = psr::solve_lp(o.n);
      if (o.format == "json") {
        emit(o.out, psr::to_json(r).dump(2) + "\n");
      } else {
        std::string text = "n = " + std::to_string(r.n) + "\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "optimum    = %.15f\n", r.optimum);
        text += buf;
        std::snprintf(buf, sizeof buf, "closed form n/(n+1) = %.15f\n",
                      static_cast<double>(r.n) / (r.n + 1));
        text += buf;
        auto join = [](const std::vector<double>& v) {
          std::string s;
          char b[32];
          for (double x : v) {
            std::snprintf(b, sizeof b, "%s%.9f", s.empty() ? "" : " ", x);
            s += b;
          }
          return s;
        };
        text += "argmax p   = " + join(r.argmax_p) + "\n";
        text += "argmax mu  = " + join(r.argmax_mu) + "\n";
        text += "dual f     = " + join(r.certificate_weights) + "\n";
        emit(o.out, text);
      }
    } else if (exp->parsed()) {
      const psr::Circuit c = export_circuit(o, psr::parse_angle(o.phi));
      emit(o.out, psr::circuit_to_json(c).dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return 0;
}
