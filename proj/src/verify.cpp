#include "psr/verify.hpp"

#include "psr/choi.hpp"
#include "psr/circuits.hpp"
#include "psr/linalg.hpp"
#include "psr/protocols.hpp"
#include "psr/random.hpp"
#include "psr/report.hpp"

#include <cmath>

namespace psr {

namespace {

constexpr std::uint64_t kVerifySeed = 0x5eedc0de;

Matrix random_matrix(Xoshiro256StarStar& g, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex{g.gaussian(), g.gaussian()};
  return m;
}

Matrix random_int_matrix(Xoshiro256StarStar& g, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = Complex{static_cast<double>(g.uniform_int(17) - 8),
                        static_cast<double>(g.uniform_int(17) - 8)};
  return m;
}

Matrix random_density(Xoshiro256StarStar& g, int d) {
  const Matrix a = random_matrix(g, d, d);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

Matrix random_hermitian(Xoshiro256StarStar& g, int d) {
  const Matrix a = random_matrix(g, d, d);
  return 0.5 * (a + a.adjoint());
}

std::vector<double> full_turn_grid(int points) {
  return sweep_grid(SweepSpec{0.0, 2.0 * kPi, points});
}

void add(std::vector<CheckResult>& out, const std::string& suite,
         const std::string& name, double value, double threshold) {
  out.push_back({suite, name, value, threshold, value <= threshold});
}

// Scheme instances exercised by the protocol and comb suites, with their
// ideal success weight.
struct SchemeCase {
  Scheme scheme;
  int rounds;
  double lambda;
};

std::vector<SchemeCase> scheme_cases() {
  std::vector<SchemeCase> cases{{Scheme::single, 1, 0.5},
                                {Scheme::two_toffoli, 2, 2.0 / 3.0},
                                {Scheme::two_cnot, 2, 2.0 / 3.0}};
  for (int n = 1; n <= 5; ++n)
    cases.push_back({Scheme::qudit, n, n / (n + 1.0)});
  for (int k = 1; k <= 4; ++k)
    cases.push_back({Scheme::vmc, k, 1.0 - std::ldexp(1.0, -k)});
  return cases;
}

double success_probability(const std::vector<ProtocolOutcome>& outcomes) {
  double p = 0.0;
  for (const ProtocolOutcome& o : outcomes)
    if (o.success) p += o.probability;
  return p;
}

// Residual-phase angle a failure leaves on the data qubit.
double failure_angle(const SchemeCase& sc, double phi) {
  switch (sc.scheme) {
    case Scheme::single: return -phi;
    case Scheme::qudit: return -sc.rounds * phi;
    case Scheme::two_toffoli:
    case Scheme::two_cnot: return -2.0 * phi;
    case Scheme::vmc: return -(std::ldexp(1.0, sc.rounds) - 1.0) * phi;
  }
  throw std::logic_error("bad scheme");
}

void verify_linalg(std::vector<CheckResult>& out) {
  const std::string suite = "linalg";
  Xoshiro256StarStar g(kVerifySeed);

  // Integer entries keep every product exact, so associativity must hold
  // to the last bit.
  double assoc = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_int_matrix(g, 2, 3), b = random_int_matrix(g, 3, 2),
                 c = random_int_matrix(g, 2, 2);
    assoc = std::max(assoc, max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))));
  }
  add(out, suite, "kron_associative_exact", assoc, 0.0);

  double mixed = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(g, 3, 3), b = random_matrix(g, 2, 2),
                 c = random_matrix(g, 3, 3), d = random_matrix(g, 2, 2);
    mixed = std::max(mixed, max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)));
  }
  add(out, suite, "kron_mixed_product", mixed, 1e-12);

  double keep_all = 0.0, trace_kept = 0.0, factor = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<int> dims{2, 3, 2};
    const DensityMatrix rho(dims, random_density(g, 12));
    keep_all = std::max(keep_all,
                        max_abs(partial_trace(rho, {0, 1, 2}).mat - rho.mat));
    const DensityMatrix red = partial_trace(rho, {1});
    trace_kept = std::max(trace_kept, std::abs(red.mat.trace() - rho.mat.trace()));
    // On product states the reduction is the factor itself.
    const Matrix x = random_density(g, 2), y = random_density(g, 3);
    const DensityMatrix prod({2, 3}, kron(x, y));
    factor = std::max(factor, max_abs(partial_trace(prod, {0}).mat - x));
    factor = std::max(factor, max_abs(partial_trace(prod, {1}).mat - y));
  }
  add(out, suite, "partial_trace_keep_all_exact", keep_all, 0.0);
  add(out, suite, "partial_trace_preserves_trace", trace_kept, 1e-12);
  add(out, suite, "partial_trace_product_factors", factor, 1e-12);

  double recon = 0.0, ortho = 0.0, trace_sum = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 4 + 4 * trial;
    const Matrix h = random_hermitian(g, d);
    const EigenSystem es = hermitian_eigensystem(h);
    const Matrix lam = es.values.cast<Complex>().asDiagonal();
    recon = std::max(recon, max_abs(es.vectors * lam * es.vectors.adjoint() - h));
    ortho = std::max(ortho, max_abs(es.vectors.adjoint() * es.vectors -
                                    Matrix::Identity(d, d)));
    trace_sum = std::max(trace_sum, std::abs(es.values.sum() - h.trace().real()));
  }
  add(out, suite, "jacobi_reconstruction", recon, 1e-11);
  add(out, suite, "jacobi_orthonormal_vectors", ortho, 1e-12);
  add(out, suite, "jacobi_trace_sum", trace_sum, 1e-11);

  double pure_overlap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a = g.haar_qubit(), b = g.haar_qubit();
    const double f = fidelity(Matrix(a * a.adjoint()), Matrix(b * b.adjoint()));
    pure_overlap = std::max(pure_overlap, std::abs(f - std::norm(a.dot(b))));
  }
  add(out, suite, "fidelity_pure_overlap", pure_overlap, 1e-12);
}

void verify_circuits(std::vector<CheckResult>& out) {
  const std::string suite = "circuits";
  Xoshiro256StarStar g(kVerifySeed + 1);

  double unit = 0.0;
  std::vector<Gate> gates{cnot(), pauli_x(), m_gate(), toffoli()};
  for (int d = 2; d <= 9; ++d) gates.push_back(controlled_shift_down(d));
  for (double phi : full_turn_grid(16)) {
    gates.push_back(phase_gate(phi));
    gates.push_back(ry(phi - kPi));
  }
  for (const Gate& gate : gates) unit = std::max(unit, gate.unitarity_error());
  add(out, suite, "gate_unitarity", unit, 1e-12);

  // Random circuits on a mixed-dimension register, checked against plain
  // matrix composition.
  double compose = 0.0, split = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    Circuit first({2, 3, 2});
    Circuit second({2, 3, 2});
    auto random_step = [&](Circuit& c) {
      switch (g.uniform_int(4)) {
        case 0: c.append(phase_gate(g.uniform01() * 2 * kPi), {g.uniform_int(2) * 2}); break;
        case 1: c.append(ry(g.uniform01() * 2 * kPi), {g.uniform_int(2) * 2}); break;
        case 2: c.append(cnot(), g.uniform01() < 0.5 ? std::vector<int>{0, 2}
                                                     : std::vector<int>{2, 0}); break;
        default: c.append(controlled_shift_down(3), {g.uniform_int(2) * 2, 1}); break;
      }
    };
    for (int s = 0; s < 5; ++s) random_step(first);
    for (int s = 0; s < 5; ++s) random_step(second);
    Circuit both({2, 3, 2});
    both.append(first, {0, 1, 2}).append(second, {0, 1, 2});
    const Matrix ua = circuit_unitary(first), ub = circuit_unitary(second);
    split = std::max(split, max_abs(circuit_unitary(both) - ub * ua));

    const StateVector in({2, 3, 2},
                         [&] {
                           Vector v = random_matrix(g, 12, 1);
                           v /= v.norm();
                           return v;
                         }());
    compose = std::max(compose, max_abs(run_circuit(both, in).amps - ub * (ua * in.amps)));
  }
  add(out, suite, "circuit_concat_matches_product", split, 1e-12);
  add(out, suite, "run_circuit_matches_unitary", compose, 1e-12);

  double shift_exact = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const Matrix m = controlled_shift_down(d).matrix;
    Matrix expect = Matrix::Zero(2 * d, 2 * d);
    for (int t = 0; t < d; ++t) {
      expect(t, t) = 1.0;
      expect(d + (t - 1 + d) % d, d + t) = 1.0;
    }
    shift_exact = std::max(shift_exact, max_abs(m - expect));
  }
  add(out, suite, "controlled_shift_action_exact", shift_exact, 0.0);

  double msum = 0.0, projector = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    Vector v = random_matrix(g, 12, 1);
    v /= v.norm();
    const StateVector s({2, 3, 2}, v);
    for (int wire = 0; wire < 3; ++wire) {
      double total = 0.0;
      for (const auto& rec : measure_wire(s, wire)) total += rec.probability;
      msum = std::max(msum, std::abs(total - 1.0));
    }
    const DensityMatrix rho({2, 3, 2}, random_density(g, 12));
    double total = 0.0;
    for (const auto& rec : measure_wire(rho, 1)) {
      total += rec.probability;
      if (rec.post_state) {
        // Post states are supported on the measured outcome.
        const Matrix back = project_wire(rec.post_state->mat, rho.dims, 1, rec.outcome);
        projector = std::max(projector, max_abs(back - rec.post_state->mat));
      }
    }
    msum = std::max(msum, std::abs(total - 1.0));
  }
  add(out, suite, "measurement_total_probability", msum, 1e-12);
  add(out, suite, "measurement_post_state_support", projector, 1e-12);

  double round_trip = 0.0;
  const Circuit c = build_2to1_cnot(0.7);
  const Circuit back = circuit_from_json(circuit_to_json(c));
  round_trip = max_abs(circuit_unitary(back) - circuit_unitary(c));
  add(out, suite, "circuit_json_round_trip_exact", round_trip, 0.0);
}

void verify_protocols(std::vector<CheckResult>& out) {
  const std::string suite = "protocols";
  Xoshiro256StarStar g(kVerifySeed + 2);
  const std::vector<double> grid = full_turn_grid(64);
  const DensityMatrix plus = parse_state("+");

  double covariance = 0.0, value = 0.0;
  for (const SchemeCase& sc : scheme_cases()) {
    double lo = 2.0, hi = -1.0;
    for (double phi : grid) {
      const double p = success_probability(run_scheme(sc.scheme, sc.rounds, phi, plus));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
      value = std::max(value, std::abs(p - sc.lambda));
    }
    covariance = std::max(covariance, hi - lo);
  }
  add(out, suite, "success_probability_phase_covariant", covariance, 1e-12);
  add(out, suite, "success_probability_closed_form", value, 1e-12);

  double fid = 0.0, fail = 0.0;
  for (const SchemeCase& sc : scheme_cases()) {
    for (int trial = 0; trial < 6; ++trial) {
      const double phi = g.uniform01() * 2 * kPi;
      Matrix xi;
      if (trial % 2 == 0) {
        const Vector v = g.haar_qubit();
        xi = v * v.adjoint();
      } else {
        xi = g.bloch_ball_state();
      }
      const Matrix u = phase_gate(phi).matrix;
      const Matrix target = u * xi * u.adjoint();
      const Matrix uf = phase_gate(failure_angle(sc, phi)).matrix;
      const Matrix fail_target = uf * xi * uf.adjoint();
      for (const ProtocolOutcome& o :
           run_scheme(sc.scheme, sc.rounds, phi, DensityMatrix({2}, xi))) {
        if (o.probability < 1e-14) continue;
        if (o.success)
          fid = std::max(fid, 1.0 - fidelity(o.post_state.mat, target));
        else
          fail = std::max(fail, max_abs(o.post_state.mat - fail_target));
      }
    }
  }
  add(out, suite, "success_branch_fidelity", fid, 1e-12);
  add(out, suite, "failure_branch_inverse_rotation", fail, 1e-12);

  double forbidden = 0.0;
  for (double phi : grid) {
    const DensityMatrix xi({2}, g.bloch_ball_state());
    for (const ProtocolOutcome& o : run_2to1_toffoli(phi, xi))
      if (o.label == "01") forbidden = std::max(forbidden, o.probability);
    for (const ProtocolOutcome& o : run_2to1_cnot(phi, xi))
      if (o.label == "01") forbidden = std::max(forbidden, o.probability);
  }
  add(out, suite, "two_qubit_outcome01_absent", forbidden, 1e-12);

  // One-round schemes collapse to the single-qubit instrument; the
  // two-qubit circuits induce the same instrument as the direct two-use
  // qudit scheme (their success weight 2/3 rules out a match with the
  // one-use instrument, whose weight is 1/2).
  double reduction = 0.0;
  for (double phi : {0.3, 1.7, 4.4}) {
    for (bool part : {true, false}) {
      const Matrix one = instrument_choi(Scheme::single, 1, phi, part).matrix;
      const Matrix two = instrument_choi(Scheme::qudit, 2, phi, part).matrix;
      for (Scheme s : {Scheme::qudit, Scheme::vmc})
        reduction = std::max(
            reduction, max_abs(instrument_choi(s, 1, phi, part).matrix - one));
      for (Scheme s : {Scheme::two_toffoli, Scheme::two_cnot})
        reduction = std::max(
            reduction, max_abs(instrument_choi(s, 2, phi, part).matrix - two));
    }
  }
  add(out, suite, "instrument_reductions_consistent", reduction, 1e-10);

  double linear = 0.0;
  for (const SchemeCase& sc : scheme_cases()) {
    const Matrix r1 = random_density(g, 2), r2 = random_density(g, 2);
    const Matrix mix = 0.5 * (r1 + r2);
    const auto bm = run_scheme_raw(sc.scheme, sc.rounds, 1.1, mix);
    const auto b1 = run_scheme_raw(sc.scheme, sc.rounds, 1.1, r1);
    const auto b2 = run_scheme_raw(sc.scheme, sc.rounds, 1.1, r2);
    for (size_t i = 0; i < bm.size(); ++i)
      linear = std::max(linear,
                        max_abs(bm[i].op - 0.5 * (b1[i].op + b2[i].op)));
  }
  add(out, suite, "branch_maps_linear", linear, 1e-12);

  // The storage-space channel: keep the code block, dump the rest on t0.
  double proj = 0.0, proj_trace = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho({2, 2}, random_density(g, 4));
    const std::vector<int> code{0, 2, 3};  // |00>, |10>, |11>
    const DensityMatrix got = code_projection(rho, code, 0);
    Matrix expect(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) expect(i, j) = rho.mat(code[i], code[j]);
    expect(0, 0) += rho.mat(1, 1);
    proj = std::max(proj, max_abs(got.mat - expect));
    proj_trace = std::max(proj_trace, std::abs(got.mat.trace().real() - 1.0));
  }
  add(out, suite, "code_projection_formula", proj, 0.0);
  add(out, suite, "code_projection_trace_preserving", proj_trace, 1e-12);

  // Program preparation and the qutrit-style shift on the two-qubit code.
  const StateVector prepared = run_circuit(prep_2to1(), StateVector::basis({2, 2}, 0));
  Vector target(4);
  target << 1, 0, 1, 1;
  target /= std::sqrt(3.0);
  add(out, suite, "program_prep_state", max_abs(prepared.amps - target), 1e-12);

  const Matrix shift = circuit_unitary(shift_down_v3());
  double cycle = 0.0;
  const int code[3] = {0, 2, 3};
  for (int t = 0; t < 3; ++t) {
    Vector in = Vector::Zero(4), want = Vector::Zero(4);
    in(code[t]) = 1.0;
    want(code[(t + 2) % 3]) = 1.0;  // t -> t - 1 mod 3
    cycle = std::max(cycle, max_abs(shift * in - want));
  }
  add(out, suite, "shift_down_cycles_code_states", cycle, 0.0);

  const Circuit cnot_level = build_2to1_cnot(0.9);
  add(out, suite, "cnot_level_matches_toffoli_level",
      equal_up_to_global_phase(circuit_unitary(cnot_level),
                               circuit_unitary(circuit_2to1_toffoli(0.9)), 1e-10)
          ? 0.0
          : 1.0,
      0.0);
  add(out, suite, "cnot_level_cnot_count",
      std::abs(cnot_level.count_gates("cnot") - 8), 0.0);
}

void verify_comb(std::vector<CheckResult>& out) {
  const std::string suite = "comb";
  Xoshiro256StarStar g(kVerifySeed + 3);
  const std::vector<double> grid = full_turn_grid(16);

  double tp = 0.0, form = 0.0, positive = 0.0;
  for (const SchemeCase& sc : scheme_cases()) {
    for (double phi : {0.45, 2.2, 5.9}) {
      const ChoiOperator succ = instrument_choi(sc.scheme, sc.rounds, phi, true);
      const ChoiOperator fail = instrument_choi(sc.scheme, sc.rounds, phi, false);
      tp = std::max(tp, max_abs(succ.trace_over_output() + fail.trace_over_output() -
                                Matrix::Identity(2, 2)));
      form = std::max(form, check_perfect_retrieval(succ, phi, sc.lambda, 1e-10)
                                ? 0.0
                                : 1.0);
      positive = std::max(positive, -succ.positivity_margin());
      positive = std::max(positive, -fail.positivity_margin());
    }
  }
  add(out, suite, "instrument_trace_preserving", tp, 1e-10);
  add(out, suite, "instrument_success_is_phase_gate", form, 0.0);
  add(out, suite, "instrument_choi_positive", positive, 1e-12);

  double pos = 0.0, ratio = 0.0, eq = 0.0, tr_vs_ratio = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const RetrievalSpec spec = RetrievalSpec::optimal(n);
    const ChoiOperator rs = build_rs(spec);
    const RsReport rep = check_rs(spec, rs, grid);
    pos = std::max(pos, -rep.positivity_margin);
    ratio = std::max(ratio, rep.max_trace_ratio - 1.0);
    eq = std::max(eq, rep.max_equality_error);
    // The ratio bound is exactly the operator statement tr_D R_s <= I.
    const Matrix reduced = partial_trace(rs.matrix, {2, n + 1, 2}, {0, 1});
    tr_vs_ratio = std::max(
        tr_vs_ratio,
        std::abs(hermitian_eigenvalues(reduced).maxCoeff() - rep.max_trace_ratio));
  }
  add(out, suite, "optimal_rs_positive", pos, 1e-12);
  add(out, suite, "optimal_rs_trace_condition", ratio, 1e-12);
  add(out, suite, "optimal_rs_covariant_equality", eq, 1e-10);
  add(out, suite, "rs_trace_ratio_matches_operator_norm", tr_vs_ratio, 1e-10);

  // Random feasible specs stay inside both margins.
  double rpos = 0.0, rratio = 0.0, req = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + g.uniform_int(5);
    RetrievalSpec spec;
    spec.n = n;
    spec.p.resize(n + 1);
    double total = 0.0;
    for (double& x : spec.p) total += (x = 0.05 + g.uniform01());
    for (double& x : spec.p) x /= total;
    spec.mu.resize(n);
    for (int J = 0; J < n; ++J)
      spec.mu[J] = g.uniform01() * std::min(spec.p[J], spec.p[J + 1]);
    const RsReport rep = check_rs(spec, build_rs(spec), grid);
    rpos = std::max(rpos, -rep.positivity_margin);
    rratio = std::max(rratio, rep.max_trace_ratio - 1.0);
    req = std::max(req, rep.max_equality_error);
  }
  add(out, suite, "random_rs_positive", rpos, 1e-12);
  add(out, suite, "random_rs_trace_condition", rratio, 1e-12);
  add(out, suite, "random_rs_covariant_equality", req, 1e-10);

  double lp_val = 0.0, lp_arg = 0.0, cert = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const LPResult lp = solve_lp(n);
    lp_val = std::max(lp_val, std::abs(lp.optimum - n / (n + 1.0)));
    for (double p : lp.argmax_p) lp_arg = std::max(lp_arg, std::abs(p - 1.0 / (n + 1)));
    for (double m : lp.argmax_mu) lp_arg = std::max(lp_arg, std::abs(m - 1.0 / (n + 1)));
    // Dual certificate: p_J >= f_J mu_J + (1 - f_J) mu_{J-1} row by row,
    // with equality summing to 1 at the optimum.
    double total = 0.0;
    for (int J = 0; J <= n; ++J) {
      const double f = lp.certificate_weights[J];
      const double muJ = J < n ? lp.argmax_mu[J] : 0.0;
      const double muP = J > 0 ? lp.argmax_mu[J - 1] : 0.0;
      const double row = f * muJ + (1.0 - f) * muP;
      cert = std::max(cert, row - lp.argmax_p[J]);
      total += row;
    }
    cert = std::max(cert, std::abs(total - 1.0));
    cert = std::max(cert, lp.optimum * (n + 1.0) / n - 1.0);
  }
  add(out, suite, "lp_closed_form_value", lp_val, 1e-9);
  add(out, suite, "lp_uniform_argmax", lp_arg, 1e-9);
  add(out, suite, "lp_dual_certificate", cert, 1e-12);

  double lp_vs_sim = 0.0;
  const DensityMatrix plus = parse_state("+");
  for (int n = 1; n <= 6; ++n) {
    const double lp = solve_lp(n).optimum;
    const double sim =
        success_probability(run_scheme(Scheme::qudit, n, 0.83, plus));
    lp_vs_sim = std::max(lp_vs_sim, std::abs(lp - sim));
  }
  add(out, suite, "lp_matches_simulated_success", lp_vs_sim, 1e-10);
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  bool known = false;
  if (suite == "linalg" || suite == "all") verify_linalg(out), known = true;
  if (suite == "circuits" || suite == "all") verify_circuits(out), known = true;
  if (suite == "protocols" || suite == "all") verify_protocols(out), known = true;
  if (suite == "comb" || suite == "all") verify_comb(out), known = true;
  if (!known) throw std::invalid_argument("unknown suite: " + suite);
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& r : results)
    arr.push_back({{"suite", r.suite},
                   {"name", r.name},
                   {"value", r.value},
                   {"threshold", r.threshold},
                   {"pass", r.pass}});
  return arr;
}

}  // namespace psr
