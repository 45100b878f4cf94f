#include "psr/protocols.hpp"

#include <cmath>

namespace psr {

StateVector store_single(double phi) {
  Vector v(2);
  v << 1.0, std::exp(kImag * phi);
  return StateVector({2}, v / std::sqrt(2.0));
}

StateVector store_qudit(int n, double phi) {
  if (n < 1) throw std::invalid_argument("need at least one use");
  Vector v(n + 1);
  for (int j = 0; j <= n; ++j) v(j) = std::exp(kImag * (j * phi));
  return StateVector({n + 1}, v / std::sqrt(n + 1.0));
}

ProgramState vmc_program_state(int k, double phi) {
  if (k < 1) throw std::invalid_argument("need at least one round");
  Matrix v = store_single(phi).amps;
  for (int m = 1; m < k; ++m) v = kron(v, store_single(std::ldexp(phi, m)).amps);
  return ProgramState{k, StateVector(std::vector<int>(k, 2), v.col(0))};
}

long long vmc_gate_uses(int k) {
  if (k < 1) throw std::invalid_argument("need at least one round");
  return (1LL << k) - 1;
}

DensityMatrix code_projection(const DensityMatrix& rho,
                              const std::vector<int>& code_basis, int t0) {
  const int total = rho.total_dim();
  const int d = static_cast<int>(code_basis.size());
  if (d == 0) throw std::invalid_argument("empty code basis");
  int pos0 = -1;
  for (int i = 0; i < d; ++i) {
    if (code_basis[i] < 0 || code_basis[i] >= total)
      throw std::invalid_argument("code label out of range");
    for (int j = i + 1; j < d; ++j)
      if (code_basis[j] == code_basis[i])
        throw std::invalid_argument("repeated code label");
    if (code_basis[i] == t0) pos0 = i;
  }
  if (pos0 < 0) throw std::invalid_argument("reset label is not in the code basis");

  Matrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = rho.mat(code_basis[i], code_basis[j]);
  std::vector<char> in_code(total, 0);
  for (int b : code_basis) in_code[b] = 1;
  double leak = 0.0;
  for (int t = 0; t < total; ++t)
    if (!in_code[t]) leak += rho.mat(t, t).real();
  out(pos0, pos0) += leak;
  return DensityMatrix({d}, std::move(out));
}

std::vector<ProtocolOutcome> finalize_branches(const std::vector<Branch>& branches) {
  std::vector<ProtocolOutcome> out;
  out.reserve(branches.size());
  for (const Branch& b : branches) {
    const double p = std::max(0.0, b.op.trace().real());
    ProtocolOutcome o;
    o.label = b.label;
    o.probability = p;
    o.success = b.success;
    o.post_state = (p >= 1e-14)
                       ? DensityMatrix({2}, b.op / p)
                       : DensityMatrix({2}, Matrix::Zero(2, 2));
    out.push_back(std::move(o));
  }
  return out;
}

static void check_data_qubit(const Matrix& xi) {
  if (xi.rows() != 2 || xi.cols() != 2)
    throw std::invalid_argument("data state must live on one qubit");
}

std::vector<Branch> retrieve_single_raw(const StateVector& program, const Matrix& xi) {
  check_data_qubit(xi);
  if (program.dims != std::vector<int>{2})
    throw std::invalid_argument("program register must be one qubit");
  const std::vector<int> dims{2, 2};
  const Matrix u = cnot().matrix;  // data controls the program qubit
  Matrix joint = kron(xi, program.amps * program.amps.adjoint());
  joint = u * joint * u.adjoint();
  std::vector<Branch> out;
  for (int t = 0; t < 2; ++t)
    out.push_back({std::to_string(t),
                   partial_trace(project_wire(joint, dims, 1, t), dims, {0}),
                   t == 0});
  return out;
}

std::vector<ProtocolOutcome> retrieve_single(const StateVector& program,
                                             const DensityMatrix& xi) {
  return finalize_branches(retrieve_single_raw(program, xi.mat));
}

std::vector<Branch> retrieve_qudit_raw(int n, const StateVector& program,
                                       const Matrix& xi) {
  if (n < 1) throw std::invalid_argument("need at least one use");
  check_data_qubit(xi);
  if (program.dims != std::vector<int>{n + 1})
    throw std::invalid_argument("program register must be one (N+1)-level wire");
  const std::vector<int> dims{2, n + 1};
  const Matrix u = controlled_shift_down(n + 1).matrix;
  Matrix joint = kron(xi, program.amps * program.amps.adjoint());
  joint = u * joint * u.adjoint();
  std::vector<Branch> out;
  for (int t = 0; t <= n; ++t)
    out.push_back({std::to_string(t),
                   partial_trace(project_wire(joint, dims, 1, t), dims, {0}),
                   t < n});
  return out;
}

std::vector<ProtocolOutcome> retrieve_qudit(int n, const StateVector& program,
                                            const DensityMatrix& xi) {
  return finalize_branches(retrieve_qudit_raw(n, program, xi.mat));
}

Circuit prep_2to1() {
  // Target (|00> + |10> + |11>)/sqrt(3); the sign split between the two
  // ry quarter-turns is fixed by trying all four combinations.
  Vector target(4);
  target << 1, 0, 1, 1;
  target /= std::sqrt(3.0);
  for (double pre : {-kPi / 4, kPi / 4})
    for (double post : {-kPi / 4, kPi / 4}) {
      Circuit c({2, 2});
      c.append(m_gate(), {0})
          .append(ry(pre), {1})
          .append(cnot(), {0, 1})
          .append(ry(post), {1});
      const StateVector got = run_circuit(c, StateVector::basis({2, 2}, 0));
      if (max_abs(got.amps - target) <= 1e-12) return c;
    }
  throw std::logic_error("no ry sign assignment prepares the program state");
}

Circuit shift_down_v3() {
  // On {|00>,|10>,|11>} this is the cycle 00 -> 11 -> 10 -> 00; the
  // leftover state |01> is left fixed.
  Circuit c({2, 2});
  c.append(pauli_x(), {0}).append(cnot(), {1, 0}).append(cnot(), {0, 1});
  return c;
}

Circuit circuit_2to1_toffoli(double phi) {
  Circuit c({2, 2, 2});
  c.append(prep_2to1(), {1, 2});
  c.append(phase_gate(phi), {1}).append(phase_gate(phi), {2});
  // shift_down_v3 with every gate promoted to an extra control on the data
  // qubit: X -> CNOT, CNOT -> Toffoli.
  c.append(cnot(), {0, 1});
  c.append(toffoli(), {0, 2, 1});
  c.append(toffoli(), {0, 1, 2});
  return c;
}

Circuit relative_phase_toffoli(int phased_control) {
  if (phased_control != 0 && phased_control != 1)
    throw std::invalid_argument("phased control must be slot 0 or 1");
  const int c1 = phased_control, c2 = 1 - phased_control;
  Circuit c({2, 2, 2});
  c.append(ry(kPi / 4), {2})
      .append(cnot(), {c2, 2})
      .append(ry(kPi / 4), {2})
      .append(cnot(), {c1, 2})
      .append(ry(-kPi / 4), {2})
      .append(cnot(), {c2, 2})
      .append(ry(-kPi / 4), {2});
  // Defensive: equals Toffoli except for a sign on |c1=1, c2=0, t=0>.
  Matrix expect = toffoli().matrix;
  const int flipped = phased_control == 0 ? 4 : 2;
  expect(flipped, flipped) = -1.0;
  if (max_abs(circuit_unitary(c) - expect) > 1e-12)
    throw std::logic_error("relative-phase Toffoli template is wrong");
  return c;
}

Circuit build_2to1_cnot(double phi) {
  const Matrix reference = circuit_unitary(circuit_2to1_toffoli(phi));
  // The sign defects of the two relative-phase Toffolis must cancel; try
  // the four ways of attaching the phased control.
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb) {
      Circuit c({2, 2, 2});
      c.append(prep_2to1(), {1, 2});
      c.append(phase_gate(phi), {1}).append(phase_gate(phi), {2});
      c.append(cnot(), {0, 1});
      c.append(relative_phase_toffoli(pa), {0, 2, 1});
      c.append(relative_phase_toffoli(pb), {0, 1, 2});
      if (equal_up_to_global_phase(circuit_unitary(c), reference, 1e-12)) return c;
    }
  throw std::logic_error("no phased-control assignment matches the Toffoli circuit");
}

static std::vector<Branch> run_2to1_common(const Circuit& circ, const Matrix& xi) {
  check_data_qubit(xi);
  const std::vector<int> dims{2, 2, 2};
  Matrix blank = Matrix::Zero(4, 4);
  blank(0, 0) = 1.0;
  Matrix joint = kron(xi, blank);
  const Matrix u = circuit_unitary(circ);
  joint = u * joint * u.adjoint();
  std::vector<Branch> out;
  for (int m1 = 0; m1 < 2; ++m1) {
    const Matrix after1 = project_wire(joint, dims, 1, m1);
    for (int m2 = 0; m2 < 2; ++m2) {
      const Matrix leaf = project_wire(after1, dims, 2, m2);
      const std::string label = std::to_string(m1) + std::to_string(m2);
      out.push_back({label, partial_trace(leaf, dims, {0}),
                     label == "00" || label == "10"});
    }
  }
  return out;
}

std::vector<Branch> run_2to1_toffoli_raw(double phi, const Matrix& xi) {
  return run_2to1_common(circuit_2to1_toffoli(phi), xi);
}

std::vector<ProtocolOutcome> run_2to1_toffoli(double phi, const DensityMatrix& xi) {
  return finalize_branches(run_2to1_toffoli_raw(phi, xi.mat));
}

std::vector<Branch> run_2to1_cnot_raw(double phi, const Matrix& xi) {
  return run_2to1_common(build_2to1_cnot(phi), xi);
}

std::vector<ProtocolOutcome> run_2to1_cnot(double phi, const DensityMatrix& xi) {
  return finalize_branches(run_2to1_cnot_raw(phi, xi.mat));
}

std::vector<Branch> run_vmc_raw(int k, double phi, const Matrix& xi) {
  if (k < 1) throw std::invalid_argument("need at least one round");
  check_data_qubit(xi);
  const std::vector<int> dims{2, 2};
  const Matrix u = cnot().matrix;
  std::vector<Branch> out;
  Matrix residual = xi;
  std::string seen;
  for (int m = 0; m < k; ++m) {
    const StateVector prog = store_single(std::ldexp(phi, m));
    Matrix joint = kron(residual, prog.amps * prog.amps.adjoint());
    joint = u * joint * u.adjoint();
    out.push_back({seen + "0",
                   partial_trace(project_wire(joint, dims, 1, 0), dims, {0}),
                   true});
    residual = partial_trace(project_wire(joint, dims, 1, 1), dims, {0});
    seen += "1,";
  }
  seen.pop_back();  // trailing comma
  out.push_back({seen, residual, false});
  return out;
}

std::vector<ProtocolOutcome> run_vmc(int k, double phi, const DensityMatrix& xi) {
  return finalize_branches(run_vmc_raw(k, phi, xi.mat));
}

}  // namespace psr
