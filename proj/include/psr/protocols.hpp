#pragma once

#include "psr/circuits.hpp"
#include "psr/linalg.hpp"

#include <string>
#include <vector>

namespace psr {

// One classical branch of a retrieval run, reduced to the data qubit.
struct ProtocolOutcome {
  std::string label;
  double probability = 0.0;
  DensityMatrix post_state;  // trace 1 when probability > 0, zero otherwise
  bool success = false;
};

// Same branch before normalisation: `op` is the unnormalised data-qubit
// output, so the map xi -> op is linear (used for process tomography).
struct Branch {
  std::string label;
  Matrix op;
  bool success = false;
};

// Program states -------------------------------------------------------

// (|0> + e^{i phi}|1>) / sqrt(2): one use of the phase gate on |+>.
StateVector store_single(double phi);

// N uses banked into a single (N+1)-level wire:
// (1/sqrt(N+1)) sum_j e^{i j phi} |j>.
StateVector store_qudit(int n, double phi);

// Program for the iterated scheme: qubit m holds store_single(2^m phi),
// m = 0..k-1, i.e. 2^k - 1 phase-gate uses in total.
struct ProgramState {
  int k = 0;
  StateVector state;
};
ProgramState vmc_program_state(int k, double phi);
long long vmc_gate_uses(int k);  // 2^k - 1

// Storage-space projection: keep the span of the listed computational
// labels; all weight outside it is funnelled to the code state `t0`
// (which must be one of the labels). Output lives on one wire whose
// levels follow the order of `code_basis`.
DensityMatrix code_projection(const DensityMatrix& rho,
                              const std::vector<int>& code_basis, int t0);

// Retrieval ------------------------------------------------------------

// 1 -> 1: CNOT from data onto the program qubit, then measure it.
// Outcome 0 (p = 1/2) applies the stored gate; outcome 1 applies its inverse.
std::vector<Branch> retrieve_single_raw(const StateVector& program, const Matrix& xi);
std::vector<ProtocolOutcome> retrieve_single(const StateVector& program,
                                             const DensityMatrix& xi);

// N -> 1: controlled shift-down onto the (N+1)-level program wire, then
// measure it. Outcomes 0..N-1 succeed (p = N/(N+1) total for the ideal
// program); outcome N applies the inverse gate N times.
std::vector<Branch> retrieve_qudit_raw(int n, const StateVector& program,
                                       const Matrix& xi);
std::vector<ProtocolOutcome> retrieve_qudit(int n, const StateVector& program,
                                            const DensityMatrix& xi);

// 2 -> 1 on two program qubits -----------------------------------------

// Prepares (|00> + |10> + |11>)/sqrt(3) from |00>.
Circuit prep_2to1();

// Cyclic shift-down on the code space {|00>, |10>, |11>} of two qubits,
// built from one X and two CNOTs.
Circuit shift_down_v3();

// Full three-qubit retrieval circuit (wire 0 data, wires 1-2 program):
// program preparation, two phase-gate uses, then the controlled shift.
Circuit circuit_2to1_toffoli(double phi);

// Toffoli up to a sign: the basis state with the selected control high and
// the other control plus target low picks up a -1. Slots: controls 0,1,
// target 2.
Circuit relative_phase_toffoli(int phased_control);

// circuit_2to1_toffoli with both Toffolis replaced by relative-phase
// Toffolis whose sign defects cancel between the two; 8 CNOTs in total.
Circuit build_2to1_cnot(double phi = 0.0);

// Runs either 2 -> 1 circuit and measures both program qubits. Labels are
// the two outcome bits; "00" and "10" succeed, "01" never occurs.
std::vector<Branch> run_2to1_toffoli_raw(double phi, const Matrix& xi);
std::vector<ProtocolOutcome> run_2to1_toffoli(double phi, const DensityMatrix& xi);
std::vector<Branch> run_2to1_cnot_raw(double phi, const Matrix& xi);
std::vector<ProtocolOutcome> run_2to1_cnot(double phi, const DensityMatrix& xi);

// Iterated 2^k-1 -> 1 scheme: qubit m is consumed by a CNOT + measurement;
// outcome 0 stops with success, outcome 1 doubles the residual rotation and
// moves on. Labels list the observed bits, e.g. "1,1,0".
std::vector<Branch> run_vmc_raw(int k, double phi, const Matrix& xi);
std::vector<ProtocolOutcome> run_vmc(int k, double phi, const DensityMatrix& xi);

// Normalises raw branches into reportable outcomes.
std::vector<ProtocolOutcome> finalize_branches(const std::vector<Branch>& branches);

}  // namespace psr
