#pragma once

#include "psr/linalg.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace psr {

// A unitary acting on an ordered list of slots with fixed local dimensions.
struct Gate {
  std::string name;
  std::vector<int> dims;
  Matrix matrix;
  std::vector<double> params;

  Gate(std::string name_, std::vector<int> dims_, Matrix matrix_,
       std::vector<double> params_ = {});
  int total_dim() const { return total_dimension(dims); }
  double unitarity_error() const;
};

// diag(1, e^{i phi})
Gate phase_gate(double phi);
// |j>|k> -> |j>|j xor k>
Gate cnot();
// exp(i theta sigma_y / 2)
Gate ry(double theta);
Gate pauli_x();
// Column 0 = (1, sqrt(2)) / sqrt(3); used to seed the two-qubit program state.
Gate m_gate();
// Doubly controlled X; slots 0,1 control, slot 2 target.
Gate toffoli();
// Qubit-controlled cyclic shift on a d-level slot: |c>|t> -> |c>|t - c mod d>.
Gate controlled_shift_down(int d);

struct Step {
  Gate gate;
  std::vector<int> wires;
};

struct Circuit {
  std::vector<int> register_dims;
  std::vector<Step> steps;

  explicit Circuit(std::vector<int> register_dims_);
  Circuit& append(Gate gate, std::vector<int> wires);
  Circuit& append(const Circuit& other, const std::vector<int>& wire_map);

  int total_dim() const { return total_dimension(register_dims); }
  int count_gates(const std::string& name) const;
  // Single-slot steps, not counting uses of the stored phase gate.
  int count_fixed_one_qubit() const;
};

// Applies one step to a register vector without forming the full unitary.
Vector apply_step(const std::vector<int>& dims, const Gate& gate,
                  const std::vector<int>& wires, const Vector& in);

// Product of all embedded step unitaries; refuses registers above 2^14.
Matrix circuit_unitary(const Circuit& c);

StateVector run_circuit(const Circuit& c, const StateVector& in);
DensityMatrix run_circuit(const Circuit& c, const DensityMatrix& in);

// Projection of a register matrix onto computational outcome `outcome` of
// one wire (both sides); trace gives the outcome weight.
Matrix project_wire(const Matrix& m, const std::vector<int>& dims, int wire,
                    int outcome);

template <typename StateT>
struct MeasurementRecord {
  int wire = 0;
  int outcome = 0;
  double probability = 0.0;
  // Empty when the outcome has no weight (probability < 1e-14).
  std::optional<StateT> post_state;
};

std::vector<MeasurementRecord<StateVector>> measure_wire(const StateVector& s, int wire);
std::vector<MeasurementRecord<DensityMatrix>> measure_wire(const DensityMatrix& rho, int wire);

// Round-trip JSON form: {"register_dims": [...], "steps": [{"gate": name,
// "params": [...], "wires": [...]}]}. Gates are rebuilt from name + params.
nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace psr
