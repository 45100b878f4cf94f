#include "psr/circuits.hpp"

#include <cmath>
#include <utility>

namespace psr {

Gate::Gate(std::string name_, std::vector<int> dims_, Matrix matrix_,
           std::vector<double> params_)
    : name(std::move(name_)),
      dims(std::move(dims_)),
      matrix(std::move(matrix_)),
      params(std::move(params_)) {
  const int d = total_dim();
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("gate matrix does not match slot dimensions");
  if (unitarity_error() > 1e-12)
    throw std::invalid_argument("gate matrix is not unitary");
}

double Gate::unitarity_error() const {
  const int d = total_dim();
  return max_abs(matrix.adjoint() * matrix - Matrix::Identity(d, d));
}

Gate phase_gate(double phi) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = std::exp(kImag * phi);
  return Gate("phase", {2}, std::move(m), {phi});
}

Gate cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1.0;
  return Gate("cnot", {2, 2}, std::move(m));
}

Gate ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << c, s, -s, c;
  return Gate("ry", {2}, std::move(m), {theta});
}

Gate pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Gate("x", {2}, std::move(m));
}

Gate m_gate() {
  const double a = 1.0 / std::sqrt(3.0), b = std::sqrt(2.0 / 3.0);
  Matrix m(2, 2);
  m << a, b, b, -a;
  return Gate("m", {2}, std::move(m));
}

Gate toffoli() {
  Matrix m = Matrix::Identity(8, 8);
  m(6, 6) = m(7, 7) = 0.0;
  m(6, 7) = m(7, 6) = 1.0;
  return Gate("toffoli", {2, 2, 2}, std::move(m));
}

Gate controlled_shift_down(int d) {
  if (d < 2) throw std::invalid_argument("shift target needs dimension >= 2");
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  for (int t = 0; t < d; ++t) {
    m(t, t) = 1.0;
    m(d + (t - 1 + d) % d, d + t) = 1.0;
  }
  return Gate("cshift", {2, d}, std::move(m), {static_cast<double>(d)});
}

Circuit::Circuit(std::vector<int> register_dims_)
    : register_dims(std::move(register_dims_)) {
  total_dimension(register_dims);  // validates
}

static void check_step(const std::vector<int>& dims, const Gate& gate,
                       const std::vector<int>& wires) {
  if (wires.size() != gate.dims.size())
    throw std::invalid_argument("wire count does not match gate slots");
  for (size_t i = 0; i < wires.size(); ++i) {
    const int w = wires[i];
    if (w < 0 || w >= static_cast<int>(dims.size()))
      throw std::invalid_argument("wire index out of range");
    if (dims[w] != gate.dims[i])
      throw std::invalid_argument("wire dimension does not match gate slot");
    for (size_t j = i + 1; j < wires.size(); ++j)
      if (wires[j] == w) throw std::invalid_argument("repeated wire in step");
  }
}

Circuit& Circuit::append(Gate gate, std::vector<int> wires) {
  check_step(register_dims, gate, wires);
  steps.push_back(Step{std::move(gate), std::move(wires)});
  return *this;
}

Circuit& Circuit::append(const Circuit& other, const std::vector<int>& wire_map) {
  if (wire_map.size() != other.register_dims.size())
    throw std::invalid_argument("wire map does not cover the appended circuit");
  for (const Step& s : other.steps) {
    std::vector<int> mapped;
    mapped.reserve(s.wires.size());
    for (int w : s.wires) mapped.push_back(wire_map[w]);
    append(s.gate, std::move(mapped));
  }
  return *this;
}

int Circuit::count_gates(const std::string& name) const {
  int n = 0;
  for (const Step& s : steps) n += (s.gate.name == name);
  return n;
}

int Circuit::count_fixed_one_qubit() const {
  int n = 0;
  for (const Step& s : steps)
    n += (s.gate.dims.size() == 1 && s.gate.name != "phase");
  return n;
}

Vector apply_step(const std::vector<int>& dims, const Gate& gate,
                  const std::vector<int>& wires, const Vector& in) {
  check_step(dims, gate, wires);
  const int total = total_dimension(dims);
  if (in.size() != total)
    throw std::invalid_argument("state does not match register dimension");
  const std::vector<int> strides = wire_strides(dims);
  const int g = gate.total_dim();
  const int slots = static_cast<int>(wires.size());

  // Offset of each gate output index inside the full register.
  std::vector<int> out_offset(g, 0);
  for (int go = 0; go < g; ++go) {
    int rest = go;
    for (int s = slots - 1; s >= 0; --s) {
      out_offset[go] += (rest % gate.dims[s]) * strides[wires[s]];
      rest /= gate.dims[s];
    }
  }

  Vector out = Vector::Zero(total);
  for (int x = 0; x < total; ++x) {
    if (in(x) == Complex{0.0, 0.0}) continue;
    int gi = 0, base = x;
    for (int s = 0; s < slots; ++s) {
      const int digit = digit_at(x, wires[s], strides, dims);
      gi = gi * gate.dims[s] + digit;
      base -= digit * strides[wires[s]];
    }
    for (int go = 0; go < g; ++go) {
      const Complex amp = gate.matrix(go, gi);
      if (amp != Complex{0.0, 0.0}) out(base + out_offset[go]) += amp * in(x);
    }
  }
  return out;
}

Matrix circuit_unitary(const Circuit& c) {
  const int total = c.total_dim();
  if (total > (1 << 14))
    throw std::invalid_argument("register dimension exceeds the 2^14 guard");
  Matrix u = Matrix::Identity(total, total);
  for (const Step& s : c.steps) {
    Matrix next(total, total);
    for (int col = 0; col < total; ++col)
      next.col(col) = apply_step(c.register_dims, s.gate, s.wires, u.col(col));
    u = std::move(next);
  }
  return u;
}

StateVector run_circuit(const Circuit& c, const StateVector& in) {
  if (in.dims != c.register_dims)
    throw std::invalid_argument("state register does not match circuit register");
  Vector amps = in.amps;
  for (const Step& s : c.steps)
    amps = apply_step(c.register_dims, s.gate, s.wires, amps);
  return StateVector(in.dims, std::move(amps));
}

DensityMatrix run_circuit(const Circuit& c, const DensityMatrix& in) {
  if (in.dims != c.register_dims)
    throw std::invalid_argument("state register does not match circuit register");
  const Matrix u = circuit_unitary(c);
  return DensityMatrix(in.dims, u * in.mat * u.adjoint());
}

Matrix project_wire(const Matrix& m, const std::vector<int>& dims, int wire,
                    int outcome) {
  if (wire < 0 || wire >= static_cast<int>(dims.size()))
    throw std::invalid_argument("wire index out of range");
  if (outcome < 0 || outcome >= dims[wire])
    throw std::invalid_argument("outcome out of range");
  const int total = total_dimension(dims);
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("matrix does not match register dimension");
  const std::vector<int> strides = wire_strides(dims);
  Matrix out = Matrix::Zero(total, total);
  for (int i = 0; i < total; ++i) {
    if (digit_at(i, wire, strides, dims) != outcome) continue;
    for (int j = 0; j < total; ++j)
      if (digit_at(j, wire, strides, dims) == outcome) out(i, j) = m(i, j);
  }
  return out;
}

std::vector<MeasurementRecord<StateVector>> measure_wire(const StateVector& s,
                                                         int wire) {
  if (wire < 0 || wire >= static_cast<int>(s.dims.size()))
    throw std::invalid_argument("wire index out of range");
  const std::vector<int> strides = wire_strides(s.dims);
  const int total = s.total_dim();
  std::vector<MeasurementRecord<StateVector>> records;
  for (int outcome = 0; outcome < s.dims[wire]; ++outcome) {
    Vector masked = Vector::Zero(total);
    double p = 0.0;
    for (int x = 0; x < total; ++x)
      if (digit_at(x, wire, strides, s.dims) == outcome) {
        masked(x) = s.amps(x);
        p += std::norm(s.amps(x));
      }
    MeasurementRecord<StateVector> rec{wire, outcome, p, std::nullopt};
    if (p >= 1e-14) rec.post_state = StateVector(s.dims, masked / std::sqrt(p));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MeasurementRecord<DensityMatrix>> measure_wire(const DensityMatrix& rho,
                                                           int wire) {
  if (wire < 0 || wire >= static_cast<int>(rho.dims.size()))
    throw std::invalid_argument("wire index out of range");
  std::vector<MeasurementRecord<DensityMatrix>> records;
  for (int outcome = 0; outcome < rho.dims[wire]; ++outcome) {
    Matrix proj = project_wire(rho.mat, rho.dims, wire, outcome);
    const double p = proj.trace().real();
    MeasurementRecord<DensityMatrix> rec{wire, outcome, p, std::nullopt};
    if (p >= 1e-14) rec.post_state = DensityMatrix(rho.dims, proj / p);
    records.push_back(std::move(rec));
  }
  return records;
}

static Gate gate_from_name(const std::string& name, const std::vector<double>& params) {
  auto want = [&](size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("wrong parameter count for gate " + name);
  };
  if (name == "phase") return want(1), phase_gate(params[0]);
  if (name == "cnot") return want(0), cnot();
  if (name == "ry") return want(1), ry(params[0]);
  if (name == "x") return want(0), pauli_x();
  if (name == "m") return want(0), m_gate();
  if (name == "toffoli") return want(0), toffoli();
  if (name == "cshift") {
    want(1);
    const int d = static_cast<int>(params[0]);
    if (static_cast<double>(d) != params[0])
      throw std::invalid_argument("cshift dimension must be an integer");
    return controlled_shift_down(d);
  }
  throw std::invalid_argument("unknown gate: " + name);
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json steps = nlohmann::json::array();
  for (const Step& s : c.steps)
    steps.push_back({{"gate", s.gate.name},
                     {"params", s.gate.params},
                     {"wires", s.wires}});
  return {{"register_dims", c.register_dims}, {"steps", std::move(steps)}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c(j.at("register_dims").get<std::vector<int>>());
  for (const auto& s : j.at("steps")) {
    std::vector<double> params;
    if (s.contains("params")) params = s.at("params").get<std::vector<double>>();
    c.append(gate_from_name(s.at("gate").get<std::string>(), params),
             s.at("wires").get<std::vector<int>>());
  }
  return c;
}

}  // namespace psr
