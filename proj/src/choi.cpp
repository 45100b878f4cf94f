#include "psr/choi.hpp"

#include "psr/protocols.hpp"
#include "psr/simplex.hpp"

#include <cmath>
#include <limits>

namespace psr {

ChoiOperator::ChoiOperator(int dim_in_, int dim_out_, Matrix matrix_)
    : dim_in(dim_in_), dim_out(dim_out_), matrix(std::move(matrix_)) {
  if (dim_in < 1 || dim_out < 1)
    throw std::invalid_argument("dimensions must be positive");
  const int d = dim_in * dim_out;
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("Choi matrix has the wrong size");
}

double ChoiOperator::positivity_margin() const { return min_eigenvalue(matrix); }

Matrix ChoiOperator::trace_over_output() const {
  return partial_trace(matrix, {dim_out, dim_in}, {1});
}

Vector double_ket(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("matrix is not square");
  const int d = static_cast<int>(u.rows());
  Vector v(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) v(a * d + b) = u(a, b);
  return v;
}

ChoiOperator choi_of_map(const MatrixMap& map, int dim_in, int dim_out) {
  const int d = dim_in * dim_out;
  Matrix c = Matrix::Zero(d, d);
  Matrix unit = Matrix::Zero(dim_in, dim_in);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j) {
      unit(i, j) = 1.0;
      const Matrix image = map(unit);
      if (image.rows() != dim_out || image.cols() != dim_out)
        throw std::invalid_argument("map output has the wrong size");
      unit(i, j) = 0.0;
      for (int a = 0; a < dim_out; ++a)
        for (int b = 0; b < dim_out; ++b) c(a * dim_in + i, b * dim_in + j) += image(a, b);
    }
  return ChoiOperator(dim_in, dim_out, std::move(c));
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::single: return "single";
    case Scheme::qudit: return "qudit";
    case Scheme::two_toffoli: return "two_toffoli";
    case Scheme::two_cnot: return "two_cnot";
    case Scheme::vmc: return "vmc";
  }
  throw std::invalid_argument("bad scheme");
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "single") return Scheme::single;
  if (name == "qudit") return Scheme::qudit;
  if (name == "two_toffoli") return Scheme::two_toffoli;
  if (name == "two_cnot") return Scheme::two_cnot;
  if (name == "vmc") return Scheme::vmc;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::vector<Branch> run_scheme_raw(Scheme scheme, int rounds, double phi,
                                   const Matrix& xi) {
  switch (scheme) {
    case Scheme::single:
      return retrieve_single_raw(store_single(phi), xi);
    case Scheme::qudit:
      return retrieve_qudit_raw(rounds, store_qudit(rounds, phi), xi);
    case Scheme::two_toffoli:
      return run_2to1_toffoli_raw(phi, xi);
    case Scheme::two_cnot:
      return run_2to1_cnot_raw(phi, xi);
    case Scheme::vmc:
      return run_vmc_raw(rounds, phi, xi);
  }
  throw std::invalid_argument("bad scheme");
}

std::vector<ProtocolOutcome> run_scheme(Scheme scheme, int rounds, double phi,
                                        const DensityMatrix& xi) {
  return finalize_branches(run_scheme_raw(scheme, rounds, phi, xi.mat));
}

ChoiOperator instrument_choi(Scheme scheme, int rounds, double phi,
                             bool success_part) {
  return choi_of_map(
      [&](const Matrix& xi) {
        Matrix acc = Matrix::Zero(2, 2);
        for (const Branch& b : run_scheme_raw(scheme, rounds, phi, xi))
          if (b.success == success_part) acc += b.op;
        return acc;
      },
      2, 2);
}

bool check_perfect_retrieval(const ChoiOperator& choi, double phi, double lambda,
                             double tol) {
  if (choi.dim_in != 2 || choi.dim_out != 2)
    throw std::invalid_argument("expected a qubit Choi operator");
  const Vector v = double_ket(phase_gate(phi).matrix);
  return max_abs(choi.matrix - lambda * (v * v.adjoint())) <= tol;
}

RetrievalSpec RetrievalSpec::optimal(int n) {
  if (n < 1) throw std::invalid_argument("need at least one use");
  RetrievalSpec s;
  s.n = n;
  s.p.assign(n + 1, 1.0 / (n + 1));
  s.mu.assign(n, 1.0 / (n + 1));
  return s;
}

double RetrievalSpec::lambda() const {
  double acc = 0.0;
  for (double m : mu) acc += m;
  return acc;
}

static void check_spec_shape(const RetrievalSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("need at least one use");
  if (static_cast<int>(spec.p.size()) != spec.n + 1 ||
      static_cast<int>(spec.mu.size()) != spec.n)
    throw std::invalid_argument("spec arrays have the wrong length");
  double sum = 0.0;
  for (double x : spec.p) {
    if (x < -1e-12) throw std::invalid_argument("negative outcome weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("outcome weights must sum to one");
  for (double x : spec.mu)
    if (x < -1e-12) throw std::invalid_argument("negative retrieval weight");
}

static int rs_index(int n, int c, int m, int d) { return (c * (n + 1) + m) * 2 + d; }

ChoiOperator build_rs(const RetrievalSpec& spec) {
  check_spec_shape(spec);
  const int n = spec.n;
  const int dim = 4 * (n + 1);
  Matrix r = Matrix::Zero(dim, dim);
  for (int J = 0; J < n; ++J) {
    if (spec.mu[J] == 0.0) continue;
    for (int j = J; j <= J + 1; ++j)
      for (int j2 = J; j2 <= J + 1; ++j2) {
        const double denom = spec.p[j] * spec.p[j2];
        if (denom <= 0.0)
          throw std::invalid_argument("retrieval weight on a zero-weight outcome");
        r(rs_index(n, j - J, j, j - J), rs_index(n, j2 - J, j2, j2 - J)) +=
            spec.mu[J] / std::sqrt(denom);
      }
  }
  return ChoiOperator(2 * (n + 1), 2, std::move(r));
}

RsReport check_rs(const RetrievalSpec& spec, const ChoiOperator& rs,
                  const std::vector<double>& phi_grid) {
  check_spec_shape(spec);
  const int n = spec.n;
  if (rs.matrix.rows() != 4 * (n + 1))
    throw std::invalid_argument("operator does not match the spec");
  RsReport rep;
  rep.lambda = spec.lambda();
  rep.positivity_margin = min_eigenvalue(rs.matrix);

  rep.max_trace_ratio = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int j = 0; j <= n; ++j) {
      const int J = j - c;
      if (J < 0 || J >= n) continue;
      const double mu = spec.mu[J], p = spec.p[j];
      if (mu <= 0.0) continue;
      rep.max_trace_ratio =
          std::max(rep.max_trace_ratio,
                   p > 0.0 ? mu / p : std::numeric_limits<double>::infinity());
    }

  rep.max_equality_error = 0.0;
  for (double phi : phi_grid) {
    Vector w(n + 1);
    for (int j = 0; j <= n; ++j)
      w(j) = std::sqrt(std::max(0.0, spec.p[j])) * std::exp(-kImag * (j * phi));
    Matrix sandwich = Matrix::Zero(4, 4);
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int d2 = 0; d2 < 2; ++d2) {
            Complex acc = 0.0;
            for (int m = 0; m <= n; ++m)
              for (int m2 = 0; m2 <= n; ++m2)
                acc += std::conj(w(m)) * rs.matrix(rs_index(n, c, m, d), rs_index(n, c2, m2, d2)) * w(m2);
            sandwich(c * 2 + d, c2 * 2 + d2) = acc;
          }
    const Vector v = double_ket(phase_gate(phi).matrix);
    rep.max_equality_error = std::max(
        rep.max_equality_error, max_abs(sandwich - rep.lambda * (v * v.adjoint())));
  }
  return rep;
}

bool RsReport::pass(double pos_tol, double trace_tol, double eq_tol) const {
  return positivity_margin >= -pos_tol && max_trace_ratio <= 1.0 + trace_tol &&
         max_equality_error <= eq_tol;
}

LPResult solve_lp(int n) {
  if (n < 1) throw std::invalid_argument("need at least one use");
  const int nv = (n + 1) + n;  // p_0..p_n, mu_0..mu_{n-1}
  Eigen::MatrixXd a_ub = Eigen::MatrixXd::Zero(2 * n, nv);
  Eigen::VectorXd b_ub = Eigen::VectorXd::Zero(2 * n);
  for (int J = 0; J < n; ++J) {
    a_ub(2 * J, n + 1 + J) = 1.0;
    a_ub(2 * J, J) = -1.0;  // mu_J <= p_J
    a_ub(2 * J + 1, n + 1 + J) = 1.0;
    a_ub(2 * J + 1, J + 1) = -1.0;  // mu_J <= p_{J+1}
  }
  Eigen::MatrixXd a_eq = Eigen::MatrixXd::Zero(1, nv);
  a_eq.block(0, 0, 1, n + 1).setOnes();
  Eigen::VectorXd b_eq = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  c.tail(n).setOnes();

  const SimplexResult sol = simplex_maximize(a_ub, b_ub, a_eq, b_eq, c);
  if (sol.status != SimplexResult::Status::optimal)
    throw std::logic_error("retrieval LP did not solve");

  LPResult out;
  out.n = n;
  out.optimum = sol.objective;
  out.argmax_p.assign(sol.x.data(), sol.x.data() + n + 1);
  out.argmax_mu.assign(sol.x.data() + n + 1, sol.x.data() + nv);
  out.certificate_weights.resize(n + 1);
  for (int J = 0; J <= n; ++J)
    out.certificate_weights[J] = static_cast<double>(n - J) / n;
  return out;
}

nlohmann::json to_json(const LPResult& r) {
  return {{"n", r.n},
          {"optimum", r.optimum},
          {"closed_form", static_cast<double>(r.n) / (r.n + 1)},
          {"argmax_p", r.argmax_p},
          {"argmax_mu", r.argmax_mu},
          {"certificate_weights", r.certificate_weights}};
}

nlohmann::json to_json(const RsReport& r) {
  return {{"lambda", r.lambda},
          {"positivity_margin", r.positivity_margin},
          {"max_trace_ratio", r.max_trace_ratio},
          {"max_equality_error", r.max_equality_error},
          {"pass", r.pass()}};
}

}  // namespace psr
