#pragma once

#include "psr/linalg.hpp"
#include "psr/protocols.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace psr {

// Choi matrix of a linear map B: C = sum_ij B(|i><j|) (x) |i><j|, with the
// output factor on the left. B is completely positive iff C >= 0 and
// trace-preserving iff tr_out C = identity.
struct ChoiOperator {
  int dim_in = 0;
  int dim_out = 0;
  Matrix matrix;

  ChoiOperator() = default;
  ChoiOperator(int dim_in_, int dim_out_, Matrix matrix_);
  double positivity_margin() const;  // smallest eigenvalue
  Matrix trace_over_output() const;  // dim_in x dim_in
};

// |u>> = (u (x) I) sum_i |ii>.
Vector double_ket(const Matrix& u);

using MatrixMap = std::function<Matrix(const Matrix&)>;
ChoiOperator choi_of_map(const MatrixMap& map, int dim_in, int dim_out);

enum class Scheme { single, qudit, two_toffoli, two_cnot, vmc };
std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Runs a scheme with its canonical program state. `rounds` is N for the
// qudit scheme and k for the iterated one; the others ignore it.
std::vector<Branch> run_scheme_raw(Scheme scheme, int rounds, double phi,
                                   const Matrix& xi);
std::vector<ProtocolOutcome> run_scheme(Scheme scheme, int rounds, double phi,
                                        const DensityMatrix& xi);

// Choi operator of the success (or failure) part of the instrument a
// protocol induces on its data qubit.
ChoiOperator instrument_choi(Scheme scheme, int rounds, double phi,
                             bool success_part = true);

// True iff choi == lambda |u_phi>><<u_phi| within tol, i.e. the branch
// applies the phase gate exactly with weight lambda.
bool check_perfect_retrieval(const ChoiOperator& choi, double phi, double lambda,
                             double tol = 1e-10);

// Storage-and-retrieval resource: outcome weights p_j of the program
// measurement and retrieval weights mu_J of the two-outcome blocks.
struct RetrievalSpec {
  int n = 0;
  std::vector<double> p;   // size n+1
  std::vector<double> mu;  // size n

  static RetrievalSpec optimal(int n);  // p_j = mu_J = 1/(n+1)
  double lambda() const;                // sum of mu
};

// The retrieval operator on control (x) program (x) data, dimensions
// 2 (N+1) 2. Block J couples |b_{J,j}> = |j-J>|j>|j-J>, j in {J, J+1},
// with weight mu_J / sqrt(p_j p_j').
ChoiOperator build_rs(const RetrievalSpec& spec);

struct RsReport {
  double lambda = 0.0;
  double positivity_margin = 0.0;   // min eigenvalue of R_s
  double max_trace_ratio = 0.0;     // max mu_{j-c} / p_j  (<= 1 required)
  double max_equality_error = 0.0;  // covariant sandwich vs lambda |u>><<u|
  bool pass(double pos_tol = 1e-12, double trace_tol = 1e-12,
            double eq_tol = 1e-10) const;
};
RsReport check_rs(const RetrievalSpec& spec, const ChoiOperator& rs,
                  const std::vector<double>& phi_grid);

// Success weight lambda maximised over all retrieval specs:
//   max sum_J mu_J  s.t.  0 <= mu_J <= min(p_J, p_{J+1}), p >= 0, sum p = 1.
// The optimum is n/(n+1), certified by the dual weights f_J = (n-J)/n.
struct LPResult {
  int n = 0;
  double optimum = 0.0;
  std::vector<double> argmax_p;
  std::vector<double> argmax_mu;
  std::vector<double> certificate_weights;
};
LPResult solve_lp(int n);

nlohmann::json to_json(const LPResult& r);
nlohmann::json to_json(const RsReport& r);

}  // namespace psr
