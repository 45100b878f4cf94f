#pragma once

#include <Eigen/Dense>

namespace psr {

// Dense two-phase primal simplex with Bland's rule (anti-cycling).
// Solves: maximize c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
// Matrices may have zero rows when a constraint family is absent.
struct SimplexResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

SimplexResult simplex_maximize(const Eigen::MatrixXd& a_ub,
                               const Eigen::VectorXd& b_ub,
                               const Eigen::MatrixXd& a_eq,
                               const Eigen::VectorXd& b_eq,
                               const Eigen::VectorXd& c);

}  // namespace psr
