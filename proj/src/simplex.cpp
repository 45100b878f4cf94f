#include "psr/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace psr {

namespace {

constexpr double kEps = 1e-9;

// Tableau rows: [A | b] with b >= 0; basis[i] is the variable owning row i.
struct Tableau {
  Eigen::MatrixXd rows;
  std::vector<int> basis;

  void pivot(int row, int col) {
    rows.row(row) /= rows(row, col);
    for (int i = 0; i < rows.rows(); ++i)
      if (i != row && std::abs(rows(i, col)) > 0.0)
        rows.row(i) -= rows(i, col) * rows.row(row);
    basis[row] = col;
  }

  // Bland: entering = lowest eligible column index, leaving = lowest basis
  // index among the minimum-ratio rows. Returns false when optimal,
  // throws on an unbounded direction.
  bool step(Eigen::RowVectorXd& obj, int allowed_cols) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j)
      if (obj(j) < -kEps) {
        enter = j;
        break;
      }
    if (enter < 0) return false;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < rows.rows(); ++i) {
      if (rows(i, enter) <= kEps) continue;
      const double ratio = rows(i, rows.cols() - 1) / rows(i, enter);
      if (leave < 0 || ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw std::domain_error("unbounded");
    pivot(leave, enter);
    obj -= obj(enter) * rows.row(leave);
    return true;
  }
};

}  // namespace

SimplexResult simplex_maximize(const Eigen::MatrixXd& a_ub,
                               const Eigen::VectorXd& b_ub,
                               const Eigen::MatrixXd& a_eq,
                               const Eigen::VectorXd& b_eq,
                               const Eigen::VectorXd& c) {
  const int nv = static_cast<int>(c.size());
  const int m_ub = static_cast<int>(b_ub.size());
  const int m_eq = static_cast<int>(b_eq.size());
  if ((m_ub && a_ub.cols() != nv) || (m_eq && a_eq.cols() != nv) ||
      a_ub.rows() != m_ub || a_eq.rows() != m_eq)
    throw std::invalid_argument("constraint shapes do not match");
  const int m = m_ub + m_eq;
  const int n_slack = m_ub;
  const int n_art = m;
  const int cols = nv + n_slack + n_art + 1;

  Tableau t;
  t.rows = Eigen::MatrixXd::Zero(m, cols);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const bool ub = i < m_ub;
    Eigen::RowVectorXd row = ub ? a_ub.row(i) : a_eq.row(i - m_ub);
    double rhs = ub ? b_ub(i) : b_eq(i - m_ub);
    double slack = ub ? 1.0 : 0.0;
    if (rhs < 0) {
      row = -row;
      rhs = -rhs;
      slack = -slack;
    }
    t.rows.block(i, 0, 1, nv) = row;
    if (ub) t.rows(i, nv + i) = slack;
    t.rows(i, nv + n_slack + i) = 1.0;
    t.rows(i, cols - 1) = rhs;
    t.basis[i] = nv + n_slack + i;
  }

  SimplexResult res;

  // Phase 1: minimize the artificial total. Artificials may leave the
  // basis but never re-enter, hence the restricted entering scan.
  Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(cols);
  for (int i = 0; i < m; ++i) obj -= t.rows.row(i);
  for (int i = 0; i < n_art; ++i) obj(nv + n_slack + i) = 0.0;
  while (t.step(obj, nv + n_slack)) {
  }
  if (obj(cols - 1) < -kEps) {
    res.status = SimplexResult::Status::infeasible;
    return res;
  }
  // Kick lingering artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < nv + n_slack) continue;
    for (int j = 0; j < nv + n_slack; ++j)
      if (std::abs(t.rows(i, j)) > kEps) {
        t.pivot(i, j);
        break;
      }
  }

  // Phase 2 on the real objective (maximize c == minimize -c).
  obj.setZero();
  obj.head(nv) = -c.transpose();
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nv) obj -= obj(t.basis[i]) * t.rows.row(i);
  try {
    while (t.step(obj, nv + n_slack)) {
    }
  } catch (const std::domain_error&) {
    res.status = SimplexResult::Status::unbounded;
    return res;
  }

  res.status = SimplexResult::Status::optimal;
  res.x = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nv) res.x(t.basis[i]) = t.rows(i, cols - 1);
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace psr
