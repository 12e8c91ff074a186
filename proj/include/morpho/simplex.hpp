#pragma once

#include <Eigen/Dense>

namespace morpho::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0;
};

/// maximize c^T x subject to A x <= b, with x free.
/// Dense two-phase tableau simplex with Bland's rule.
Result maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

/// Feasibility of A x <= b; returns a feasible point when one exists.
Result feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace morpho::lp
