#pragma once

#include <Eigen/Dense>

#include "cqc/common.hpp"

namespace cqc {

// Dense two-phase tableau simplex with Bland's rule. Problem sizes here are a
// few hundred variables at most, so no sparsity or revised-form machinery.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
};

// maximize c.x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  lower <= x <= upper.
// All bounds must be finite.
LpResult solve_lp_max(const Eigen::VectorXd& c,
                      const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub,
                      const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                      const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

}  // namespace cqc
