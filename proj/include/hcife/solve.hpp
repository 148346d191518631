#pragma once

#include <stdexcept>
#include <string>

#include "hcife/assembly.hpp"

namespace hcife {

struct SolverBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SolveMethod { Direct, Iterative };

struct SolveReport {
    Eigen::VectorXd x;
    double residual = 0.0;  // relative, ||Ax-b|| / ||b||
    int iterations = 0;     // 0 for the direct path
    std::string method;
};

/// Solve the (generally non-symmetric) sparse system. Direct: sparse LU.
/// Iterative: preconditioned restarted GMRES. Throws SolverBreakdown if the
/// factorization fails or the residual contract is not met.
SolveReport solve(const LinearSystem& system, double tol = 1e-10,
                  SolveMethod method = SolveMethod::Direct, int max_iter = 2000);

}  // namespace hcife
