#include "hcife/solve.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace hcife {

SolveReport solve(const LinearSystem& system, double tol, SolveMethod method, int max_iter) {
    SolveReport report;
    const double bnorm = system.b.norm();
    if (bnorm == 0.0) {
        report.x = Eigen::VectorXd::Zero(system.n());
        report.method = "zero-rhs";
        return report;
    }

    if (method == SolveMethod::Direct) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(system.A);
        if (lu.info() != Eigen::Success)
            throw SolverBreakdown("solve: sparse LU factorization failed");
        report.x = lu.solve(system.b);
        report.method = "sparse-lu";
    } else {
        Eigen::GMRES<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> gmres;
        gmres.setTolerance(tol);
        gmres.setMaxIterations(max_iter);
        gmres.set_restart(60);
        gmres.compute(system.A);
        if (gmres.info() != Eigen::Success)
            throw SolverBreakdown("solve: incomplete-LU preconditioner failed");
        report.x = gmres.solve(system.b);
        report.iterations = static_cast<int>(gmres.iterations());
        report.method = "gmres-ilut";
    }

    report.residual = (system.A * report.x - system.b).norm() / bnorm;
    if (!(report.residual <= tol))
        throw SolverBreakdown("solve: residual " + std::to_string(report.residual) +
                              " exceeds tolerance");
    return report;
}

}  // namespace hcife
