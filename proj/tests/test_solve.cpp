#include <doctest.h>

#include "hcife/solve.hpp"

using namespace hcife;

namespace {
LinearSystem small_system() {
    LinearSystem sys;
    sys.A.resize(2, 2);
    sys.A.insert(0, 0) = 2.0;
    sys.A.insert(0, 1) = 1.0;
    sys.A.insert(1, 0) = 1.0;
    sys.A.insert(1, 1) = 3.0;
    sys.A.makeCompressed();
    sys.b.resize(2);
    sys.b << 3.0, 4.0;
    return sys;
}
}  // namespace

TEST_CASE("direct solve of a 2x2 system") {
    SolveReport rep = solve(small_system());
    CHECK(rep.x(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.x(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.residual < 1e-14);
    CHECK(rep.iterations == 0);
}

TEST_CASE("identity system returns the rhs") {
    LinearSystem sys;
    sys.A.resize(3, 3);
    for (int i = 0; i < 3; ++i) sys.A.insert(i, i) = 1.0;
    sys.b.resize(3);
    sys.b << -1.0, 2.0, 0.5;
    SolveReport rep = solve(sys);
    CHECK((rep.x - sys.b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("zero rhs short-circuits to the zero vector") {
    LinearSystem sys = small_system();
    sys.b.setZero();
    SolveReport rep = solve(sys);
    CHECK(rep.x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("iterative path agrees with the direct one") {
    // small nonsymmetric banded system
    const int n = 40;
    LinearSystem sys;
    sys.A.resize(n, n);
    for (int i = 0; i < n; ++i) {
        sys.A.insert(i, i) = 4.0;
        if (i + 1 < n) {
            sys.A.insert(i, i + 1) = -1.5;
            sys.A.insert(i + 1, i) = -0.5;
        }
    }
    sys.A.makeCompressed();
    sys.b = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
    SolveReport direct = solve(sys, 1e-12, SolveMethod::Direct);
    SolveReport iter = solve(sys, 1e-12, SolveMethod::Iterative);
    CHECK(iter.iterations > 0);
    CHECK((direct.x - iter.x).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(iter.residual < 1e-12);
}

TEST_CASE("singular matrix reports a breakdown") {
    LinearSystem sys;
    sys.A.resize(2, 2);
    sys.A.insert(0, 0) = 1.0;  // second row identically zero
    sys.A.makeCompressed();
    sys.b.resize(2);
    sys.b << 1.0, 1.0;
    CHECK_THROWS_AS(solve(sys), SolverBreakdown);
}
