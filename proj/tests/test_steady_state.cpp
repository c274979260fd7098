#include "magnonics/measures.hpp"
#include "magnonics/steady_state.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace magnonics;

namespace {

CovarianceMatrix solve(const SystemParams& p) { return solve_lyapunov(build_drift(p), build_diffusion(p)); }

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SolveLyapunov, VacuumFixedPoint) {
    const CovarianceMatrix v = solve(fixtures::decoupled());
    EXPECT_LT(max_abs(v.v - 0.5 * Mat6::Identity()), 1e-15);
}

TEST(SolveLyapunov, DecoupledSqueezedCavity) {
    SystemParams p = fixtures::decoupled();
    p.r = 2.0;
    const Mat6 v = solve(p).v;
    Mat6 expected = 0.5 * Mat6::Identity();
    expected(0, 0) = 0.5 * std::exp(4.0);
    expected(1, 1) = 0.5 * std::exp(-4.0);
    EXPECT_LT(max_abs(v - expected), 1e-12);
}

// Reference from an independent Bartels-Stewart solver
// (scipy.linalg.solve_continuous_lyapunov) at g = 4, lambda = 0.2, r = 2,
// T = 20 mK.
TEST(SolveLyapunov, MatchesReferenceSolver) {
    SystemParams p;
    p.lambda = 0.2;
    p.r = 2.0;
    p.n_o1 = p.n_o2 = 3.789449170164159e-11;
    const Mat6 v = solve(p).v;
    EXPECT_NEAR(v(0, 0), 34.290872218757833, 1e-9);
    EXPECT_NEAR(v(1, 1), 6.7688598293921695e-02, 1e-12);
    EXPECT_NEAR(v(1, 2), -1.0700777270890400e-02, 1e-12);
    EXPECT_NEAR(v(0, 3), -0.84056896066467190, 1e-11);
    EXPECT_NEAR(v(2, 2), 0.28598445462008582, 1e-12);
    EXPECT_NEAR(v(2, 4), -0.21401554541780793, 1e-12);
    EXPECT_NEAR(v(3, 3), 17.311379213331399, 1e-9);
    EXPECT_NEAR(v(3, 5), 16.811379213293506, 1e-9);
    EXPECT_NEAR(v(0, 1), 0.0, 1e-12);
}

TEST(SolveLyapunov, MatchesReferenceSolverDetuned) {
    SystemParams p;
    p.delta_d = 0.7;
    p.delta_o1 = p.delta_o2 = -0.4;
    p.g1 = p.g2 = 1.0;
    p.lambda = 0.2;
    p.r = 0.4;
    PhysicalEnv env;
    env.temperature_k = 0.010;
    p.n_o1 = p.n_o2 = thermal_occupation(env, 10e9);
    const Mat6 v = solve(p).v;
    EXPECT_NEAR(v(0, 0), 1.4086432916637888, 1e-12);
    EXPECT_NEAR(v(0, 1), -0.1844748962176366, 1e-12);
    EXPECT_NEAR(v(2, 3), 0.03402253977187711, 1e-12);
    EXPECT_NEAR(v(3, 3), 0.914175234282788, 1e-12);
    EXPECT_NEAR(v(3, 5), 0.41417523428278774, 1e-12);
    EXPECT_NEAR(v(1, 5), 0.1016946352535836, 1e-12);
}

TEST(SolveLyapunov, UnstableThrows) {
    SystemParams p = fixtures::decoupled();
    p.lambda = 0.6;
    EXPECT_THROW(solve(p), StabilityError);
}

TEST(SolveLyapunov, ResidualContractRandom) {
    for (const SystemParams& p : fixtures::random_stable_params(1000, 11, 1e-6)) {
        const DriftMatrix u = build_drift(p);
        const DiffusionMatrix d = build_diffusion(p);
        const Mat6 v = solve_lyapunov(u, d).v;
        EXPECT_LT(max_abs(lyapunov_residual(u.u, d.d, v)), 1e-10 * max_abs(d.d));
        EXPECT_LT(max_abs(v - v.transpose()), 1e-12 * std::max(1.0, max_abs(v)));
    }
}

TEST(SolveLyapunov, PhysicalOnRandomDraws) {
    for (const SystemParams& p : fixtures::random_stable_params(300, 12, 1e-6)) {
        const Mat6 v = solve(p).v;
        EXPECT_GE(min_symplectic_eigenvalue(v), 0.5 - kPhysicalityTolerance);
        EXPECT_TRUE(is_physical(v));
    }
}

TEST(SolveLyapunov, MonotoneInMagnonNoise) {
    for (const SystemParams& base : fixtures::random_stable_params(50, 13)) {
        double prev_x = 0.0, prev_y = 0.0;
        for (double n : {0.0, 0.1, 0.5, 1.0, 3.0}) {
            SystemParams p = base;
            p.n_o1 = n;
            const Mat6 v = solve(p).v;
            EXPECT_GE(v(2, 2), prev_x - 1e-12);
            EXPECT_GE(v(3, 3), prev_y - 1e-12);
            prev_x = v(2, 2);
            prev_y = v(3, 3);
        }
    }
}

TEST(EvolveToSteadyState, VacuumConvergesImmediately) {
    const SystemParams p = fixtures::decoupled();
    const CovarianceMatrix v = evolve_to_steady_state(build_drift(p), build_diffusion(p), CovarianceMatrix::vacuum(),
                                                      0.01, 1e-12);
    EXPECT_EQ(v.v, CovarianceMatrix::vacuum().v);
}

TEST(EvolveToSteadyState, AgreesWithDirectSolveOnBaseline) {
    SystemParams p;
    p.lambda = 0.2;
    p.r = 2.0;
    const DriftMatrix u = build_drift(p);
    const DiffusionMatrix d = build_diffusion(p);
    const Mat6 direct = solve_lyapunov(u, d).v;
    const Mat6 oracle = evolve_to_steady_state(u, d, 1e-11).v;
    EXPECT_LT(max_abs(direct - oracle), 1e-8);
}

TEST(EvolveToSteadyState, AgreesWithDirectSolveRandom) {
    for (const SystemParams& p : fixtures::random_stable_params(20, 14, 0.05)) {
        const DriftMatrix u = build_drift(p);
        const DiffusionMatrix d = build_diffusion(p);
        const double tol = 1e-10;
        const Mat6 oracle = evolve_to_steady_state(u, d, tol).v;
        const Mat6 direct = solve_lyapunov(u, d).v;
        EXPECT_LT(max_abs(direct - oracle), 1e-7);
        EXPECT_LT(max_abs(lyapunov_residual(u.u, d.d, oracle)), 10 * tol);
        EXPECT_TRUE(is_physical(oracle));
    }
}

TEST(EvolveToSteadyState, UnstableThrowsBeforeIntegration) {
    SystemParams p = fixtures::decoupled();
    p.lambda = 0.6;
    EXPECT_THROW(evolve_to_steady_state(build_drift(p), build_diffusion(p), CovarianceMatrix::vacuum(), 0.01, 1e-9),
                 StabilityError);
}

TEST(EvolveToSteadyState, RejectsBadStep) {
    const SystemParams p = fixtures::decoupled();
    EXPECT_THROW(evolve_to_steady_state(build_drift(p), build_diffusion(p), CovarianceMatrix::vacuum(), 0.0, 1e-9),
                 ArgumentError);
}

TEST(SymplecticEigenvalues, Vacuum) {
    for (int n : {1, 2, 3, 5}) {
        const auto nu = symplectic_eigenvalues(0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n));
        ASSERT_EQ(nu.size(), static_cast<std::size_t>(n));
        for (double x : nu) EXPECT_NEAR(x, 0.5, 1e-14);
    }
}

TEST(SymplecticEigenvalues, TwoModeSqueezedVacuumIsPure) {
    for (double s : {0.1, 0.5, 1.0, 2.0}) {
        const auto nu = symplectic_eigenvalues(TwoModeCM::tmsv(s).m);
        ASSERT_EQ(nu.size(), 2u);
        EXPECT_NEAR(nu[0], 0.5, 1e-10);
        EXPECT_NEAR(nu[1], 0.5, 1e-10);
    }
}

TEST(SymplecticEigenvalues, ThermalMode) {
    const auto nu = symplectic_eigenvalues(Eigen::Matrix2d::Identity() * 0.8);
    ASSERT_EQ(nu.size(), 1u);
    EXPECT_NEAR(nu[0], 0.8, 1e-14);
}

TEST(SymplecticEigenvalues, SortedAscending) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
    v.diagonal() << 2.0, 2.0, 0.6, 0.6, 1.0, 1.0;
    const auto nu = symplectic_eigenvalues(v);
    EXPECT_NEAR(nu[0], 0.6, 1e-14);
    EXPECT_NEAR(nu[1], 1.0, 1e-14);
    EXPECT_NEAR(nu[2], 2.0, 1e-14);
}

TEST(SymplecticEigenvalues, ShapeErrors) {
    EXPECT_THROW(symplectic_eigenvalues(Eigen::MatrixXd::Identity(3, 3)), ShapeError);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(4, 4);
    asym(0, 1) = 0.3;
    EXPECT_THROW(symplectic_eigenvalues(asym), ShapeError);
    EXPECT_THROW(symplectic_eigenvalues(Eigen::MatrixXd::Identity(2, 4)), ShapeError);
}
