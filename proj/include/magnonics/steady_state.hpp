// steady_state.hpp — steady-state covariance matrix from the Lyapunov equation
//     U V + V U^T + D = 0
// plus a fixed-step time-integration oracle and symplectic spectra.
//
// The direct path vectorizes the equation into a 36x36 dense system
//     (I (x) U + U (x) I) vec(V) = -vec(D)
// which is exact at this size. evolve_to_steady_state integrates
// dV/dt = U V + V U^T + D with classical RK4 and exists to cross-check it.

#pragma once

#include "magnonics/errors.hpp"
#include "magnonics/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace magnonics {

inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr std::size_t kOracleStepCap = 10'000'000;

struct CovarianceMatrix {
    Mat6 v;

    static CovarianceMatrix vacuum() { return {Mat6::Identity() * 0.5}; }
};

inline Mat6 lyapunov_residual(const Mat6& u, const Mat6& d, const Mat6& v) {
    return u * v + v * u.transpose() + d;
}

inline CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion) {
    if (!is_stable(drift)) throw StabilityError("solve_lyapunov: drift matrix is not Hurwitz stable");

    const Mat6& u = drift.u;
    const Mat6& d = diffusion.d;
    constexpr int n = 6;
    constexpr int nn = n * n;

    Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(nn, nn);
    for (int i = 0; i < n; ++i) {
        // I (x) U: block-diagonal copies of U
        kron.block(i * n, i * n, n, n) += u;
        // U (x) I: u(i, j) * I in block (i, j)
        for (int j = 0; j < n; ++j) {
            if (u(i, j) != 0.0) kron.block(i * n, j * n, n, n).diagonal().array() += u(i, j);
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kron);
    if (!lu.isInvertible()) throw NumericalError("solve_lyapunov: singular vectorized system");

    Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(d.data(), nn);
    Eigen::VectorXd x = lu.solve(rhs);
    // one step of iterative refinement
    x += lu.solve(rhs - kron * x);

    Mat6 v = Eigen::Map<const Mat6>(x.data());
    v = 0.5 * (v + v.transpose()).eval();

    const double scale = std::max(d.cwiseAbs().maxCoeff(), 1e-300);
    const double res = lyapunov_residual(u, d, v).cwiseAbs().maxCoeff();
    if (!(res < 1e-10 * scale)) {
        throw NumericalError("solve_lyapunov: residual " + std::to_string(res) + " exceeds contract");
    }
    return {v};
}

// RK4 step size used by the oracle: 0.01 / max(|Re eig|, 1).
inline double default_oracle_step(const DriftMatrix& drift) {
    Eigen::EigenSolver<Mat6> es(drift.u, false);
    const double m = es.eigenvalues().real().cwiseAbs().maxCoeff();
    return 0.01 / std::max(m, 1.0);
}

inline CovarianceMatrix evolve_to_steady_state(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                               const CovarianceMatrix& v0, double dt, double tol) {
    if (!is_stable(drift)) throw StabilityError("evolve_to_steady_state: drift matrix is not Hurwitz stable");
    if (!(dt > 0) || !(tol > 0)) throw ArgumentError("evolve_to_steady_state: dt and tol must be > 0");

    const Mat6& u = drift.u;
    const Mat6& d = diffusion.d;
    auto rhs = [&](const Mat6& v) -> Mat6 { return lyapunov_residual(u, d, v); };

    Mat6 v = v0.v;
    for (std::size_t step = 0; step <= kOracleStepCap; ++step) {
        const Mat6 k1 = rhs(v);
        if (k1.cwiseAbs().maxCoeff() < tol) {
            v = 0.5 * (v + v.transpose()).eval();
            return {v};
        }
        const Mat6 k2 = rhs(v + 0.5 * dt * k1);
        const Mat6 k3 = rhs(v + 0.5 * dt * k2);
        const Mat6 k4 = rhs(v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    throw ConvergenceError("evolve_to_steady_state: step cap exceeded");
}

inline CovarianceMatrix evolve_to_steady_state(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                               double tol = 1e-11) {
    return evolve_to_steady_state(drift, diffusion, CovarianceMatrix::vacuum(), default_oracle_step(drift), tol);
}

inline Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (Eigen::Index k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

// Symplectic eigenvalues, ascending. The spectrum of Omega V comes in
// +-i nu pairs; moduli are sorted and collapsed pairwise.
inline std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& v) {
    if (v.rows() != v.cols() || v.rows() == 0 || v.rows() % 2 != 0) {
        throw ShapeError("symplectic_eigenvalues: expected a square matrix of even dimension");
    }
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw ShapeError("symplectic_eigenvalues: matrix is not symmetric");
    }

    const Eigen::Index modes = v.rows() / 2;
    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(modes) * v, false);
    if (es.info() != Eigen::Success) throw NumericalError("symplectic_eigenvalues: eigen decomposition failed");

    std::vector<double> moduli;
    moduli.reserve(static_cast<std::size_t>(v.rows()));
    for (const std::complex<double>& z : es.eigenvalues()) moduli.push_back(std::abs(z));
    std::sort(moduli.begin(), moduli.end());

    std::vector<double> nu;
    nu.reserve(static_cast<std::size_t>(modes));
    for (std::size_t k = 0; k + 1 < moduli.size(); k += 2) {
        const double a = moduli[k];
        const double b = moduli[k + 1];
        if (std::abs(a - b) > 1e-8 * std::max(1.0, b)) {
            throw NumericalError("symplectic_eigenvalues: unpaired spectrum (matrix not positive definite?)");
        }
        nu.push_back(0.5 * (a + b));
    }
    return nu;
}

inline double min_symplectic_eigenvalue(const Eigen::MatrixXd& v) {
    return symplectic_eigenvalues(v).front();
}

// Symmetric, positive definite and above the Heisenberg bound nu >= 1/2.
inline bool is_physical(const Eigen::MatrixXd& v) {
    if (v.rows() != v.cols() || v.rows() % 2 != 0) return false;
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (v + v.transpose()));
    if (llt.info() != Eigen::Success) return false;
    try {
        return min_symplectic_eigenvalue(v) >= 0.5 - kPhysicalityTolerance;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace magnonics
