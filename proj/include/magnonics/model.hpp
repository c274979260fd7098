// model.hpp — system parameters, unit conversion, drift and diffusion matrices
// for a microwave cavity (with intracavity OPA, squeezed-vacuum input) coupled
// to two magnon modes.
//
// Everything here is expressed in units of the cavity linewidth kappa_d.
// Quadrature ordering throughout the library is (X, P, x1, y1, x2, y2):
// cavity first, then magnon 1, then magnon 2.

#pragma once

#include "magnonics/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

namespace magnonics {

using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kStabilityTolerance = 1e-12;

struct SystemParams {
    double delta_d = 0.0;
    double delta_o1 = 0.0;
    double delta_o2 = 0.0;
    double kappa_d = 1.0;
    double kappa_o1 = 0.2;
    double kappa_o2 = 0.2;
    double g1 = 4.0;
    double g2 = 4.0;
    double lambda = 0.0;  // OPA gain, phase fixed to zero
    double r = 0.0;       // input squeezing
    double n_o1 = 0.0;
    double n_o2 = 0.0;

    // Reference operating point: resonant modes, kappa_d = 5 kappa_o,
    // G = 4 kappa_d, zero gain and squeezing, ground-state magnon baths.
    static SystemParams baseline() { return {}; }

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) throw ArgumentError(std::string("SystemParams: ") + what);
        };
        require(std::isfinite(delta_d) && std::isfinite(delta_o1) && std::isfinite(delta_o2),
                "detunings must be finite");
        require(kappa_d > 0 && kappa_o1 > 0 && kappa_o2 > 0, "dissipation rates must be > 0");
        require(g1 >= 0 && g2 >= 0, "couplings must be >= 0");
        require(lambda >= 0, "OPA gain must be >= 0");
        require(r >= 0, "squeezing parameter must be >= 0");
        require(n_o1 >= 0 && n_o2 >= 0, "thermal occupations must be >= 0");
        require(std::isfinite(g1 + g2 + lambda + r + n_o1 + n_o2), "parameters must be finite");
    }

    bool operator==(const SystemParams&) const = default;
};

struct PhysicalEnv {
    double omega_d_hz = 10e9;
    double temperature_k = 0.020;
    double hbar = 1.054571817e-34;
    double k_b = 1.380649e-23;
    // Read as gamma/2pi; the source quotes it ambiguously as "gamma/pi".
    double gyromag_hz_per_t = 28e9;
};

struct DriftMatrix {
    Mat6 u;
};

struct DiffusionMatrix {
    Mat6 d;
};

inline DriftMatrix build_drift(const SystemParams& p) {
    p.validate();
    const double kd = p.kappa_d;
    const double lam2 = 2.0 * p.lambda;
    Mat6 u = Mat6::Zero();

    u(0, 0) = -kd + lam2;
    u(0, 1) = p.delta_d;
    u(0, 3) = p.g1;
    u(0, 5) = p.g2;

    u(1, 0) = -p.delta_d;
    u(1, 1) = -kd - lam2;
    u(1, 2) = -p.g1;
    u(1, 4) = -p.g2;

    u(2, 1) = p.g1;
    u(2, 2) = -p.kappa_o1;
    u(2, 3) = p.delta_o1;
    u(3, 0) = -p.g1;
    u(3, 2) = -p.delta_o1;
    u(3, 3) = -p.kappa_o1;

    u(4, 1) = p.g2;
    u(4, 4) = -p.kappa_o2;
    u(4, 5) = p.delta_o2;
    u(5, 0) = -p.g2;
    u(5, 4) = -p.delta_o2;
    u(5, 5) = -p.kappa_o2;
    return {u};
}

inline DiffusionMatrix build_diffusion(const SystemParams& p) {
    p.validate();
    // 2N + 1 +/- 2M with N = sinh^2 r, M = sinh r cosh r, which is exactly
    // e^{+/-2r}; the exponential form avoids cancellation at large r.
    const double m1 = p.kappa_o1 * (2.0 * p.n_o1 + 1.0);
    const double m2 = p.kappa_o2 * (2.0 * p.n_o2 + 1.0);

    Mat6 d = Mat6::Zero();
    d(0, 0) = p.kappa_d * std::exp(2.0 * p.r);
    d(1, 1) = p.kappa_d * std::exp(-2.0 * p.r);
    d(2, 2) = m1;
    d(3, 3) = m1;
    d(4, 4) = m2;
    d(5, 5) = m2;
    return {d};
}

// Bose-Einstein occupation of a mode at ordinary frequency mode_freq_hz.
inline double thermal_occupation(const PhysicalEnv& env, double mode_freq_hz) {
    if (env.temperature_k < 0) throw ArgumentError("thermal_occupation: temperature must be >= 0");
    if (!(mode_freq_hz > 0)) throw ArgumentError("thermal_occupation: frequency must be > 0");
    if (env.temperature_k == 0.0) return 0.0;
    const double x = env.hbar * 2.0 * std::numbers::pi * mode_freq_hz / (env.k_b * env.temperature_k);
    return 1.0 / std::expm1(x);
}

inline double occupation_to_temperature(const PhysicalEnv& env, double n, double mode_freq_hz) {
    if (n == 0.0) throw ArgumentError("zero occupation has no finite temperature");
    if (!(n > 0)) throw ArgumentError("occupation_to_temperature: occupation must be > 0");
    if (!(mode_freq_hz > 0)) throw ArgumentError("occupation_to_temperature: frequency must be > 0");
    const double omega = 2.0 * std::numbers::pi * mode_freq_hz;
    return env.hbar * omega / (env.k_b * std::log1p(1.0 / n));
}

// Kittel-mode frequency for a bias field, omega/2pi = gamma/2pi * H.
inline double magnon_frequency_hz(const PhysicalEnv& env, double bias_field_t) {
    return env.gyromag_hz_per_t * bias_field_t;
}

inline double spectral_abscissa(const Mat6& u) {
    Eigen::EigenSolver<Mat6> es(u, false);
    if (es.info() != Eigen::Success) throw NumericalError("spectral_abscissa: eigen decomposition failed");
    return es.eigenvalues().real().maxCoeff();
}

inline bool is_stable(const DriftMatrix& u) {
    return spectral_abscissa(u.u) < -kStabilityTolerance;
}

}  // namespace magnonics
