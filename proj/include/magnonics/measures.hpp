// measures.hpp — Gaussian correlation quantifiers over the steady-state CM.
//
// Two-mode quantities work on a 4x4 reduction in the ordering
// (x_A, y_A, x_B, y_B) written in 2x2 blocks as
//     m = [ x  z ]
//         [ z' y ]
// and are expressed through the local symplectic invariants det x, det y,
// det z and det m. Vacuum variance is 1/2; all logarithms are natural.

#pragma once

#include "magnonics/errors.hpp"
#include "magnonics/steady_state.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace magnonics {

enum class Mode : int { cavity = 0, magnon1 = 1, magnon2 = 2 };

inline constexpr std::array<Mode, 3> kAllModes{Mode::cavity, Mode::magnon1, Mode::magnon2};

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::cavity: return "d";
        case Mode::magnon1: return "o1";
        case Mode::magnon2: return "o2";
    }
    return "?";
}

struct TwoModeCM {
    Eigen::Matrix4d m;
    double det_x = 0.0;
    double det_y = 0.0;
    double det_z = 0.0;
    double det_total = 0.0;

    static TwoModeCM from_matrix(const Eigen::Matrix4d& m) {
        TwoModeCM out;
        out.m = m;
        out.det_x = m.block<2, 2>(0, 0).determinant();
        out.det_y = m.block<2, 2>(2, 2).determinant();
        out.det_z = m.block<2, 2>(0, 2).determinant();
        out.det_total = m.determinant();
        return out;
    }

    // Two-mode squeezed vacuum with squeezing s.
    static TwoModeCM tmsv(double s) {
        const double a = 0.5 * std::cosh(2.0 * s);
        const double c = 0.5 * std::sinh(2.0 * s);
        Eigen::Matrix4d m;
        m << a, 0, c, 0,
             0, a, 0, -c,
             c, 0, a, 0,
             0, -c, 0, a;
        return from_matrix(m);
    }
};

inline TwoModeCM reduce(const CovarianceMatrix& v, Mode a, Mode b) {
    if (a == b) throw ArgumentError("reduce: modes must be distinct");
    const std::array<int, 4> idx{2 * static_cast<int>(a), 2 * static_cast<int>(a) + 1,
                                 2 * static_cast<int>(b), 2 * static_cast<int>(b) + 1};
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = v.v(idx[i], idx[j]);
    return TwoModeCM::from_matrix(m);
}

inline Eigen::Matrix2d single_mode_block(const CovarianceMatrix& v, Mode a) {
    const int k = 2 * static_cast<int>(a);
    return v.v.block<2, 2>(k, k);
}

// Smallest symplectic eigenvalue of the partially transposed two-mode CM.
inline double partial_transpose_min_eigenvalue(const TwoModeCM& m) {
    const double delta = m.det_x + m.det_y - 2.0 * m.det_z;
    double disc = delta * delta - 4.0 * m.det_total;
    if (disc < -1e-12 * std::max(1.0, delta * delta)) {
        throw NumericalError("log_negativity: complex symplectic eigenvalue (unphysical input)");
    }
    disc = std::max(disc, 0.0);
    // nu_-^2 nu_+^2 = det m; dividing avoids cancellation near the vacuum.
    const double plus = delta + std::sqrt(disc);
    if (!(plus > 0)) return 0.0;
    return std::sqrt(std::max(0.0, 2.0 * m.det_total / plus));
}

inline double log_negativity(const TwoModeCM& m) {
    const double nu = partial_transpose_min_eigenvalue(m);
    return std::max(0.0, -std::log(2.0 * nu));
}

enum class Direction { a_to_b, b_to_a };

inline double steering(const TwoModeCM& m, Direction dir) {
    if (!(m.det_total > 0)) throw ArgumentError("steering: covariance matrix must have positive determinant");
    const double local = dir == Direction::a_to_b ? m.det_x : m.det_y;
    return std::max(0.0, 0.5 * std::log(local / (4.0 * m.det_total)));
}

inline constexpr double kGipSymmetryTolerance = 1e-6;
inline constexpr double kGipMixednessGuard = 1e-9;

// Gaussian interferometric power, closed form valid for symmetric two-mode
// states that are strictly mixed.
inline double gip(const TwoModeCM& m) {
    if (std::abs(m.det_x - m.det_y) >= kGipSymmetryTolerance) {
        throw DomainError("gip: closed form requires det x == det y");
    }
    const double alpha = 4.0 * m.det_x;
    const double gamma = 4.0 * m.det_z;
    const double dd = 16.0 * m.det_total;
    if (!(dd > 1.0 + kGipMixednessGuard)) throw DomainError("gip: state is (nearly) pure, formula is 0/0");

    const double c = (alpha + gamma) * (1.0 + alpha + gamma - dd) - dd * dd;
    const double h = (dd - 1.0) * (1.0 + 2.0 * alpha + 2.0 * gamma + dd);
    const double q = (alpha + dd) * (alpha * alpha - dd) + gamma * (2.0 * alpha + gamma) * (1.0 + alpha);
    const double root = std::sqrt(std::max(0.0, c * c + h * q));
    return std::max(0.0, (c + root) / (2.0 * h));
}

inline std::optional<double> try_gip(const TwoModeCM& m) {
    try {
        return gip(m);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Product of the variances of (x_A + x_B)/sqrt2 and (y_A - y_B)/sqrt2.
inline double mancini_product(const TwoModeCM& m) {
    const Eigen::Matrix4d& c = m.m;
    const double bx = 0.5 * (c(0, 0) + c(2, 2) + 2.0 * c(0, 2));
    const double cy = 0.5 * (c(1, 1) + c(3, 3) - 2.0 * c(1, 3));
    return bx * cy;
}

inline bool mancini_entangled(double product) { return product < 0.25; }

inline double quadrature_variance(const CovarianceMatrix& v, int which) {
    if (which < 0 || which > 5) throw ArgumentError("quadrature_variance: index must be in [0, 5]");
    return v.v(which, which);
}

inline double squeezing_db(double variance) {
    if (!(variance > 0)) throw ArgumentError("squeezing_db: variance must be > 0");
    return 0.0 - 10.0 * std::log10(variance / 0.5);
}

// P V P with P flipping the momentum of `solo`.
inline Mat6 partial_transpose(const Mat6& v, Mode solo) {
    Mat6 out = v;
    const int k = 2 * static_cast<int>(solo) + 1;
    out.row(k) *= -1.0;
    out.col(k) *= -1.0;
    return out;
}

inline double one_vs_two_negativity(const CovarianceMatrix& v, Mode solo) {
    const double nu = min_symplectic_eigenvalue(partial_transpose(v.v, solo));
    return std::max(0.0, -std::log(2.0 * nu));
}

struct BipartiteReport {
    double entanglement = 0.0;
    double steering_ab = 0.0;
    double steering_ba = 0.0;
    std::optional<double> gip;
    double mancini_product = 0.0;
    bool stable = true;
};

inline BipartiteReport bipartite_report(const CovarianceMatrix& v, Mode a, Mode b) {
    const TwoModeCM m = reduce(v, a, b);
    BipartiteReport rep;
    rep.entanglement = log_negativity(m);
    rep.steering_ab = steering(m, Direction::a_to_b);
    rep.steering_ba = steering(m, Direction::b_to_a);
    rep.gip = try_gip(m);
    rep.mancini_product = mancini_product(m);
    return rep;
}

// Contangles are squared logarithmic negativities. Index order of the arrays
// follows Mode: [cavity, magnon1, magnon2].
struct TripartiteReport {
    std::array<double, 3> one_vs_two{};  // C_{l|mn}
    std::array<double, 3> residual{};    // R^{l|mn}, raw
    double contangle_d_o1 = 0.0;
    double contangle_d_o2 = 0.0;
    double contangle_o1_o2 = 0.0;
    double r_min_raw = 0.0;
    double r_min = 0.0;  // floored at zero

    double pairwise(Mode a, Mode b) const {
        if (a == b) throw ArgumentError("pairwise: modes must be distinct");
        const int s = static_cast<int>(a) + static_cast<int>(b);
        return s == 1 ? contangle_d_o1 : s == 2 ? contangle_d_o2 : contangle_o1_o2;
    }
};

inline TripartiteReport residual_contangle(const CovarianceMatrix& v) {
    auto sq = [](double e) { return e * e; };
    TripartiteReport rep;
    rep.contangle_d_o1 = sq(log_negativity(reduce(v, Mode::cavity, Mode::magnon1)));
    rep.contangle_d_o2 = sq(log_negativity(reduce(v, Mode::cavity, Mode::magnon2)));
    rep.contangle_o1_o2 = sq(log_negativity(reduce(v, Mode::magnon1, Mode::magnon2)));

    for (Mode l : kAllModes) {
        const auto li = static_cast<std::size_t>(l);
        rep.one_vs_two[li] = sq(one_vs_two_negativity(v, l));
        double sum = 0.0;
        for (Mode other : kAllModes)
            if (other != l) sum += rep.pairwise(l, other);
        rep.residual[li] = rep.one_vs_two[li] - sum;
    }
    rep.r_min_raw = *std::min_element(rep.residual.begin(), rep.residual.end());
    rep.r_min = std::max(0.0, rep.r_min_raw);
    return rep;
}

}  // namespace magnonics
