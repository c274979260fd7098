// support.hpp — shared helpers for the test suites: seeded random draws of
// stable parameter sets.

#pragma once

#include "magnonics/model.hpp"

#include <random>
#include <vector>

namespace magnonics::fixtures {

// Stable draws with spectral abscissa below -min_decay so the RK4 oracle
// converges in a bounded number of steps.
inline std::vector<SystemParams> random_stable_params(std::size_t count, unsigned seed, double min_decay = 0.02,
                                                      bool symmetric = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> detuning(-3.0, 3.0);
    std::uniform_real_distribution<double> coupling(0.0, 4.0);
    std::uniform_real_distribution<double> gain(0.0, 0.6);
    std::uniform_real_distribution<double> squeeze(0.0, 2.0);
    std::uniform_real_distribution<double> linewidth(0.1, 1.0);
    std::uniform_real_distribution<double> occupation(0.0, 2.0);

    std::vector<SystemParams> out;
    while (out.size() < count) {
        SystemParams p;
        p.delta_d = detuning(rng);
        p.delta_o1 = detuning(rng);
        p.delta_o2 = symmetric ? p.delta_o1 : detuning(rng);
        p.kappa_o1 = linewidth(rng);
        p.kappa_o2 = symmetric ? p.kappa_o1 : linewidth(rng);
        p.g1 = coupling(rng);
        p.g2 = symmetric ? p.g1 : coupling(rng);
        p.lambda = gain(rng);
        p.r = squeeze(rng);
        p.n_o1 = occupation(rng);
        p.n_o2 = symmetric ? p.n_o1 : occupation(rng);
        if (spectral_abscissa(build_drift(p).u) < -min_decay) out.push_back(p);
    }
    return out;
}

inline SystemParams decoupled() {
    SystemParams p;
    p.g1 = p.g2 = 0.0;
    p.lambda = 0.0;
    return p;
}

}  // namespace magnonics::fixtures
