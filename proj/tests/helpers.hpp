#pragma once

#include <random>

#include "nlspread/dispersion.hpp"
#include "nlspread/kernel.hpp"
#include "nlspread/model_params.hpp"

namespace nlspread::testing {

// alpha=beta=0.2, g'(0)=h'(0)=0.5, saturating forms.
inline ModelParams symmetric_params_05() {
    return ModelParams(0.2, 0.2, Nonlinearity::saturating(0.5, 0.2),
                       Nonlinearity::saturating(0.5, 0.2));
}

// alpha=beta=0.2, g'(0)=h'(0)=0.6.
inline ModelParams symmetric_params_06() {
    return ModelParams(0.2, 0.2, Nonlinearity::saturating(0.6, 0.2),
                       Nonlinearity::saturating(0.6, 0.2));
}

// The uniform-kernel application: alpha=beta=0.2, g'(0)h'(0)=0.06.
inline ModelParams uniform_app_params() {
    return ModelParams(0.2, 0.2, Nonlinearity::saturating(0.3, 0.2),
                       Nonlinearity::linear(0.2));
}

// The normal-kernel application: alpha=0.2, beta=0.1, g'(0)h'(0)=0.022.
inline ModelParams normal_app_params() {
    return ModelParams(0.2, 0.1, Nonlinearity::saturating(0.11, 0.1),
                       Nonlinearity::linear(0.2));
}

struct RandomScenario {
    ModelParams params;
    Kernel k1, k2;
};

// Valid random scenarios: saturating slopes strictly above the caps, normal
// or uniform kernels with two-sided support.
inline RandomScenario random_scenario(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double alpha = 0.05 + 0.45 * unif(rng);
    const double beta = 0.05 + 0.45 * unif(rng);
    const double gs = beta * (1.2 + 2.0 * unif(rng));
    const double hs = alpha * (1.2 + 2.0 * unif(rng));
    auto kernel = [&]() -> Kernel {
        if (unif(rng) < 0.5)
            return Kernel::normal(-0.8 + 1.6 * unif(rng), 0.3 + 1.7 * unif(rng));
        return Kernel::uniform(-(0.2 + 1.8 * unif(rng)), 0.2 + 1.8 * unif(rng));
    };
    return RandomScenario{ModelParams(alpha, beta, Nonlinearity::saturating(gs, beta),
                                      Nonlinearity::saturating(hs, alpha)),
                          kernel(), kernel()};
}

// Brute-force minimizer of c over a 1e-4 grid on (0, hi) or (hi, 0).
inline std::pair<double, double> grid_min_c(const ModelParams& p, const Kernel& k1,
                                            const Kernel& k2, double hi, double resolution) {
    const double sign = hi > 0 ? 1.0 : -1.0;
    double best_l = sign * resolution, best_c = sign > 0
                                                    ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity();
    const auto steps = static_cast<long>(std::abs(hi) / resolution);
    for (long i = 1; i <= steps; ++i) {
        const double l = sign * static_cast<double>(i) * resolution;
        const double c = eval_c(p, k1, k2, l);
        if ((sign > 0 && c < best_c) || (sign < 0 && c > best_c)) {
            best_c = c;
            best_l = l;
        }
    }
    return {best_l, best_c};
}

}  // namespace nlspread::testing
