// The inverse problems: asymmetry thresholds and the critical mobility of
// the second component.

#include <cmath>
#include <string>

#include "nlspread/detail/dispersion_internal.hpp"
#include "nlspread/dispersion.hpp"

namespace nlspread {

namespace {

double omega(double z) { return (z - 1.0) * std::exp(z); }

}  // namespace

double omega_root(double r) {
    if (!(r > 1.0)) throw DomainError("omega_root requires r > 1");
    const auto f = [&](double z) { return omega(z) - omega(-r * z); };
    double lo = 1.0 - 1.0 / r, hi = 1.0;
    // f(lo) < 0 < f(hi); plain bisection.
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (std::abs(v) < 1e-15) return mid;
        if (v < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kappa_index(const ModelParams& p, const Kernel& k1) {
    const double prod = p.gp0() * p.hp0();
    switch (k1.kind()) {
        case KernelKind::Normal: {
            const double a = k1.normal_mean();
            if (a < 0.0)
                throw DomainError("kappa_index requires mean >= 0; reflect the axis first");
            const double r2 = a * a / (2.0 * k1.normal_variance());
            return p.beta() * (p.alpha() + 1.0 - std::exp(-r2)) / prod;
        }
        case KernelKind::Uniform: {
            const double b = k1.uniform_lower(), a = k1.uniform_upper();
            if (a + b < 0.0)
                throw DomainError("kappa_index requires mean >= 0; reflect the axis first");
            if (a + b == 0.0) return p.alpha() * p.beta() / prod;
            const double r = -a / b;
            const double zr = omega_root(r);
            const double a_min = std::exp(zr) / (1.0 + r * zr) - 1.0 - p.alpha();
            return -p.beta() * a_min / prod;
        }
        case KernelKind::Dirac:
        case KernelKind::Tabulated:
            // E(k1) generalization; exact for the point mass (E = 1).
            return p.beta() * (p.alpha() + 1.0 - k1.asymmetry_infimum()) / prod;
    }
    return 0.0;
}

Kernel family_kernel(MobilityFamily f, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("family kernel requires sigma > 0");
    switch (f) {
        case MobilityFamily::NormalVariance: return Kernel::normal(0.0, sigma);
        case MobilityFamily::UniformHalfwidth: return Kernel::uniform(-sigma, sigma);
    }
    throw DomainError("unknown mobility family");
}

double sigma_star(const ModelParams& p, const Kernel& k1, MobilityFamily family) {
    const double kappa = kappa_index(p, k1);
    if (kappa <= 1.0)
        throw NoCriticalValue("kappa = " + std::to_string(kappa) +
                              " <= 1: spread is bidirectional for every mobility");

    const double prod = p.gp0() * p.hp0();
    // F(sigma) = max A*B - g'(0)h'(0); strictly decreasing in sigma, positive
    // as sigma -> 0 (limit kappa*g'h' - g'h' > 0), negative as sigma -> inf.
    const auto F = [&](double sigma) {
        const Kernel k2 = family_kernel(family, sigma);
        detail::DispersionEval ev{&k1, &k2, p.alpha(), p.beta(), prod};
        const auto mx = ev.max_product();
        if (!mx) return -prod;
        return mx->value - prod;
    };

    double lo = 1e-3, hi = 1.0;
    if (!(F(lo) > 0.0))
        throw BracketFailure("sigma_star: threshold already crossed at sigma = 1e-3");
    while (F(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) throw BracketFailure("sigma_star: no crossing below sigma = 1e4");
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (F(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace nlspread
