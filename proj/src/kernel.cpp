#include "nlspread/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nlspread {

namespace {

// Double-precision exp stays finite with margin below this exponent.
constexpr double kMaxExponent = 700.0;

void require(bool cond, const char* msg) {
    if (!cond) throw DomainError(msg);
}

double normal_pdf(double x, double mean, double var) {
    const double z = x - mean;
    return std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// (a^j - b^j)/(a - b) = sum_{i<j} a^i b^{j-1-i}, computed without cancellation.
double power_sum(double a, double b, int j) {
    double s = 0.0;
    double ai = 1.0;
    for (int i = 0; i < j; ++i) {
        s += ai * std::pow(b, j - 1 - i);
        ai *= a;
    }
    return s;
}

double omega(double z) { return (z - 1.0) * std::exp(z); }

}  // namespace

std::string to_string(KernelKind k) {
    switch (k) {
        case KernelKind::Normal: return "normal";
        case KernelKind::Uniform: return "uniform";
        case KernelKind::Dirac: return "dirac";
        case KernelKind::Tabulated: return "tabulated";
    }
    return "?";
}

int TabulatedKernel::origin_index() const {
    return static_cast<int>(std::llround(-x0 / dx));
}

Kernel Kernel::normal(double mean, double variance) {
    require(variance > 0.0, "normal kernel requires variance > 0");
    require(std::isfinite(mean) && std::isfinite(variance), "normal kernel parameters must be finite");
    return Kernel(NormalK{mean, variance});
}

Kernel Kernel::uniform(double lower, double upper) {
    require(lower < 0.0 && upper > 0.0, "uniform kernel requires lower < 0 < upper");
    require(std::isfinite(lower) && std::isfinite(upper), "uniform kernel parameters must be finite");
    return Kernel(UniformK{lower, upper});
}

Kernel Kernel::dirac() { return Kernel(DiracK{}); }

Kernel Kernel::tabulated(double dx, double x0, std::vector<double> weights) {
    TabulatedKernel t;
    t.dx = dx;
    t.x0 = x0;
    t.weights = std::move(weights);
    return tabulated(std::move(t));
}

Kernel Kernel::tabulated(TabulatedKernel t) {
    require(t.dx > 0.0, "tabulated kernel requires dx > 0");
    require(!t.weights.empty(), "tabulated kernel requires at least one weight");
    const double ratio = t.x0 / t.dx;
    require(std::abs(ratio - std::round(ratio)) < 1e-6 * (1.0 + std::abs(ratio)),
            "tabulated kernel origin offset must be an integer multiple of dx");
    // Snap the offset so lattice positions are exact multiples of dx.
    t.x0 = std::round(ratio) * t.dx;

    for (double& w : t.weights) {
        require(w > -1e-12, "tabulated kernel weights must be nonnegative");
        if (w < 0.0) w = 0.0;
    }
    // Trim zero-weight edges so the recorded support is the true support.
    std::size_t lo = 0, hi = t.weights.size();
    while (lo < hi && t.weights[lo] == 0.0) ++lo;
    while (hi > lo && t.weights[hi - 1] == 0.0) --hi;
    require(lo < hi, "tabulated kernel has zero total mass");
    t.x0 += static_cast<double>(lo) * t.dx;
    t.weights.assign(t.weights.begin() + static_cast<std::ptrdiff_t>(lo),
                     t.weights.begin() + static_cast<std::ptrdiff_t>(hi));

    double mass = 0.0;
    for (double w : t.weights) mass += w;
    mass *= t.dx;
    require(mass > 0.0, "tabulated kernel has zero total mass");
    for (double& w : t.weights) w /= mass;

    const int i0 = t.origin_index();
    t.degenerate = (t.weights.size() == 1 && i0 == 0);
    if (!t.degenerate) {
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < t.weights.size(); ++i) {
            if (t.weights[i] <= 0.0) continue;
            const double x = t.x(i);
            if (x > 0.0) pos = true;
            if (x < 0.0) neg = true;
        }
        require(pos && neg,
                "tabulated kernel must carry mass on both half-lines "
                "(one-sided kernels are rejected; a single origin cell is the point mass)");
    }
    return Kernel(std::move(t));
}

KernelKind Kernel::kind() const {
    if (std::holds_alternative<NormalK>(v_)) return KernelKind::Normal;
    if (std::holds_alternative<UniformK>(v_)) return KernelKind::Uniform;
    if (std::holds_alternative<DiracK>(v_)) return KernelKind::Dirac;
    return KernelKind::Tabulated;
}

bool Kernel::degenerate() const {
    if (kind() == KernelKind::Dirac) return true;
    if (kind() == KernelKind::Tabulated) return table().degenerate;
    return false;
}

bool Kernel::symmetric() const {
    switch (kind()) {
        case KernelKind::Normal: return normal_mean() == 0.0;
        case KernelKind::Uniform: return uniform_upper() == -uniform_lower();
        case KernelKind::Dirac: return true;
        case KernelKind::Tabulated: {
            const auto& t = table();
            const std::size_t n = t.weights.size();
            if (std::abs(t.x0 + t.x(n - 1)) > 1e-9 * t.dx) return false;
            double wmax = 0.0;
            for (double w : t.weights) wmax = std::max(wmax, w);
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(t.weights[i] - t.weights[n - 1 - i]) > 1e-12 * wmax) return false;
            return true;
        }
    }
    return false;
}

double Kernel::mean() const {
    switch (kind()) {
        case KernelKind::Normal: return normal_mean();
        case KernelKind::Uniform: return 0.5 * (uniform_lower() + uniform_upper());
        case KernelKind::Dirac: return 0.0;
        case KernelKind::Tabulated: {
            const auto& t = table();
            double m = 0.0;
            for (std::size_t i = 0; i < t.weights.size(); ++i) m += t.weights[i] * t.x(i);
            return m * t.dx;
        }
    }
    return 0.0;
}

double Kernel::support_radius() const {
    switch (kind()) {
        case KernelKind::Normal:
            return 10.0 * std::sqrt(normal_variance()) + std::abs(normal_mean());
        case KernelKind::Uniform:
            return std::max(std::abs(uniform_lower()), std::abs(uniform_upper()));
        case KernelKind::Dirac:
            return 0.0;
        case KernelKind::Tabulated: {
            const auto& t = table();
            return std::max(std::abs(t.x0), std::abs(t.x(t.weights.size() - 1)));
        }
    }
    return 0.0;
}

double Kernel::mgf(double lambda) const {
    switch (kind()) {
        case KernelKind::Normal: {
            const double a = normal_mean(), s = normal_variance();
            const double e = a * lambda + 0.5 * s * lambda * lambda;
            if (e > kMaxExponent) throw OverflowError("mgf overflow (normal kernel)");
            return std::exp(e);
        }
        case KernelKind::Uniform: {
            if (lambda == 0.0) return 1.0;
            const double b = uniform_lower(), a = uniform_upper();
            if (std::max(a * lambda, b * lambda) > kMaxExponent)
                throw OverflowError("mgf overflow (uniform kernel)");
            // (e^{a l} - e^{b l}) / ((a-b) l). The sinh form is exact under
            // kernel reflection (odd symmetry) and loses nothing at the
            // removable singularity; fall back to the difference form when
            // sinh alone would overflow.
            const double half = 0.5 * (a - b) * lambda;
            if (std::abs(half) <= 350.0) {
                const double mid = 0.5 * (a + b) * lambda;
                return std::exp(mid) * std::sinh(half) / half;
            }
            return (std::exp(a * lambda) - std::exp(b * lambda)) / ((a - b) * lambda);
        }
        case KernelKind::Dirac:
            return 1.0;
        case KernelKind::Tabulated: {
            const auto& t = table();
            const double r = support_radius();
            if (std::abs(lambda) * r > kMaxExponent)
                throw OverflowError("mgf overflow (tabulated kernel)");
            double s = 0.0;
            for (std::size_t i = 0; i < t.weights.size(); ++i)
                s += t.weights[i] * std::exp(lambda * t.x(i));
            return s * t.dx;
        }
    }
    return 1.0;
}

double Kernel::mgf_prime(double lambda) const {
    switch (kind()) {
        case KernelKind::Normal: {
            const double a = normal_mean(), s = normal_variance();
            const double e = a * lambda + 0.5 * s * lambda * lambda;
            if (e > kMaxExponent) throw OverflowError("mgf' overflow (normal kernel)");
            return (a + s * lambda) * std::exp(e);
        }
        case KernelKind::Uniform: {
            const double b = uniform_lower(), a = uniform_upper();
            const double scale = std::max(std::abs(a), std::abs(b));
            if (std::abs(lambda) * scale < 0.25) {
                // Taylor series of sum_k s_{k+1} lambda^k/(k+1)! differentiated;
                // avoids the 0/0 cancellation of the closed form near 0.
                double d = 0.0, lk = 1.0, fact = 1.0;  // fact = (k+1)!
                for (int k = 1; k <= 14; ++k) {
                    fact *= static_cast<double>(k + 1);
                    d += static_cast<double>(k) * power_sum(a, b, k + 1) * lk / fact;
                    lk *= lambda;
                }
                return d;
            }
            if (std::max(a * lambda, b * lambda) > kMaxExponent)
                throw OverflowError("mgf' overflow (uniform kernel)");
            return (omega(a * lambda) - omega(b * lambda)) / ((a - b) * lambda * lambda);
        }
        case KernelKind::Dirac:
            return 0.0;
        case KernelKind::Tabulated: {
            // Five-point central difference with Richardson extrapolation.
            const double h = 1e-6 * std::max(1.0, std::abs(lambda));
            const double m1 = mgf(lambda + h), m2 = mgf(lambda - h);
            const double m3 = mgf(lambda + 2.0 * h), m4 = mgf(lambda - 2.0 * h);
            return (8.0 * (m1 - m2) - (m3 - m4)) / (12.0 * h);
        }
    }
    return 0.0;
}

double Kernel::asymmetry_infimum() const {
    if (degenerate()) return 1.0;
    const double m = mean();
    if (std::abs(m) < 1e-15) return 1.0;
    // mgf is strictly convex with derivative `m` at 0, so the minimizer sits
    // on the opposite side of 0; bracket the derivative sign change there.
    const double dir = (m > 0.0) ? -1.0 : 1.0;
    double lo = 0.0, hi = dir;
    while (mgf_prime(hi) * dir < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (std::abs(hi) > 1e6) throw BracketFailure("asymmetry_infimum: no derivative sign change");
    }
    if (lo > hi) std::swap(lo, hi);
    for (int it = 0; it < 200 && hi - lo > 1e-11 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mgf_prime(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mgf(0.5 * (lo + hi));
}

double Kernel::asymmetry_ratio() const {
    switch (kind()) {
        case KernelKind::Normal: {
            const double r = normal_mean() / std::sqrt(2.0 * normal_variance());
            if (r == 0.0) return 1.0;
            const double sqrt_pi = std::sqrt(std::numbers::pi);
            double denom;
            if (r > 0.0)
                denom = std::exp(-r * r) / (r * sqrt_pi) - std::erfc(r);
            else
                denom = std::exp(-r * r) / (r * sqrt_pi) + std::erf(r) - 1.0;
            return 2.0 / denom + 1.0;
        }
        case KernelKind::Uniform: {
            const double q = uniform_upper() / uniform_lower();
            return q * q;
        }
        case KernelKind::Dirac:
            throw ZeroNegativeMass("asymmetry_ratio undefined for the point mass");
        case KernelKind::Tabulated: {
            const auto& t = table();
            double m1 = 0.0, m2 = 0.0;
            for (std::size_t i = 0; i < t.weights.size(); ++i) {
                const double x = t.x(i);
                if (x > 0.0) m1 += t.weights[i] * x;
                if (x < 0.0) m2 -= t.weights[i] * x;
            }
            if (m2 == 0.0) throw ZeroNegativeMass("asymmetry_ratio: no mass on the negative half-line");
            return m1 / m2;
        }
    }
    return 1.0;
}

Kernel Kernel::reflected() const {
    switch (kind()) {
        case KernelKind::Normal: return normal(-normal_mean(), normal_variance());
        case KernelKind::Uniform: return uniform(-uniform_upper(), -uniform_lower());
        case KernelKind::Dirac: return dirac();
        case KernelKind::Tabulated: {
            const auto& t = table();
            TabulatedKernel r = t;
            std::reverse(r.weights.begin(), r.weights.end());
            r.x0 = -t.x(t.weights.size() - 1);
            return tabulated(std::move(r));
        }
    }
    return dirac();
}

TabulatedKernel Kernel::discretize(double dx) const {
    return discretize(dx, std::max(support_radius(), dx));
}

TabulatedKernel Kernel::discretize(double dx, double truncation_radius) const {
    require(dx > 0.0, "discretize requires dx > 0");
    require(truncation_radius > 0.0, "discretize requires truncation_radius > 0");

    TabulatedKernel out;
    out.dx = dx;

    if (kind() == KernelKind::Dirac) {
        out.x0 = 0.0;
        out.weights = {1.0 / dx};
        out.degenerate = true;
        return out;
    }

    // Cell extents must cover the truncation radius: (m + 1/2) dx >= radius.
    const int m = std::max(1, static_cast<int>(std::ceil(truncation_radius / dx - 0.5 - 1e-9)));
    out.x0 = -static_cast<double>(m) * dx;
    out.weights.assign(2 * static_cast<std::size_t>(m) + 1, 0.0);

    double tail = 0.0;
    switch (kind()) {
        case KernelKind::Normal: {
            const double a = normal_mean(), s = normal_variance();
            for (int i = -m; i <= m; ++i)
                out.weights[static_cast<std::size_t>(i + m)] = normal_pdf(i * dx, a, s);
            const double edge = (static_cast<double>(m) + 0.5) * dx;
            const double sd = std::sqrt(2.0 * s);
            tail = 0.5 * std::erfc((edge - a) / sd) + 0.5 * std::erfc((edge + a) / sd);
            break;
        }
        case KernelKind::Uniform: {
            const double b = uniform_lower(), a = uniform_upper();
            const double h = 1.0 / (a - b);
            for (int i = -m; i <= m; ++i) {
                const double x = i * dx;
                double w = 0.0;
                if (x > b + 1e-9 * dx && x < a - 1e-9 * dx) w = h;
                // Midpoint value at a density jump.
                else if (std::abs(x - b) <= 1e-9 * dx || std::abs(x - a) <= 1e-9 * dx)
                    w = 0.5 * h;
                out.weights[static_cast<std::size_t>(i + m)] = w;
            }
            const double edge = (static_cast<double>(m) + 0.5) * dx;
            tail = (std::max(0.0, a - edge) + std::max(0.0, -b - edge)) * h;
            break;
        }
        case KernelKind::Tabulated: {
            // Resample the piecewise-linear density onto the new lattice.
            const auto& t = table();
            const auto density = [&](double x) -> double {
                const double p = (x - t.x0) / t.dx;
                if (p < 0.0 || p > static_cast<double>(t.weights.size() - 1)) return 0.0;
                const auto j = static_cast<std::size_t>(p);
                if (j + 1 >= t.weights.size()) return t.weights.back();
                const double f = p - static_cast<double>(j);
                return (1.0 - f) * t.weights[j] + f * t.weights[j + 1];
            };
            for (int i = -m; i <= m; ++i)
                out.weights[static_cast<std::size_t>(i + m)] = density(i * dx);
            const double edge = (static_cast<double>(m) + 0.5) * dx;
            for (std::size_t j = 0; j < t.weights.size(); ++j)
                if (std::abs(t.x(j)) > edge) tail += t.weights[j] * t.dx;
            break;
        }
        case KernelKind::Dirac:
            break;
    }

    if (tail > 1e-8)
        throw TailMassTooLarge("discretize: truncated tail mass " + std::to_string(tail) +
                               " exceeds 1e-8; increase the truncation radius");
    out.truncated_tail_mass = tail;

    Kernel checked = tabulated(std::move(out));
    return checked.table();
}

const TabulatedKernel& Kernel::table() const {
    require(kind() == KernelKind::Tabulated, "kernel is not tabulated");
    return std::get<TabulatedKernel>(v_);
}

double Kernel::normal_mean() const { return std::get<NormalK>(v_).mean; }
double Kernel::normal_variance() const { return std::get<NormalK>(v_).variance; }
double Kernel::uniform_lower() const { return std::get<UniformK>(v_).lower; }
double Kernel::uniform_upper() const { return std::get<UniformK>(v_).upper; }

bool Kernel::same_shape(const Kernel& other) const {
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case KernelKind::Normal:
            return normal_mean() == other.normal_mean() && normal_variance() == other.normal_variance();
        case KernelKind::Uniform:
            return uniform_lower() == other.uniform_lower() && uniform_upper() == other.uniform_upper();
        case KernelKind::Dirac:
            return true;
        case KernelKind::Tabulated: {
            const auto& t0 = table();
            const auto& t1 = other.table();
            return t0.dx == t1.dx && t0.x0 == t1.x0 && t0.weights == t1.weights;
        }
    }
    return false;
}

}  // namespace nlspread
