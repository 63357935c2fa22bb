#include "nlspread/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlspread/errors.hpp"

namespace nlspread {

namespace {
// Subnormal flush safety for the exponential tails.
constexpr double kFloor = 1e-300;

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front() || x >= xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double f = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return (1.0 - f) * ys[i] + f * ys[i + 1];
}
}  // namespace

InitialData InitialData::bump(double center, double halfwidth, double height) {
    if (!(halfwidth > 0.0)) throw DomainError("bump halfwidth must be positive");
    if (!(height > 0.0) || height > 1.0) throw DomainError("bump height must lie in (0,1]");
    InitialData d;
    d.kind_ = InitialKind::CompactBump;
    d.center_ = center;
    d.halfwidth_ = halfwidth;
    d.height_ = height;
    return d;
}

InitialData InitialData::exponential_tail(double decay, double amplitude,
                                          double plateau_halfwidth, double center) {
    if (!(decay > 0.0)) throw DomainError("tail decay rate must be positive");
    if (!(amplitude > 0.0)) throw DomainError("tail amplitude must be positive");
    if (!(plateau_halfwidth > 0.0)) throw DomainError("plateau halfwidth must be positive");
    const double plateau = amplitude * std::exp(-decay * plateau_halfwidth);
    if (plateau > 1.0)
        throw DomainError("plateau value exceeds 1; shrink the amplitude or widen the plateau");
    InitialData d;
    d.kind_ = InitialKind::ExponentialTail;
    d.center_ = center;
    d.halfwidth_ = plateau_halfwidth;
    d.decay_ = decay;
    d.amplitude_ = amplitude;
    return d;
}

InitialData InitialData::custom(std::vector<double> xs, std::vector<double> us,
                                std::vector<double> vs) {
    if (xs.size() < 2 || us.size() != xs.size() || vs.size() != xs.size())
        throw DomainError("custom initial data needs matching x/u/v columns with >= 2 rows");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw DomainError("custom initial data x column must increase");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (us[i] < 0.0 || us[i] > 1.0 || vs[i] < 0.0 || vs[i] > 1.0)
            throw DomainError("custom initial data values must lie in [0,1]");
    InitialData d;
    d.kind_ = InitialKind::Custom;
    d.xs_ = std::move(xs);
    d.us_ = std::move(us);
    d.vs_ = std::move(vs);
    return d;
}

double InitialData::value_u(double x) const {
    switch (kind_) {
        case InitialKind::CompactBump: {
            const double z = std::abs(x - center_);
            if (z >= halfwidth_) return 0.0;
            const double c = std::cos(0.5 * std::numbers::pi * z / halfwidth_);
            return height_ * c * c;
        }
        case InitialKind::ExponentialTail: {
            const double z = std::abs(x - center_);
            const double w = amplitude_ * std::exp(-decay_ * std::max(z, halfwidth_));
            return (w < kFloor) ? 0.0 : w;
        }
        case InitialKind::Custom:
            return interp(xs_, us_, x);
    }
    return 0.0;
}

double InitialData::value_v(double x) const {
    if (kind_ == InitialKind::Custom) return interp(xs_, vs_, x);
    return value_u(x);
}

void InitialData::fill(const Grid& g, std::vector<double>& u, std::vector<double>& v) const {
    u.resize(static_cast<std::size_t>(g.n));
    v.resize(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        u[static_cast<std::size_t>(i)] = std::clamp(value_u(g.x(i)), 0.0, 1.0);
        v[static_cast<std::size_t>(i)] = std::clamp(value_v(g.x(i)), 0.0, 1.0);
    }
}

}  // namespace nlspread
