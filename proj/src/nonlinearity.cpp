#include "nlspread/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "nlspread/simd/ops.hpp"

namespace nlspread {

Nonlinearity Nonlinearity::saturating(double slope0, double cap) {
    if (!(slope0 > 0.0) || !(cap > 0.0))
        throw DomainError("saturating nonlinearity requires slope0 > 0 and cap > 0");
    if (slope0 < cap)
        throw DomainError("saturating nonlinearity requires slope0 >= cap (sublinearity)");
    Nonlinearity f;
    f.form_ = (slope0 == cap) ? NonlinForm::Linear : NonlinForm::Saturating;
    f.slope0_ = slope0;
    f.cap_ = cap;
    f.q_ = slope0 / cap - 1.0;
    f.check_invariants();
    return f;
}

Nonlinearity Nonlinearity::linear(double cap) { return saturating(cap, cap); }

Nonlinearity Nonlinearity::custom(std::vector<double> xs, std::vector<double> ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw DomainError("custom nonlinearity needs >= 2 knots");
    if (xs.front() != 0.0 || std::abs(xs.back() - 1.0) > 1e-12)
        throw DomainError("custom nonlinearity knots must span [0,1]");
    if (ys.front() != 0.0) throw DomainError("custom nonlinearity must have value 0 at 0");
    for (std::size_t i = 1; i < n; ++i) {
        if (xs[i] <= xs[i - 1]) throw DomainError("custom nonlinearity knots must be increasing");
        if (ys[i] < ys[i - 1]) throw DomainError("custom nonlinearity must be nondecreasing");
    }

    // Fritsch-Carlson tangents: monotonicity-limited finite differences,
    // three-point one-sided estimates at the endpoints.
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    const auto endpoint = [](double h0, double h1, double d0, double d1) {
        double t = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (t * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(t) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return t;
    };
    if (n == 2) {
        m[0] = m[1] = d[0];
    } else {
        m[0] = endpoint(xs[1] - xs[0], xs[2] - xs[1], d[0], d[1]);
        m[n - 1] = endpoint(xs[n - 1] - xs[n - 2], xs[n - 2] - xs[n - 3], d[n - 2], d[n - 3]);
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / d[i], b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double t = 3.0 / std::sqrt(s);
            m[i] = t * a * d[i];
            m[i + 1] = t * b * d[i];
        }
    }

    Nonlinearity f;
    f.form_ = NonlinForm::Custom;
    f.cap_ = ys.back();
    f.slope0_ = m[0];
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    f.ms_ = std::move(m);
    if (!(f.slope0_ > 0.0)) throw DomainError("custom nonlinearity must have positive slope at 0");
    f.check_invariants();
    return f;
}

double Nonlinearity::operator()(double x) const {
    switch (form_) {
        case NonlinForm::Linear:
            return slope0_ * x;
        case NonlinForm::Saturating:
            return slope0_ * x / (1.0 + q_ * x);
        case NonlinForm::Custom: {
            if (x <= 0.0) return slope0_ * x;  // linear extension below 0
            if (x >= 1.0) return cap_ + ms_.back() * (x - 1.0);
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
            const double h = xs_[i + 1] - xs_[i];
            const double t = (x - xs_[i]) / h;
            const double t2 = t * t, t3 = t2 * t;
            return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * ms_[i] +
                   (-2 * t3 + 3 * t2) * ys_[i + 1] + (t3 - t2) * h * ms_[i + 1];
        }
    }
    return 0.0;
}

void Nonlinearity::apply(std::span<const double> in, std::span<double> out) const {
    switch (form_) {
        case NonlinForm::Linear:
        case NonlinForm::Saturating:
            simd::active_ops().saturating(out.data(), in.data(), in.size(), slope0_, q_);
            return;
        case NonlinForm::Custom:
            for (std::size_t i = 0; i < in.size(); ++i) out[i] = (*this)(in[i]);
            return;
    }
}

void Nonlinearity::check_invariants() const {
    if ((*this)(0.0) != 0.0) throw DomainError("nonlinearity must vanish at 0");
    if (std::abs((*this)(1.0) - cap_) > 1e-10)
        throw DomainError("nonlinearity must equal its cap at 1");
    // Second-order one-sided finite difference for the slope at 0.
    const double h = 1e-7;
    const double fd = (4.0 * (*this)(h) - (*this)(2.0 * h)) / (2.0 * h);
    if (std::abs(fd - slope0_) > 1e-8 * std::max(1.0, slope0_))
        throw DomainError("nonlinearity slope at 0 disagrees with its declared slope0");
}

}  // namespace nlspread
