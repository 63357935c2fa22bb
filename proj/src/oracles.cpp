#include "nlspread/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlspread {

namespace {

// exp(e) capped at 1 from the min-with-1 branch: exponents >= 0 mean the
// branch sits at or above Gamma >= 1 and cannot be the minimum.
double capped_branch(double log_coeff, double e) {
    const double z = log_coeff + e;
    return (z >= 0.0) ? 1.0 : std::exp(z);
}

}  // namespace

std::pair<double, double> UpperEnvelope::eval(double t, double x) const {
    const double el = lambda_l * (-x + c_l * t);
    const double er = lambda_r * (-x + c_r * t);
    const double lg = std::log(gamma);
    const double u = std::min({1.0, capped_branch(lg, el), capped_branch(lg, er)});
    const double v =
        std::min({1.0, capped_branch(lg + std::log(b_l), el), capped_branch(lg + std::log(b_r), er)});
    return {u, v};
}

UpperEnvelope upper_envelope(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                             const SpeedProfile& profile, double gamma) {
    UpperEnvelope env;
    env.lambda_l = profile.lambda_l;
    env.lambda_r = profile.lambda_r;
    env.c_l = profile.c_l;
    env.c_r = profile.c_r;
    env.b_l = b_coefficient(p, k1, k2, profile.lambda_l);
    env.b_r = b_coefficient(p, k1, k2, profile.lambda_r);
    const double gamma_min = std::max({1.0, 1.0 / env.b_l, 1.0 / env.b_r});
    if (gamma < gamma_min)
        throw DomainError("envelope scale Gamma must be >= " + std::to_string(gamma_min));
    env.gamma = gamma;
    return env;
}

UpperEnvelope upper_envelope(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                             const SpeedProfile& profile) {
    UpperEnvelope env = upper_envelope(p, k1, k2, profile, 1e300);
    env.gamma = std::max({1.0, 1.0 / env.b_l, 1.0 / env.b_r});
    return env;
}

double domination_gamma(const UpperEnvelope& env, const Grid& g, std::span<const double> u0,
                        std::span<const double> v0) {
    double need = 1.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double el = std::exp(env.lambda_l * x);
        const double er = std::exp(env.lambda_r * x);
        const auto idx = static_cast<std::size_t>(i);
        need = std::max({need, u0[idx] * el, u0[idx] * er, v0[idx] * el / env.b_l,
                         v0[idx] * er / env.b_r});
    }
    return need;
}

void check_initial_domination(const UpperEnvelope& env, const Grid& g,
                              std::span<const double> u0, std::span<const double> v0) {
    for (int i = 0; i < g.n; ++i) {
        const auto [ub, vb] = env.eval(0.0, g.x(i));
        const auto idx = static_cast<std::size_t>(i);
        if (u0[idx] > ub || v0[idx] > vb)
            throw InitialDominationFailure("t=0 envelope fails to dominate the initial data at x = " +
                                           std::to_string(g.x(i)));
    }
}

bool check_domination(const UpperEnvelope& env, const SimResult& run, double tol) {
    for (const auto& snap : run.snapshots) {
        for (int i = 0; i < run.grid.n; ++i) {
            const auto [ub, vb] = env.eval(snap.t, run.grid.x(i));
            const auto idx = static_cast<std::size_t>(i);
            if (snap.u[idx] > ub + tol || snap.v[idx] > vb + tol) return false;
        }
    }
    return true;
}

bool check_comparison(const SimResult& run_hi, const SimResult& run_lo, double tol) {
    if (run_hi.grid.n != run_lo.grid.n || run_hi.grid.dx != run_lo.grid.dx ||
        run_hi.grid.x0 != run_lo.grid.x0 || run_hi.dt != run_lo.dt ||
        run_hi.snapshots.size() != run_lo.snapshots.size())
        throw ConfigMismatch("comparison runs do not share grid/stepping");
    for (std::size_t k = 0; k < run_hi.snapshots.size(); ++k) {
        const auto& a = run_hi.snapshots[k];
        const auto& b = run_lo.snapshots[k];
        if (a.t != b.t) throw ConfigMismatch("comparison runs do not share snapshot times");
        for (std::size_t i = 0; i < a.u.size(); ++i)
            if (a.u[i] < b.u[i] - tol || a.v[i] < b.v[i] - tol) return false;
    }
    return true;
}

MonotoneStatus check_monotone(const FieldState& s, bool symmetric_setup, double tol) {
    if (!symmetric_setup) return MonotoneStatus::NotApplicable;
    const std::size_t n = s.u.size();
    for (const auto* f : {&s.u, &s.v}) {
        for (std::size_t i = 0; i < n / 2; ++i)
            if (std::abs((*f)[i] - (*f)[n - 1 - i]) > tol) return MonotoneStatus::Fails;
        for (std::size_t i = n / 2; i + 1 < n; ++i)
            if ((*f)[i + 1] > (*f)[i] + tol) return MonotoneStatus::Fails;
    }
    return MonotoneStatus::Holds;
}

}  // namespace nlspread
