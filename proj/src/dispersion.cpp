#include "nlspread/dispersion.hpp"

#include <cmath>
#include <limits>

#include "nlspread/detail/dispersion_internal.hpp"

namespace nlspread {

namespace detail {

double DispersionEval::A(double l) const { return k1->mgf(l) - 1.0 - alpha; }
double DispersionEval::B(double l) const { return k2->mgf(l) - 1.0 - beta; }

double DispersionEval::D(double l) const {
    const double a = A(l), b = B(l);
    return 0.5 * (a + b + std::sqrt((a - b) * (a - b) + 4.0 * prod));
}

double DispersionEval::Dprime(double l) const {
    const double a = A(l), b = B(l);
    const double ap = k1->mgf_prime(l), bp = k2->mgf_prime(l);
    const double root = std::sqrt((a - b) * (a - b) + 4.0 * prod);
    return 0.5 * (ap + bp + (a - b) * (ap - bp) / root);
}

double DispersionEval::c(double l) const { return D(l) / l; }

// psi = lambda D' - D carries the sign of c' away from 0; negative between
// 0 and the extremum on either half-line, positive beyond it.
double DispersionEval::psi(double l) const { return l * Dprime(l) - D(l); }

// Sign of psi treating MGF overflow as "past the extremum": once the
// exponent guard trips, lambda*M'(lambda) dwarfs M(lambda).
int DispersionEval::psi_sign(double l) const {
    try {
        const double p = psi(l);
        return (p > 0.0) ? 1 : (p < 0.0 ? -1 : 0);
    } catch (const OverflowError&) {
        return 1;
    }
}

// Unique root of psi on the given half-line, bracket expansion + bisection.
double DispersionEval::extremum(Side side) const {
    const double dir = (side == Side::Right) ? 1.0 : -1.0;
    double lo = dir * 1e-8;
    if (psi_sign(lo) > 0)
        throw BracketFailure("locate_speeds: psi positive at the origin side; pathological input");
    double hi = dir * 0.25;
    while (psi_sign(hi) <= 0) {
        lo = hi;
        hi *= 2.0;
        if (std::abs(hi) > 50.0)
            throw BracketFailure(
                "locate_speeds: no extremum of c in (1e-8, 50); kernel/parameter pathology");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(hi - lo) <= 1e-10 * std::max(1.0, std::abs(mid))) break;
        double p;
        try {
            p = psi(mid);
        } catch (const OverflowError&) {
            hi = mid;
            continue;
        }
        if (std::abs(p) <= 1e-12 * std::max(1.0, std::abs(D(mid)))) return mid;
        if (p < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Where a strictly convex curve with f(0) < 0 crosses zero on one side of
// the origin; +/-infinity when it never does (flat degenerate MGFs).
double DispersionEval::convex_root(const Kernel& k, double rate, Side side) const {
    const double inf = std::numeric_limits<double>::infinity();
    if (k.degenerate()) return (side == Side::Right) ? inf : -inf;
    const auto value_sign = [&](double l) -> int {
        try {
            return (k.mgf(l) - 1.0 - rate > 0.0) ? 1 : -1;
        } catch (const OverflowError&) {
            return 1;
        }
    };
    const double dir = (side == Side::Right) ? 1.0 : -1.0;
    double lo = 0.0, hi = dir * 0.25;
    while (value_sign(hi) < 0) {
        lo = hi;
        hi *= 2.0;
        if (std::abs(hi) > 1e6)
            throw BracketFailure("lambda_set: convex branch never crosses zero");
    }
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-10 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (value_sign(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Maximum of A*B over the open interval where both are negative.
// nullopt when that interval is the whole line (both kernels degenerate),
// where the product is constant alpha*beta.
std::optional<ABMax> DispersionEval::max_product() const {
    if (k1->degenerate() && k2->degenerate()) return std::nullopt;
    const double loA = convex_root(*k1, alpha, Side::Left);
    const double hiA = convex_root(*k1, alpha, Side::Right);
    const double loB = convex_root(*k2, beta, Side::Left);
    const double hiB = convex_root(*k2, beta, Side::Right);
    const double lo = std::max(loA, loB);
    const double hi = std::min(hiA, hiB);
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw InternalInconsistency("lambda_set: unbounded A<0, B<0 region for a non-degenerate pair");

    // A*B vanishes at both endpoints, is positive inside, and every interior
    // critical point is a maximum, so golden-section applies.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto f = [&](double l) { return A(l) * B(l); };
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 300 && (b - a) > 1e-11 * std::max(1.0, std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    const double arg = 0.5 * (a + b);
    return ABMax{arg, f(arg), lo, hi};
}

}  // namespace detail

std::string to_string(Propagation p) {
    switch (p) {
        case Propagation::Bidirectional: return "Bidirectional";
        case Propagation::RightOnly: return "RightOnly";
        case Propagation::LeftOnly: return "LeftOnly";
        case Propagation::CriticalRight: return "CriticalRight";
        case Propagation::CriticalLeft: return "CriticalLeft";
    }
    return "?";
}

std::optional<Propagation> propagation_from_string(const std::string& s) {
    for (Propagation p : {Propagation::Bidirectional, Propagation::RightOnly,
                          Propagation::LeftOnly, Propagation::CriticalRight,
                          Propagation::CriticalLeft})
        if (to_string(p) == s) return p;
    return std::nullopt;
}

double eval_A(const Kernel& k1, double alpha, double lambda) {
    return k1.mgf(lambda) - 1.0 - alpha;
}

double eval_B(const Kernel& k2, double beta, double lambda) {
    return k2.mgf(lambda) - 1.0 - beta;
}

double eval_D(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda) {
    return detail::DispersionEval{&k1, &k2, p.alpha(), p.beta(), p.gp0() * p.hp0()}.D(lambda);
}

double eval_c(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda) {
    if (lambda == 0.0) throw DomainError("c(lambda) is undefined at lambda = 0");
    return eval_D(p, k1, k2, lambda) / lambda;
}

double eval_G(double c, double lambda, const Kernel& k1, double alpha) {
    return c * lambda - eval_A(k1, alpha, lambda);
}

double eval_H(double c, double lambda, const Kernel& k2, double beta) {
    return c * lambda - eval_B(k2, beta, lambda);
}

double b_coefficient(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda) {
    const double a = eval_A(k1, p.alpha(), lambda);
    const double b = eval_B(k2, p.beta(), lambda);
    return (-a + b + std::sqrt((a - b) * (a - b) + 4.0 * p.gp0() * p.hp0())) / (2.0 * p.hp0());
}

std::optional<LambdaInterval> lambda_set(const ModelParams& p, const Kernel& k1,
                                         const Kernel& k2) {
    detail::DispersionEval ev{&k1, &k2, p.alpha(), p.beta(), p.gp0() * p.hp0()};
    const auto mx = ev.max_product();
    if (!mx) return std::nullopt;  // constant alpha*beta < g'(0)h'(0)
    if (mx->value < ev.prod) return std::nullopt;

    const auto g = [&](double l) { return ev.A(l) * ev.B(l) - ev.prod; };
    const auto bisect = [&](double neg, double pos) {
        // g(neg) <= 0 <= g(pos) not assumed in order; orient by sign.
        double lo = neg, hi = pos;
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-10 * std::max(1.0, std::abs(hi));
             ++it) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) >= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };
    LambdaInterval iv;
    iv.lo = bisect(mx->interval_lo, mx->arg);
    double lo2 = mx->arg, hi2 = mx->interval_hi;
    for (int it = 0; it < 200 && std::abs(hi2 - lo2) > 1e-10 * std::max(1.0, std::abs(hi2));
         ++it) {
        const double mid = 0.5 * (lo2 + hi2);
        if (g(mid) >= 0.0)
            lo2 = mid;
        else
            hi2 = mid;
    }
    iv.hi = 0.5 * (lo2 + hi2);
    if (iv.singleton()) iv.lo = iv.hi = mx->arg;
    return iv;
}

Propagation classify_propagation(const std::optional<LambdaInterval>& set) {
    if (!set) return Propagation::Bidirectional;
    if (set->lo < 0.0 && set->hi > 0.0 && !set->singleton())
        throw InternalInconsistency("Lambda set straddles 0");
    if (set->singleton())
        return set->mid() > 0.0 ? Propagation::CriticalRight : Propagation::CriticalLeft;
    return set->lo > 0.0 ? Propagation::LeftOnly : Propagation::RightOnly;
}

namespace {

void check_sign_coherence(Propagation cls, double c_l, double c_r) {
    constexpr double tol = 1e-6;
    bool ok = true;
    switch (cls) {
        case Propagation::Bidirectional: ok = c_l < tol && c_r > -tol; break;
        case Propagation::RightOnly: ok = c_l > -tol && c_r > 0.0; break;
        case Propagation::LeftOnly: ok = c_r < tol && c_l < 0.0; break;
        case Propagation::CriticalRight: ok = std::abs(c_r) <= tol && c_l < tol; break;
        case Propagation::CriticalLeft: ok = std::abs(c_l) <= tol && c_r > -tol; break;
    }
    if (!ok)
        throw InternalInconsistency("classification " + to_string(cls) +
                                    " contradicts speeds c_l=" + std::to_string(c_l) +
                                    ", c_r=" + std::to_string(c_r));
}

}  // namespace

SpeedProfile locate_speeds(const ModelParams& p, const Kernel& k1, const Kernel& k2) {
    detail::DispersionEval ev{&k1, &k2, p.alpha(), p.beta(), p.gp0() * p.hp0()};
    SpeedProfile out;
    out.lambda_r = ev.extremum(Side::Right);
    out.lambda_l = ev.extremum(Side::Left);
    out.c_r = ev.c(out.lambda_r);
    out.c_l = ev.c(out.lambda_l);
    out.lambda_set = lambda_set(p, k1, k2);
    out.classification = classify_propagation(out.lambda_set);
    check_sign_coherence(out.classification, out.c_l, out.c_r);
    return out;
}

std::pair<double, double> perturbed_speeds(const ModelParams& p, const Kernel& k1,
                                           const Kernel& k2, double eta) {
    const double cap = std::min(p.gp0(), p.hp0());
    if (!(eta > 0.0) || !(eta < cap))
        throw DomainError("eta must lie in (0, min(g'(0), h'(0)))");
    // The perturbed relation only has interior extrema while D_eta(0) > 0,
    // i.e. alpha*beta < (g'(0)-eta)(h'(0)-eta); beyond that c_eta diverges
    // to -inf at 0+ and the infimum is not attained.
    if (!(p.alpha() * p.beta() < (p.gp0() - eta) * (p.hp0() - eta)))
        throw DomainError("eta too large: alpha*beta must stay below (g'(0)-eta)(h'(0)-eta)");
    detail::DispersionEval ev{&k1, &k2, p.alpha(), p.beta(),
                              (p.gp0() - eta) * (p.hp0() - eta)};
    const double lr = ev.extremum(Side::Right);
    const double ll = ev.extremum(Side::Left);
    return {ev.c(ll), ev.c(lr)};
}

std::pair<double, double> gh_interval(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                                      double c, double eta, Side side) {
    const double cap = std::min(p.gp0(), p.hp0());
    if (!(eta > 0.0) || !(eta < cap))
        throw DomainError("eta must lie in (0, min(g'(0), h'(0)))");
    const double prod_eta = (p.gp0() - eta) * (p.hp0() - eta);
    if (!(p.alpha() * p.beta() < prod_eta))
        throw DomainError("gh_interval requires alpha*beta < (g'(0)-eta)(h'(0)-eta)");

    detail::DispersionEval ev{&k1, &k2, p.alpha(), p.beta(), prod_eta};
    detail::DispersionEval ev0{&k1, &k2, p.alpha(), p.beta(), p.gp0() * p.hp0()};

    const double lam_eta = ev.extremum(side);
    const double c_eta = ev.c(lam_eta);
    const double lam0 = ev0.extremum(side);
    const double c0 = ev0.c(lam0);
    if (side == Side::Right) {
        if (!(c > c_eta && c < c0))
            throw DomainError("gh_interval: c must lie in (c_r*(eta), c_r*)");
    } else {
        if (!(c > c0 && c < c_eta))
            throw DomainError("gh_interval: c must lie in (c_l*, c_l*(eta))");
    }

    const auto G = [&](double l) { return c * l - ev.A(l); };
    const auto H = [&](double l) { return c * l - ev.B(l); };
    const auto phi = [&](double l) { return G(l) * H(l) - prod_eta; };

    // G and H are concave with G(lam_eta), H(lam_eta) > 0; the first zero of
    // either, moving outward, bounds the admissible window.
    const auto first_zero = [&](auto&& f) {
        double lo = lam_eta, hi = 2.0 * lam_eta;
        const auto sgn = [&](double l) -> int {
            try {
                return f(l) > 0.0 ? 1 : -1;
            } catch (const OverflowError&) {
                return -1;
            }
        };
        while (sgn(hi) > 0) {
            lo = hi;
            hi *= 2.0;
            if (std::abs(hi) > 1e6)
                throw BracketFailure("gh_interval: G/H never change sign");
        }
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-12 * std::max(1.0, std::abs(hi));
             ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sgn(mid) > 0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double zg = first_zero(G);
    const double zh = first_zero(H);
    const double outer = (side == Side::Right) ? std::min(zg, zh) : std::max(zg, zh);

    if (!(phi(lam_eta) > 0.0))
        throw InternalInconsistency("gh_interval: product not above threshold at the extremum");
    if (!(phi(0.0) < 0.0))
        throw InternalInconsistency("gh_interval: product above threshold at lambda = 0");

    const auto bisect_phi = [&](double neg_side, double pos_side) {
        double lo = neg_side, hi = pos_side;
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-12 * std::max(1.0, std::abs(hi));
             ++it) {
            const double mid = 0.5 * (lo + hi);
            if (phi(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double gamma = bisect_phi(0.0, lam_eta);
    const double zeta = bisect_phi(outer, lam_eta);

    // Interior sanity sample.
    for (int i = 1; i <= 100; ++i) {
        const double l = gamma + (zeta - gamma) * static_cast<double>(i) / 101.0;
        if (!(G(l) > 0.0) || !(H(l) > 0.0) || G(l) * H(l) < prod_eta - 1e-12)
            throw InternalInconsistency("gh_interval: interior point fails G,H > 0, GH >= threshold");
    }
    if (side == Side::Right) return {gamma, zeta};
    return {zeta, gamma};
}

AuxWindow aux_positivity_window(double M, double N, double L, double delta) {
    if (!(M > 0.0) || !(N > 0.0) || !(L > 0.0)) throw DomainError("M, N, L must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    AuxWindow out;
    const double disc = M * M - 4.0 * L * N;
    if (disc <= 0.0) return out;  // sup is 0, no positivity window
    const double inv_delta = 1.0 / delta;
    out.lo = std::pow((M - std::sqrt(disc)) / (2.0 * N), inv_delta);
    out.hi = std::pow((M + std::sqrt(disc)) / (2.0 * N), inv_delta);
    const double disc0 = M * M - 4.0 * L * N * (1.0 - delta * delta);
    const double y0 = std::pow((M + std::sqrt(disc0)) / (2.0 * (1.0 + delta) * N), inv_delta);
    out.fmax = M * y0 - N * std::pow(y0, 1.0 + delta) - L * std::pow(y0, 1.0 - delta);
    return out;
}

}  // namespace nlspread
