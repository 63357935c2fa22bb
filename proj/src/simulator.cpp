#include "nlspread/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlspread/simd/ops.hpp"

namespace nlspread {

FrontFit estimate_speed(const FrontTrace& trace, double window) {
    if (!(window > 0.0) || window > 1.0)
        throw DomainError("fit window must lie in (0,1]");
    if (trace.samples.empty()) throw InsufficientSamples("front trace is empty");
    const double t_end = trace.samples.back().t;
    const double t_min = (1.0 - window) * t_end;

    const auto fit = [&](auto&& pick, double& slope, double& r2) {
        double st = 0, sx = 0, stt = 0, stx = 0, sxx = 0;
        std::size_t m = 0;
        for (const auto& s : trace.samples) {
            if (s.t < t_min) continue;
            const double x = pick(s);
            st += s.t;
            sx += x;
            stt += s.t * s.t;
            stx += s.t * x;
            sxx += x * x;
            ++m;
        }
        if (m < 20)
            throw InsufficientSamples("front fit needs >= 20 samples in the window, got " +
                                      std::to_string(m));
        const double dm = static_cast<double>(m);
        const double denom = dm * stt - st * st;
        if (denom == 0.0) throw InsufficientSamples("front fit is degenerate in t");
        slope = (dm * stx - st * sx) / denom;
        const double intercept = (sx - slope * st) / dm;
        double ss_res = 0, ss_tot = 0;
        const double mean_x = sx / dm;
        for (const auto& s : trace.samples) {
            if (s.t < t_min) continue;
            const double x = pick(s);
            const double e = x - (intercept + slope * s.t);
            ss_res += e * e;
            ss_tot += (x - mean_x) * (x - mean_x);
        }
        r2 = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
    };

    FrontFit out;
    fit([](const FrontSample& s) { return s.x_left; }, out.speed_left, out.r2_left);
    fit([](const FrontSample& s) { return s.x_right; }, out.speed_right, out.r2_right);
    out.valid = true;
    return out;
}

double Simulator::dt_stability_bound(const ModelParams& p) {
    return 0.5 / (2.0 + p.alpha() + p.beta() + p.gp0() + p.hp0());
}

Simulator::Simulator(ModelParams params, const Kernel& k1, const Kernel& k2, Grid grid,
                     SimOptions opts)
    : params_(std::move(params)),
      grid_(grid),
      opts_(opts),
      kw1_(k1.kind() == KernelKind::Tabulated ? k1.table() : k1.discretize(grid.dx)),
      kw2_(k2.kind() == KernelKind::Tabulated ? k2.table() : k2.discretize(grid.dx)),
      conv1_(kw1_, grid_, opts.conv_path),
      conv2_(kw2_, grid_, opts.conv_path) {
    if (!(opts_.dt > 0.0)) throw DomainError("dt must be positive");
    const double bound = dt_stability_bound(params_);
    if (opts_.dt > bound + 1e-12)
        throw DomainError("dt = " + std::to_string(opts_.dt) +
                          " exceeds the stability bound " + std::to_string(bound));
    if (opts_.snapshot_stride < 1) throw DomainError("snapshot stride must be >= 1");
    if (!(opts_.front_nu > 0.0) || !(opts_.front_nu < 1.0))
        throw DomainError("front threshold must lie in (0,1)");

    const auto n = static_cast<std::size_t>(grid_.n);
    scratch_conv_.resize(n);
    scratch_nl_.resize(n);
    for (auto& k : ku_) k.resize(n);
    for (auto& k : kv_) k.resize(n);
    tu_.resize(n);
    tv_.resize(n);
}

bool Simulator::symmetric_kernels() const {
    return Kernel::tabulated(kw1_).symmetric() && Kernel::tabulated(kw2_).symmetric();
}

void Simulator::rhs(std::span<const double> u, std::span<const double> v, std::span<double> du,
                    std::span<double> dv) {
    const auto& ops = simd::active_ops();
    const auto n = static_cast<std::size_t>(grid_.n);
    conv1_.apply(u, scratch_conv_);
    params_.h().apply(v, scratch_nl_);
    ops.combine_rhs(du.data(), scratch_conv_.data(), u.data(), scratch_nl_.data(), n,
                    params_.alpha());
    conv2_.apply(v, scratch_conv_);
    params_.g().apply(u, scratch_nl_);
    ops.combine_rhs(dv.data(), scratch_conv_.data(), v.data(), scratch_nl_.data(), n,
                    params_.beta());
}

void Simulator::box_check_and_clamp(FieldState& s) const {
    const auto& ops = simd::active_ops();
    const auto n = static_cast<std::size_t>(grid_.n);
    double lo, hi;
    for (auto* f : {&s.u, &s.v}) {
        ops.minmax(f->data(), n, &lo, &hi);
        if (lo < -1e-9 || hi > 1.0 + 1e-9)
            throw BoxViolation("solution left [0,1]^2 at t = " + std::to_string(s.t) +
                               " (min " + std::to_string(lo) + ", max " + std::to_string(hi) +
                               ")");
        for (double& x : *f) x = std::clamp(x, 0.0, 1.0);
    }
}

void Simulator::step(FieldState& s) {
    const auto& ops = simd::active_ops();
    const auto n = static_cast<std::size_t>(grid_.n);
    const double dt = opts_.dt;

    rhs(s.u, s.v, ku_[0], kv_[0]);
    ops.axpy(tu_.data(), s.u.data(), ku_[0].data(), n, 0.5 * dt);
    ops.axpy(tv_.data(), s.v.data(), kv_[0].data(), n, 0.5 * dt);
    rhs(tu_, tv_, ku_[1], kv_[1]);
    ops.axpy(tu_.data(), s.u.data(), ku_[1].data(), n, 0.5 * dt);
    ops.axpy(tv_.data(), s.v.data(), kv_[1].data(), n, 0.5 * dt);
    rhs(tu_, tv_, ku_[2], kv_[2]);
    ops.axpy(tu_.data(), s.u.data(), ku_[2].data(), n, dt);
    ops.axpy(tv_.data(), s.v.data(), kv_[2].data(), n, dt);
    rhs(tu_, tv_, ku_[3], kv_[3]);
    ops.rk4_final(s.u.data(), ku_[0].data(), ku_[1].data(), ku_[2].data(), ku_[3].data(), n, dt);
    ops.rk4_final(s.v.data(), kv_[0].data(), kv_[1].data(), kv_[2].data(), kv_[3].data(), n, dt);
    s.t += dt;
    box_check_and_clamp(s);
}

std::optional<FrontSample> Simulator::locate_front(const FieldState& s) const {
    const int n = grid_.n;
    const double nu = opts_.front_nu;
    const auto level = [&](int i) {
        return std::min(s.u[static_cast<std::size_t>(i)], s.v[static_cast<std::size_t>(i)]);
    };
    int first = -1, last = -1;
    for (int i = 0; i < n; ++i)
        if (level(i) >= nu) {
            first = i;
            break;
        }
    if (first < 0) return std::nullopt;
    for (int i = n - 1; i >= 0; --i)
        if (level(i) >= nu) {
            last = i;
            break;
        }
    const auto cross = [&](int inside, int outside) {
        if (outside < 0 || outside >= n) return grid_.x(inside);
        const double a = level(outside), b = level(inside);
        if (b == a) return grid_.x(inside);
        const double f = (nu - a) / (b - a);
        return grid_.x(outside) + f * (grid_.x(inside) - grid_.x(outside));
    };
    FrontSample out;
    out.t = s.t;
    out.x_left = cross(first, first - 1);
    out.x_right = cross(last, last + 1);
    return out;
}

void Simulator::boundary_check(const FieldState& s) const {
    const auto& ops = simd::active_ops();
    const int n = grid_.n;
    const auto nb = static_cast<std::size_t>(std::max(1, n / 20));
    const double m =
        std::max(std::max(ops.max_abs(s.u.data(), nb), ops.max_abs(s.v.data(), nb)),
                 std::max(ops.max_abs(s.u.data() + n - static_cast<int>(nb), nb),
                          ops.max_abs(s.v.data() + n - static_cast<int>(nb), nb)));
    if (m > opts_.boundary_guard)
        throw BoundaryContamination("outer 5% of cells reached " + std::to_string(m) +
                                    " at t = " + std::to_string(s.t) +
                                    "; enlarge the domain");
}

SimResult Simulator::run(const InitialData& init, double horizon, const StepObserver& observer) {
    FieldState s;
    s.t = 0.0;
    init.fill(grid_, s.u, s.v);
    return run(s, horizon, observer);
}

SimResult Simulator::run(const FieldState& initial_state, double horizon,
                         const StepObserver& observer) {
    if (static_cast<int>(initial_state.u.size()) != grid_.n ||
        static_cast<int>(initial_state.v.size()) != grid_.n)
        throw GridMismatch("initial state size does not match the grid");
    FieldState s = initial_state;
    box_check_and_clamp(s);

    SimResult res;
    res.grid = grid_;
    res.dt = opts_.dt;
    res.trace.nu = opts_.front_nu;

    const auto record_front = [&] {
        if (auto f = locate_front(s)) res.trace.samples.push_back(*f);
    };
    boundary_check(s);
    record_front();
    res.snapshots.push_back(s);
    if (observer) observer(s);

    const auto nsteps = static_cast<long>(std::llround(horizon / opts_.dt));
    for (long k = 1; k <= nsteps; ++k) {
        step(s);
        boundary_check(s);
        record_front();
        if (observer) observer(s);
        if (k % opts_.snapshot_stride == 0 || k == nsteps) res.snapshots.push_back(s);
    }

    // Fronts must never have approached the boundary within ten truncation
    // radii over the whole run.
    if (!res.trace.samples.empty()) {
        const double radius =
            std::max(std::max(std::abs(kw1_.x0), kw1_.x(kw1_.weights.size() - 1)),
                     std::max(std::abs(kw2_.x0), kw2_.x(kw2_.weights.size() - 1)));
        double min_margin = std::numeric_limits<double>::infinity();
        for (const auto& f : res.trace.samples) {
            min_margin = std::min(min_margin, f.x_left - grid_.x0);
            min_margin = std::min(min_margin, grid_.right_edge() - f.x_right);
        }
        if (min_margin < 10.0 * radius)
            throw BoundaryContamination(
                "front came within ten kernel truncation radii of the boundary (margin " +
                std::to_string(min_margin) + "); enlarge the domain");
    }

    try {
        res.fit = estimate_speed(res.trace, opts_.fit_window);
    } catch (const InsufficientSamples&) {
        res.fit = FrontFit{};  // short smoke runs carry no fitted speeds
    }
    return res;
}

}  // namespace nlspread
