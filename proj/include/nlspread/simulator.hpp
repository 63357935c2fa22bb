#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nlspread/convolution.hpp"
#include "nlspread/grid.hpp"
#include "nlspread/initial_data.hpp"
#include "nlspread/kernel.hpp"
#include "nlspread/model_params.hpp"

namespace nlspread {

struct FrontSample {
    double t = 0.0;
    double x_left = 0.0;
    double x_right = 0.0;
};

struct FrontFit {
    double speed_left = std::numeric_limits<double>::quiet_NaN();
    double speed_right = std::numeric_limits<double>::quiet_NaN();
    double r2_left = std::numeric_limits<double>::quiet_NaN();
    double r2_right = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
};

// Level-set crossings of min(u,v) = nu over time, outermost on each side,
// linearly interpolated between cells.
struct FrontTrace {
    double nu = 0.1;
    std::vector<FrontSample> samples;
};

// Least-squares linear fit of the front positions over the final `window`
// fraction of the trace. Throws InsufficientSamples below 20 samples.
FrontFit estimate_speed(const FrontTrace& trace, double window);

struct SimOptions {
    double dt = 0.05;
    int snapshot_stride = 20;               // steps between stored snapshots
    double front_nu = 0.1;
    double fit_window = 0.5;
    // Direct convolution by default: its rounding is local, so cells ahead
    // of the light cone stay exactly zero. The spectral path carries a
    // ~1e-15 global roundoff floor that the linear instability of the
    // trivial state amplifies past the contamination guard on long
    // horizons.
    ConvolutionEngine::Path conv_path = ConvolutionEngine::Path::Direct;
    double boundary_guard = 1e-6;           // contamination abort threshold
};

struct SimResult {
    Grid grid;
    double dt = 0.0;
    std::vector<FieldState> snapshots;
    FrontTrace trace;
    FrontFit fit;
};

// Method-of-lines integration of
//   u_t = k1*u - u - alpha*u + h(v),  v_t = k2*v - v - beta*v + g(u)
// with classical RK4 at fixed dt and zero extension outside the grid.
// A simulator owns its scratch exclusively; run independent instances for
// concurrent work.
class Simulator {
public:
    Simulator(ModelParams params, const Kernel& k1, const Kernel& k2, Grid grid,
              SimOptions opts);

    const Grid& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }
    const TabulatedKernel& table1() const { return kw1_; }
    const TabulatedKernel& table2() const { return kw2_; }
    bool symmetric_kernels() const;
    // Max dt for the Lipschitz-based stability bound used at construction.
    static double dt_stability_bound(const ModelParams& p);

    void rhs(std::span<const double> u, std::span<const double> v, std::span<double> du,
             std::span<double> dv);
    // One RK4 step; enforces the [0,1]^2 box within 1e-9 and clamps.
    void step(FieldState& s);

    using StepObserver = std::function<void(const FieldState&)>;
    SimResult run(const InitialData& init, double horizon, const StepObserver& observer = {});
    SimResult run(const FieldState& initial_state, double horizon,
                  const StepObserver& observer = {});

    std::optional<FrontSample> locate_front(const FieldState& s) const;

private:
    void boundary_check(const FieldState& s) const;
    void box_check_and_clamp(FieldState& s) const;

    ModelParams params_;
    Grid grid_;
    SimOptions opts_;
    TabulatedKernel kw1_, kw2_;
    ConvolutionEngine conv1_, conv2_;
    std::vector<double> scratch_conv_, scratch_nl_;
    std::vector<double> ku_[4], kv_[4], tu_, tv_;
};

}  // namespace nlspread
