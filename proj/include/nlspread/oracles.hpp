#pragma once

#include <utility>

#include "nlspread/dispersion.hpp"
#include "nlspread/simulator.hpp"

namespace nlspread {

// Three-branch exponential envelope that dominates the solution from above
// (comparison-principle upper solution): for u the branches are
// min{1, Gamma e^{lambda_l (-x + c_l t)}, Gamma e^{lambda_r (-x + c_r t)}},
// for v the exponential branches carry the factors b(lambda_l), b(lambda_r).
struct UpperEnvelope {
    double gamma = 1.0;
    double lambda_l = 0.0, lambda_r = 0.0;
    double c_l = 0.0, c_r = 0.0;
    double b_l = 0.0, b_r = 0.0;

    std::pair<double, double> eval(double t, double x) const;
};

// Builds the envelope from a speed profile; requires
// Gamma >= max{1, 1/b(lambda_l), 1/b(lambda_r)}. The two-argument overload
// starts from that minimal admissible Gamma.
UpperEnvelope upper_envelope(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                             const SpeedProfile& profile, double gamma);
UpperEnvelope upper_envelope(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                             const SpeedProfile& profile);

// Smallest Gamma for which the t=0 envelope dominates (u0, v0) on the grid.
double domination_gamma(const UpperEnvelope& env, const Grid& g,
                        std::span<const double> u0, std::span<const double> v0);

// Throws InitialDominationFailure if the t=0 envelope does not dominate.
void check_initial_domination(const UpperEnvelope& env, const Grid& g,
                              std::span<const double> u0, std::span<const double> v0);

// True iff every snapshot satisfies (u,v) <= envelope + tol everywhere.
bool check_domination(const UpperEnvelope& env, const SimResult& run, double tol = 1e-8);

// Comparison principle: with ordered initial data, run_hi must dominate
// run_lo at every snapshot within tol. Throws ConfigMismatch when the runs
// do not share grid and snapshot times.
bool check_comparison(const SimResult& run_hi, const SimResult& run_lo, double tol = 1e-8);

enum class MonotoneStatus { Holds, Fails, NotApplicable };

// Symmetry about the grid center and nonincreasing profile on the right
// half, both within tol per cell pair. Only meaningful when kernels and
// initial data are symmetric; pass that applicability flag explicitly.
MonotoneStatus check_monotone(const FieldState& s, bool symmetric_setup, double tol = 1e-8);

}  // namespace nlspread
