#pragma once

#include <optional>
#include <string>
#include <utility>

#include "nlspread/kernel.hpp"
#include "nlspread/model_params.hpp"

namespace nlspread {

enum class Propagation { Bidirectional, RightOnly, LeftOnly, CriticalRight, CriticalLeft };

std::string to_string(Propagation p);
std::optional<Propagation> propagation_from_string(const std::string& s);

// Closed interval of decay rates where A*B >= g'(0)h'(0) with A,B < 0.
// Its position and width determine the signs of the spreading speeds.
struct LambdaInterval {
    double lo = 0.0, hi = 0.0;
    // Width below which the interval is treated as the critical singleton.
    static constexpr double kSingletonWidth = 1e-7;
    bool singleton() const { return hi - lo < kSingletonWidth; }
    double mid() const { return 0.5 * (lo + hi); }
};

struct SpeedProfile {
    double lambda_l = 0.0;  // negative maximizer of c on R-
    double lambda_r = 0.0;  // positive minimizer of c on R+
    double c_l = 0.0;
    double c_r = 0.0;
    std::optional<LambdaInterval> lambda_set;
    Propagation classification = Propagation::Bidirectional;
};

// Linearization at the trivial steady state.
double eval_A(const Kernel& k1, double alpha, double lambda);
double eval_B(const Kernel& k2, double beta, double lambda);
double eval_D(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda);
// c(lambda) = D(lambda)/lambda; throws DomainError at lambda = 0.
double eval_c(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda);

double eval_G(double c, double lambda, const Kernel& k1, double alpha);
double eval_H(double c, double lambda, const Kernel& k2, double beta);
double b_coefficient(const ModelParams& p, const Kernel& k1, const Kernel& k2, double lambda);

// Unique extrema of c on each half-line plus the Lambda-set classification.
// Throws BracketFailure when no extremum exists in (1e-8, 50) (degenerate
// kernel pairs, pathological parameters).
SpeedProfile locate_speeds(const ModelParams& p, const Kernel& k1, const Kernel& k2);

// std::nullopt encodes an empty set.
std::optional<LambdaInterval> lambda_set(const ModelParams& p, const Kernel& k1,
                                         const Kernel& k2);

Propagation classify_propagation(const std::optional<LambdaInterval>& set);

// Spreading-speed extrema of the eta-perturbed dispersion relation
// (slopes reduced to g'(0)-eta, h'(0)-eta). Returns (c_l*(eta), c_r*(eta)).
std::pair<double, double> perturbed_speeds(const ModelParams& p, const Kernel& k1,
                                           const Kernel& k2, double eta);

enum class Side { Left, Right };

// The two roots gamma < zeta of G(c,.)H(c,.) = (g'(0)-eta)(h'(0)-eta)
// bracketing the perturbed extremum; G, H and their product stay positive
// above the threshold strictly between them.
std::pair<double, double> gh_interval(const ModelParams& p, const Kernel& k1, const Kernel& k2,
                                      double c, double eta, Side side);

// sup and positivity window of f(y) = M y - N y^{1+delta} - L y^{1-delta}
// over y > 0. The window (lo, hi) exists iff M^2 > 4 L N.
struct AuxWindow {
    double fmax = 0.0;
    std::optional<double> lo, hi;
};
AuxWindow aux_positivity_window(double M, double N, double L, double delta);

// Unique z_r in (1 - 1/r, 1) with (z-1)e^z equal at z_r and -r*z_r; the
// location of the minimum of A for an asymmetric uniform kernel, rescaled.
double omega_root(double r);

// Dimensionless asymmetry threshold: above 1, restricting the second
// component's mobility below some critical value blocks leftward spread.
// Closed forms for normal/uniform k1 (mean >= 0 required; reflect first
// otherwise); beta*(alpha + 1 - E(k1))/(g'(0)h'(0)) for general kernels.
double kappa_index(const ModelParams& p, const Kernel& k1);

// One-parameter mobility families for the second component.
enum class MobilityFamily { NormalVariance, UniformHalfwidth };
Kernel family_kernel(MobilityFamily f, double sigma);

// Critical mobility: the sigma at which the Lambda set degenerates to a
// singleton (leftward spreading speed crosses zero). Throws NoCriticalValue
// when kappa_index <= 1.
double sigma_star(const ModelParams& p, const Kernel& k1, MobilityFamily family);

}  // namespace nlspread
