#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nlspread/errors.hpp"

namespace nlspread {

enum class KernelKind { Normal, Uniform, Dirac, Tabulated };

std::string to_string(KernelKind k);

// Dispersal kernel discretized onto a lattice {x0 + i*dx}. Weights are
// densities: dx * sum(w) == 1. The lattice always contains the origin
// (x0 is an integer multiple of dx), so tables convolve against a
// simulation grid of the same spacing as an aligned stencil.
struct TabulatedKernel {
    double dx = 0.0;
    double x0 = 0.0;
    std::vector<double> weights;
    double truncated_tail_mass = 0.0;
    bool degenerate = false;  // single unit weight at the origin (point mass)

    int origin_index() const;          // index offset of x=0 on the lattice
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
};

// A dispersal distribution with unit mass and finite exponential moments.
// Immutable after construction; all operations are pure.
class Kernel {
public:
    static Kernel normal(double mean, double variance);
    static Kernel uniform(double lower, double upper);  // lower < 0 < upper
    static Kernel dirac();
    static Kernel tabulated(double dx, double x0, std::vector<double> weights);
    static Kernel tabulated(TabulatedKernel t);

    KernelKind kind() const;
    bool degenerate() const;  // point mass at 0 (no dispersal)
    bool analytic() const { return kind() != KernelKind::Tabulated; }
    bool symmetric() const;
    double mean() const;
    // Radius beyond which the density is zero (exact support) or negligible
    // (10 standard deviations for the normal variant).
    double support_radius() const;

    // Moment generating function: integral of k(x) e^{lambda x}.
    // Throws OverflowError when the exponent range would be exceeded.
    double mgf(double lambda) const;
    // d/dlambda of mgf. Closed form for analytic variants; central
    // differences with Richardson extrapolation for tabulated ones.
    double mgf_prime(double lambda) const;

    // E(k) = inf over lambda of mgf. 1 for symmetric kernels and the point
    // mass; in (0,1) otherwise.
    double asymmetry_infimum() const;
    // Ratio of the first absolute moments on the positive/negative half-lines.
    // Throws ZeroNegativeMass when the negative half-line carries no mass.
    double asymmetry_ratio() const;

    Kernel reflected() const;

    // Midpoint sampling at cell centers, renormalized to exact unit mass.
    // Throws TailMassTooLarge when the truncated mass exceeds 1e-8.
    TabulatedKernel discretize(double dx, double truncation_radius) const;
    TabulatedKernel discretize(double dx) const;  // default radius

    const TabulatedKernel& table() const;
    double normal_mean() const;
    double normal_variance() const;
    double uniform_lower() const;
    double uniform_upper() const;

    bool same_shape(const Kernel& other) const;

private:
    struct NormalK {
        double mean, variance;
    };
    struct UniformK {
        double lower, upper;
    };
    struct DiracK {};

    explicit Kernel(std::variant<NormalK, UniformK, DiracK, TabulatedKernel> v)
        : v_(std::move(v)) {}

    std::variant<NormalK, UniformK, DiracK, TabulatedKernel> v_;
};

}  // namespace nlspread
