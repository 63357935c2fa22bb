#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nlspread/grid.hpp"
#include "nlspread/kernel.hpp"

namespace nlspread {

// Discrete convolution of a field on `grid` against a tabulated kernel on
// the same spacing, with zero extension outside the domain (the solution is
// treated as 0 beyond the truncated domain; fronts must never reach it).
//
// Two interchangeable paths: direct windowed dot products (scalar/SIMD) and
// a spectral path through FFTW with zero padding sized so circular
// wrap-around picks up only explicit zeros. Both agree to ~1e-12; tests pin
// 1e-10.
class ConvolutionEngine {
public:
    enum class Path { Auto, Direct, Spectral };

    ConvolutionEngine(const TabulatedKernel& kernel, const Grid& grid, Path path = Path::Auto);
    ~ConvolutionEngine();

    ConvolutionEngine(const ConvolutionEngine&) = delete;
    ConvolutionEngine& operator=(const ConvolutionEngine&) = delete;

    // out = (k * f) on the grid; f and out have grid.n entries and must not
    // alias. Not thread-safe per instance (owns scratch); independent
    // instances are safe concurrently.
    void apply(std::span<const double> f, std::span<double> out);

    Path active_path() const { return path_; }
    std::size_t support() const { return weights_.size(); }

private:
    void apply_direct(std::span<const double> f, std::span<double> out);
    void apply_spectral(std::span<const double> f, std::span<double> out);

    int n_ = 0;
    Path path_ = Path::Direct;
    // dx-scaled weights in reversed order, so the direct path is a plain
    // sliding dot product over a zero-padded copy of the field.
    std::vector<double> weights_;
    std::vector<double> padded_;
    int min_offset_ = 0;

    struct SpectralPlan;
    std::unique_ptr<SpectralPlan> spectral_;
};

}  // namespace nlspread
