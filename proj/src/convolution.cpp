#include "nlspread/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>

#include "nlspread/simd/ops.hpp"

namespace nlspread {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans/buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Smallest 2^a 3^b 5^c >= x; FFTW handles these sizes at full speed.
int next_fast_size(int x) {
    for (int n = x;; ++n) {
        int m = n;
        for (int p : {2, 3, 5})
            while (m % p == 0) m /= p;
        if (m == 1) return n;
    }
}

}  // namespace

struct ConvolutionEngine::SpectralPlan {
    int padded_n = 0;
    double* in = nullptr;
    fftw_complex* freq = nullptr;
    fftw_complex* kernel_freq = nullptr;
    double* out = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~SpectralPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        if (in) fftw_free(in);
        if (freq) fftw_free(freq);
        if (kernel_freq) fftw_free(kernel_freq);
        if (out) fftw_free(out);
    }
};

ConvolutionEngine::ConvolutionEngine(const TabulatedKernel& kernel, const Grid& grid, Path path)
    : n_(grid.n) {
    if (n_ <= 0) throw DomainError("convolution grid is empty");
    if (std::abs(kernel.dx - grid.dx) > 1e-12 * grid.dx)
        throw GridMismatch("kernel spacing " + std::to_string(kernel.dx) +
                           " does not match grid spacing " + std::to_string(grid.dx));

    const int support = static_cast<int>(kernel.weights.size());
    const int i0 = kernel.origin_index();
    if (i0 < 0 || i0 >= support)
        throw GridMismatch("kernel support does not contain the origin");

    // dx-scaled, reversed weights: the direct path is a sliding dot product.
    weights_.resize(kernel.weights.size());
    for (int t = 0; t < support; ++t)
        weights_[static_cast<std::size_t>(t)] = kernel.dx * kernel.weights[static_cast<std::size_t>(support - 1 - t)];
    min_offset_ = -i0;

    if (path == Path::Auto) {
        const int padded = next_fast_size(n_ + support - 1);
        const double direct_cost = static_cast<double>(n_) * support;
        const double spectral_cost = 10.0 * padded * std::log2(static_cast<double>(padded));
        path = (direct_cost > spectral_cost) ? Path::Spectral : Path::Direct;
    }
    path_ = path;

    if (path_ == Path::Direct) {
        padded_.assign(static_cast<std::size_t>(n_ + support - 1), 0.0);
        return;
    }

    spectral_ = std::make_unique<SpectralPlan>();
    auto& sp = *spectral_;
    sp.padded_n = next_fast_size(n_ + support - 1);
    const auto nc = static_cast<std::size_t>(sp.padded_n / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        sp.in = fftw_alloc_real(static_cast<std::size_t>(sp.padded_n));
        sp.out = fftw_alloc_real(static_cast<std::size_t>(sp.padded_n));
        sp.freq = fftw_alloc_complex(nc);
        sp.kernel_freq = fftw_alloc_complex(nc);
        sp.forward = fftw_plan_dft_r2c_1d(sp.padded_n, sp.in, sp.freq, FFTW_ESTIMATE);
        sp.backward = fftw_plan_dft_c2r_1d(sp.padded_n, sp.freq, sp.out, FFTW_ESTIMATE);
    }

    // Kernel transform, offsets wrapped circularly; every wrap lands on
    // explicit zero padding because padded_n >= n + support - 1.
    std::fill(sp.in, sp.in + sp.padded_n, 0.0);
    for (int j = 0; j < support; ++j) {
        const int offset = j - i0;
        const int idx = ((offset % sp.padded_n) + sp.padded_n) % sp.padded_n;
        sp.in[idx] += kernel.dx * kernel.weights[static_cast<std::size_t>(j)];
    }
    fftw_execute(sp.forward);
    std::memcpy(sp.kernel_freq, sp.freq, nc * sizeof(fftw_complex));
}

ConvolutionEngine::~ConvolutionEngine() = default;

void ConvolutionEngine::apply(std::span<const double> f, std::span<double> out) {
    if (static_cast<int>(f.size()) != n_ || static_cast<int>(out.size()) != n_)
        throw GridMismatch("field length does not match the convolution grid");
    if (path_ == Path::Direct)
        apply_direct(f, out);
    else
        apply_spectral(f, out);
}

void ConvolutionEngine::apply_direct(std::span<const double> f, std::span<double> out) {
    const int support = static_cast<int>(weights_.size());
    const int shift = support - 1 + min_offset_;  // fp[q] = f[q - shift]
    std::fill(padded_.begin(), padded_.end(), 0.0);
    std::copy(f.begin(), f.end(), padded_.begin() + shift);
    simd::active_ops().conv_valid(out.data(), padded_.data(), weights_.data(),
                                  static_cast<std::size_t>(n_), weights_.size());
}

void ConvolutionEngine::apply_spectral(std::span<const double> f, std::span<double> out) {
    auto& sp = *spectral_;
    std::copy(f.begin(), f.end(), sp.in);
    std::fill(sp.in + n_, sp.in + sp.padded_n, 0.0);
    fftw_execute(sp.forward);
    const auto nc = static_cast<std::size_t>(sp.padded_n / 2 + 1);
    for (std::size_t i = 0; i < nc; ++i) {
        const double re = sp.freq[i][0] * sp.kernel_freq[i][0] - sp.freq[i][1] * sp.kernel_freq[i][1];
        const double im = sp.freq[i][0] * sp.kernel_freq[i][1] + sp.freq[i][1] * sp.kernel_freq[i][0];
        sp.freq[i][0] = re;
        sp.freq[i][1] = im;
    }
    fftw_execute(sp.backward);
    const double scale = 1.0 / static_cast<double>(sp.padded_n);
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = sp.out[i] * scale;
}

}  // namespace nlspread
