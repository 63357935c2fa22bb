#include "nlspread/simd/ops.hpp"

#include <algorithm>
#include <cmath>

namespace nlspread::simd {

namespace {

void conv_valid_scalar(double* out, const double* fp, const double* w, std::size_t n,
                       std::size_t support) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* f = fp + i;
        for (std::size_t t = 0; t < support; ++t) acc += w[t] * f[t];
        out[i] = acc;
    }
}

void saturating_scalar(double* out, const double* x, std::size_t n, double s0, double q) {
    for (std::size_t i = 0; i < n; ++i) out[i] = s0 * x[i] / (1.0 + q * x[i]);
}

void combine_rhs_scalar(double* du, const double* conv, const double* f, const double* nl,
                        std::size_t n, double rate) {
    const double c = 1.0 + rate;
    for (std::size_t i = 0; i < n; ++i) du[i] = conv[i] - c * f[i] + nl[i];
}

void axpy_scalar(double* y, const double* x, const double* k, std::size_t n, double h) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + h * k[i];
}

void rk4_final_scalar(double* y, const double* k1, const double* k2, const double* k3,
                      const double* k4, std::size_t n, double h) {
    const double c = h / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        y[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void minmax_scalar(const double* x, std::size_t n, double* mn, double* mx) {
    double lo = x[0], hi = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }
    *mn = lo;
    *mx = hi;
}

double max_abs_scalar(const double* x, std::size_t n) {
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, std::abs(x[i]));
    return hi;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{conv_valid_scalar, saturating_scalar, combine_rhs_scalar,
                         axpy_scalar,       rk4_final_scalar,  minmax_scalar,
                         max_abs_scalar,    "scalar"};
    return ops;
}

}  // namespace nlspread::simd
