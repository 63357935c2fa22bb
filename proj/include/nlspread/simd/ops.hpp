#pragma once

#include <cstddef>

namespace nlspread::simd {

// Data-parallel inner loops of the simulator. Every entry has a scalar
// reference implementation and may have ISA-specific variants; the active
// table is chosen once at runtime (see active_ops).
struct Ops {
    // Windowed dot products ("valid" correlation):
    //   out[i] = sum_{t<support} w[t] * fp[i+t],  i < n,
    // where fp has length n + support - 1.
    void (*conv_valid)(double* out, const double* fp, const double* w, std::size_t n,
                       std::size_t support);
    // out[i] = s0*x[i] / (1 + q*x[i])
    void (*saturating)(double* out, const double* x, std::size_t n, double s0, double q);
    // du[i] = conv[i] - (1 + rate)*f[i] + nl[i]
    void (*combine_rhs)(double* du, const double* conv, const double* f, const double* nl,
                        std::size_t n, double rate);
    // y[i] = x[i] + h*k[i]
    void (*axpy)(double* y, const double* x, const double* k, std::size_t n, double h);
    // y[i] += (h/6) * (k1[i] + 2*k2[i] + 2*k3[i] + k4[i])
    void (*rk4_final)(double* y, const double* k1, const double* k2, const double* k3,
                      const double* k4, std::size_t n, double h);
    void (*minmax)(const double* x, std::size_t n, double* mn, double* mx);
    double (*max_abs)(const double* x, std::size_t n);
    const char* name;
};

const Ops& scalar_ops();

bool avx2_supported();       // CPU capability (compile- and run-time)
const Ops& avx2_ops();       // valid only when avx2_supported()

// Runtime selection: AVX2 when available, scalar otherwise. The environment
// variable NLSPREAD_SIMD={scalar,avx2,auto} overrides, read once.
const Ops& active_ops();

}  // namespace nlspread::simd
