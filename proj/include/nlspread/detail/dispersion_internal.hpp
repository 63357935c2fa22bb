#pragma once

#include <optional>

#include "nlspread/dispersion.hpp"
#include "nlspread/kernel.hpp"

namespace nlspread::detail {

struct ABMax {
    double arg;          // maximizer of A*B
    double value;        // A(arg)*B(arg)
    double interval_lo;  // region where A < 0 and B < 0
    double interval_hi;
};

// Shared evaluator for the linearized dispersion machinery; `prod` is
// g'(0)h'(0) or its eta-perturbed counterpart.
struct DispersionEval {
    const Kernel* k1;
    const Kernel* k2;
    double alpha;
    double beta;
    double prod;

    double A(double l) const;
    double B(double l) const;
    double D(double l) const;
    double Dprime(double l) const;
    double c(double l) const;
    double psi(double l) const;
    int psi_sign(double l) const;
    double extremum(Side side) const;
    double convex_root(const Kernel& k, double rate, Side side) const;
    std::optional<ABMax> max_product() const;
};

}  // namespace nlspread::detail
