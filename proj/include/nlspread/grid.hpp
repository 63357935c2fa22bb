#pragma once

#include <vector>

#include "nlspread/errors.hpp"

namespace nlspread {

// Uniform spatial lattice x_i = x0 + i*dx, i = 0..n-1.
struct Grid {
    double x0 = 0.0;
    double dx = 0.0;
    int n = 0;

    double x(int i) const { return x0 + static_cast<double>(i) * dx; }
    double right_edge() const { return x(n - 1); }

    // Symmetric grid covering [-halfwidth, halfwidth]; the origin is a
    // lattice point so kernel tables align with it.
    static Grid symmetric(double halfwidth, double dx);
};

struct FieldState {
    double t = 0.0;
    std::vector<double> u, v;
};

}  // namespace nlspread
