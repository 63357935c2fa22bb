#pragma once

#include <vector>

#include "nlspread/grid.hpp"

namespace nlspread {

enum class InitialKind { CompactBump, ExponentialTail, Custom };

// Initial concentrations (u0, v0), values in [0,1].
class InitialData {
public:
    // height * cos^2(pi (x-center) / (2 halfwidth)) inside the support:
    // symmetric, nonincreasing away from the center, compactly supported.
    static InitialData bump(double center, double halfwidth, double height);

    // amplitude * e^{-decay |x-center|} outside the plateau, the matching
    // constant inside |x-center| <= plateau_halfwidth.
    static InitialData exponential_tail(double decay, double amplitude, double plateau_halfwidth,
                                        double center);

    // Piecewise-linear profiles through (xs, us) and (xs, vs), clamped to
    // [0,1] and to 0 outside the given range.
    static InitialData custom(std::vector<double> xs, std::vector<double> us,
                              std::vector<double> vs);

    void fill(const Grid& g, std::vector<double>& u, std::vector<double>& v) const;

    InitialKind kind() const { return kind_; }
    double center() const { return center_; }
    double decay() const { return decay_; }

private:
    InitialData() = default;
    double value_u(double x) const;
    double value_v(double x) const;

    InitialKind kind_ = InitialKind::CompactBump;
    double center_ = 0.0;
    double halfwidth_ = 0.0;
    double height_ = 0.0;
    double decay_ = 0.0;
    double amplitude_ = 0.0;
    std::vector<double> xs_, us_, vs_;
};

}  // namespace nlspread
