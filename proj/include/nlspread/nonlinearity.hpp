#pragma once

#include <span>
#include <vector>

#include "nlspread/errors.hpp"

namespace nlspread {

enum class NonlinForm { Saturating, Linear, Custom };

// Reaction nonlinearity on [0,1] with value(0) = 0 and value(1) = cap.
// The saturating family slope0*x / (1 + (slope0/cap - 1)*x) covers every
// (slope0, cap) combination with slope0 >= cap.
class Nonlinearity {
public:
    static Nonlinearity saturating(double slope0, double cap);
    static Nonlinearity linear(double cap);
    // Monotone cubic interpolant through (xs, ys); xs must start at 0 and end
    // at 1, ys at 0 and cap.
    static Nonlinearity custom(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    void apply(std::span<const double> in, std::span<double> out) const;

    NonlinForm form() const { return form_; }
    double slope0() const { return slope0_; }
    double cap() const { return cap_; }

private:
    Nonlinearity() = default;
    void check_invariants() const;

    NonlinForm form_ = NonlinForm::Linear;
    double slope0_ = 0.0;
    double cap_ = 0.0;
    double q_ = 0.0;  // saturating denominator coefficient

    // Custom form: knots plus monotone (Fritsch-Carlson) tangents.
    std::vector<double> xs_, ys_, ms_;
};

}  // namespace nlspread
