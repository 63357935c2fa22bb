#include "nlspread/model_params.hpp"

#include <cmath>
#include <string>

namespace nlspread {

namespace {
constexpr int kGridPoints = 1000;
}

ModelParams::ModelParams(double alpha, double beta, Nonlinearity g, Nonlinearity h)
    : alpha_(alpha), beta_(beta), g_(std::move(g)), h_(std::move(h)) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("alpha and beta must be positive");
    if (g_(0.0) != 0.0 || h_(0.0) != 0.0) throw DomainError("g(0) and h(0) must vanish");
    if (std::abs(h_(1.0) - alpha) > 1e-10)
        throw DomainError("h(1) must equal alpha (got " + std::to_string(h_(1.0)) + ")");
    if (std::abs(g_(1.0) - beta) > 1e-10)
        throw DomainError("g(1) must equal beta (got " + std::to_string(g_(1.0)) + ")");
    if (!(alpha * beta < g_.slope0() * h_.slope0()))
        throw DomainError("alpha*beta must be below g'(0)h'(0)");

    // Sublinearity and monotonicity on an interior grid.
    const auto check_shape = [&](const Nonlinearity& f, const char* name) {
        double prev = 0.0;
        for (int i = 1; i < kGridPoints; ++i) {
            const double x = static_cast<double>(i) / kGridPoints;
            const double y = f(x);
            if (!(y > 0.0) || y > f.slope0() * x + 1e-12)
                throw DomainError(std::string(name) + " violates 0 < f(x) <= f'(0)x at x=" +
                                  std::to_string(x));
            if (y < prev - 1e-12)
                throw DomainError(std::string(name) + " is not nondecreasing at x=" +
                                  std::to_string(x));
            prev = y;
        }
    };
    check_shape(g_, "g");
    check_shape(h_, "h");

    for (int i = 1; i < kGridPoints; ++i) {
        const double s = static_cast<double>(i) / kGridPoints;
        if (!(h_(g_(s) / beta) - alpha * s > 0.0))
            throw DomainError("h(g(s)/beta) - alpha*s must be positive on (0,1); fails at s=" +
                              std::to_string(s));
    }
}

}  // namespace nlspread
