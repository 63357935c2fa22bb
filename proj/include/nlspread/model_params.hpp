#pragma once

#include "nlspread/errors.hpp"
#include "nlspread/nonlinearity.hpp"

namespace nlspread {

// Death rates and reaction nonlinearities of the two-component system
//   u_t = k1*u - u - alpha*u + h(v)
//   v_t = k2*v - v - beta*v  + g(u).
// Construction enforces the monostability hypotheses:
//   g(0)=h(0)=0, h(1)=alpha, g(1)=beta, h(g(s)/beta) > alpha*s on (0,1),
//   0 < g(u) <= g'(0)u and g nondecreasing on (0,1) (same for h),
//   alpha*beta < g'(0)h'(0).
class ModelParams {
public:
    ModelParams(double alpha, double beta, Nonlinearity g, Nonlinearity h);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const Nonlinearity& g() const { return g_; }
    const Nonlinearity& h() const { return h_; }
    double gp0() const { return g_.slope0(); }
    double hp0() const { return h_.slope0(); }

private:
    double alpha_, beta_;
    Nonlinearity g_, h_;
};

}  // namespace nlspread
