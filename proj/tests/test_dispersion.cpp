#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nlspread/dispersion.hpp"

using namespace nlspread;
using namespace nlspread::testing;

TEST_CASE("A and B evaluations") {
    const Kernel n05 = Kernel::normal(0.5, 1.0);
    CHECK(eval_A(n05, 0.2, 0.0) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(eval_A(n05, 0.2, -0.5) ==
          doctest::Approx(std::exp(-0.125) - 1.2).epsilon(1e-14));  // -0.317503...
    const Kernel dirac = Kernel::dirac();
    for (double l : {-3.0, 0.0, 1.0, 11.0}) CHECK(eval_B(dirac, 0.3, l) == -0.3);
}

TEST_CASE("D and c") {
    const ModelParams p = uniform_app_params();  // g'h' = 0.06
    const Kernel k1 = Kernel::uniform(-1.0, 2.0);
    const Kernel k2 = Kernel::uniform(-1.0, 1.0);

    SUBCASE("independent re-evaluation of the formula at lambda = 0.5") {
        const double A = (std::exp(1.0) - std::exp(-0.5)) / 1.5 - 1.2;
        const double B = (std::exp(0.5) - std::exp(-0.5)) / 1.0 - 1.2;
        const double D = 0.5 * (A + B + std::sqrt((A - B) * (A - B) + 0.24));
        CHECK(D == doctest::Approx(0.33066542086210921).epsilon(1e-14));
        CHECK(eval_D(p, k1, k2, 0.5) == doctest::Approx(D).epsilon(1e-14));
        CHECK(eval_c(p, k1, k2, 0.5) == doctest::Approx(2.0 * D).epsilon(1e-14));
    }
    SUBCASE("D(0) is positive under alpha*beta < g'(0)h'(0)") {
        const double d0 = eval_D(p, k1, k2, 0.0);
        CHECK(d0 == doctest::Approx(0.5 * (-0.4 + std::sqrt(0.24))).epsilon(1e-14));
        CHECK(d0 > 0.0);
    }
    SUBCASE("lambda = 0 is rejected for c") {
        CHECK_THROWS_AS((void)eval_c(p, k1, k2, 0.0), DomainError);
    }
    SUBCASE("odd symmetry for symmetric kernels") {
        const ModelParams ps = symmetric_params_05();
        const Kernel s = Kernel::normal(0.0, 1.0);
        for (double l : {0.1, 0.35, 0.8, 1.9})
            CHECK(std::abs(eval_c(ps, s, s, l) + eval_c(ps, s, s, -l)) < 1e-12);
    }
}

TEST_CASE("locate_speeds: symmetric normal kernels vs grid search") {
    const ModelParams p = symmetric_params_05();
    const Kernel k = Kernel::normal(0.0, 1.0);
    const SpeedProfile prof = locate_speeds(p, k, k);

    CHECK(prof.c_r == doctest::Approx(0.82323702054960723).epsilon(1e-10));
    CHECK(prof.lambda_r == doctest::Approx(0.66147379350991309).epsilon(1e-7));
    CHECK(prof.c_r == doctest::Approx(-prof.c_l).epsilon(1e-9));
    CHECK(prof.lambda_r == doctest::Approx(-prof.lambda_l).epsilon(1e-9));
    CHECK(prof.classification == Propagation::Bidirectional);
    CHECK(!prof.lambda_set.has_value());

    const auto [gl, gc] = grid_min_c(p, k, k, 5.0, 1e-5);
    CHECK(std::abs(gl - prof.lambda_r) < 1e-4);
    CHECK(std::abs(gc - prof.c_r) < 1e-4);
}

TEST_CASE("locate_speeds: degenerate second kernel") {
    const ModelParams p = symmetric_params_05();
    const Kernel k1 = Kernel::normal(0.0, 1.0);
    const Kernel k2 = Kernel::dirac();
    const SpeedProfile prof = locate_speeds(p, k1, k2);
    CHECK(prof.c_r == doctest::Approx(0.65080341568130295).epsilon(1e-10));
    CHECK(prof.lambda_r == doctest::Approx(0.75030836836831083).epsilon(1e-7));
    const auto [gl, gc] = grid_min_c(p, k1, k2, 4.0, 1e-5);
    CHECK(std::abs(gl - prof.lambda_r) < 1e-4);
    CHECK(std::abs(gc - prof.c_r) < 1e-4);
}

TEST_CASE("locate_speeds: critical configuration has a vanishing left speed") {
    // At the converged critical mobility of the normal-kernel application
    // the left speed vanishes; at the nearby reference value 2.2098 it is
    // already about -2e-3 (see sigma_star tests).
    const ModelParams p = normal_app_params();
    const Kernel k1 = Kernel::normal(0.5, 1.0);
    const SpeedProfile prof = locate_speeds(p, k1, Kernel::normal(0.0, 2.1348532339738684));
    CHECK(std::abs(prof.c_l) < 1e-3);
    CHECK(prof.c_r > 0.0);
}

TEST_CASE("locate_speeds rejects a fully degenerate pair") {
    const ModelParams p = symmetric_params_05();
    CHECK_THROWS_AS((void)locate_speeds(p, Kernel::dirac(), Kernel::dirac()), BracketFailure);
}

TEST_CASE("lambda_set") {
    SUBCASE("symmetric kernels give the empty set") {
        const ModelParams p = symmetric_params_05();
        const Kernel k = Kernel::normal(0.0, 1.0);
        CHECK(!lambda_set(p, k, k).has_value());
    }
    SUBCASE("normal application, sigma = 1: interval on the negative axis") {
        const ModelParams p = normal_app_params();
        const auto iv = lambda_set(p, Kernel::normal(0.5, 1.0), Kernel::normal(0.0, 1.0));
        REQUIRE(iv.has_value());
        CHECK(iv->hi < 0.0);
        CHECK(iv->lo == doctest::Approx(-0.202708335086081).epsilon(1e-6));
        CHECK(iv->hi == doctest::Approx(-0.047929490685558566).epsilon(1e-6));

        // Grid-scan oracle: A*B - g'h' changes sign exactly at the endpoints.
        const Kernel k1 = Kernel::normal(0.5, 1.0), k2 = Kernel::normal(0.0, 1.0);
        const auto f = [&](double l) {
            return eval_A(k1, p.alpha(), l) * eval_B(k2, p.beta(), l) - p.gp0() * p.hp0();
        };
        CHECK(f(iv->lo - 1e-5) < 0.0);
        CHECK(f(iv->lo + 1e-5) > 0.0);
        CHECK(f(iv->hi - 1e-5) > 0.0);
        CHECK(f(iv->hi + 1e-5) < 0.0);
    }
    SUBCASE("normal application, sigma = 4: empty set") {
        const ModelParams p = normal_app_params();
        CHECK(!lambda_set(p, Kernel::normal(0.5, 1.0), Kernel::normal(0.0, 4.0)).has_value());
    }
}

TEST_CASE("classify_propagation mapping") {
    CHECK(classify_propagation(std::nullopt) == Propagation::Bidirectional);
    CHECK(classify_propagation(LambdaInterval{-0.9, -0.3}) == Propagation::RightOnly);
    CHECK(classify_propagation(LambdaInterval{0.3, 0.9}) == Propagation::LeftOnly);
    CHECK(classify_propagation(LambdaInterval{0.7, 0.7}) == Propagation::CriticalRight);
    CHECK(classify_propagation(LambdaInterval{-0.7, -0.7}) == Propagation::CriticalLeft);
}

TEST_CASE("G, H and the b coefficient") {
    const ModelParams p = symmetric_params_05();
    const Kernel k = Kernel::normal(0.0, 1.0);

    // G(c,0) = alpha regardless of c.
    for (double c : {-2.0, 0.0, 3.5}) CHECK(eval_G(c, 0.0, k, 0.2) == doctest::Approx(0.2));

    for (double l : {-1.2, -0.4, 0.3, 0.9, 1.6}) {
        const double c = eval_c(p, k, k, l);
        const double G = eval_G(c, l, k, p.alpha());
        const double H = eval_H(c, l, k, p.beta());
        const double b = b_coefficient(p, k, k, l);
        CHECK(std::abs(G * H - p.gp0() * p.hp0()) < 1e-10);
        CHECK(std::abs(G - p.hp0() * b) < 1e-10);
        CHECK(std::abs(b - b_coefficient(p, k, k, -l)) < 1e-12);
        CHECK(b > 0.0);
    }

    // Asymmetric case: the product identity still holds.
    const ModelParams pu = uniform_app_params();
    const Kernel k1 = Kernel::uniform(-1.0, 2.0), k2 = Kernel::uniform(-0.4, 0.4);
    for (double l : {-0.8, -0.2, 0.5, 1.1}) {
        const double c = eval_c(pu, k1, k2, l);
        CHECK(std::abs(eval_G(c, l, k1, pu.alpha()) * eval_H(c, l, k2, pu.beta()) -
                       pu.gp0() * pu.hp0()) < 1e-10);
    }
}

TEST_CASE("perturbed speeds") {
    const ModelParams p = symmetric_params_05();
    const Kernel k = Kernel::normal(0.0, 1.0);
    const SpeedProfile prof = locate_speeds(p, k, k);

    SUBCASE("eta -> 0 recovers the unperturbed speeds") {
        const auto [cl, cr] = perturbed_speeds(p, k, k, 1e-8);
        CHECK(std::abs(cl - prof.c_l) < 1e-5);
        CHECK(std::abs(cr - prof.c_r) < 1e-5);
    }
    SUBCASE("ordering holds for random eta") {
        // admissible range: eta < 0.3 keeps alpha*beta < (0.5-eta)^2
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> unif(1e-6, 0.3 - 1e-3);
        for (int i = 0; i < 20; ++i) {
            const auto [cl, cr] = perturbed_speeds(p, k, k, unif(rng));
            CHECK(prof.c_l < cl);
            CHECK(cl < cr);
            CHECK(cr < prof.c_r);
        }
    }
    SUBCASE("symmetric pair at eta = min/2") {
        const auto [cl, cr] = perturbed_speeds(p, k, k, 0.25);
        CHECK(cr == doctest::Approx(0.32003625703964622).epsilon(1e-10));
        CHECK(std::abs(cl + cr) < 1e-9);
    }
    SUBCASE("out-of-range eta") {
        CHECK_THROWS_AS((void)perturbed_speeds(p, k, k, 0.0), DomainError);
        CHECK_THROWS_AS((void)perturbed_speeds(p, k, k, 0.5), DomainError);
        // inside (0, min slope) but the perturbed product drops below
        // alpha*beta, so the extrema cease to exist
        CHECK_THROWS_AS((void)perturbed_speeds(p, k, k, 0.4), DomainError);
    }
}

TEST_CASE("gh_interval") {
    const ModelParams p = uniform_app_params();
    const Kernel k1 = Kernel::uniform(-1.0, 2.0), k2 = Kernel::uniform(-0.4, 0.4);
    const SpeedProfile prof = locate_speeds(p, k1, k2);
    const double eta = 0.01;
    const auto [cl_eta, cr_eta] = perturbed_speeds(p, k1, k2, eta);

    SUBCASE("interior sampling on the uniform application") {
        const double c = 0.5 * (cr_eta + prof.c_r);
        const auto [gamma, zeta] = gh_interval(p, k1, k2, c, eta, Side::Right);
        CHECK(gamma > 0.0);
        CHECK(zeta > gamma);
        const double thr = (p.gp0() - eta) * (p.hp0() - eta);
        const double rg = eval_G(c, gamma, k1, p.alpha()) * eval_H(c, gamma, k2, p.beta());
        const double rz = eval_G(c, zeta, k1, p.alpha()) * eval_H(c, zeta, k2, p.beta());
        CHECK(rg == doctest::Approx(thr).epsilon(1e-8));
        CHECK(rz == doctest::Approx(thr).epsilon(1e-8));
    }
    SUBCASE("window shrinks toward the perturbed extremum") {
        const double w_near = [&] {
            const double c = cr_eta + 1e-6 * (prof.c_r - cr_eta);
            const auto [g, z] = gh_interval(p, k1, k2, c, eta, Side::Right);
            return z - g;
        }();
        const double w_far = [&] {
            const double c = cr_eta + 0.9 * (prof.c_r - cr_eta);
            const auto [g, z] = gh_interval(p, k1, k2, c, eta, Side::Right);
            return z - g;
        }();
        CHECK(w_near < 0.1 * w_far);
    }
    SUBCASE("symmetric kernels mirror the window") {
        const ModelParams ps = symmetric_params_05();
        const Kernel k = Kernel::normal(0.0, 1.0);
        const SpeedProfile sp = locate_speeds(ps, k, k);
        const auto [scl, scr] = perturbed_speeds(ps, k, k, eta);
        const double cr = 0.5 * (scr + sp.c_r);
        const auto [g1, z1] = gh_interval(ps, k, k, cr, eta, Side::Right);
        const auto [z2, g2] = gh_interval(ps, k, k, -cr, eta, Side::Left);
        CHECK(g1 == doctest::Approx(-g2).epsilon(1e-9));
        CHECK(z1 == doctest::Approx(-z2).epsilon(1e-9));
    }
    SUBCASE("out-of-band c is rejected") {
        CHECK_THROWS_AS((void)gh_interval(p, k1, k2, prof.c_r + 0.1, eta, Side::Right),
                        DomainError);
        CHECK_THROWS_AS((void)gh_interval(p, k1, k2, cr_eta - 1e-9, eta, Side::Right),
                        DomainError);
    }
}

TEST_CASE("auxiliary positivity window") {
    SUBCASE("boundary M^2 = 4LN gives a vanishing sup") {
        const AuxWindow w = aux_positivity_window(1.0, 0.5, 0.5, 0.5);
        CHECK(w.fmax == 0.0);
        CHECK(!w.lo.has_value());
    }
    SUBCASE("M=1, N=L=0.25 sits strictly above the boundary") {
        // 4LN = 0.25 < 1 = M^2, so the sup is positive.
        const AuxWindow w = aux_positivity_window(1.0, 0.25, 0.25, 0.5);
        CHECK(w.fmax > 0.0);
        CHECK(w.lo.has_value());
    }
    SUBCASE("closed-form roots at M=2, N=L=0.25, delta=0.5") {
        const AuxWindow w = aux_positivity_window(2.0, 0.25, 0.25, 0.5);
        const double disc = std::sqrt(4.0 - 0.25);
        const double R = std::pow((2.0 - disc) / 0.5, 2.0);
        const double S = std::pow((2.0 + disc) / 0.5, 2.0);
        REQUIRE(w.lo.has_value());
        CHECK(*w.lo == doctest::Approx(R).epsilon(1e-12));
        CHECK(*w.hi == doctest::Approx(S).epsilon(1e-12));
        const auto f = [](double y) {
            return 2.0 * y - 0.25 * std::pow(y, 1.5) - 0.25 * std::pow(y, 0.5);
        };
        CHECK(std::abs(f(R)) < 1e-10);
        CHECK(std::abs(f(S)) < 1e-10);
        CHECK(f(0.5 * (R + S)) > 0.0);
        CHECK(w.fmax >= f(0.5 * (R + S)));
        // Grid search confirms the sup location/value.
        double fbest = 0.0;
        for (double y = R; y <= S; y += (S - R) / 20000.0) fbest = std::max(fbest, f(y));
        CHECK(w.fmax == doctest::Approx(fbest).epsilon(1e-6));
    }
    SUBCASE("sup and window vanish together along a path") {
        double prev_fmax = 1e300, prev_width = 1e300;
        for (double L : {0.9, 0.99, 0.999, 0.9999}) {
            const AuxWindow w = aux_positivity_window(2.0, 1.0, L, 0.3);
            REQUIRE(w.lo.has_value());
            const double width = *w.hi - *w.lo;
            CHECK(w.fmax < prev_fmax);
            CHECK(width < prev_width);
            prev_fmax = w.fmax;
            prev_width = width;
        }
    }
}

TEST_CASE("dispersion invariants on random scenarios") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const RandomScenario sc = random_scenario(rng);
        const SpeedProfile prof = locate_speeds(sc.params, sc.k1, sc.k2);
        CHECK(prof.c_l < prof.c_r);

        // Local-minimum certificate on the right, mirrored on the left.
        CHECK(eval_c(sc.params, sc.k1, sc.k2, prof.lambda_r + 0.01) > prof.c_r);
        CHECK(eval_c(sc.params, sc.k1, sc.k2, prof.lambda_r - 0.01) > prof.c_r);
        CHECK(eval_c(sc.params, sc.k1, sc.k2, prof.lambda_l + 0.01) < prof.c_l);
        CHECK(eval_c(sc.params, sc.k1, sc.k2, prof.lambda_l - 0.01) < prof.c_l);

        // Dispersion identity at sampled lambda.
        for (int i = 1; i <= 100; ++i) {
            const double l = prof.lambda_l + (prof.lambda_r - prof.lambda_l) * i / 101.0;
            if (std::abs(l) < 1e-3) continue;
            const double c = eval_c(sc.params, sc.k1, sc.k2, l);
            const double G = eval_G(c, l, sc.k1, sc.params.alpha());
            const double H = eval_H(c, l, sc.k2, sc.params.beta());
            CHECK(std::abs(G * H - sc.params.gp0() * sc.params.hp0()) < 1e-9);
        }

        // Scaling coherence: only the slopes at 0 matter.
        const ModelParams linearized(sc.params.alpha(), sc.params.beta(),
                                     Nonlinearity::saturating(sc.params.gp0() * 1.0 + 0.0,
                                                              sc.params.beta()),
                                     Nonlinearity::saturating(sc.params.hp0(),
                                                              sc.params.alpha()));
        const SpeedProfile prof2 = locate_speeds(linearized, sc.k1, sc.k2);
        CHECK(std::abs(prof2.c_l - prof.c_l) < 1e-12);
        CHECK(std::abs(prof2.c_r - prof.c_r) < 1e-12);
        CHECK(prof2.classification == prof.classification);
    }
}

TEST_CASE("monotone speed on the symmetric branch") {
    const ModelParams p = symmetric_params_05();
    const Kernel k = Kernel::normal(0.0, 1.0);
    const SpeedProfile prof = locate_speeds(p, k, k);
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
        const double l = prof.lambda_r * i / 101.0;
        const double c = eval_c(p, k, k, l);
        CHECK(c < prev);
        CHECK(c - prof.c_r >= 0.0);
        prev = c;
    }
}
