#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlspread/convolution.hpp"

using namespace nlspread;

namespace {

std::vector<double> random_field(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> f(static_cast<std::size_t>(n));
    for (double& x : f) x = unif(rng);
    return f;
}

}  // namespace

TEST_CASE("point-mass weights act as the identity") {
    const Grid g = Grid::symmetric(5.0, 0.1);
    const TabulatedKernel kw = Kernel::dirac().discretize(0.1);
    ConvolutionEngine eng(kw, g, ConvolutionEngine::Path::Direct);
    std::mt19937_64 rng(3);
    const auto f = random_field(rng, g.n);
    std::vector<double> out(f.size());
    eng.apply(f, out);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(out[i] == f[i]);
}

TEST_CASE("unit mass: constant field maps to 1 away from the boundary") {
    const Grid g = Grid::symmetric(30.0, 0.05);
    const TabulatedKernel kw = Kernel::normal(0.3, 1.0).discretize(0.05);
    ConvolutionEngine eng(kw, g, ConvolutionEngine::Path::Spectral);
    std::vector<double> f(static_cast<std::size_t>(g.n), 1.0), out(f.size());
    eng.apply(f, out);
    CHECK(std::abs(out[f.size() / 2] - 1.0) < 1e-12);
    CHECK(std::abs(out[f.size() / 4] - 1.0) < 1e-12);
    // Zero extension bites at the very edge.
    CHECK(out.front() < 0.6);
}

TEST_CASE("direct and spectral paths agree on random data") {
    std::mt19937_64 rng(11);
    for (const Kernel& k :
         {Kernel::normal(0.4, 0.7), Kernel::uniform(-1.2, 0.6), Kernel::dirac()}) {
        const Grid g = Grid::symmetric(25.0, 0.05);
        const TabulatedKernel kw = k.discretize(0.05);
        ConvolutionEngine direct(kw, g, ConvolutionEngine::Path::Direct);
        ConvolutionEngine spectral(kw, g, ConvolutionEngine::Path::Spectral);
        const auto f = random_field(rng, g.n);
        std::vector<double> a(f.size()), b(f.size());
        direct.apply(f, a);
        spectral.apply(f, b);
        double diff = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
        CHECK(diff < 1e-10);
    }
}

TEST_CASE("spacing mismatch is rejected") {
    const Grid g = Grid::symmetric(5.0, 0.1);
    const TabulatedKernel kw = Kernel::normal(0.0, 1.0).discretize(0.05);
    CHECK_THROWS_AS(ConvolutionEngine(kw, g), GridMismatch);
}

TEST_CASE("direct path is exactly translation equivariant") {
    const Grid g = Grid::symmetric(20.0, 0.1);
    const TabulatedKernel kw = Kernel::uniform(-0.5, 1.0).discretize(0.1);
    ConvolutionEngine eng(kw, g, ConvolutionEngine::Path::Direct);
    std::mt19937_64 rng(7);
    auto f = random_field(rng, g.n);
    // zero the edges so the shift does not move mass across the boundary
    for (int i = 0; i < 40; ++i) {
        f[static_cast<std::size_t>(i)] = 0.0;
        f[f.size() - 1 - static_cast<std::size_t>(i)] = 0.0;
    }
    std::vector<double> shifted(f.size(), 0.0);
    const int m = 9;
    for (std::size_t i = 0; i + m < f.size(); ++i) shifted[i + m] = f[i];

    std::vector<double> a(f.size()), b(f.size());
    eng.apply(f, a);
    eng.apply(shifted, b);
    for (std::size_t i = 30; i + 30 + m < f.size(); ++i) CHECK(b[i + m] == a[i]);
}

TEST_CASE("reflection equivariance within 1e-12") {
    const Grid g = Grid::symmetric(20.0, 0.1);
    const Kernel k = Kernel::uniform(-0.5, 1.0);
    const TabulatedKernel kw = k.discretize(0.1);
    const TabulatedKernel kwr = k.reflected().discretize(0.1);
    ConvolutionEngine eng(kw, g, ConvolutionEngine::Path::Spectral);
    ConvolutionEngine engr(kwr, g, ConvolutionEngine::Path::Spectral);
    std::mt19937_64 rng(13);
    const auto f = random_field(rng, g.n);
    std::vector<double> fr(f.rbegin(), f.rend());
    std::vector<double> a(f.size()), b(f.size());
    eng.apply(f, a);
    engr.apply(fr, b);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(b[f.size() - 1 - i] - a[i]) < 1e-12);
}
