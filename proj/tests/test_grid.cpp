#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "okas/field_io.hpp"
#include "okas/grid.hpp"
#include "support/ewald_oracle.hpp"

using namespace okas;
using std::numbers::pi;

namespace {

ScalarField random_field(const TorusGrid& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.values()) v = u(rng);
    return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("grid construction rejects bad sizes")
{
    CHECK_THROWS_AS(TorusGrid(2, 12), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(4, 16), std::invalid_argument);
    CHECK_NOTHROW(TorusGrid(3, 8));
}

TEST_CASE("node layout is row-major with first index slowest")
{
    const TorusGrid g(3, 8);
    CHECK(g.flat({1, 2, 3}) == (1 * 8 + 2) * 8 + 3);
    const Vec3 x = g.node(g.flat({0, 0, 1}));
    CHECK(x[0] == doctest::Approx(-0.5));
    CHECK(x[2] == doctest::Approx(-0.5 + 1.0 / 8));
    CHECK(g.flat({-1, 8, 9}) == g.flat({7, 0, 1}));
}

TEST_CASE("wrap and torus distance")
{
    const Vec3 w = wrap({0.75, -0.6, 2.0}, 3);
    CHECK(w[0] == doctest::Approx(-0.25));
    CHECK(w[1] == doctest::Approx(0.4));
    CHECK(w[2] == doctest::Approx(0.0));
    CHECK(torus_distance({0.45, 0, 0}, {-0.45, 0, 0}, 2) == doctest::Approx(0.1));
}

TEST_CASE("constant field transforms to a single mode")
{
    const TorusGrid g(2, 16);
    const SpectralField s = to_spectral(ScalarField::constant(g, 2.5));
    CHECK(std::abs(s.coefficient({0, 0, 0}) - std::complex<double>(2.5)) < 1e-14);
    double rest = 0.0;
    s.for_each_mode([&](const WaveVector& k, const std::complex<double>& c, double) {
        if (k != WaveVector{0, 0, 0}) rest = std::max(rest, std::abs(c));
    });
    CHECK(rest < 1e-14);
}

TEST_CASE("cosine has coefficients one half at plus and minus e1")
{
    for (int d : {2, 3}) {
        const TorusGrid g(d, 16);
        const auto f = ScalarField::sample(g, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
        const SpectralField s = to_spectral(f);
        CHECK(std::abs(s.coefficient({1, 0, 0}) - 0.5) < 1e-14);
        CHECK(std::abs(s.coefficient({-1, 0, 0}) - 0.5) < 1e-14);
        CHECK(std::abs(s.coefficient({0, 1, 0})) < 1e-14);
    }
}

TEST_CASE("coefficients match the torus Fourier integral for a shifted mode")
{
    const TorusGrid g(2, 32);
    // sin(2 pi (2 x1 - x2)) = (e^{i th} - e^{-i th}) / 2i
    const auto f = ScalarField::sample(g, [](const Vec3& x) { return std::sin(2 * pi * (2 * x[0] - x[1])); });
    const SpectralField s = to_spectral(f);
    CHECK(std::abs(s.coefficient({2, -1, 0}) - std::complex<double>(0, -0.5)) < 1e-13);
    CHECK(std::abs(s.coefficient({-2, 1, 0}) - std::complex<double>(0, 0.5)) < 1e-13);
}

TEST_CASE("round trip reproduces values")
{
    std::mt19937_64 rng(7);
    for (int d : {2, 3}) {
        const TorusGrid g(d, d == 2 ? 64 : 16);
        const ScalarField f = random_field(g, rng);
        const ScalarField back = from_spectral(to_spectral(f));
        double err = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
        CHECK(err / norms(f).linf < 1e-12);
    }
}

TEST_CASE("Parseval holds for 100 random fields")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const TorusGrid g(t % 2 ? 2 : 3, t % 2 ? 32 : 8);
        const ScalarField f = random_field(g, rng);
        const double l2 = norms(f).l2;
        CHECK(rel(spectral_l2_sq(to_spectral(f)), l2 * l2) < 1e-10);
    }
}

TEST_CASE("hminus1 of a constant is zero and of cos is 1/(8 pi^2)")
{
    const TorusGrid g(2, 16);
    CHECK(std::abs(hminus1_sq(ScalarField::constant(g, 3.0))) < 1e-28);
    for (int n : {16, 32, 128}) {
        const TorusGrid gn(2, n);
        const auto f = ScalarField::sample(gn, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
        CHECK(rel(hminus1_sq(f), 1.0 / (8 * pi * pi)) < 1e-10);
    }
    const TorusGrid g3(3, 16);
    const auto f3 = ScalarField::sample(g3, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
    CHECK(rel(hminus1_sq(f3), 1.0 / (8 * pi * pi)) < 1e-10);
}

TEST_CASE("hminus1 ignores constants and integer translations")
{
    std::mt19937_64 rng(3);
    for (int d : {2, 3}) {
        const TorusGrid g(d, d == 2 ? 32 : 16);
        const ScalarField f = random_field(g, rng);
        const double base = hminus1_sq(f);
        ScalarField shifted = f;
        shifted += 4.2;
        CHECK(rel(hminus1_sq(shifted), base) < 1e-10);

        ScalarField moved(g);
        for (std::size_t i = 0; i < f.size(); ++i) {
            Index3 idx = g.index(i);
            idx[0] += 3;
            idx[1] -= 5;
            moved[g.flat(idx)] = f[i];
        }
        CHECK(rel(hminus1_sq(moved), base) < 1e-10);
    }
}

TEST_CASE("hminus1 matches the Ewald pairwise oracle")
{
    std::mt19937_64 rng(2024);
    SUBCASE("8x8 grid")
    {
        const TorusGrid g(2, 8);
        for (int t = 0; t < 5; ++t) {
            const auto f = oracle::random_band_limited(2, 2, rng);
            const auto pot = oracle::ewald_potential(g, f);
            CHECK(rel(hminus1_sq(ScalarField(g, pot.density)), pot.quadratic_form) < 1e-6);
        }
    }
    SUBCASE("32x32 grid")
    {
        const TorusGrid g(2, 32);
        const auto f = oracle::random_band_limited(2, 3, rng);
        const auto pot = oracle::ewald_potential(g, f);
        CHECK(rel(hminus1_sq(ScalarField(g, pot.density)), pot.quadratic_form) < 1e-6);
    }
}

TEST_CASE("gradient energy of a cosine")
{
    const TorusGrid g(3, 16);
    const auto f = ScalarField::sample(g, [](const Vec3& x) { return std::cos(2 * pi * (x[0] + 2 * x[2])); });
    // |grad|^2 averages to (2 pi)^2 |k|^2 / 2
    CHECK(rel(gradient_sq_integral(f), 4 * pi * pi * 5 / 2) < 1e-12);
}

TEST_CASE("poisson solve inverts the Laplacian on a mode")
{
    const TorusGrid g(2, 32);
    const auto f = ScalarField::sample(g, [](const Vec3& x) { return 1.0 + std::sin(2 * pi * x[1]); });
    const ScalarField w = poisson_solve(f);
    double err = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        err = std::max(err, std::abs(w[i] - std::sin(2 * pi * g.node(i)[1]) / (4 * pi * pi)));
    }
    CHECK(err < 1e-14);
    CHECK(std::abs(w.mean()) < 1e-15);
}

TEST_CASE("discrete Laplacian symbol on a cosine")
{
    const TorusGrid g(2, 64);
    const auto f = ScalarField::sample(g, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
    const ScalarField lap = discrete_laplacian(f);
    const double h = g.spacing();
    const double symbol = -(2 - 2 * std::cos(2 * pi * h)) / (h * h);
    for (std::size_t i = 0; i < f.size(); i += 97) CHECK(lap[i] == doctest::Approx(symbol * f[i]).epsilon(1e-10));
}

TEST_CASE("norms")
{
    const TorusGrid g(2, 16);
    const Norms z = norms(ScalarField(g));
    CHECK(z.l1 == 0.0);
    CHECK(z.l2 == 0.0);
    CHECK(z.linf == 0.0);
    const Norms c = norms(ScalarField::constant(g, 1.5));
    CHECK(c.l1 == doctest::Approx(1.5));
    CHECK(c.l2 == doctest::Approx(1.5));
    CHECK(c.linf == doctest::Approx(1.5));
    ScalarField half(g);
    for (std::size_t i = 0; i < half.size() / 2; ++i) half[i] = 1.0;
    CHECK(norms(half).l1 == doctest::Approx(0.5));
}

TEST_CASE("perimeter estimate")
{
    const TorusGrid g(2, 128);
    CHECK(perimeter_estimate(ScalarField(g)) == 0.0);

    const auto slab = ScalarField::sample(g, [](const Vec3& x) { return std::abs(x[0]) < 0.125 ? 1.0 : 0.0; });
    CHECK(perimeter_estimate(slab) == doctest::Approx(2.0));

    for (int n : {128, 256}) {
        const TorusGrid gn(2, n);
        const auto disk = ScalarField::sample(gn, [](const Vec3& x) { return std::hypot(x[0], x[1]) < 0.2 ? 1.0 : 0.0; });
        const double p = perimeter_estimate(disk);
        CHECK(p >= 2 * pi * 0.2);
        // staircase of whole cells: Manhattan bound 8r plus up to 4h
        const double slack = n == 128 ? 0.0 : 4 * gn.spacing();
        CHECK(p <= (4 / pi) * 2 * pi * 0.2 + slack + 1e-12);
    }

    ScalarField bad(g);
    bad[3] = 0.5;
    CHECK_THROWS_AS(perimeter_estimate(bad), std::invalid_argument);
}

TEST_CASE("field file round trip")
{
    std::mt19937_64 rng(5);
    const TorusGrid g(3, 8);
    const ScalarField f = random_field(g, rng);
    std::stringstream ss;
    write_field(ss, f);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "OKAS-FIELD v1 d=3 n=8");
    ss.seekg(0);
    const ScalarField back = read_field(ss);
    CHECK(back.grid() == g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

    std::stringstream bad("OKAS-FIELD v2 d=2 n=8\n1 2 3");
    CHECK_THROWS(read_field(bad));
    std::stringstream shortf("OKAS-FIELD v1 d=2 n=8\n1 2 3");
    CHECK_THROWS(read_field(shortf));
}
