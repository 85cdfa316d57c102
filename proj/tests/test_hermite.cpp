// Normalized Hermite eigenfunctions: closed-form values, recurrence
// stability, orthonormality under the Gaussian rule, multi-index
// enumeration, and the analyze/synthesize round trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "oucalc/gaussian.hpp"
#include "oucalc/hermite.hpp"

using namespace ouc;

TEST_CASE("normalized Hermite values match closed forms") {
    CHECK(hermite_eval(0, 1.7) == 1.0);
    CHECK(std::abs(hermite_eval(1, 1.0) - std::sqrt(2.0)) <= 1e-15);
    // h_2(x) = (2x^2 - 1)/sqrt(2), h_3(x) = (2x^3 - 3x)/sqrt(3)
    for (double x : {-2.0, -0.3, 0.0, 0.7, 2.5}) {
        CHECK(std::abs(hermite_eval(2, x) - (2.0 * x * x - 1.0) / std::sqrt(2.0)) <= 1e-13);
        CHECK(std::abs(hermite_eval(3, x) - (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0)) <=
              1e-13);
    }
    CHECK_THROWS_AS(hermite_eval(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hermite_eval(201, 0.0), std::invalid_argument);
}

TEST_CASE("batch evaluation agrees with single values and stays enveloped") {
    std::vector<double> all = hermite_eval_all(60, 1.9);
    REQUIRE(all.size() == 61);
    for (int k : {0, 1, 7, 23, 60})
        CHECK(std::abs(all[k] - hermite_eval(k, 1.9)) <=
              1e-14 * std::max(1.0, std::abs(all[k])));

    // |h_k(x)| e^{-x^2/2} <= 1.087 for every k, x (recurrence stability)
    for (double x : {0.0, 0.5, 1.9, 4.0, 8.0}) {
        const double damp = std::exp(-x * x / 2.0);
        for (double hv : hermite_eval_all(60, x)) CHECK(std::abs(hv) * damp <= 1.087);
    }
}

TEST_CASE("orthonormality under the Gaussian rule") {
    QuadratureRule r = gauss_hermite_rule(24);
    const int K = 12;
    for (int j = 0; j <= K; ++j)
        for (int k = j; k <= K; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i)
                s += r.weights[i] * hermite_eval(j, r.nodes[i][0]) *
                     hermite_eval(k, r.nodes[i][0]);
            CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) <= 1e-12);
        }
}

TEST_CASE("multi-index enumeration is graded and complete") {
    std::vector<MultiIndex> idx = multi_index_enum(2, 3);
    REQUIRE(idx.size() == 10);  // C(3 + 2, 2)
    CHECK(idx.front().degree() == 0);
    for (std::size_t i = 1; i < idx.size(); ++i)
        CHECK(idx[i - 1].degree() <= idx[i].degree());

    CHECK(multi_index_enum(3, 4).size() == 35);  // C(4 + 3, 3)
    CHECK(multi_index_enum(1, 16).size() == 17);
    CHECK_THROWS_AS(multi_index_enum(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(multi_index_enum(1, -1), std::invalid_argument);
}

TEST_CASE("tensor evaluation multiplies the per-axis factors") {
    MultiIndex beta;
    beta.dimension = 2;
    beta.entries = {2, 1, 0};
    const Point x(0.7, -1.2);
    CHECK(std::abs(hermite_tensor_eval(beta, x) -
                   hermite_eval(2, 0.7) * hermite_eval(1, -1.2)) <= 1e-15);

    MultiIndex wrong;  // dimension 1 against a 2-d point
    CHECK_THROWS_AS(hermite_tensor_eval(wrong, x), std::invalid_argument);
}

namespace {

SpectralCoeffs random_coeffs(int dim, int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralCoeffs c;
    c.dimension = dim;
    c.truncation_degree = N;
    c.basis = multi_index_enum(dim, N);
    c.coeff.resize(c.basis.size());
    for (auto& z : c.coeff) z = Complex(u(rng), u(rng));
    return c;
}

}  // namespace

TEST_CASE("analyze/synthesize round trip recovers random coefficients") {
    for (int dim : {1, 2}) {
        const int N = dim == 1 ? 16 : 6;
        QuadratureRule rule = gauss_hermite_rule(dim == 1 ? 32 : 16, dim);
        SpectralCoeffs c = random_coeffs(dim, N, 42 + dim);

        GridFunction f = synthesize(c, rule.nodes);
        SpectralCoeffs back = analyze(f, rule, N);
        REQUIRE(back.size() == c.size());
        CHECK(!back.best_approximation);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i)
            worst = std::max(worst, std::abs(back.coeff[i] - c.coeff[i]));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("analyze flags best-approximation when the rule is too weak") {
    const int N = 16;
    QuadratureRule rule = gauss_hermite_rule(10);  // exactness 19 < 2N
    GridFunction f;
    f.grid = rule.nodes;
    f.values.assign(rule.size(), Complex(1.0, 0.0));
    CHECK(analyze(f, rule, N).best_approximation);

    // and rejects samples that do not sit on the rule's nodes
    GridFunction g = f;
    g.grid[0] = g.grid[0] + Point(0.5);
    CHECK_THROWS_AS(analyze(g, rule, N), std::invalid_argument);
}

TEST_CASE("pointwise synthesis matches the grid version and indexed access") {
    SpectralCoeffs c = random_coeffs(2, 5, 99);
    const std::vector<Point> grid = {Point(0.0, 0.0), Point(1.1, -0.4), Point(-2.0, 2.0)};
    GridFunction g = synthesize(c, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(g.values[i] - synthesize_at(c, grid[i])) <= 1e-15);

    MultiIndex beta;
    beta.dimension = 2;
    beta.entries = {1, 2, 0};
    bool seen = false;
    for (std::size_t i = 0; i < c.basis.size(); ++i)
        if (c.basis[i] == beta) {
            CHECK(c.at(beta) == c.coeff[i]);
            seen = true;
        }
    CHECK(seen);
    MultiIndex outside;
    outside.dimension = 2;
    outside.entries = {9, 9, 0};
    CHECK_THROWS_AS(c.at(outside), std::out_of_range);
}

TEST_CASE("spectral multipliers scale each mode by its degree factor") {
    SpectralCoeffs c = random_coeffs(1, 8, 5);
    SpectralCoeffs scaled = apply_spectral(c, [](int d) { return Complex(double(d * d)); });
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = c.basis[i].degree();
        CHECK(std::abs(scaled.coeff[i] - c.coeff[i] * (d * d)) <= 1e-15);
    }
}

TEST_CASE("spectral coefficients JSON round trip") {
    SpectralCoeffs c = random_coeffs(2, 4, 123);
    SpectralCoeffs back = SpectralCoeffs::from_json(c.to_json());
    REQUIRE(back.size() == c.size());
    CHECK(back.dimension == c.dimension);
    CHECK(back.truncation_degree == c.truncation_degree);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back.basis[i] == c.basis[i]);
        CHECK(back.coeff[i] == c.coeff[i]);
    }
}
