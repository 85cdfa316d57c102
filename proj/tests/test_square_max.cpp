// Conical square function, admissible maximal function, weighted L^1 norms,
// and the Gaussian tent-space norm with its atoms.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "oucalc/gaussian.hpp"
#include "oucalc/hermite.hpp"
#include "oucalc/square_max.hpp"

using namespace ouc;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

SpectralCoeffs unit_mode(int dim, int N, int k) {
    SpectralCoeffs c;
    c.dimension = dim;
    c.truncation_degree = N;
    c.basis = multi_index_enum(dim, N);
    c.coeff.assign(c.basis.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < c.basis.size(); ++i)
        if (c.basis[i].degree() == k) {
            c.coeff[i] = Complex(1.0, 0.0);
            break;
        }
    return c;
}

SpectralCoeffs random_coeffs(int dim, int N, std::uint64_t seed) {
    SpectralCoeffs c = unit_mode(dim, N, 0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : c.coeff) z = Complex(u(rng), u(rng));
    return c;
}

}  // namespace

TEST_CASE("square function annihilates constants, maximal function keeps them") {
    SpectralCoeffs c0 = unit_mode(1, 0, 0);
    CHECK(square_function(c0, Point(0.3)) <= 1e-14);
    CHECK(square_function_detailed(c0, Point(-2.0)).value <= 1e-14);
    CHECK(std::abs(maximal_function(c0, Point(1.2), 0.01) - 1.0) <= 1e-12);
}

TEST_CASE("maximal function of one mode is exact at the window edge") {
    // e^{-t}|h_1(x)| decreases in t, so the sup sits at t = eps m(x)^2,
    // which the log grid contains exactly
    SpectralCoeffs c1 = unit_mode(1, 1, 1);
    const double x = 0.7;  // m(x) = 1, window [0.01, 1]
    const double expected = std::exp(-0.01) * std::abs(hermite_eval(1, x));
    const double got = maximal_function(c1, Point(x), 0.01);
    CHECK(std::abs(got - expected) <= 1e-12 * expected);

    CHECK_THROWS_AS(maximal_function(c1, Point(x), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(maximal_function(c1, Point(x), 0.01, 1), std::invalid_argument);
}

TEST_CASE("family evaluations match the single-vector paths") {
    std::vector<SpectralCoeffs> fs = {unit_mode(1, 8, 1), unit_mode(1, 8, 3),
                                      random_coeffs(1, 8, 21)};
    const Point x(0.5);

    std::vector<SquareEval> sq = square_function_family(fs, x);
    std::vector<double> mx = maximal_function_family(fs, x, 0.01);
    REQUIRE(sq.size() == 3);
    REQUIRE(mx.size() == 3);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const SquareEval single = square_function_detailed(fs[i], x);
        CHECK(std::abs(sq[i].value - single.value) <= 1e-12 * std::max(1.0, single.value));
        CHECK(std::abs(mx[i] - maximal_function(fs[i], x, 0.01)) <= 1e-12);
    }

    // mixed bases are rejected
    std::vector<SpectralCoeffs> mixed = {unit_mode(1, 8, 1), unit_mode(1, 6, 1)};
    CHECK_THROWS_AS(square_function_family(mixed, x), std::invalid_argument);
}

TEST_CASE("square function is converged at the default resolution") {
    SpectralCoeffs f = random_coeffs(1, 8, 4);
    SquareEval e = square_function_detailed(f, Point(0.0));
    CHECK(e.value > 0.0);
    CHECK(e.refinement_delta <= 0.01);
}

TEST_CASE("weighted L1 norms against radial closed forms") {
    auto one = [](const Point&) { return Complex(1.0, 0.0); };
    auto absval = [](const Point& p) { return Complex(std::abs(p[0]), 0.0); };

    CHECK(std::abs(weighted_l1_norm(one, L1Weight::unit, 1) - 1.0) <= 1e-10);
    CHECK(std::abs(weighted_l1_norm(one, L1Weight::unit, 2) - 1.0) <= 1e-9);
    // int |x| dgamma = 1/sqrt(pi) in one dimension
    CHECK(std::abs(weighted_l1_norm(absval, L1Weight::unit, 1) - 1.0 / std::sqrt(kPi)) <=
          1e-10);
    // int (1 + log+ |x|) dgamma = 1 + 2/sqrt(pi) int_1^inf log(r) e^{-r^2} dr
    CHECK(std::abs(weighted_l1_norm(one, L1Weight::one_plus_log, 1) - 1.04048934710003) <=
          1e-9);

    // the rule overload reproduces the pointwise overload on the same grid
    QuadratureRule rule = weighted_l1_rule(1);
    GridFunction g;
    g.grid = rule.nodes;
    g.values.assign(rule.size(), Complex(1.0, 0.0));
    CHECK(std::abs(weighted_l1_norm(g, L1Weight::one_plus_log, rule) -
                   weighted_l1_norm(one, L1Weight::one_plus_log, 1)) <= 1e-12);
}

TEST_CASE("space-time samples are validated") {
    SpaceTimeFunction u;
    u.spatial = gauss_hermite_rule(4);
    u.times = {0.1, 0.2};
    u.values.assign(1, std::vector<Complex>(u.spatial.nodes.size(), Complex(1.0, 0.0)));
    CHECK_THROWS_AS(u.validate(), std::invalid_argument);  // one layer, two times

    u.values.assign(2, std::vector<Complex>(u.spatial.nodes.size(), Complex(1.0, 0.0)));
    CHECK_NOTHROW(u.validate());

    u.times = {0.2, 0.1};  // must increase
    CHECK_THROWS_AS(u.validate(), std::invalid_argument);
    u.times = {0.1, 6.0};  // beyond the admissible time range
    CHECK_THROWS_AS(u.validate(), std::invalid_argument);
}

TEST_CASE("saturating atoms validate and violations are detected") {
    Ball b(Point(0.5), 0.4);
    Atom a = make_saturating_atom(b, 24, 60, 1e-6);
    AtomDiagnostics d = atom_validate(a);
    CHECK(d.ball_admissible);
    CHECK(d.support_ok);
    CHECK(d.size_ok);
    CHECK(d.size_slack >= 0.0);
    CHECK(d.size_slack <= 1e-3 * d.size_bound);  // saturated up to the headroom

    // scaling the profile up breaks the size condition
    Atom big = a;
    for (auto& layer : big.profile.values)
        for (auto& v : layer) v *= 10.0;
    AtomDiagnostics dbig = atom_validate(big);
    CHECK(!dbig.size_ok);
    CHECK(dbig.size_value > dbig.size_bound);

    // a nonzero layer past the ball radius breaks the support condition
    Atom late = a;
    late.profile.times.push_back(b.radius * 1.2);
    late.profile.values.emplace_back(late.profile.spatial.nodes.size(), Complex(1.0, 0.0));
    CHECK(!atom_validate(late).support_ok);

    // a ball outside the dyadic 5-admissible family is flagged
    Atom off = make_saturating_atom(Ball(Point(8.0), 3.0), 16, 40, 1e-6);
    CHECK(!atom_validate(off).ball_admissible);

    CHECK_THROWS_AS(make_saturating_atom(b, 24, 60, 1.5), std::invalid_argument);
}

TEST_CASE("tent norm is finite on atoms and grows with the aperture") {
    Atom a = make_saturating_atom(Ball(Point(0.5), 0.4), 24, 60, 1e-6);
    QuadratureRule outer = gauss_hermite_rule(32);
    ConeParams narrow;  // aperture 1
    ConeParams wide;
    wide.aperture = 2.0;

    const double n1 = tent_norm(a.profile, narrow, outer);
    const double n2 = tent_norm(a.profile, wide, outer);
    CHECK(n1 > 0.0);
    CHECK(std::isfinite(n1));
    CHECK(n2 >= n1);

    ConeParams bad;
    bad.aperture = 0.0;
    CHECK_THROWS_AS(tent_norm(a.profile, bad, outer), std::invalid_argument);
}
