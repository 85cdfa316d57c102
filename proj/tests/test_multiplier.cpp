// Laplace-transform-type multipliers: closed forms, agreement of the three
// integral routes, localized imaginary powers, the admissibility probe, and
// the frequency-independent square time integral.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "oucalc/hermite.hpp"
#include "oucalc/multiplier.hpp"

using namespace ouc;

TEST_CASE("exponential-decay symbol has the rational closed form") {
    MultiplierSymbol sym = symbol_exp_decay();
    // phi(lambda) = int (t lambda)^2 e^{-t(1 + lambda)} dt/t = lambda^2/(1 + lambda)^2
    for (int lam : {1, 2, 5, 10, 40}) {
        const double oracle = double(lam) * lam / ((1.0 + lam) * (1.0 + lam));
        CHECK(std::abs(phi_from_symbol(sym, lam) - Complex(oracle)) <= 1e-10);
    }
    CHECK(std::abs(phi_from_symbol(sym, 1) - Complex(0.25)) <= 1e-10);
    CHECK(phi_from_symbol(sym, 0) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(phi_from_symbol(sym, -1), std::invalid_argument);
}

TEST_CASE("unit symbol yields the unit multiplier away from zero") {
    MultiplierSymbol one = symbol_one();
    for (int lam : {1, 3, 17, 40})
        CHECK(std::abs(phi_from_symbol(one, lam) - Complex(1.0)) <= 1e-8);
    CHECK(std::abs(phi_from_symbol(one, 0)) == 0.0);
}

TEST_CASE("the three integral routes agree on the decaying symbol") {
    MultiplierSymbol sym = symbol_exp_decay();
    for (int lam : {1, 4, 12, 40}) {
        const Complex a = phi_from_symbol(sym, lam);
        const Complex b = phi_laplace_form(sym, lam);
        const Complex c = phi_ibp_route(sym, lam);
        CHECK(std::abs(a - b) <= 1e-8);
        CHECK(std::abs(a - c) <= 1e-6);
    }
}

TEST_CASE("localized imaginary powers: cutoff sandwich and route agreement") {
    for (double tau : {0.5, 1.0, 2.0}) {
        MultiplierSymbol sym = localized_imaginary_power(tau);
        // t^{i tau} on (0, 1], zero beyond the cutoff, modulus <= 1 between
        const Complex at_half = std::exp(Complex(0.0, tau * std::log(0.5)));
        CHECK(std::abs(sym.phi0(0.5) - at_half) <= 1e-15);
        CHECK(std::abs(sym.phi0(2.5)) == 0.0);
        CHECK(std::abs(sym.phi0(1.5)) <= 1.0);

        for (int lam : {1, 7, 25}) {
            const Complex a = phi_from_symbol(sym, lam);
            const Complex b = phi_laplace_form(sym, lam);
            CHECK(std::isfinite(std::abs(a)));
            CHECK(std::abs(a - b) <= 1e-7);
        }
    }

    // a cutoff that dips below 1 on (0, 1] violates the sandwich
    SmoothCutoff bad = SmoothCutoff::quintic();
    auto base = bad.chi;
    bad.chi = [base](double t) { return 0.9 * base(t); };
    CHECK_THROWS_AS(localized_imaginary_power(1.0, bad), std::invalid_argument);
}

TEST_CASE("symbol registry parses labels and rejects unknown ones") {
    CHECK(symbol_from_label("one").label == "one");
    CHECK(symbol_from_label("exp-decay").label == "exp-decay");
    MultiplierSymbol im = symbol_from_label("imag-power:tau=1.5");
    const Complex at_half = std::exp(Complex(0.0, 1.5 * std::log(0.5)));
    CHECK(std::abs(im.phi0(0.5) - at_half) <= 1e-15);

    CHECK_THROWS_AS(symbol_from_label("nope"), std::invalid_argument);
    CHECK_THROWS_AS(symbol_from_label("imag-power:tau=abc"), std::invalid_argument);
}

TEST_CASE("admissibility probe separates decaying and imaginary-power symbols") {
    MultiplierCheck decay = multiplier_condition(symbol_exp_decay());
    CHECK(decay.finite);
    CHECK(decay.near_zero_finite);
    CHECK(decay.sup_term >= 1.0);  // |Phi| alone reaches 1 at t -> 0

    // t^{i tau}: |Phi'| ~ tau/t is not integrable near zero
    MultiplierCheck imag = multiplier_condition(localized_imaginary_power(1.0));
    CHECK(imag.finite);
    CHECK(!imag.near_zero_finite);
    CHECK(std::isinf(imag.near_zero_integral));
}

TEST_CASE("square time integral is independent of the frequency") {
    for (double dp : {0.25, 0.5}) {
        const double oracle = 1.0 / (8.0 * dp * dp);
        for (int k = 1; k <= 20; ++k) {
            const double v = uniform_square_time_integral(k, dp);
            CHECK(std::abs(v - oracle) <= 1e-8 * oracle);
        }
    }
    CHECK_THROWS_AS(uniform_square_time_integral(0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(uniform_square_time_integral(1, 0.0), std::invalid_argument);
}

TEST_CASE("inconsistent derivative triples are rejected at construction") {
    CHECK_THROWS_AS(MultiplierSymbol(
                        "bad", [](double) { return Complex(1.0, 0.0); },
                        [](double) { return Complex(1.0, 0.0); },  // claims Phi' = 1
                        [](double) { return Complex(0.0, 0.0); }),
                    std::invalid_argument);
    CHECK_THROWS_AS(MultiplierSymbol("empty", nullptr, nullptr, nullptr),
                    std::invalid_argument);
}

TEST_CASE("the multiplier table drives the spectral application") {
    MultiplierSymbol sym = symbol_exp_decay();
    std::vector<Complex> tab = phi_table(sym, 6);
    REQUIRE(tab.size() == 7);
    CHECK(tab[0] == Complex(0.0, 0.0));

    SpectralCoeffs c;
    c.dimension = 1;
    c.truncation_degree = 6;
    c.basis = multi_index_enum(1, 6);
    c.coeff.assign(c.basis.size(), Complex(1.0, 0.0));
    SpectralCoeffs fc = apply_multiplier(c, sym);
    for (std::size_t i = 0; i < fc.size(); ++i)
        CHECK(std::abs(fc.coeff[i] - tab[fc.basis[i].degree()]) <= 1e-14);
}
