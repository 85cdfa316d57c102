#include "oucalc/multiplier.hpp"

#include "oucalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ouc {

namespace {

void check_derivative_consistency(const MultiplierSymbol& s) {
    // Central differences of phi0 against phi1, and of phi1 against phi2,
    // on a log grid avoiding the cutoff kinks at t = 1 and t = 2.
    const int m = 17;
    for (int i = 0; i < m; ++i) {
        const double t = 1e-3 * std::pow(10.0 / 1e-3, (i + 0.37) / (m - 1.0));
        const double h = 1e-5 * t;
        const Complex fd1 = (s.phi0(t + h) - s.phi0(t - h)) / (2.0 * h);
        const Complex v1 = s.phi1(t);
        const double sc1 = std::max({std::abs(v1), std::abs(fd1), 1e-6});
        if (std::abs(fd1 - v1) > 1e-5 * sc1)
            throw std::invalid_argument("MultiplierSymbol: phi1 inconsistent with phi0 at t=" +
                                        std::to_string(t));
        const Complex fd2 = (s.phi1(t + h) - s.phi1(t - h)) / (2.0 * h);
        const Complex v2 = s.phi2(t);
        const double sc2 = std::max({std::abs(v2), std::abs(fd2), 1e-6});
        if (std::abs(fd2 - v2) > 1e-5 * sc2)
            throw std::invalid_argument("MultiplierSymbol: phi2 inconsistent with phi1 at t=" +
                                        std::to_string(t));
    }
}

}  // namespace

MultiplierSymbol::MultiplierSymbol(std::string label_, std::function<Complex(double)> f0,
                                   std::function<Complex(double)> f1,
                                   std::function<Complex(double)> f2)
    : phi0(std::move(f0)), phi1(std::move(f1)), phi2(std::move(f2)), label(std::move(label_)) {
    if (!phi0 || !phi1 || !phi2)
        throw std::invalid_argument("MultiplierSymbol: callables must be set");
    check_derivative_consistency(*this);
}

MultiplierSymbol symbol_one() {
    return MultiplierSymbol(
        "one", [](double) { return Complex(1.0, 0.0); },
        [](double) { return Complex(0.0, 0.0); }, [](double) { return Complex(0.0, 0.0); });
}

MultiplierSymbol symbol_exp_decay() {
    return MultiplierSymbol(
        "exp-decay", [](double t) { return Complex(std::exp(-t), 0.0); },
        [](double t) { return Complex(-std::exp(-t), 0.0); },
        [](double t) { return Complex(std::exp(-t), 0.0); });
}

SmoothCutoff SmoothCutoff::quintic() {
    SmoothCutoff c;
    // chi = 1 - s(t - 1) on [1, 2] with the quintic smoothstep
    // s(u) = 6u^5 - 15u^4 + 10u^3 (C^2 at both ends).
    c.chi = [](double t) {
        if (t <= 1.0) return 1.0;
        if (t >= 2.0) return 0.0;
        const double u = t - 1.0;
        return 1.0 - ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
    };
    c.dchi = [](double t) {
        if (t <= 1.0 || t >= 2.0) return 0.0;
        const double u = t - 1.0;
        return -((30.0 * u - 60.0) * u + 30.0) * u * u;
    };
    c.d2chi = [](double t) {
        if (t <= 1.0 || t >= 2.0) return 0.0;
        const double u = t - 1.0;
        return -((120.0 * u - 180.0) * u + 60.0) * u;
    };
    return c;
}

MultiplierSymbol localized_imaginary_power(double tau, const SmoothCutoff& cutoff) {
    if (!cutoff.chi || !cutoff.dchi || !cutoff.d2chi)
        throw std::invalid_argument("localized_imaginary_power: cutoff callables must be set");
    // Sandwich probe: chi = 1 on (0,1], chi = 0 on [2,inf), 0 <= chi <= 1.
    for (int i = 0; i <= 400; ++i) {
        const double t = 1e-4 * std::pow(1e5 / 1e-4, i / 400.0);
        const double v = cutoff.chi(t);
        if (t <= 1.0 && std::abs(v - 1.0) > 1e-13)
            throw std::invalid_argument("localized_imaginary_power: cutoff must be 1 on (0,1]");
        if (t >= 2.0 && std::abs(v) > 1e-13)
            throw std::invalid_argument("localized_imaginary_power: cutoff must vanish on [2,inf)");
        if (v < -1e-13 || v > 1.0 + 1e-13)
            throw std::invalid_argument("localized_imaginary_power: cutoff must stay in [0,1]");
    }

    std::ostringstream label;
    label << "imag-power:tau=" << tau;
    const Complex itau(0.0, tau);
    auto chi = cutoff.chi;
    auto dchi = cutoff.dchi;
    auto d2chi = cutoff.d2chi;
    auto power = [itau](double t) { return std::exp(itau * std::log(t)); };  // t^{i tau}

    return MultiplierSymbol(
        label.str(),
        [power, chi](double t) { return power(t) * chi(t); },
        [power, chi, dchi, itau](double t) {
            return power(t) * (itau / t * chi(t) + dchi(t));
        },
        [power, chi, dchi, d2chi, itau](double t) {
            const Complex p = power(t);
            return p * (itau * (itau - 1.0) / (t * t) * chi(t) + 2.0 * itau / t * dchi(t) +
                        d2chi(t));
        });
}

MultiplierSymbol symbol_from_label(const std::string& label) {
    if (label == "one") return symbol_one();
    if (label == "exp-decay") return symbol_exp_decay();
    const std::string ascii = "imag-power:tau=";
    const std::string greek = "imag-power:τ=";
    std::string rest;
    if (label.rfind(ascii, 0) == 0)
        rest = label.substr(ascii.size());
    else if (label.rfind(greek, 0) == 0)
        rest = label.substr(greek.size());
    else
        throw std::invalid_argument("symbol_from_label: unknown symbol '" + label + "'");
    std::size_t pos = 0;
    const double tau = std::stod(rest, &pos);
    if (pos != rest.size())
        throw std::invalid_argument("symbol_from_label: bad tau in '" + label + "'");
    return localized_imaginary_power(tau);
}

namespace {

constexpr double kTimeFloor = 1e-8;

Complex checked_symbol_integral(const std::function<Complex(double)>& f, double a, double b,
                                const char* what) {
    // The localized symbols are only C^2 across the cutoff window edges at
    // t = 1 and t = 2; aligning panel boundaries with those seams restores
    // spectral convergence there and costs nothing for smooth symbols.
    double edges[4] = {a, 1.0, 2.0, b};
    Complex coarse(0.0, 0.0), fine(0.0, 0.0);
    for (int i = 0; i < 3; ++i) {
        const double lo = std::clamp(edges[i], a, b);
        const double hi = std::clamp(edges[i + 1], a, b);
        if (!(lo < hi)) continue;
        coarse += integrate_log(f, lo, hi, 8, 16);
        fine += integrate_log(f, lo, hi, 16, 16);
    }
    const double delta = std::abs(coarse - fine) / std::max(std::abs(fine), 1e-300);
    if (delta > 1e-6)
        throw std::runtime_error(std::string(what) + ": quadrature did not converge");
    return fine;
}

double upper_time(int lambda) {
    // e^{-t lambda} (t lambda)^2 < 1e-14 beyond t lambda = 45.
    return std::max(45.0 / std::max(lambda, 1), 4.0);
}

}  // namespace

Complex phi_from_symbol(const MultiplierSymbol& sym, int lambda) {
    if (lambda < 0) throw std::invalid_argument("phi_from_symbol: lambda must be >= 0");
    if (lambda == 0) return Complex(0.0, 0.0);
    const double lam = lambda;
    auto integrand = [&sym, lam](double t) {
        return sym.phi0(t) * (t * lam) * (t * lam) * std::exp(-t * lam) / t;
    };
    return checked_symbol_integral(integrand, kTimeFloor, upper_time(lambda), "phi_from_symbol");
}

Complex phi_laplace_form(const MultiplierSymbol& sym, int lambda) {
    if (lambda < 0) throw std::invalid_argument("phi_laplace_form: lambda must be >= 0");
    if (lambda == 0) return Complex(0.0, 0.0);
    const double lam = lambda;
    auto integrand = [&sym, lam](double t) {
        return (sym.phi0(t) + t * sym.phi1(t)) * std::exp(-t * lam);
    };
    // The integrand is (t Phi)' e^{-t lam}, so the stub below the time floor
    // integrates to a Phi(a) e^{-a lam} + O(lam a^2); dropping it would cost
    // lam * a relative error.
    const Complex head =
        kTimeFloor * sym.phi0(kTimeFloor) * std::exp(-kTimeFloor * lam);
    return lam * (head + checked_symbol_integral(integrand, kTimeFloor, upper_time(lambda),
                                                 "phi_laplace_form"));
}

Complex phi_ibp_route(const MultiplierSymbol& sym, int lambda) {
    if (lambda < 0) throw std::invalid_argument("phi_ibp_route: lambda must be >= 0");
    const double lam = lambda;
    auto integrand = [&sym, lam](double t) {
        return (2.0 * sym.phi1(t) + t * sym.phi2(t)) * std::exp(-t * lam);
    };
    // Lambda-independent integrable envelope; the tail is cut where both the
    // shipped symbols and e^{-t lambda} are negligible.
    const double T = lambda >= 1 ? upper_time(lambda) : 60.0;
    return sym.phi0(kTimeFloor) + checked_symbol_integral(integrand, kTimeFloor, T,
                                                          "phi_ibp_route");
}

std::vector<Complex> phi_table(const MultiplierSymbol& sym, int N) {
    if (N < 0) throw std::invalid_argument("phi_table: N must be >= 0");
    std::vector<Complex> tab(N + 1);
    for (int lam = 0; lam <= N; ++lam) tab[lam] = phi_from_symbol(sym, lam);
    return tab;
}

MultiplierCheck multiplier_condition(const MultiplierSymbol& sym) {
    MultiplierCheck out;
    // sup_t (|Phi| + t |Phi'| + t^2 |Phi''|) probed on a log grid.
    const int m = 1601;
    double sup = 0.0;
    for (int i = 0; i < m; ++i) {
        const double t = 1e-8 * std::pow(1e16, i / (m - 1.0));
        const double v = std::abs(sym.phi0(t)) + t * std::abs(sym.phi1(t)) +
                         t * t * std::abs(sym.phi2(t));
        sup = std::max(sup, v);
    }
    out.sup_term = sup;

    auto density = [&sym](double t) { return std::abs(sym.phi1(t)) + t * std::abs(sym.phi2(t)); };
    out.tail_integral = integrate_log(density, 1.0, 1e8, 6, 12);
    out.finite = std::isfinite(out.sup_term) && std::isfinite(out.tail_integral) &&
                 out.sup_term < 1e12 && out.tail_integral < 1e12;

    // Near-zero integral: shrink the lower cutoff by decades and watch the
    // increments.  Convergent integrands have geometrically dying increments;
    // |Phi'| ~ 1/t (imaginary powers) produces non-decaying increments.
    std::vector<double> partial;
    for (double a : {1e-2, 1e-4, 1e-6, 1e-8})
        partial.push_back(integrate_log(density, a, 1.0, 6, 12));
    bool divergent = false;
    for (std::size_t i = 2; i < partial.size(); ++i) {
        const double inc_prev = partial[i - 1] - partial[i - 2];
        const double inc = partial[i] - partial[i - 1];
        if (inc > 1e-10 && inc > 0.5 * inc_prev) divergent = true;
    }
    out.near_zero_finite = !divergent;
    out.near_zero_integral =
        divergent ? std::numeric_limits<double>::infinity() : partial.back();
    return out;
}

SpectralCoeffs apply_multiplier(const SpectralCoeffs& f, const MultiplierSymbol& sym) {
    const auto tab = phi_table(sym, f.truncation_degree);
    return apply_spectral(f, [&tab](int deg) { return tab[deg]; });
}

double uniform_square_time_integral(int k, double delta_prime) {
    if (k < 1) throw std::invalid_argument("uniform_square_time_integral: k must be >= 1");
    if (!(delta_prime > 0.0))
        throw std::invalid_argument("uniform_square_time_integral: delta' must be positive");
    const double T = std::sqrt(25.0 / (delta_prime * k));
    auto integrand = [k, delta_prime](double t) {
        const double s = t * t * k;
        return s * s * std::exp(-2.0 * delta_prime * s) / t;
    };
    return integrate_log(integrand, 1e-9, T, 8, 16);
}

}  // namespace ouc
