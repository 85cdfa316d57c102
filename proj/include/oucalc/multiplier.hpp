#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "oucalc/hermite.hpp"

namespace ouc {

//! Twice continuously differentiable symbol Phi : (0, inf) -> C together with
//! its first two derivatives.  Construction cross-checks the supplied
//! derivatives against finite differences of phi0 on t in [1e-3, 10] and
//! rejects inconsistent triples.
struct MultiplierSymbol {
    std::function<Complex(double)> phi0, phi1, phi2;
    std::string label;

    MultiplierSymbol(std::string label_, std::function<Complex(double)> f0,
                     std::function<Complex(double)> f1,
                     std::function<Complex(double)> f2);
};

//! Phi identically 1.
MultiplierSymbol symbol_one();

//! Phi(t) = e^{-t}.
MultiplierSymbol symbol_exp_decay();

//! C^2 cutoff chi with 1_(0,1] <= chi <= 1_(0,2]; the default is the quintic
//! smoothstep transition on [1, 2].
struct SmoothCutoff {
    std::function<double(double)> chi, dchi, d2chi;

    static SmoothCutoff quintic();
};

//! Phi(t) = t^{i tau} chi(t): the localized imaginary power.  Derivatives come
//! from the product rule; the cutoff is validated against the sandwich
//! 1_(0,1] <= chi <= 1_(0,2].
MultiplierSymbol localized_imaginary_power(double tau,
                                           const SmoothCutoff& cutoff = SmoothCutoff::quintic());

//! Registry used by the CLI: "one", "exp-decay", "imag-power:tau=<value>".
MultiplierSymbol symbol_from_label(const std::string& label);

//! phi(lambda) = int_0^inf Phi(t) (t lambda)^2 e^{-t lambda} dt/t for integer
//! lambda >= 0; phi(0) = 0 exactly.  Log-panel quadrature on [1e-8, T(lambda)]
//! with the upper end chosen so the e^{-t lambda} tail is below 1e-14; panel
//! density is doubled once and disagreement beyond 1e-6 raises an error.
Complex phi_from_symbol(const MultiplierSymbol& sym, int lambda);

//! Same multiplier through the Laplace transform identity
//! phi(lambda) = lambda int_0^inf (Phi(t) + t Phi'(t)) e^{-t lambda} dt.
Complex phi_laplace_form(const MultiplierSymbol& sym, int lambda);

//! Third route, integrating by parts twice:
//! phi(lambda) = Phi(0+) + int_0^inf (2 Phi'(t) + t Phi''(t)) e^{-t lambda} dt.
//! Valid when Phi' is integrable near zero and Phi, tPhi' decay at infinity
//! (e.g. Phi = e^{-t}); Phi(0+) is probed at t = 1e-8.
Complex phi_ibp_route(const MultiplierSymbol& sym, int lambda);

//! phi(0..N) as a table.
std::vector<Complex> phi_table(const MultiplierSymbol& sym, int N);

//! Numerical probe of the admissibility quantities
//!   sup_t (|Phi| + t|Phi'| + t^2|Phi''|)  over a log grid on [1e-8, 1e8],
//!   int_1^1e8 (|Phi'| + t|Phi''|) dt,
//!   int_{1e-8}^1 (|Phi'| + t|Phi''|) dt.
//! The near-zero integral is marked +infinity when its value keeps growing as
//! the lower cutoff shrinks (divergence signature), e.g. for imaginary powers.
struct MultiplierCheck {
    double sup_term = 0.0;
    double tail_integral = 0.0;
    double near_zero_integral = 0.0;  // +inf marker when divergent
    bool finite = false;              // sup and tail both look finite
    bool near_zero_finite = false;
};

MultiplierCheck multiplier_condition(const MultiplierSymbol& sym);

//! phi(L) f in coefficients: coefficient of h_beta scaled by phi(|beta|).
SpectralCoeffs apply_multiplier(const SpectralCoeffs& f, const MultiplierSymbol& sym);

//! int_0^inf (t^2 k)^2 e^{-2 delta' t^2 k} dt/t by quadrature; equals
//! 1/(8 delta'^2) for every integer k >= 1 (substitute s = t^2 k).
double uniform_square_time_integral(int k, double delta_prime);

}  // namespace ouc
