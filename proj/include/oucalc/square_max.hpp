#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oucalc/gaussian.hpp"
#include "oucalc/hermite.hpp"

namespace ouc {

//! Parameters of the cone Gamma(x) = {(y, t) : |y - x| < aperture * t,
//! t < scale(y)} inside the admissible region; scale is m or its dyadic
//! version m_tilde, optionally capped in time.
struct ConeParams {
    double aperture = 1.0;
    bool use_discretized_scale = true;  // m_tilde (default) or m
    std::optional<double> time_cap;
};

//! Samples of u(y, t) on a time grid times a fixed spatial rule;
//! values[it][inode] = u(nodes[inode], times[it]).
struct SpaceTimeFunction {
    std::vector<double> times;
    QuadratureRule spatial;
    std::vector<std::vector<Complex>> values;

    void validate() const;
};

//! Quadrature knobs for the conical square function.
struct SquareParams {
    double t_min = 1e-4;     // lower cutoff of the outer integral (reported)
    int per_decade = 4;      // outer log panels per decade
    int outer_order = 8;     // Gauss-Legendre order per outer panel
    int ball_order = 16;     // local rule order for the inner ball average
    int measure_order = 64;  // radial order for gamma(B(x,t))
    std::optional<double> time_cap;  // overrides the upper limit 2 m(x)
};

struct SquareEval {
    double value;
    double refinement_delta;  // relative change when the t-panel density doubles
};

//! Admissible conical square function
//!   Sf(x) = ( int_{t_min}^{2 m(x)} gamma(B(x,t))^{-1}
//!             int_{B(x,t)} |t^2 L e^{-t^2 L} f|^2 dgamma  dt/t )^{1/2}.
//! The detailed variant reports the refinement delta; the plain variant
//! signals when doubling the t-resolution moves the result by more than 1%.
SquareEval square_function_detailed(const SpectralCoeffs& f, const Point& x,
                                    const SquareParams& p = {});
double square_function(const SpectralCoeffs& f, const Point& x,
                       const SquareParams& p = {});

//! Square function for several spectral vectors at one point.  The time grid,
//! ball rules, ball measures, and Hermite tables depend only on (x, t); this
//! overload pays for them once, so family sweeps scale with the coefficient
//! count instead of the geometry.  All members must share basis and dimension.
std::vector<SquareEval> square_function_family(const std::vector<SpectralCoeffs>& fs,
                                               const Point& x, const SquareParams& p = {});

//! Admissible maximal function Mf(x) = sup over eps * m(x)^2 <= t <= 1 of
//! |e^{-tL} f(x)|, the sup taken over a log grid of grid_points times
//! (an under-approximation of the true sup; doubling the grid is the guard).
double maximal_function(const SpectralCoeffs& f, const Point& x, double epsilon,
                        int grid_points = 200);

//! Family version of maximal_function, sharing the Hermite table at x and the
//! per-time spectral factors across members.
std::vector<double> maximal_function_family(const std::vector<SpectralCoeffs>& fs,
                                            const Point& x, double epsilon,
                                            int grid_points = 200);

//! Weight choices for the L^1(gamma) norms: 1 or 1 + log_+ |x|.
enum class L1Weight { unit, one_plus_log };

//! int weight(x) |g(x)| dgamma(x) via a radial rule with panels split at the
//! |x| = 1 kink of the log weight (composite Gauss-Legendre in the radius,
//! trapezoid in the angles).  Handles the non-smooth weight and |g|.
double weighted_l1_norm(const std::function<Complex(const Point&)>& g, L1Weight weight,
                        int dim, int order = 24);

//! Same integral evaluated on the nodes of a supplied rule (inherits that
//! rule's limitations for non-smooth integrands).
double weighted_l1_norm(const GridFunction& g, L1Weight weight, const QuadratureRule& rule);

//! The node/weight set behind the pointwise weighted_l1_norm overload, as a
//! rule with plain gamma-weights (the log weight is applied separately), for
//! callers that evaluate many integrands on the same grid.
QuadratureRule weighted_l1_rule(int dim, int order = 24);

//! Gaussian tent-space norm
//!   ||u|| = int ( iint_{Gamma(x)} |u(y,t)|^2 dgamma(y) dt / (t gamma(B(y,t))) )^{1/2} dgamma(x),
//! with the outer integral over the supplied rule and the cone integral over
//! u's own grids (trapezoid in log t).
double tent_norm(const SpaceTimeFunction& u, const ConeParams& params,
                 const QuadratureRule& outer_rule, int measure_order = 24);

//! Tent-space atom: a ball B from the dyadic 5-admissible family and samples
//! supported in B x (0, r_B) with int_0^{r_B} ||a(.,t)||_2^2 dt/t <= 1/gamma(B).
struct Atom {
    Ball ball;
    SpaceTimeFunction profile;
};

struct AtomDiagnostics {
    bool ball_admissible = false;
    bool support_ok = false;
    bool size_ok = false;
    double size_value = 0.0;  // measured int_0^{r_B} ||a||_2^2 dt/t
    double size_bound = 0.0;  // 1 / gamma(B)
    double size_slack = 0.0;  // bound - value

    bool valid() const { return ball_admissible && support_ok && size_ok; }
};

//! Checks the three atom conditions on the sampled grid and reports slack.
AtomDiagnostics atom_validate(const Atom& a, int measure_order = 64);

//! Deterministic bump-profile atom on the given ball, normalized with the
//! same quadrature atom_validate uses, so the size condition saturates up to
//! the requested headroom (headroom 0 gives slack on the order of roundoff).
Atom make_saturating_atom(const Ball& b, int spatial_order = 24, int time_points = 60,
                          double headroom = 0.0);

}  // namespace ouc
