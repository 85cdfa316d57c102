#include "oucalc/decomposition.hpp"

#include "oucalc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ouc {

void DecompParams::validate() const {
    if (!(delta_prime > 0.0 && delta_prime < delta && delta <= 1.0))
        throw std::invalid_argument("DecompParams: need 0 < delta' < delta <= 1");
    if (!(kappa >= 4.0)) throw std::invalid_argument("DecompParams: need kappa >= 4");
    if (!(t_lo > 0.0 && t_lo < 0.1))
        throw std::invalid_argument("DecompParams: t_lo out of range");
    if (per_decade < 2 || order < 2)
        throw std::invalid_argument("DecompParams: time quadrature too coarse");
    if (!(tolerance > 0.0)) throw std::invalid_argument("DecompParams: tolerance must be > 0");
}

MultiplierSymbol DecompParams::phi_tilde() const {
    const double s = sigma();
    MultiplierSymbol base = Phi;  // capture a copy; symbols are immutable
    return MultiplierSymbol(
        Phi.label + " (time-rescaled)",
        [base, s](double t) { return base.phi0(s * t); },
        [base, s](double t) { return s * base.phi1(s * t); },
        [base, s](double t) { return s * s * base.phi2(s * t); });
}

bool region_D(const Point& y, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("region_D: t must be positive");
    return t < discretized_admissibility(y);
}

namespace {

// Distinct per-x upper limits m_tilde(x)/kappa above the lower cutoff.
std::vector<double> distinct_limits(const std::vector<Point>& xgrid, const DecompParams& p) {
    std::set<double> lims;
    for (const auto& x : xgrid) {
        const double a = discretized_admissibility(x) / p.kappa;
        if (a > p.t_lo) lims.insert(a);
    }
    return {lims.begin(), lims.end()};
}

}  // namespace

std::vector<double> decomposition_time_grid(const std::vector<Point>& xgrid,
                                            const DecompParams& p) {
    p.validate();
    std::set<double> times;
    for (double a : distinct_limits(xgrid, p)) {
        QuadGrid g = log_panel_grid(p.t_lo, a, p.per_decade, p.order);
        times.insert(g.points.begin(), g.points.end());
    }
    return {times.begin(), times.end()};
}

SpaceTimeFunction compute_u(const SpectralCoeffs& f, double delta,
                            const std::vector<double>& time_grid,
                            const QuadratureRule& rule) {
    if (!(delta > 0.0)) throw std::invalid_argument("compute_u: delta must be positive");
    SpaceTimeFunction u;
    u.times = time_grid;
    u.spatial = rule;
    u.values.reserve(time_grid.size());
    for (double t : time_grid) {
        SpectralCoeffs gt = apply_spectral(f, [t, delta](int deg) {
            const double s = t * t * deg;
            return Complex(s * std::exp(-delta * s), 0.0);
        });
        GridFunction layer = synthesize(gt, rule.nodes);
        for (std::size_t i = 0; i < layer.values.size(); ++i)
            if (!region_D(rule.nodes[i], t)) layer.values[i] = Complex(0.0, 0.0);
        u.values.push_back(std::move(layer.values));
    }
    u.validate();
    return u;
}

namespace {

// Hermite tensor values of every basis element at every x, laid out per x.
std::vector<std::vector<double>> basis_values(const std::vector<MultiIndex>& basis,
                                              const std::vector<Point>& xgrid, int N, int n) {
    std::vector<std::vector<double>> hx(xgrid.size(), std::vector<double>(basis.size()));
    for (std::size_t ix = 0; ix < xgrid.size(); ++ix) {
        std::array<std::vector<double>, 3> axis_vals;
        for (int a = 0; a < n; ++a) axis_vals[a] = hermite_eval_all(N, xgrid[ix][a]);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            double v = 1.0;
            for (int a = 0; a < n; ++a) v *= axis_vals[a][basis[b].entries[a]];
            hx[ix][b] = v;
        }
    }
    return hx;
}

// Shared core of pi1 and pi2: time-quadrature of the outer operator applied
// to pre-analyzed layers.  coeffs_by_time[it] are the analyzed coefficients
// of the inner function at u-time index it.
GridFunction outer_time_integral(const std::vector<double>& times,
                                 const std::vector<SpectralCoeffs>& coeffs_by_time,
                                 const DecompParams& p, const std::vector<Point>& xgrid,
                                 const MultiplierSymbol& phit, int N) {
    if (times.empty()) throw std::invalid_argument("outer_time_integral: empty time grid");
    const int n = xgrid.empty() ? 1 : xgrid.front().dim();
    const auto basis = multi_index_enum(n, N);
    auto hx = basis_values(basis, xgrid, N, n);

    std::map<double, int> time_index;
    for (std::size_t i = 0; i < times.size(); ++i) time_index[times[i]] = static_cast<int>(i);

    // Outer spectral factor per time layer: (t^2 lambda) e^{-delta' t^2 lambda}.
    std::vector<std::vector<Complex>> outer(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        outer[it].resize(basis.size());
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const double s = t * t * basis[b].degree();
            outer[it][b] = coeffs_by_time[it].coeff[b] * s * std::exp(-p.delta_prime * s);
        }
    }

    GridFunction out;
    out.grid = xgrid;
    out.values.assign(xgrid.size(), Complex(0.0, 0.0));
    for (std::size_t ix = 0; ix < xgrid.size(); ++ix) {
        const double a = discretized_admissibility(xgrid[ix]) / p.kappa;
        if (!(a > p.t_lo)) continue;
        QuadGrid g = log_panel_grid(p.t_lo, a, p.per_decade, p.order);
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            auto it = time_index.find(g.points[i]);
            if (it == time_index.end())
                throw std::logic_error("outer_time_integral: time grid mismatch");
            const int ti = it->second;
            Complex dot(0.0, 0.0);
            for (std::size_t b = 0; b < basis.size(); ++b)
                dot += outer[ti][b] * hx[ix][b];
            const double t = g.points[i];
            acc += g.weights[i] / t * phit.phi0(t * t) * dot;
        }
        out.values[ix] = acc;
    }
    return out;
}

// Largest degree the rule still projects exactly when the analyzed layer
// itself carries polynomial content up to the same degree.  pi1 and pi2 must
// share this value: their layers sum to the uncut one exactly on the nodes,
// so with a common truncation the analyses telescope coefficient by
// coefficient.
int reanalysis_degree(const QuadratureRule& rule) { return rule.exactness_degree / 2; }

}  // namespace

GridFunction pi1(const SpaceTimeFunction& u, const DecompParams& p,
                 const std::vector<Point>& xgrid, const QuadratureRule& rule) {
    p.validate();
    u.validate();
    if (u.spatial.nodes.size() != rule.nodes.size())
        throw std::invalid_argument("pi1: u must be sampled on the rule's nodes");

    const int N = reanalysis_degree(rule);
    std::vector<SpectralCoeffs> coeffs(u.times.size());
    for (std::size_t it = 0; it < u.times.size(); ++it) {
        GridFunction layer;
        layer.grid = rule.nodes;
        layer.values = u.values[it];
        coeffs[it] = analyze(layer, rule, N);
    }
    return outer_time_integral(u.times, coeffs, p, xgrid, p.phi_tilde(), N);
}

GridFunction pi2(const SpectralCoeffs& f, const DecompParams& p,
                 const std::vector<Point>& xgrid, const QuadratureRule& rule) {
    double residual = 0.0;
    GridFunction out = pi2_detail(f, p, xgrid, rule, &residual);
    return out;
}

GridFunction pi2_detail(const SpectralCoeffs& f, const DecompParams& p,
                        const std::vector<Point>& xgrid, const QuadratureRule& rule,
                        double* reanalysis_residual) {
    p.validate();
    const std::vector<double> times = decomposition_time_grid(xgrid, p);
    if (times.empty()) {
        GridFunction zero;
        zero.grid = xgrid;
        zero.values.assign(xgrid.size(), Complex(0.0, 0.0));
        return zero;
    }
    const int N = reanalysis_degree(rule);

    double worst = 0.0;
    std::vector<SpectralCoeffs> coeffs(times.size());
    for (std::size_t it = 0; it < times.size(); ++it) {
        const double t = times[it];
        SpectralCoeffs gt = apply_spectral(f, [t, &p](int deg) {
            const double s = t * t * deg;
            return Complex(s * std::exp(-p.delta * s), 0.0);
        });
        GridFunction layer = synthesize(gt, rule.nodes);
        double full = 0.0;
        for (std::size_t i = 0; i < layer.values.size(); ++i) {
            full = std::max(full, std::abs(layer.values[i]));
            if (region_D(rule.nodes[i], t)) layer.values[i] = Complex(0.0, 0.0);
        }
        coeffs[it] = analyze(layer, rule, N);

        // Re-analysis residual of the truncated layer, relative to the full
        // layer's scale (the cut function leaves the degree-N space).
        GridFunction back = synthesize(coeffs[it], rule.nodes);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < layer.values.size(); ++i) {
            num += rule.weights[i] * std::norm(back.values[i] - layer.values[i]);
            den += rule.weights[i];
        }
        if (full > 0.0) worst = std::max(worst, std::sqrt(num / den) / full);
    }
    if (reanalysis_residual) *reanalysis_residual = worst;

    GridFunction out = outer_time_integral(times, coeffs, p, xgrid, p.phi_tilde(), N);
    if (worst > 1e-5) {
        std::ostringstream note;
        note << "re-analysis residual " << worst << " exceeds 1e-5";
        out.note = note.str();
    }
    return out;
}

namespace {

struct TailIntegralCache {
    const DecompParams& p;
    MultiplierSymbol phit;
    std::map<std::pair<int, double>, Complex> cache;

    explicit TailIntegralCache(const DecompParams& params)
        : p(params), phit(params.phi_tilde()) {}

    // I_lambda(a) = int_a^inf Phi~(t^2) (t^2 lambda)^2 e^{-sigma t^2 lambda} dt/t.
    Complex get(int lambda, double a) {
        if (lambda == 0) return Complex(0.0, 0.0);
        auto key = std::make_pair(lambda, a);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double sigma = p.sigma();
        const double T = std::sqrt(46.0 / (sigma * lambda));
        Complex value(0.0, 0.0);
        if (T > a) {
            const double lam = lambda;
            auto integrand = [this, lam, sigma](double t) {
                const double s = t * t * lam;
                return phit.phi0(t * t) * s * s * std::exp(-sigma * s) / t;
            };
            CheckedIntegral r = integrate_log_checked(integrand, a, T, p.per_decade, 12);
            if (r.refinement_delta > 1e-6)
                throw std::runtime_error("pi3: tail quadrature did not converge");
            value = r.value;
        }
        cache.emplace(key, value);
        return value;
    }
};

}  // namespace

GridFunction pi3(const SpectralCoeffs& f, const DecompParams& p,
                 const std::vector<Point>& xgrid) {
    p.validate();
    TailIntegralCache tail(p);
    const int n = f.dimension;
    auto hx = basis_values(f.basis, xgrid, f.truncation_degree, n);

    GridFunction out;
    out.grid = xgrid;
    out.values.assign(xgrid.size(), Complex(0.0, 0.0));
    for (std::size_t ix = 0; ix < xgrid.size(); ++ix) {
        const double a = discretized_admissibility(xgrid[ix]) / p.kappa;
        Complex acc(0.0, 0.0);
        for (std::size_t b = 0; b < f.basis.size(); ++b) {
            const int lam = f.basis[b].degree();
            if (lam == 0) continue;
            acc += f.coeff[b] * tail.get(lam, a) * hx[ix][b];
        }
        out.values[ix] = acc;
    }
    return out;
}

GridFunction pi3_ibp_route(const SpectralCoeffs& f, const DecompParams& p,
                           const std::vector<Point>& xgrid) {
    p.validate();
    const MultiplierSymbol phit = p.phi_tilde();
    const double sigma = p.sigma();
    const int n = f.dimension;
    auto hx = basis_values(f.basis, xgrid, f.truncation_degree, n);

    // In s = t^2 the tail is (1/2) int_{A}^{inf} Phi~(s) s lambda^2 e^{-sigma s lambda} ds
    // with A = m_tilde(x)^2 / kappa^2; integrating by parts twice leaves
    // boundary terms at A plus the twice-differentiated symbol:
    //   I = (1/(2 sigma^2)) [ sigma lambda A Phi~(A) e^{-sigma A lambda}
    //       + (Phi~(A) + A Phi~'(A)) e^{-sigma A lambda}
    //       + int_A^inf (2 Phi~'(s) + s Phi~''(s)) e^{-sigma s lambda} ds ].
    std::map<std::pair<int, double>, Complex> cache;
    auto tail_ibp = [&](int lambda, double A) -> Complex {
        if (lambda == 0) return Complex(0.0, 0.0);
        auto key = std::make_pair(lambda, A);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double lam = lambda;
        const double S = 46.0 / (sigma * lam);
        const Complex boundary =
            (sigma * lam * A * phit.phi0(A) + phit.phi0(A) + A * phit.phi1(A)) *
            std::exp(-sigma * A * lam);
        Complex integral(0.0, 0.0);
        if (S > A) {
            auto integrand = [&phit, lam, sigma](double s) {
                return (2.0 * phit.phi1(s) + s * phit.phi2(s)) * std::exp(-sigma * s * lam);
            };
            CheckedIntegral r = integrate_log_checked(integrand, A, S, p.per_decade, 12);
            if (r.refinement_delta > 1e-6)
                throw std::runtime_error("pi3_ibp_route: quadrature did not converge");
            integral = r.value;
        }
        const Complex value = (boundary + integral) / (2.0 * sigma * sigma);
        cache.emplace(key, value);
        return value;
    };

    GridFunction out;
    out.grid = xgrid;
    out.values.assign(xgrid.size(), Complex(0.0, 0.0));
    for (std::size_t ix = 0; ix < xgrid.size(); ++ix) {
        const double a = discretized_admissibility(xgrid[ix]) / p.kappa;
        const double A = a * a;
        Complex acc(0.0, 0.0);
        for (std::size_t b = 0; b < f.basis.size(); ++b) {
            const int lam = f.basis[b].degree();
            if (lam == 0) continue;
            acc += f.coeff[b] * tail_ibp(lam, A) * hx[ix][b];
        }
        out.values[ix] = acc;
    }
    return out;
}

DecompResult reconstruct(const SpectralCoeffs& f, const DecompParams& p,
                         const QuadratureRule& rule, double epsilon, bool with_norms) {
    p.validate();
    if (f.dimension != rule.dimension)
        throw std::invalid_argument("reconstruct: dimension mismatch");
    const std::vector<Point>& xgrid = rule.nodes;

    if (2 * f.truncation_degree > rule.exactness_degree)
        throw std::invalid_argument("reconstruct: rule exactness too low for the truncation");

    DecompResult res;
    res.c_const = p.c_const();

    const std::vector<double> times = decomposition_time_grid(xgrid, p);
    SpaceTimeFunction u = compute_u(f, p.delta, times, rule);
    res.pi1_part = pi1(u, p, xgrid, rule);
    res.pi2_part = pi2_detail(f, p, xgrid, rule, &res.reanalysis_residual);
    res.pi3_part = pi3(f, p, xgrid);

    res.reconstruction.grid = xgrid;
    res.reconstruction.values.resize(xgrid.size());
    for (std::size_t i = 0; i < xgrid.size(); ++i)
        res.reconstruction.values[i] =
            res.c_const * (res.pi1_part.values[i] + res.pi2_part.values[i] +
                           res.pi3_part.values[i]);

    SpectralCoeffs phi_f = apply_multiplier(f, p.Phi);
    res.reference = synthesize(phi_f, xgrid);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        num += rule.weights[i] * std::abs(res.reconstruction.values[i] - res.reference.values[i]);
        den += rule.weights[i] * std::abs(res.reference.values[i]);
    }
    res.rel_l1_error = den > 1e-14 ? num / den : num;

    if (!with_norms) {
        if (res.rel_l1_error > p.tolerance) {
            std::ostringstream msg;
            msg << "reconstruct: relative L1 mismatch " << res.rel_l1_error
                << " exceeds tolerance " << p.tolerance;
            throw std::runtime_error(msg.str());
        }
        return res;
    }

    const int n = f.dimension;
    const int norm_order = n == 1 ? 24 : 10;
    res.l1_norms.phi_f = weighted_l1_norm(
        [&phi_f](const Point& x) { return synthesize_at(phi_f, x); }, L1Weight::unit, n,
        norm_order);
    res.l1_norms.f = weighted_l1_norm(
        [&f](const Point& x) { return synthesize_at(f, x); }, L1Weight::unit, n, norm_order);
    SquareParams sq;
    if (n > 1) {
        sq.ball_order = 8;
        sq.measure_order = 24;
    }
    res.l1_norms.square_f = weighted_l1_norm(
        [&f, &sq](const Point& x) {
            return Complex(square_function_detailed(f, x, sq).value, 0.0);
        },
        L1Weight::unit, n, norm_order);
    res.l1_norms.maximal_f = weighted_l1_norm(
        [&f, epsilon](const Point& x) { return Complex(maximal_function(f, x, epsilon), 0.0); },
        L1Weight::unit, n, norm_order);
    res.l1_norms.maximal_f_logweighted = weighted_l1_norm(
        [&f, epsilon](const Point& x) { return Complex(maximal_function(f, x, epsilon), 0.0); },
        L1Weight::one_plus_log, n, norm_order);

    if (res.rel_l1_error > p.tolerance) {
        std::ostringstream msg;
        msg << "reconstruct: relative L1 mismatch " << res.rel_l1_error
            << " exceeds tolerance " << p.tolerance;
        throw std::runtime_error(msg.str());
    }
    return res;
}

TraceResult admissible_time_trace(const SpectralCoeffs& f, double alpha, TraceRoute route,
                                  const std::vector<Point>& xgrid, int l1_order) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("admissible_time_trace: alpha must be positive");

    auto eval = [&f, alpha, route](const Point& x) {
        const double mt = discretized_admissibility(x);
        const double t = mt * mt / alpha;
        Complex acc(0.0, 0.0);
        std::array<std::vector<double>, 3> axis_vals;
        for (int a = 0; a < f.dimension; ++a)
            axis_vals[a] = hermite_eval_all(f.truncation_degree, x[a]);
        for (std::size_t b = 0; b < f.basis.size(); ++b) {
            const int lam = f.basis[b].degree();
            double factor = std::exp(-t * lam);
            if (route == TraceRoute::tL) factor *= t * lam;
            double hb = 1.0;
            for (int a = 0; a < f.dimension; ++a) hb *= axis_vals[a][f.basis[b].entries[a]];
            acc += f.coeff[b] * factor * hb;
        }
        return acc;
    };

    TraceResult res;
    res.trace.grid = xgrid;
    res.trace.values.reserve(xgrid.size());
    for (const auto& x : xgrid) res.trace.values.push_back(eval(x));
    res.l1_norm = weighted_l1_norm(eval, L1Weight::unit, f.dimension, l1_order);
    const double f_norm = weighted_l1_norm(
        [&f](const Point& x) { return synthesize_at(f, x); }, L1Weight::unit, f.dimension,
        l1_order);
    res.ratio = f_norm > 1e-300 ? res.l1_norm / f_norm : 0.0;
    return res;
}

namespace {

// Uniform double in [-1, 1] from the top 53 bits, identical across platforms.
double uniform_pm1(std::mt19937_64& rng) {
    const double u = (rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

struct FamilyMember {
    std::string label;
    SpectralCoeffs coeffs;
};

std::vector<FamilyMember> make_family(const SweepFamilyConfig& fam) {
    std::vector<FamilyMember> out;
    const auto basis = multi_index_enum(fam.dimension, fam.truncation);
    std::mt19937_64 rng(fam.seed);

    auto blank = [&]() {
        SpectralCoeffs c;
        c.dimension = fam.dimension;
        c.truncation_degree = fam.truncation;
        c.basis = basis;
        c.coeff.assign(basis.size(), Complex(0.0, 0.0));
        return c;
    };

    // Adversarial members first: the two highest single modes and a mean-zero
    // off-center Gaussian bump (analyzed, then mean removed).
    {
        SpectralCoeffs c = blank();
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (basis[b].degree() == fam.truncation) {
                c.coeff[b] = Complex(1.0, 0.0);
                break;
            }
        out.push_back({"single-mode-top", std::move(c)});
    }
    {
        SpectralCoeffs c = blank();
        const int half = std::max(1, fam.truncation / 2);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (basis[b].degree() == half) {
                c.coeff[b] = Complex(1.0, 0.0);
                break;
            }
        out.push_back({"single-mode-half", std::move(c)});
    }
    {
        QuadratureRule rule = gauss_hermite_rule(
            std::min(128, std::max(2 * fam.truncation + 2, 32)), fam.dimension);
        GridFunction bump;
        bump.grid = rule.nodes;
        bump.values.reserve(rule.nodes.size());
        for (const auto& y : rule.nodes) {
            double d2 = 0.0;
            for (int a = 0; a < fam.dimension; ++a) d2 += (y[a] - 0.7) * (y[a] - 0.7);
            bump.values.push_back(Complex(std::exp(-2.0 * d2), 0.0));
        }
        SpectralCoeffs c = analyze(bump, rule, fam.truncation);
        c.coeff[0] = Complex(0.0, 0.0);  // remove the mean
        out.push_back({"mean-zero-bump", std::move(c)});
    }

    int idx = 0;
    while (static_cast<int>(out.size()) < fam.count) {
        SpectralCoeffs c = blank();
        for (std::size_t b = 0; b < basis.size(); ++b)
            c.coeff[b] = Complex(uniform_pm1(rng), 0.0);
        std::ostringstream label;
        label << "random-" << idx++;
        out.push_back({label.str(), std::move(c)});
    }
    return out;
}

}  // namespace

SweepReport theorem_ratio_sweep(const SweepFamilyConfig& fam, const DecompParams& p) {
    p.validate();
    if (fam.count < 1) throw std::invalid_argument("theorem_ratio_sweep: count must be >= 1");

    SweepReport rep;
    rep.check_id = "theorem-sweep";
    rep.config = {{"dimension", fam.dimension},
                  {"truncation", fam.truncation},
                  {"count", fam.count},
                  {"seed", fam.seed},
                  {"epsilon", fam.epsilon},
                  {"l1_order", fam.l1_order},
                  {"symbol", p.Phi.label},
                  {"delta", p.delta},
                  {"delta_prime", p.delta_prime},
                  {"kappa", p.kappa}};

    auto family = make_family(fam);
    const auto tab = phi_table(p.Phi, fam.truncation);
    const auto basis = multi_index_enum(fam.dimension, fam.truncation);
    const std::size_t nf = family.size();
    const std::size_t K = basis.size();

    // Normalize once with the base resolution; the refined pass reuses the
    // exact same coefficients so drift measures quadrature only.
    {
        QuadratureRule wrule = weighted_l1_rule(fam.dimension, fam.l1_order);
        auto hx = basis_values(basis, wrule.nodes, fam.truncation, fam.dimension);
        for (auto& m : family) {
            double norm = 0.0;
            for (std::size_t ix = 0; ix < wrule.nodes.size(); ++ix) {
                Complex v(0.0, 0.0);
                for (std::size_t b = 0; b < K; ++b) v += m.coeffs.coeff[b] * hx[ix][b];
                norm += wrule.weights[ix] * std::abs(v);
            }
            if (norm > 1e-300)
                for (auto& c : m.coeffs.coeff) c /= norm;
        }
    }

    std::vector<SpectralCoeffs> members(nf), phis(nf);
    for (std::size_t m = 0; m < nf; ++m) {
        members[m] = family[m].coeffs;
        phis[m] = apply_spectral(members[m], [&tab](int d) { return tab[d]; });
    }

    // One pass = the four L^1(gamma) norms for every member, sharing the
    // radial grid, Hermite tables, and the square/maximal geometry.
    struct PassNorms {
        std::vector<double> phi, base, square, maximal;
    };
    auto run_pass = [&](bool refined) {
        const int order = refined ? 2 * fam.l1_order : fam.l1_order;
        SquareParams sq = fam.square;
        if (refined) sq.per_decade *= 2;
        const int m_grid = refined ? 400 : 200;

        QuadratureRule wrule = weighted_l1_rule(fam.dimension, order);
        PassNorms n;
        n.phi.assign(nf, 0.0);
        n.base.assign(nf, 0.0);
        n.square.assign(nf, 0.0);
        n.maximal.assign(nf, 0.0);
        for (std::size_t ix = 0; ix < wrule.nodes.size(); ++ix) {
            const Point& x = wrule.nodes[ix];
            const double w = wrule.weights[ix];
            const double r = x.norm();
            const double wlog = w * (1.0 + (r > 1.0 ? std::log(r) : 0.0));
            std::array<std::vector<double>, 3> axis_vals;
            for (int a = 0; a < fam.dimension; ++a)
                axis_vals[a] = hermite_eval_all(fam.truncation, x[a]);
            std::vector<double> hx(K);
            for (std::size_t b = 0; b < K; ++b) {
                double hb = 1.0;
                for (int a = 0; a < fam.dimension; ++a)
                    hb *= axis_vals[a][basis[b].entries[a]];
                hx[b] = hb;
            }
            auto svals = square_function_family(members, x, sq);
            auto mvals = maximal_function_family(members, x, fam.epsilon, m_grid);
            for (std::size_t m = 0; m < nf; ++m) {
                Complex vphi(0.0, 0.0), vf(0.0, 0.0);
                for (std::size_t b = 0; b < K; ++b) {
                    vphi += phis[m].coeff[b] * hx[b];
                    vf += members[m].coeff[b] * hx[b];
                }
                n.phi[m] += w * std::abs(vphi);
                n.base[m] += w * std::abs(vf);
                n.square[m] += w * svals[m].value;
                n.maximal[m] += wlog * mvals[m];
            }
        }
        return n;
    };
    auto ratio_of = [](const PassNorms& n, std::size_t m) {
        const double den = n.square[m] + n.base[m] + n.maximal[m];
        return den > 1e-300 ? n.phi[m] / den : 0.0;
    };

    double max_ratio = 0.0, max_refined = 0.0;
    std::vector<double> ratios(nf);
    PassNorms coarse = run_pass(false);
    for (std::size_t i = 0; i < nf; ++i) {
        const double r = ratio_of(coarse, i);
        ratios[i] = r;
        max_ratio = std::max(max_ratio, r);
        SweepRow row;
        row.kind = "ratio";
        row.params = {{"index", static_cast<int>(i)},
                      {"label", family[i].label},
                      {"seed", fam.seed},
                      {"dimension", fam.dimension},
                      {"truncation", fam.truncation},
                      {"epsilon", fam.epsilon},
                      {"symbol", p.Phi.label},
                      {"norm_phi", coarse.phi[i]},
                      {"norm_square", coarse.square[i]},
                      {"norm_f", coarse.base[i]},
                      {"norm_maximal_logweighted", coarse.maximal[i]}};
        row.measured = r;
        rep.add_row(std::move(row));
    }

    if (fam.refine) {
        PassNorms fine = run_pass(true);
        for (std::size_t i = 0; i < nf; ++i) {
            const double r = ratio_of(fine, i);
            max_refined = std::max(max_refined, r);
            SweepRow row;
            row.kind = "ratio-refined";
            row.params = {{"index", static_cast<int>(i)}, {"label", family[i].label}};
            row.measured = r;
            rep.add_row(std::move(row));
        }
    }

    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&sorted](double q) {
        if (sorted.empty()) return 0.0;
        const double pos = q * (sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    };
    rep.summary = {{"max_ratio", max_ratio},
                   {"median_ratio", quantile(0.5)},
                   {"q90_ratio", quantile(0.9)},
                   {"members", static_cast<int>(family.size())}};
    if (fam.refine) {
        const double drift =
            max_ratio > 0.0 ? std::abs(max_refined - max_ratio) / max_ratio : 0.0;
        rep.summary["max_ratio_refined"] = max_refined;
        rep.summary["refinement_drift"] = drift;
    }
    return rep;
}

}  // namespace ouc
