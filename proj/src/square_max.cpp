#include "oucalc/square_max.hpp"

#include "oucalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ouc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double cone_scale(const Point& y, const ConeParams& p) {
    return p.use_discretized_scale ? discretized_admissibility(y) : admissibility(y);
}

}  // namespace

void SpaceTimeFunction::validate() const {
    if (values.size() != times.size())
        throw std::invalid_argument("SpaceTimeFunction: times/values length mismatch");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev) || !(t <= 5.0))
            throw std::invalid_argument(
                "SpaceTimeFunction: times must be increasing within (0, 5]");
        prev = t;
    }
    for (const auto& layer : values) {
        if (layer.size() != spatial.nodes.size())
            throw std::invalid_argument("SpaceTimeFunction: layer/rule size mismatch");
        for (const auto& v : layer)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("SpaceTimeFunction: non-finite value");
    }
}

namespace {

void check_family(const std::vector<SpectralCoeffs>& fs, const char* who) {
    if (fs.empty()) throw std::invalid_argument(std::string(who) + ": empty family");
    for (const auto& f : fs)
        if (f.dimension != fs.front().dimension ||
            f.basis.size() != fs.front().basis.size())
            throw std::invalid_argument(std::string(who) +
                                        ": family members must share the basis");
}

// Tensor h_beta(x) for every basis element, per-axis tables built once.
std::vector<double> basis_row(const std::vector<MultiIndex>& basis, int N, int dim,
                              const Point& x) {
    std::array<std::vector<double>, 3> axis_vals;
    for (int a = 0; a < dim; ++a) axis_vals[a] = hermite_eval_all(N, x[a]);
    std::vector<double> hx(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        double hb = 1.0;
        for (int a = 0; a < dim; ++a) hb *= axis_vals[a][basis[b].entries[a]];
        hx[b] = hb;
    }
    return hx;
}

std::vector<double> square_family_once(const std::vector<SpectralCoeffs>& fs, const Point& x,
                                       const SquareParams& p, int per_decade) {
    const std::size_t nf = fs.size();
    std::vector<double> acc(nf, 0.0);
    const double upper = p.time_cap.value_or(2.0 * admissibility(x));
    if (!(upper > p.t_min)) return acc;
    QuadGrid tg = log_panel_grid(p.t_min, upper, per_decade, p.outer_order);

    const auto& basis = fs.front().basis;
    const int N = fs.front().truncation_degree;
    const int dim = fs.front().dimension;
    const std::size_t K = basis.size();
    std::vector<double> table;  // fac[b] * h_b(node), nodes x K
    for (std::size_t it = 0; it < tg.points.size(); ++it) {
        const double t = tg.points[it];
        const Ball b(x, t);
        QuadratureRule inner = ball_rule(b, p.ball_order);
        const double gb = gaussian_measure_ball(b, p.measure_order);
        const std::size_t ni = inner.nodes.size();

        // Inner operator at time t^2: coefficient factor (t^2 lambda) e^{-t^2 lambda},
        // folded into the Hermite table so each member costs one dot per node.
        std::vector<double> fac(K);
        for (std::size_t bidx = 0; bidx < K; ++bidx) {
            const double s = t * t * basis[bidx].degree();
            fac[bidx] = s * std::exp(-s);
        }
        table.assign(ni * K, 0.0);
        for (std::size_t i = 0; i < ni; ++i) {
            std::vector<double> hrow = basis_row(basis, N, dim, inner.nodes[i]);
            for (std::size_t bidx = 0; bidx < K; ++bidx)
                table[i * K + bidx] = hrow[bidx] * fac[bidx];
        }
        const double wt = tg.weights[it] / (gb * t);  // dt/t with the ball average
        for (std::size_t m = 0; m < nf; ++m) {
            double mass = 0.0;
            for (std::size_t i = 0; i < ni; ++i) {
                Complex v(0.0, 0.0);
                const double* row = &table[i * K];
                for (std::size_t bidx = 0; bidx < K; ++bidx)
                    v += fs[m].coeff[bidx] * row[bidx];
                mass += inner.weights[i] * std::norm(v);
            }
            acc[m] += wt * mass;
        }
    }
    for (auto& a : acc) a = std::sqrt(std::max(0.0, a));
    return acc;
}

}  // namespace

std::vector<SquareEval> square_function_family(const std::vector<SpectralCoeffs>& fs,
                                               const Point& x, const SquareParams& p) {
    check_family(fs, "square_function_family");
    std::vector<double> coarse = square_family_once(fs, x, p, p.per_decade);
    std::vector<double> fine = square_family_once(fs, x, p, 2 * p.per_decade);
    std::vector<SquareEval> out(fs.size());
    for (std::size_t m = 0; m < fs.size(); ++m) {
        const double scale = std::max({fine[m], coarse[m], 1e-300});
        out[m] = {fine[m], std::abs(fine[m] - coarse[m]) / scale};
    }
    return out;
}

SquareEval square_function_detailed(const SpectralCoeffs& f, const Point& x,
                                    const SquareParams& p) {
    return square_function_family({f}, x, p).front();
}

double square_function(const SpectralCoeffs& f, const Point& x, const SquareParams& p) {
    SquareEval e = square_function_detailed(f, x, p);
    if (e.refinement_delta > 0.01)
        throw std::runtime_error("square_function: t-refinement moved the result by > 1%");
    return e.value;
}

std::vector<double> maximal_function_family(const std::vector<SpectralCoeffs>& fs,
                                            const Point& x, double epsilon,
                                            int grid_points) {
    check_family(fs, "maximal_function_family");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("maximal_function: epsilon must be in (0, 1]");
    if (grid_points < 2) throw std::invalid_argument("maximal_function: need >= 2 grid points");
    const double m = admissibility(x);
    const double lo = std::min(epsilon * m * m, 1.0);

    const auto& basis = fs.front().basis;
    const std::size_t K = basis.size();
    std::vector<double> hx = basis_row(basis, fs.front().truncation_degree,
                                       fs.front().dimension, x);
    std::vector<double> best(fs.size(), 0.0);
    std::vector<double> eh(K);
    for (int i = 0; i < grid_points; ++i) {
        const double t = lo * std::pow(1.0 / lo, i / (grid_points - 1.0));
        for (std::size_t b = 0; b < K; ++b) eh[b] = std::exp(-t * basis[b].degree()) * hx[b];
        for (std::size_t mi = 0; mi < fs.size(); ++mi) {
            Complex acc(0.0, 0.0);
            for (std::size_t b = 0; b < K; ++b) acc += fs[mi].coeff[b] * eh[b];
            best[mi] = std::max(best[mi], std::abs(acc));
        }
    }
    return best;
}

double maximal_function(const SpectralCoeffs& f, const Point& x, double epsilon,
                        int grid_points) {
    return maximal_function_family({f}, x, epsilon, grid_points).front();
}

namespace {

double log_plus(double r) { return r > 1.0 ? std::log(r) : 0.0; }

double apply_weight(L1Weight w, double r) {
    return w == L1Weight::unit ? 1.0 : 1.0 + log_plus(r);
}

// Radial grid on [0, rmax] split exactly at the |x| = 1 kink of the weight.
QuadGrid radial_grid(double rmax, int order) {
    QuadGrid a = panel_grid(0.0, 1.0, 4, order);
    QuadGrid b = panel_grid(1.0, rmax, static_cast<int>(2 * (rmax - 1.0)) + 1, order);
    a.points.insert(a.points.end(), b.points.begin(), b.points.end());
    a.weights.insert(a.weights.end(), b.weights.begin(), b.weights.end());
    return a;
}

}  // namespace

QuadratureRule weighted_l1_rule(int dim, int order) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("weighted_l1_rule: dim must be 1..3");
    if (order < 2 || order > 128)
        throw std::invalid_argument("weighted_l1_rule: order out of range");
    const double rmax = 8.0;  // exp(-64) tail, negligible against the 1e-10 scale
    QuadGrid rg = radial_grid(rmax, order);

    QuadratureRule rule;
    rule.dimension = dim;
    rule.order = order;
    rule.exactness_degree = -1;

    if (dim == 1) {
        for (std::size_t i = 0; i < rg.points.size(); ++i) {
            const double r = rg.points[i];
            const double w = rg.weights[i] * std::exp(-r * r) / std::sqrt(kPi);
            rule.nodes.push_back(Point(r));
            rule.weights.push_back(w);
            rule.nodes.push_back(Point(-r));
            rule.weights.push_back(w);
        }
        return rule;
    }
    if (dim == 2) {
        const int m_theta = 64;
        for (std::size_t i = 0; i < rg.points.size(); ++i) {
            const double r = rg.points[i];
            const double w =
                rg.weights[i] * r * std::exp(-r * r) / kPi * (2.0 * kPi / m_theta);
            for (int k = 0; k < m_theta; ++k) {
                const double th = 2.0 * kPi * k / m_theta;
                rule.nodes.push_back(Point(r * std::cos(th), r * std::sin(th)));
                rule.weights.push_back(w);
            }
        }
        return rule;
    }
    const int m_theta = 32, m_u = 16;
    const auto& us = gauss_legendre_nodes(m_u);
    const auto& uw = gauss_legendre_weights(m_u);
    for (std::size_t i = 0; i < rg.points.size(); ++i) {
        const double r = rg.points[i];
        const double w =
            rg.weights[i] * r * r * std::exp(-r * r) / std::pow(kPi, 1.5) *
            (2.0 * kPi / m_theta);
        for (int j = 0; j < m_u; ++j) {
            const double u = us[j];
            const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int k = 0; k < m_theta; ++k) {
                const double th = 2.0 * kPi * k / m_theta;
                rule.nodes.push_back(
                    Point(r * s * std::cos(th), r * s * std::sin(th), r * u));
                rule.weights.push_back(w * uw[j]);
            }
        }
    }
    return rule;
}

double weighted_l1_norm(const std::function<Complex(const Point&)>& g, L1Weight weight,
                        int dim, int order) {
    QuadratureRule rule = weighted_l1_rule(dim, order);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * apply_weight(weight, rule.nodes[i].norm()) *
               std::abs(g(rule.nodes[i]));
    return acc;
}

double weighted_l1_norm(const GridFunction& g, L1Weight weight, const QuadratureRule& rule) {
    g.validate();
    if (g.grid.size() != rule.nodes.size())
        throw std::invalid_argument("weighted_l1_norm: samples must sit on the rule nodes");
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * apply_weight(weight, rule.nodes[i].norm()) *
               std::abs(g.values[i]);
    return acc;
}

double tent_norm(const SpaceTimeFunction& u, const ConeParams& params,
                 const QuadratureRule& outer_rule, int measure_order) {
    u.validate();
    if (!(params.aperture > 0.0)) throw std::invalid_argument("tent_norm: aperture must be > 0");
    const std::size_t nt = u.times.size();
    const std::size_t ny = u.spatial.nodes.size();
    if (nt == 0 || ny == 0) return 0.0;

    // Trapezoid weights in log t over u's own time grid (dt/t integration).
    std::vector<double> wlog(nt, 0.0);
    if (nt == 1) {
        wlog[0] = 1.0;  // single layer: treat as unit log-measure slab
    } else {
        for (std::size_t i = 0; i + 1 < nt; ++i) {
            const double dl = std::log(u.times[i + 1] / u.times[i]);
            wlog[i] += 0.5 * dl;
            wlog[i + 1] += 0.5 * dl;
        }
    }

    // gamma(B(y, t)) table over u's grids; skipped where the value is unused.
    std::vector<std::vector<double>> inv_meas(nt, std::vector<double>(ny, 0.0));
    std::vector<char> in_region(nt * ny, 0);
    for (std::size_t it = 0; it < nt; ++it) {
        const double t = u.times[it];
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const Point& y = u.spatial.nodes[iy];
            bool ok = t < cone_scale(y, params);
            if (params.time_cap && t > *params.time_cap) ok = false;
            if (!ok) continue;
            in_region[it * ny + iy] = 1;
            inv_meas[it][iy] =
                1.0 / gaussian_measure_ball(Ball(y, t), measure_order);
        }
    }

    double norm = 0.0;
    for (std::size_t ix = 0; ix < outer_rule.nodes.size(); ++ix) {
        const Point& x = outer_rule.nodes[ix];
        double cone = 0.0;
        for (std::size_t it = 0; it < nt; ++it) {
            const double t = u.times[it];
            const double radius = params.aperture * t;
            double slab = 0.0;
            for (std::size_t iy = 0; iy < ny; ++iy) {
                if (!in_region[it * ny + iy]) continue;
                const Point& y = u.spatial.nodes[iy];
                if (distance(y, x) >= radius) continue;
                slab += u.spatial.weights[iy] * std::norm(u.values[it][iy]) * inv_meas[it][iy];
            }
            cone += wlog[it] * slab;
        }
        norm += outer_rule.weights[ix] * std::sqrt(std::max(0.0, cone));
    }
    return norm;
}

AtomDiagnostics atom_validate(const Atom& a, int measure_order) {
    a.profile.validate();
    AtomDiagnostics d;
    AdmissibleBallFamily fam{5.0, true};
    d.ball_admissible = fam.contains(a.ball);

    const double rb = a.ball.radius;
    double maxabs = 0.0;
    for (const auto& layer : a.profile.values)
        for (const auto& v : layer) maxabs = std::max(maxabs, std::abs(v));
    d.support_ok = true;
    for (std::size_t it = 0; it < a.profile.times.size(); ++it) {
        const bool time_inside = a.profile.times[it] < rb;
        for (std::size_t iy = 0; iy < a.profile.spatial.nodes.size(); ++iy) {
            const bool space_inside =
                distance(a.profile.spatial.nodes[iy], a.ball.center) <= rb + 1e-12;
            if (time_inside && space_inside) continue;
            if (std::abs(a.profile.values[it][iy]) > 1e-12 * std::max(1.0, maxabs))
                d.support_ok = false;
        }
    }

    // Size condition: int_0^{r_B} ||a(.,t)||_2^2 dt/t on the sampled grid
    // (trapezoid in log t, the atom's spatial rule for the L^2 norm).
    const std::size_t nt = a.profile.times.size();
    double integral = 0.0;
    std::vector<double> l2sq(nt, 0.0);
    for (std::size_t it = 0; it < nt; ++it) {
        double s = 0.0;
        for (std::size_t iy = 0; iy < a.profile.spatial.nodes.size(); ++iy)
            s += a.profile.spatial.weights[iy] * std::norm(a.profile.values[it][iy]);
        l2sq[it] = s;
    }
    for (std::size_t it = 0; it + 1 < nt; ++it) {
        const double dl = std::log(a.profile.times[it + 1] / a.profile.times[it]);
        integral += 0.5 * dl * (l2sq[it] + l2sq[it + 1]);
    }
    d.size_value = integral;
    d.size_bound = 1.0 / gaussian_measure_ball(a.ball, measure_order);
    d.size_slack = d.size_bound - d.size_value;
    d.size_ok = d.size_value <= d.size_bound * (1.0 + 1e-9);
    return d;
}

Atom make_saturating_atom(const Ball& b, int spatial_order, int time_points,
                          double headroom) {
    if (!(headroom >= 0.0 && headroom < 1.0))
        throw std::invalid_argument("make_saturating_atom: headroom must be in [0, 1)");
    SpaceTimeFunction u;
    u.spatial = ball_rule(b, spatial_order);
    const double rb = b.radius;
    u.times.resize(time_points);
    for (int i = 0; i < time_points; ++i)
        u.times[i] = rb * 1e-3 * std::pow(0.999 / 1e-3, i / (time_points - 1.0));

    // Separable bump profile: quartic in space, t^{0.7}(1 - t/r_B) in time.
    u.values.assign(u.times.size(), std::vector<Complex>(u.spatial.nodes.size()));
    for (std::size_t it = 0; it < u.times.size(); ++it) {
        const double tau = u.times[it] / rb;
        const double st = std::pow(tau, 0.7) * (1.0 - tau);
        for (std::size_t iy = 0; iy < u.spatial.nodes.size(); ++iy) {
            const double z = distance(u.spatial.nodes[iy], b.center) / rb;
            const double sy = z < 1.0 ? (1.0 - z * z) * (1.0 - z * z) : 0.0;
            u.values[it][iy] = Complex(st * sy, 0.0);
        }
    }

    Atom atom{b, std::move(u)};
    AtomDiagnostics d = atom_validate(atom);
    if (d.size_value > 0.0) {
        const double scale = std::sqrt(d.size_bound / d.size_value) * (1.0 - headroom);
        for (auto& layer : atom.profile.values)
            for (auto& v : layer) v *= scale;
    }
    return atom;
}

}  // namespace ouc
