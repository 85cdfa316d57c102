#include "oucalc/mehler.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ouc {

namespace {

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("mehler: t must be positive");
}

struct KernelParts {
    long double q;    // e^{-t}
    long double om;   // 1 - e^{-2t}, via expm1
    long double d2;   // |x - y|^2
    long double nx2;  // |x|^2
    long double ny2;  // |y|^2
};

KernelParts kernel_parts(long double t, const Point& x, const Point& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("mehler: dimension mismatch");
    KernelParts p;
    p.q = expl(-t);
    p.om = -expm1l(-2.0L * t);
    p.d2 = 0.0L;
    p.nx2 = 0.0L;
    p.ny2 = 0.0L;
    for (int i = 0; i < x.dim(); ++i) {
        const long double xi = x[i], yi = y[i];
        p.d2 += (xi - yi) * (xi - yi);
        p.nx2 += xi * xi;
        p.ny2 += yi * yi;
    }
    return p;
}

long double log_mehler_l(long double t, const Point& x, const Point& y, MehlerForm form) {
    const KernelParts p = kernel_parts(t, x, y);
    const long double half_n = 0.5L * x.dim();
    if (form == MehlerForm::product)
        return -half_n * logl(p.om) - p.q * p.d2 / p.om + p.q * (p.nx2 + p.ny2) / (1.0L + p.q);
    long double shift2 = 0.0L;
    for (int i = 0; i < x.dim(); ++i) {
        const long double s = p.q * (long double)x[i] - (long double)y[i];
        shift2 += s * s;
    }
    return -half_n * logl(p.om) - shift2 / p.om + p.ny2;
}

long double dt_factor_l(long double t, const Point& x, const Point& y) {
    const KernelParts p = kernel_parts(t, x, y);
    const long double n = x.dim();
    return -n * p.q * p.q / p.om + p.d2 * p.q * (1.0L + p.q * p.q) / (p.om * p.om) -
           (p.nx2 + p.ny2) * p.q / ((1.0L + p.q) * (1.0L + p.q));
}

}  // namespace

double log_mehler_kernel(double t, const Point& x, const Point& y, MehlerForm form) {
    require_time(t);
    return static_cast<double>(log_mehler_l(t, x, y, form));
}

double mehler_kernel(double t, const Point& x, const Point& y, MehlerForm form) {
    require_time(t);
    return static_cast<double>(expl(log_mehler_l(t, x, y, form)));
}

double mehler_dt_factor(double t, const Point& x, const Point& y) {
    require_time(t);
    return static_cast<double>(dt_factor_l(t, x, y));
}

double mehler_dt(double t, const Point& x, const Point& y) {
    require_time(t);
    return static_cast<double>(dt_factor_l(t, x, y) *
                               expl(log_mehler_l(t, x, y, MehlerForm::product)));
}

GridFunction semigroup_apply_kernel(const GridFunction& f, double t,
                                    const QuadratureRule& rule) {
    return semigroup_apply_kernel(f, t, rule, rule.nodes);
}

GridFunction semigroup_apply_kernel(const GridFunction& f, double t,
                                    const QuadratureRule& rule,
                                    const std::vector<Point>& eval_grid) {
    require_time(t);
    f.validate();
    if (f.grid.size() != rule.nodes.size())
        throw std::invalid_argument("semigroup_apply_kernel: samples must sit on rule nodes");

    std::vector<double> logw(rule.weights.size());
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        if (!(rule.weights[i] > 0.0))
            throw std::invalid_argument("semigroup_apply_kernel: weights must be positive");
        logw[i] = std::log(rule.weights[i]);
    }

    GridFunction out;
    out.grid = eval_grid;
    out.values.resize(eval_grid.size());
    for (std::size_t e = 0; e < eval_grid.size(); ++e) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const long double lk = log_mehler_l(t, eval_grid[e], rule.nodes[i],
                                                MehlerForm::product);
            acc += static_cast<double>(expl(lk + (long double)logw[i])) * f.values[i];
        }
        out.values[e] = acc;
    }
    if (t < 0.05)
        out.note = "t < 0.05: kernel route accuracy degrades (kernel peak vs fixed nodes)";
    return out;
}

double kernelest_ratio(double t, const Point& x, const Point& y, int j) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("kernelest_ratio: t must be in (0, 1]");
    if (j != 0 && j != 1) throw std::invalid_argument("kernelest_ratio: j must be 0 or 1");
    const KernelParts p = kernel_parts(t, x, y);
    const long double half_n = 0.5L * x.dim();
    const long double log_env =
        -half_n * logl((long double)t) - p.d2 / (8.0L * t) + 0.5L * (p.nx2 + p.ny2);
    const long double lm = log_mehler_l(t, x, y, MehlerForm::product);
    if (j == 0) return static_cast<double>(expl(lm - log_env));
    const long double F = dt_factor_l(t, x, y);
    if (F == 0.0L) return 0.0;
    return static_cast<double>(expl(logl((long double)t * fabsl(F)) + lm - log_env));
}

double timedilation_ratio(double alpha, double t, const Point& x, const Point& y,
                          int j, double c_probe) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("timedilation_ratio: alpha must be >= 1");
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("timedilation_ratio: t must be in (0, 1]");
    if (j != 0 && j != 1) throw std::invalid_argument("timedilation_ratio: j must be 0 or 1");

    const KernelParts p = kernel_parts(t, x, y);
    const long double min2 = std::min(p.nx2, p.ny2);
    const long double s = (long double)t / alpha;
    const long double lm_t = log_mehler_l(t, x, y, MehlerForm::product);
    const long double lm_s = log_mehler_l(s, x, y, MehlerForm::product);

    if (j == 0) {
        long double gauss = 0.0L;
        if (std::isfinite(c_probe)) gauss = p.d2 / ((long double)c_probe * t);
        return static_cast<double>(expl(lm_s - lm_t + gauss - alpha * t * min2));
    }
    const long double F = dt_factor_l(s, x, y);
    if (F == 0.0L) return 0.0;
    return static_cast<double>(expl(logl(s * fabsl(F)) + lm_s - lm_t - alpha * t * min2));
}

double dilation_max_inequality_slack(double t, const Point& x, const Point& y) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("dilation_max_inequality_slack: t must be in (0, 1]");
    if (x.dim() != y.dim()) throw std::invalid_argument("dimension mismatch");
    const double q = std::exp(-t);
    double a = 0.0, b = 0.0, d2 = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
        a += (q * x[i] - y[i]) * (q * x[i] - y[i]);
        b += (x[i] - q * y[i]) * (x[i] - q * y[i]);
        d2 += (x[i] - y[i]) * (x[i] - y[i]);
    }
    const double euler = std::exp(1.0);
    return euler * std::max(a, b) - d2;
}

Box::Box(const Point& lo_, const Point& hi_) : lo(lo_), hi(hi_) {
    if (lo.dim() != hi.dim()) throw std::invalid_argument("Box: dimension mismatch");
    for (int i = 0; i < lo.dim(); ++i)
        if (!(lo[i] <= hi[i])) throw std::invalid_argument("Box: need lo <= hi");
}

bool Box::contains(const Point& p) const {
    if (p.dim() != lo.dim()) throw std::invalid_argument("Box::contains: dimension mismatch");
    for (int i = 0; i < lo.dim(); ++i)
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
}

bool BoxUnion::contains(const Point& p) const {
    for (const auto& b : boxes)
        if (b.contains(p)) return true;
    return false;
}

BoxUnion BoxUnion::interval(double a, double b) {
    BoxUnion u;
    u.boxes.emplace_back(Point(a), Point(b));
    return u;
}

namespace {

double box_distance(const Box& a, const Box& b) {
    double s = 0.0;
    for (int i = 0; i < a.lo.dim(); ++i) {
        const double gap = std::max({0.0, b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]});
        s += gap * gap;
    }
    return std::sqrt(s);
}

}  // namespace

double box_union_distance(const BoxUnion& a, const BoxUnion& b) {
    if (a.boxes.empty() || b.boxes.empty())
        throw std::invalid_argument("box_union_distance: empty union");
    double d = std::numeric_limits<double>::infinity();
    for (const auto& ba : a.boxes)
        for (const auto& bb : b.boxes) d = std::min(d, box_distance(ba, bb));
    return d;
}

OffDiagReport offdiag_norm(const BoxUnion& E, const BoxUnion& Eprime, double t,
                           int j, const QuadratureRule& rule, bool require_separation) {
    require_time(t);
    if (j != 0 && j != 1) throw std::invalid_argument("offdiag_norm: j must be 0 or 1");
    for (const auto* u : {&E, &Eprime})
        for (const auto& b : u->boxes)
            for (int i = 0; i < b.lo.dim(); ++i)
                if (std::abs(b.lo[i]) > 6.0 + 1e-9 || std::abs(b.hi[i]) > 6.0 + 1e-9)
                    throw std::invalid_argument(
                        "offdiag_norm: boxes must lie within |coordinate| <= 6");

    OffDiagReport rep;
    rep.t = t;
    rep.j = j;
    rep.separation = box_union_distance(E, Eprime);
    if (require_separation && !(rep.separation > 0.0))
        throw std::invalid_argument("offdiag_norm: sets must be positively separated");

    std::vector<int> rows_idx, cols_idx;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        if (Eprime.contains(rule.nodes[i])) rows_idx.push_back(static_cast<int>(i));
        if (E.contains(rule.nodes[i])) cols_idx.push_back(static_cast<int>(i));
    }
    rep.rows = static_cast<int>(rows_idx.size());
    rep.cols = static_cast<int>(cols_idx.size());
    if (rows_idx.empty() || cols_idx.empty()) {
        rep.measured_norm = 0.0;
        return rep;
    }

    Eigen::MatrixXd A(rep.rows, rep.cols);
    for (int r = 0; r < rep.rows; ++r) {
        const Point& xr = rule.nodes[rows_idx[r]];
        const long double lwr = logl((long double)rule.weights[rows_idx[r]]);
        for (int c = 0; c < rep.cols; ++c) {
            const Point& yc = rule.nodes[cols_idx[c]];
            const long double lwc = logl((long double)rule.weights[cols_idx[c]]);
            const long double lk = log_mehler_l(t, xr, yc, MehlerForm::product);
            double entry = static_cast<double>(expl(lk + 0.5L * (lwr + lwc)));
            if (j == 1)
                entry *= -t * static_cast<double>(dt_factor_l(t, xr, yc));
            A(r, c) = entry;
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    rep.measured_norm = svd.singularValues()(0);
    return rep;
}

}  // namespace ouc
