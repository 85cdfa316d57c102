#pragma once

#include <vector>

#include "oucalc/gaussian.hpp"
#include "oucalc/hermite.hpp"

namespace ouc {

//! Two algebraically equal ways to write the Mehler kernel
//! (q = e^{-t}, w = 1 - e^{-2t}):
//!   product: w^{-n/2} exp(-q|x-y|^2/w) exp(q(|x|^2+|y|^2)/(1+q))
//!   shifted: w^{-n/2} exp(-|qx-y|^2/w) exp(|y|^2)
enum class MehlerForm { product, shifted };

//! log M_t(x, y).  All exponent arithmetic is done in extended precision and
//! combined before exponentiation; 1 - e^{-2t} goes through expm1, so small t
//! (down to 1e-6 and below) stays accurate.
double log_mehler_kernel(double t, const Point& x, const Point& y,
                         MehlerForm form = MehlerForm::product);

//! M_t(x, y) itself; requires t > 0.
double mehler_kernel(double t, const Point& x, const Point& y,
                     MehlerForm form = MehlerForm::product);

//! The smooth factor F with d/dt M_t = F * M_t:
//!   F = -n q^2/w + |x-y|^2 q(1+q^2)/w^2 - (|x|^2+|y|^2) q/(1+q)^2.
double mehler_dt_factor(double t, const Point& x, const Point& y);

//! d/dt M_t(x, y) in closed form.
double mehler_dt(double t, const Point& x, const Point& y);

//! Kernel route for e^{-tL}: out(x) = sum_i w_i M_t(x, y_i) f(y_i).
//! The accuracy note on the result is set when t < 0.05, where the kernel
//! peaks between the fixed nodes and the quadrature loses digits.
GridFunction semigroup_apply_kernel(const GridFunction& f, double t,
                                    const QuadratureRule& rule);
GridFunction semigroup_apply_kernel(const GridFunction& f, double t,
                                    const QuadratureRule& rule,
                                    const std::vector<Point>& eval_grid);

//! Pointwise Gaussian-envelope ratio
//!   |t^j (d/dt)^j M_t(x,y)| / [ t^{-n/2} exp(-|x-y|^2/(8t)) exp((|x|^2+|y|^2)/2) ]
//! for 0 < t <= 1 and j in {0, 1}.  Sweeping it over a grid produces the
//! empirical envelope constant.
double kernelest_ratio(double t, const Point& x, const Point& y, int j);

//! Time-dilation comparison for alpha >= 1, 0 < t <= 1:
//!   j = 0:  M_{t/alpha}(x,y) / [ exp(-|x-y|^2/(c t)) exp(alpha t min(|x|^2,|y|^2)) M_t(x,y) ]
//!   j = 1:  |s d/ds M_s|_{s = t/alpha} / [ exp(alpha t min(|x|^2,|y|^2)) M_t(x,y) ]
//! c is a probe constant (c = +infinity drops the Gaussian factor).
double timedilation_ratio(double alpha, double t, const Point& x, const Point& y,
                          int j, double c_probe = 8.0);

//! Slack of the two-sided dilation inequality
//!   |x-y|^2 <= e * max(|e^{-t}x - y|^2, |x - e^{-t}y|^2),  0 < t <= 1;
//! returns the right side minus the left side (claimed nonnegative).
double dilation_max_inequality_slack(double t, const Point& x, const Point& y);

//! Axis-aligned closed box lo <= x <= hi.
struct Box {
    Point lo, hi;

    Box(const Point& lo_, const Point& hi_);
    bool contains(const Point& p) const;
};

//! Finite union of boxes.
struct BoxUnion {
    std::vector<Box> boxes;

    bool contains(const Point& p) const;
    static BoxUnion interval(double a, double b);  // n = 1 convenience
};

//! Euclidean distance between two box unions (0 if they touch or overlap).
double box_union_distance(const BoxUnion& a, const BoxUnion& b);

//! One measured off-diagonal operator norm: the cut-down operator
//! 1_{E'} (tL)^j e^{-tL} 1_E discretized in the gamma-weighted node basis of
//! the rule (conjugation by sqrt(weights) makes the matrix 2-norm the L^2(gamma)
//! operator norm); measured_norm is its largest singular value.
struct OffDiagReport {
    double t = 0.0;
    int j = 0;
    double separation = 0.0;
    double measured_norm = 0.0;
    int rows = 0;  // rule nodes retained in E'
    int cols = 0;  // rule nodes retained in E
};

//! Boxes must lie within |coordinate| <= 6 so the rule resolves the kernel.
//! With require_separation, overlapping or touching E, E' are rejected.
OffDiagReport offdiag_norm(const BoxUnion& E, const BoxUnion& Eprime, double t,
                           int j, const QuadratureRule& rule,
                           bool require_separation = false);

}  // namespace ouc
