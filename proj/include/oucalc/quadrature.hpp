#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace ouc {

//! Nodes and weights of a quadrature rule from a symmetric Jacobi recurrence.
//!
//! For orthonormal polynomials p_{k+1}(x) = ((x - a_k) p_k(x) - b_k p_{k-1}(x)) / b_{k+1}
//! the nodes are the eigenvalues of the tridiagonal matrix with diagonal a_k and
//! off-diagonal b_k, and the weight of node i is mu0 * v_{0,i}^2 where v is the
//! normalized eigenvector (Golub-Welsch).
std::pair<std::vector<double>, std::vector<double>>
golub_welsch(const std::vector<double>& diag,
             const std::vector<double>& offdiag,
             double mu0);

//! n-point Gauss-Legendre nodes on [-1, 1] (cached per order, thread safe).
const std::vector<double>& gauss_legendre_nodes(int n);
//! Matching Gauss-Legendre weights (sum to 2).
const std::vector<double>& gauss_legendre_weights(int n);

//! One-dimensional quadrature grid: integrate f over the underlying interval
//! as sum_i weights[i] * f(points[i]).  Weights already include all Jacobians.
struct QuadGrid {
    std::vector<double> points;
    std::vector<double> weights;

    template <class F>
    auto integrate(F&& f) const {
        using R = decltype(f(points[0]) * 1.0);
        R acc{};
        for (std::size_t i = 0; i < points.size(); ++i)
            acc += weights[i] * f(points[i]);
        return acc;
    }
};

//! Composite Gauss-Legendre grid with `panels` equal panels on [a, b].
QuadGrid panel_grid(double a, double b, int panels, int order);

//! Composite Gauss-Legendre grid on [a, b], 0 < a < b, with panels equally
//! spaced in log t (roughly `per_decade` panels per decade).  Intended for
//! integrands that vary on a multiplicative scale.
QuadGrid log_panel_grid(double a, double b, int per_decade, int order);

//! Integrate f over [a, b] with a composite Gauss-Legendre rule.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, int order) {
    return panel_grid(a, b, panels, order).integrate(std::forward<F>(f));
}

//! Integrate f over [a, b] with log-spaced panels (a > 0).
template <class F>
auto integrate_log(F&& f, double a, double b, int per_decade, int order) {
    return log_panel_grid(a, b, per_decade, order).integrate(std::forward<F>(f));
}

//! Value of a log-panel integral together with the relative change observed
//! when the panel density is doubled.  Callers use the delta as a convergence
//! certificate.
struct CheckedIntegral {
    std::complex<double> value;
    double refinement_delta;  // |value - refined| / max(|refined|, floor)
};

template <class F>
CheckedIntegral integrate_log_checked(F&& f, double a, double b,
                                      int per_decade, int order,
                                      double floor = 1e-300) {
    std::complex<double> coarse = integrate_log(f, a, b, per_decade, order);
    std::complex<double> fine = integrate_log(f, a, b, 2 * per_decade, order);
    double scale = std::max(std::abs(fine), floor);
    return {fine, std::abs(coarse - fine) / scale};
}

}  // namespace ouc
