#include "oucalc/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ouc {

namespace {

// Orthonormal-polynomial recurrence p_{k+1} = ((x - a_k) p_k - b_k p_{k-1}) / b_{k+1}
// evaluated together with its derivative.  Returns the Christoffel sum
// S = sum_{k<n} p_k(x)^2 plus p_n and p_n' for Newton polishing.  Values that
// overflow propagate as inf, which the caller turns into a zero weight (the
// true weight underflows there anyway).
struct RecurrenceEval {
    double christoffel_sum;
    double p_end, dp_end;
};

RecurrenceEval eval_recurrence(const std::vector<double>& a, const std::vector<double>& b,
                               double mu0, double x) {
    const int n = static_cast<int>(a.size());
    double pm1 = 0.0, p = 1.0 / std::sqrt(mu0);
    double dpm1 = 0.0, dp = 0.0;
    double sum = p * p;
    for (int k = 0; k < n; ++k) {
        const double bk = k > 0 ? b[k - 1] : 0.0;
        const double bk1 = k < n - 1 ? b[k] : 1.0;  // p_n only needs a consistent scale
        const double pn = ((x - a[k]) * p - bk * pm1) / bk1;
        const double dpn = (p + (x - a[k]) * dp - bk * dpm1) / bk1;
        pm1 = p;
        p = pn;
        dpm1 = dp;
        dp = dpn;
        if (k < n - 1) {
            sum += p * p;
            if (!std::isfinite(sum)) return {std::numeric_limits<double>::infinity(), 0.0, 1.0};
        }
    }
    return {sum, p, dp};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>>
golub_welsch(const std::vector<double>& diag,
             const std::vector<double>& offdiag,
             double mu0) {
    const int n = static_cast<int>(diag.size());
    if (n < 1) throw std::invalid_argument("golub_welsch: empty recurrence");
    if (static_cast<int>(offdiag.size()) != n - 1)
        throw std::invalid_argument("golub_welsch: offdiag must have size n-1");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        J(i, i + 1) = offdiag[i];
        J(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: eigensolver failed");

    // Eigenvalues give the nodes; two Newton steps on p_n sharpen them to
    // machine precision.  Weights come from the Christoffel function
    // w_i = 1 / sum_{k<n} p_k(x_i)^2, which stays relatively accurate down to
    // the extreme nodes (the eigenvector-based formula mu0 * v0^2 loses all
    // relative accuracy once v0 drops below sqrt of machine epsilon).
    std::vector<double> nodes(n), weights(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        for (int step = 0; step < 2; ++step) {
            RecurrenceEval r = eval_recurrence(diag, offdiag, mu0, x);
            if (!std::isfinite(r.christoffel_sum) || r.dp_end == 0.0) break;
            const double dx = r.p_end / r.dp_end;
            if (!std::isfinite(dx)) break;
            x -= dx;
        }
        RecurrenceEval r = eval_recurrence(diag, offdiag, mu0, x);
        nodes[i] = x;
        weights[i] = std::isfinite(r.christoffel_sum) ? 1.0 / r.christoffel_sum : 0.0;
    }
    return {nodes, weights};
}

namespace {

// Legendre weight on [-1,1]: a_k = 0, b_k = k / sqrt(4k^2 - 1), mu0 = 2.
std::pair<std::vector<double>, std::vector<double>> make_legendre(int n) {
    std::vector<double> a(n, 0.0), b(n - 1);
    for (int k = 1; k < n; ++k) b[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(a, b, 2.0);
}

struct LegendreCache {
    std::mutex mu;
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> rules;

    const std::pair<std::vector<double>, std::vector<double>>& get(int n) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = rules.find(n);
        if (it == rules.end()) it = rules.emplace(n, make_legendre(n)).first;
        return it->second;
    }
};

LegendreCache& legendre_cache() {
    static LegendreCache cache;
    return cache;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
    return legendre_cache().get(n).first;
}

const std::vector<double>& gauss_legendre_weights(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("gauss_legendre: order out of range");
    return legendre_cache().get(n).second;
}

QuadGrid panel_grid(double a, double b, int panels, int order) {
    if (!(a < b)) throw std::invalid_argument("panel_grid: need a < b");
    if (panels < 1) throw std::invalid_argument("panel_grid: need at least one panel");
    const auto& xs = gauss_legendre_nodes(order);
    const auto& ws = gauss_legendre_weights(order);

    QuadGrid g;
    g.points.reserve(static_cast<std::size_t>(panels) * order);
    g.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (int i = 0; i < order; ++i) {
            g.points.push_back(mid + 0.5 * h * xs[i]);
            g.weights.push_back(0.5 * h * ws[i]);
        }
    }
    return g;
}

QuadGrid log_panel_grid(double a, double b, int per_decade, int order) {
    if (!(a > 0.0 && a < b)) throw std::invalid_argument("log_panel_grid: need 0 < a < b");
    if (per_decade < 1) throw std::invalid_argument("log_panel_grid: per_decade < 1");
    const double la = std::log(a), lb = std::log(b);
    const int panels =
        std::max(1, static_cast<int>(std::ceil((lb - la) / std::log(10.0) * per_decade)));
    const auto& xs = gauss_legendre_nodes(order);
    const auto& ws = gauss_legendre_weights(order);

    // Panels are uniform in u = log t; the Jacobian dt = e^u du is folded into
    // the weights so callers integrate plain f(t) dt.
    QuadGrid g;
    g.points.reserve(static_cast<std::size_t>(panels) * order);
    g.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double h = (lb - la) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = la + p * h;
        const double mid = lo + 0.5 * h;
        for (int i = 0; i < order; ++i) {
            const double u = mid + 0.5 * h * xs[i];
            const double t = std::exp(u);
            g.points.push_back(t);
            g.weights.push_back(0.5 * h * ws[i] * t);
        }
    }
    return g;
}

}  // namespace ouc
