#include "oucalc/gaussian.hpp"

#include "oucalc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ouc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

}  // namespace

Point::Point(const std::vector<double>& coords) : n_(static_cast<int>(coords.size())), c_{} {
    if (n_ < 1 || n_ > 3) throw std::invalid_argument("Point: dimension must be 1..3");
    for (int i = 0; i < n_; ++i) {
        require_finite(coords[i], "Point");
        c_[i] = coords[i];
    }
}

Point Point::zero(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("Point::zero: dimension must be 1..3");
    Point p;
    p.n_ = n;
    p.c_ = {0.0, 0.0, 0.0};
    return p;
}

double Point::norm() const { return std::sqrt(squared_norm()); }

Point operator+(const Point& a, const Point& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Point: dimension mismatch");
    Point r = a;
    for (int i = 0; i < a.n_; ++i) r.c_[i] += b.c_[i];
    return r;
}

Point operator-(const Point& a, const Point& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Point: dimension mismatch");
    Point r = a;
    for (int i = 0; i < a.n_; ++i) r.c_[i] -= b.c_[i];
    return r;
}

Point operator*(double s, const Point& a) {
    Point r = a;
    for (int i = 0; i < a.n_; ++i) r.c_[i] *= s;
    return r;
}

double dot(const Point& a, const Point& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Point: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.n_; ++i) s += a.c_[i] * b.c_[i];
    return s;
}

bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

Ball::Ball(const Point& c, double r) : center(c), radius(r) {
    require_finite(r, "Ball");
    if (!(r > 0.0)) throw std::invalid_argument("Ball: radius must be positive");
}

double admissibility(const Point& x) {
    const double r = x.norm();
    return r <= 1.0 ? 1.0 : 1.0 / r;
}

double discretized_admissibility(const Point& x) {
    const double r = x.norm();
    if (r < 1.0) return 1.0;
    // k >= 1 with 2^{k-1} <= r < 2^k; exact powers of two land on the lower edge.
    const int k = static_cast<int>(std::floor(std::log2(r))) + 1;
    return std::ldexp(1.0, -k);
}

bool AdmissibleBallFamily::contains(const Ball& b) const {
    const double scale =
        use_discretized ? discretized_admissibility(b.center) : admissibility(b.center);
    return b.radius > 0.0 && b.radius <= alpha * scale;
}

nlohmann::json QuadratureRule::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension;
    j["order"] = order;
    j["exactness_degree"] = exactness_degree;
    nlohmann::json ns = nlohmann::json::array();
    for (const auto& p : nodes) ns.push_back(p.coords());
    j["nodes"] = std::move(ns);
    j["weights"] = weights;
    return j;
}

QuadratureRule QuadratureRule::from_json(const nlohmann::json& j) {
    QuadratureRule r;
    r.dimension = j.at("dimension").get<int>();
    r.order = j.at("order").get<int>();
    r.exactness_degree = j.at("exactness_degree").get<int>();
    for (const auto& jn : j.at("nodes"))
        r.nodes.emplace_back(jn.get<std::vector<double>>());
    r.weights = j.at("weights").get<std::vector<double>>();
    if (r.nodes.size() != r.weights.size())
        throw std::invalid_argument("QuadratureRule: node/weight length mismatch");
    return r;
}

QuadratureRule gauss_hermite_rule(int order, int dim) {
    if (order < 1 || order > 256)
        throw std::invalid_argument("gauss_hermite_rule: order must be in 1..256");
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("gauss_hermite_rule: dim must be 1..3");
    double total = std::pow(static_cast<double>(order), dim);
    if (total > 4.0e6)
        throw std::invalid_argument("gauss_hermite_rule: tensor rule too large");

    // Jacobi recurrence of the orthonormal Hermite family for
    // dgamma = pi^{-1/2} e^{-x^2} dx: zero diagonal, b_k = sqrt(k/2), mu0 = 1.
    std::vector<double> a(order, 0.0), b(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) b[k - 1] = std::sqrt(0.5 * k);
    auto [x1, w1] = golub_welsch(a, b, 1.0);

    QuadratureRule rule;
    rule.dimension = dim;
    rule.order = order;
    rule.exactness_degree = 2 * order - 1;
    const std::size_t m = static_cast<std::size_t>(order);
    if (dim == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            rule.nodes.emplace_back(x1[i]);
            rule.weights.push_back(w1[i]);
        }
    } else if (dim == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                rule.nodes.emplace_back(x1[i], x1[j]);
                rule.weights.push_back(w1[i] * w1[j]);
            }
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k) {
                    rule.nodes.emplace_back(x1[i], x1[j], x1[k]);
                    rule.weights.push_back(w1[i] * w1[j] * w1[k]);
                }
    }
    return rule;
}

namespace {

// n = 2: gamma(B(c e1, r)) = (1/pi) int_0^r int_0^{2pi}
//        rho exp(-(c^2 + rho^2 + 2 c rho cos(theta))) dtheta drho.
// The angular factor is smooth and periodic, so the trapezoid rule converges
// spectrally; the exponent is <= 0, so there is no overflow for any c, r.
double measure_ball_2d(double c, double r, int radial_order) {
    const int m_theta = std::max(16, 2 * radial_order);
    const auto& xs = gauss_legendre_nodes(radial_order);
    const auto& ws = gauss_legendre_weights(radial_order);
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        const double rho = 0.5 * r * (xs[i] + 1.0);
        const double wr = 0.5 * r * ws[i];
        double ang = 0.0;
        for (int k = 0; k < m_theta; ++k) {
            const double th = 2.0 * kPi * k / m_theta;
            ang += std::exp(-(c * c + rho * rho + 2.0 * c * rho * std::cos(th)));
        }
        ang *= 2.0 * kPi / m_theta;
        total += wr * rho * ang;
    }
    return total / kPi;
}

// n = 3: after the angular integral,
//   gamma(B(c e1, r)) = (1/(sqrt(pi) c)) int_0^r rho (e^{-(rho-c)^2} - e^{-(rho+c)^2}) drho,
// with the smooth c -> 0 limit (4/sqrt(pi)) int_0^r rho^2 e^{-rho^2} drho.
double measure_ball_3d(double c, double r, int radial_order) {
    const auto& xs = gauss_legendre_nodes(radial_order);
    const auto& ws = gauss_legendre_weights(radial_order);
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        const double rho = 0.5 * r * (xs[i] + 1.0);
        const double wr = 0.5 * r * ws[i];
        double val;
        if (c < 1e-10) {
            val = 4.0 / std::sqrt(kPi) * rho * rho * std::exp(-rho * rho);
        } else {
            const double dm = rho - c, dp = rho + c;
            val = rho * (std::exp(-dm * dm) - std::exp(-dp * dp)) / (std::sqrt(kPi) * c);
        }
        total += wr * val;
    }
    return total;
}

}  // namespace

double gaussian_measure_ball(const Ball& b, int radial_order) {
    if (radial_order < 4 || radial_order > 512)
        throw std::invalid_argument("gaussian_measure_ball: radial_order out of range");
    const double c = b.center.norm();
    const double r = b.radius;
    switch (b.center.dim()) {
        case 1:
            // erf(c +- r) both round to 1 once c - r > ~6, so far out the
            // difference must go through the complementary function.
            if (c - r > 4.0) return 0.5 * (std::erfc(c - r) - std::erfc(c + r));
            return 0.5 * (std::erf(c + r) - std::erf(c - r));
        case 2:
            return measure_ball_2d(c, r, radial_order);
        default:
            return measure_ball_3d(c, r, radial_order);
    }
}

DoublingResult doubling_ratio(const Ball& b, double lambda, double alpha, int radial_order) {
    AdmissibleBallFamily fam{alpha, false};
    if (!fam.contains(b))
        throw std::invalid_argument("doubling_ratio: ball is not alpha-admissible");
    if (!(lambda >= 2.0))
        throw std::invalid_argument("doubling_ratio: bound only claimed for lambda >= 2");
    const double num = gaussian_measure_ball(Ball(b.center, lambda * b.radius), radial_order);
    const double den = gaussian_measure_ball(b, radial_order);
    DoublingResult res;
    res.ratio = num / den;
    res.bound = std::exp(4.0 * lambda * lambda * alpha * alpha);
    res.holds = res.ratio <= res.bound * (1.0 + 1e-12);
    return res;
}

QuadratureRule ball_rule(const Ball& b, int order) {
    if (order < 2 || order > 64) throw std::invalid_argument("ball_rule: order out of range");
    const int n = b.center.dim();
    const double r = b.radius;
    const auto& xs = gauss_legendre_nodes(order);
    const auto& ws = gauss_legendre_weights(order);

    QuadratureRule rule;
    rule.dimension = n;
    rule.order = order;
    rule.exactness_degree = -1;

    if (n == 1) {
        for (int i = 0; i < order; ++i) {
            const double y = b.center[0] + r * xs[i];
            rule.nodes.emplace_back(y);
            rule.weights.push_back(r * ws[i] * std::exp(-y * y) / std::sqrt(kPi));
        }
        return rule;
    }
    if (n == 2) {
        const int m_theta = 2 * order;
        for (int i = 0; i < order; ++i) {
            const double rho = 0.5 * r * (xs[i] + 1.0);
            const double wr = 0.5 * r * ws[i];
            for (int k = 0; k < m_theta; ++k) {
                const double th = 2.0 * kPi * k / m_theta;
                Point y(b.center[0] + rho * std::cos(th), b.center[1] + rho * std::sin(th));
                rule.nodes.push_back(y);
                rule.weights.push_back(wr * rho * (2.0 * kPi / m_theta) *
                                       std::exp(-y.squared_norm()) / kPi);
            }
        }
        return rule;
    }
    // n = 3: Gauss-Legendre in radius and polar cosine, trapezoid in azimuth.
    const int m_theta = 2 * order;
    for (int i = 0; i < order; ++i) {
        const double rho = 0.5 * r * (xs[i] + 1.0);
        const double wr = 0.5 * r * ws[i];
        for (int j = 0; j < order; ++j) {
            const double u = xs[j];
            const double wu = ws[j];
            const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int k = 0; k < m_theta; ++k) {
                const double th = 2.0 * kPi * k / m_theta;
                Point y(b.center[0] + rho * s * std::cos(th),
                        b.center[1] + rho * s * std::sin(th), b.center[2] + rho * u);
                rule.nodes.push_back(y);
                rule.weights.push_back(wr * wu * rho * rho * (2.0 * kPi / m_theta) *
                                       std::exp(-y.squared_norm()) / std::pow(kPi, 1.5));
            }
        }
    }
    return rule;
}

}  // namespace ouc
