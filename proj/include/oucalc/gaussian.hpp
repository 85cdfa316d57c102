#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace ouc {

//! Point of R^n for small n (1 <= n <= 3).  Value type, cheap to copy.
class Point {
  public:
    Point() : n_(1), c_{0.0, 0.0, 0.0} {}
    explicit Point(double x) : n_(1), c_{x, 0.0, 0.0} {}
    Point(double x, double y) : n_(2), c_{x, y, 0.0} {}
    Point(double x, double y, double z) : n_(3), c_{x, y, z} {}
    Point(const std::vector<double>& coords);

    static Point zero(int n);

    int dim() const { return n_; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }

    double squared_norm() const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += c_[i] * c_[i];
        return s;
    }
    double norm() const;

    std::vector<double> coords() const { return {c_.begin(), c_.begin() + n_}; }

    friend Point operator+(const Point& a, const Point& b);
    friend Point operator-(const Point& a, const Point& b);
    friend Point operator*(double s, const Point& a);
    friend double dot(const Point& a, const Point& b);
    friend bool operator==(const Point& a, const Point& b);

  private:
    int n_;
    std::array<double, 3> c_;
};

double distance(const Point& a, const Point& b);

//! Euclidean ball; radius must be strictly positive.
struct Ball {
    Point center;
    double radius;

    Ball(const Point& c, double r);
};

//! The admissibility function m(x) = min(1, 1/|x|).
double admissibility(const Point& x);

//! Dyadic discretization of m: 1 on |x| < 1 and 2^{-k} on 2^{k-1} <= |x| < 2^k.
//! Satisfies m_tilde <= m <= 2 m_tilde everywhere.
double discretized_admissibility(const Point& x);

//! Balls B(c, r) with 0 < r <= alpha * scale(c); scale is m or its dyadic
//! discretization m_tilde.
struct AdmissibleBallFamily {
    double alpha = 1.0;
    bool use_discretized = false;

    bool contains(const Ball& b) const;
};

//! Tensor quadrature rule for the Gaussian measure (or any node/weight family
//! used to integrate against it).  `exactness_degree` is the per-axis
//! polynomial degree integrated exactly.
struct QuadratureRule {
    int dimension = 1;
    int order = 0;  // per-axis 1-d order for tensor rules; 0 if not a tensor rule
    std::vector<Point> nodes;
    std::vector<double> weights;
    int exactness_degree = -1;

    std::size_t size() const { return nodes.size(); }

    nlohmann::json to_json() const;
    static QuadratureRule from_json(const nlohmann::json& j);
};

//! Tensor Gauss-Hermite rule of the given per-axis order for the standard
//! Gaussian measure dgamma = pi^{-n/2} e^{-|x|^2} dx.  Exact on per-axis
//! degree <= 2*order - 1; order is capped at 256 and dim at 3.
QuadratureRule gauss_hermite_rule(int order, int dim = 1);

//! gamma(B): Gaussian measure of a ball.  n = 1 uses the error function in
//! closed form; n = 2, 3 integrate the radial profile with a smooth
//! polar/spherical quadrature of the given order.
double gaussian_measure_ball(const Ball& b, int radial_order = 64);

//! One doubling comparison gamma(lambda B) / gamma(B) against the admissible
//! bound exp(4 lambda^2 alpha^2).
struct DoublingResult {
    double ratio;
    double bound;
    bool holds;
};

//! Requires B in the alpha-admissible family (radius <= alpha * m(center))
//! and lambda >= 2; the bound is not claimed outside that range.
DoublingResult doubling_ratio(const Ball& b, double lambda, double alpha,
                              int radial_order = 64);

//! Quadrature rule localized to a ball, integrating f dgamma over B:
//! mapped Gauss-Legendre in n = 1, polar in n = 2, spherical in n = 3.
QuadratureRule ball_rule(const Ball& b, int order);

}  // namespace ouc
