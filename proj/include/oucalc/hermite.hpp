#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oucalc/gaussian.hpp"

namespace ouc {

using Complex = std::complex<double>;

//! Monomial exponent tuple beta in N^n; the tensor eigenfunction h_beta has
//! eigenvalue |beta| = beta_1 + ... + beta_n for the number operator.
struct MultiIndex {
    std::array<int, 3> entries{0, 0, 0};
    int dimension = 1;

    int degree() const {
        int d = 0;
        for (int i = 0; i < dimension; ++i) d += entries[i];
        return d;
    }
    int operator[](int i) const { return entries[i]; }

    bool operator==(const MultiIndex& o) const {
        return dimension == o.dimension && entries == o.entries;
    }
};

//! All multi-indices of dimension n with degree <= N in graded lexicographic
//! order (by degree, then lexicographically within each degree).
std::vector<MultiIndex> multi_index_enum(int n, int N);

//! Value of the L^2(gamma)-normalized Hermite function h_k at x, via the
//! recurrence h_{k+1}(x) = (x h_k(x) - sqrt(k/2) h_{k-1}(x)) / sqrt((k+1)/2).
//! k is capped at 200; the recurrence is stable in this range
//! (|h_k(x)| e^{-x^2/2} stays below 1.087 for all k, x).
double hermite_eval(int k, double x);

//! h_0(x) .. h_kmax(x) in one pass.
std::vector<double> hermite_eval_all(int kmax, double x);

//! Tensor product h_beta(x) = prod_i h_{beta_i}(x_i).
double hermite_tensor_eval(const MultiIndex& beta, const Point& x);

//! Complex-valued samples of a function over a fixed spatial grid.
struct GridFunction {
    std::vector<Point> grid;
    std::vector<Complex> values;
    std::string note;  // free-form diagnostic tag, e.g. accuracy warnings

    void validate() const;
};

//! Coefficients of f = sum_beta coeff[beta] h_beta over all |beta| <= N,
//! aligned with multi_index_enum(dimension, truncation_degree).
struct SpectralCoeffs {
    int dimension = 1;
    int truncation_degree = 0;
    std::vector<MultiIndex> basis;
    std::vector<Complex> coeff;
    //! Set when the analysis rule could not integrate products h_beta h_beta'
    //! exactly, so the coefficients are a best approximation, not a projection.
    bool best_approximation = false;

    std::size_t size() const { return coeff.size(); }
    Complex at(const MultiIndex& beta) const;

    nlohmann::json to_json() const;
    static SpectralCoeffs from_json(const nlohmann::json& j);
};

//! Projection coefficients <f, h_beta> for |beta| <= N computed with the given
//! rule.  The samples must sit exactly on the rule's nodes.  The projection is
//! exact for polynomial data of degree <= N when the per-axis exactness of the
//! rule is at least 2N; otherwise best_approximation is set on the result.
SpectralCoeffs analyze(const GridFunction& f, const QuadratureRule& rule, int N);

//! Evaluate sum_beta c_beta h_beta at one point.
Complex synthesize_at(const SpectralCoeffs& c, const Point& x);

//! Evaluate on a grid.
GridFunction synthesize(const SpectralCoeffs& c, const std::vector<Point>& grid);

//! Apply a spectral multiplier: coefficient of h_beta is scaled by
//! factor(|beta|).  Exact modulo floating point (no quadrature involved).
SpectralCoeffs apply_spectral(const SpectralCoeffs& c,
                              const std::function<Complex(int)>& factor);

}  // namespace ouc
