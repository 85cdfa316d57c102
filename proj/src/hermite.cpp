#include "oucalc/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ouc {

namespace {

constexpr int kMaxDegree = 200;

void enum_rec(int n, int N, int axis, int remaining, MultiIndex& cur,
              std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        cur.entries[axis] = remaining;
        out.push_back(cur);
        cur.entries[axis] = 0;
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur.entries[axis] = e;
        enum_rec(n, N, axis + 1, remaining - e, cur, out);
    }
    cur.entries[axis] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_index_enum(int n, int N) {
    if (n < 1 || n > 3) throw std::invalid_argument("multi_index_enum: dimension must be 1..3");
    if (N < 0 || N > kMaxDegree)
        throw std::invalid_argument("multi_index_enum: degree out of range");
    // Guard the combinatorial size before allocating anything.
    double count = 1.0;
    for (int i = 1; i <= n; ++i) count = count * (N + i) / i;
    if (count > 1e5) throw std::invalid_argument("multi_index_enum: truncation too large");

    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    MultiIndex cur;
    cur.dimension = n;
    for (int d = 0; d <= N; ++d) enum_rec(n, N, 0, d, cur, out);
    return out;
}

double hermite_eval(int k, double x) {
    if (k < 0 || k > kMaxDegree) throw std::invalid_argument("hermite_eval: k out of range");
    double hm = 0.0, h = 1.0;  // h_{-1}, h_0
    for (int j = 0; j < k; ++j) {
        const double hp = (x * h - std::sqrt(0.5 * j) * hm) / std::sqrt(0.5 * (j + 1));
        hm = h;
        h = hp;
    }
    return h;
}

std::vector<double> hermite_eval_all(int kmax, double x) {
    if (kmax < 0 || kmax > kMaxDegree)
        throw std::invalid_argument("hermite_eval_all: kmax out of range");
    std::vector<double> out(kmax + 1);
    out[0] = 1.0;
    if (kmax == 0) return out;
    out[1] = std::sqrt(2.0) * x;
    for (int j = 1; j < kmax; ++j)
        out[j + 1] = (x * out[j] - std::sqrt(0.5 * j) * out[j - 1]) / std::sqrt(0.5 * (j + 1));
    return out;
}

double hermite_tensor_eval(const MultiIndex& beta, const Point& x) {
    if (beta.dimension != x.dim())
        throw std::invalid_argument("hermite_tensor_eval: dimension mismatch");
    double v = 1.0;
    for (int i = 0; i < beta.dimension; ++i) v *= hermite_eval(beta.entries[i], x[i]);
    return v;
}

void GridFunction::validate() const {
    if (grid.size() != values.size())
        throw std::invalid_argument("GridFunction: grid/values length mismatch");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("GridFunction: non-finite value");
}

Complex SpectralCoeffs::at(const MultiIndex& beta) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == beta) return coeff[i];
    throw std::out_of_range("SpectralCoeffs::at: index not in basis");
}

nlohmann::json SpectralCoeffs::to_json() const {
    nlohmann::json j;
    j["dimension"] = dimension;
    j["truncation_degree"] = truncation_degree;
    j["best_approximation"] = best_approximation;
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        nlohmann::json e;
        std::vector<int> beta(basis[i].entries.begin(),
                              basis[i].entries.begin() + basis[i].dimension);
        e["beta"] = beta;
        e["c"] = {coeff[i].real(), coeff[i].imag()};
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

SpectralCoeffs SpectralCoeffs::from_json(const nlohmann::json& j) {
    SpectralCoeffs c;
    c.dimension = j.at("dimension").get<int>();
    c.truncation_degree = j.at("truncation_degree").get<int>();
    c.best_approximation = j.value("best_approximation", false);
    c.basis = multi_index_enum(c.dimension, c.truncation_degree);
    c.coeff.assign(c.basis.size(), Complex(0.0, 0.0));
    std::size_t i = 0;
    for (const auto& e : j.at("entries")) {
        if (i >= c.basis.size()) throw std::invalid_argument("SpectralCoeffs: too many entries");
        auto beta = e.at("beta").get<std::vector<int>>();
        if (static_cast<int>(beta.size()) != c.dimension)
            throw std::invalid_argument("SpectralCoeffs: beta dimension mismatch");
        for (int a = 0; a < c.dimension; ++a)
            if (beta[a] != c.basis[i].entries[a])
                throw std::invalid_argument("SpectralCoeffs: entries out of order");
        auto re_im = e.at("c").get<std::vector<double>>();
        c.coeff[i] = Complex(re_im.at(0), re_im.at(1));
        ++i;
    }
    if (i != c.basis.size()) throw std::invalid_argument("SpectralCoeffs: missing entries");
    return c;
}

namespace {

// Per-node values of all 1-d Hermite functions up to degree N along each axis,
// laid out as table[axis][node * (N+1) + k].
std::vector<std::vector<double>> axis_tables(const std::vector<Point>& grid, int n, int N) {
    std::vector<std::vector<double>> tables(n);
    for (int a = 0; a < n; ++a) {
        tables[a].resize(grid.size() * (N + 1));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto vals = hermite_eval_all(N, grid[i][a]);
            std::copy(vals.begin(), vals.end(), tables[a].begin() + i * (N + 1));
        }
    }
    return tables;
}

}  // namespace

SpectralCoeffs analyze(const GridFunction& f, const QuadratureRule& rule, int N) {
    f.validate();
    if (f.grid.size() != rule.nodes.size())
        throw std::invalid_argument("analyze: samples do not match the rule's nodes");
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        if (distance(f.grid[i], rule.nodes[i]) > 1e-12)
            throw std::invalid_argument("analyze: samples do not sit on the rule's nodes");
    const int n = rule.dimension;

    SpectralCoeffs c;
    c.dimension = n;
    c.truncation_degree = N;
    c.basis = multi_index_enum(n, N);
    c.coeff.assign(c.basis.size(), Complex(0.0, 0.0));
    c.best_approximation = rule.exactness_degree < 2 * N;

    auto tables = axis_tables(rule.nodes, n, N);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Complex wf = rule.weights[i] * f.values[i];
        for (std::size_t b = 0; b < c.basis.size(); ++b) {
            double hb = 1.0;
            for (int a = 0; a < n; ++a)
                hb *= tables[a][i * (N + 1) + c.basis[b].entries[a]];
            c.coeff[b] += wf * hb;
        }
    }
    return c;
}

Complex synthesize_at(const SpectralCoeffs& c, const Point& x) {
    if (x.dim() != c.dimension) throw std::invalid_argument("synthesize_at: dimension mismatch");
    const int N = c.truncation_degree;
    std::array<std::vector<double>, 3> axis_vals;
    for (int a = 0; a < c.dimension; ++a) axis_vals[a] = hermite_eval_all(N, x[a]);
    Complex acc(0.0, 0.0);
    for (std::size_t b = 0; b < c.basis.size(); ++b) {
        double hb = 1.0;
        for (int a = 0; a < c.dimension; ++a) hb *= axis_vals[a][c.basis[b].entries[a]];
        acc += c.coeff[b] * hb;
    }
    return acc;
}

GridFunction synthesize(const SpectralCoeffs& c, const std::vector<Point>& grid) {
    GridFunction g;
    g.grid = grid;
    g.values.reserve(grid.size());
    for (const auto& x : grid) g.values.push_back(synthesize_at(c, x));
    return g;
}

SpectralCoeffs apply_spectral(const SpectralCoeffs& c,
                              const std::function<Complex(int)>& factor) {
    SpectralCoeffs out = c;
    for (std::size_t b = 0; b < out.basis.size(); ++b)
        out.coeff[b] *= factor(out.basis[b].degree());
    return out;
}

}  // namespace ouc
