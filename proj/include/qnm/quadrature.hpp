#pragma once
// Gauss-Legendre panels for the windowed/oscillatory integrals.

#include <cstddef>
#include <vector>

namespace qnm {

struct QuadGrid {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
    void append(const QuadGrid& o) {
        x.insert(x.end(), o.x.begin(), o.x.end());
        w.insert(w.end(), o.w.begin(), o.w.end());
    }
};

// n-point Gauss-Legendre rule on [a, b].
QuadGrid gauss_legendre(int n, double a, double b);

// count equal panels over [a, b], n points each.
QuadGrid panels_uniform(double a, double b, int count, int n);

// Panels geometrically graded toward b (widths shrink by `ratio` per panel,
// innermost width ~ `inner`). Used for kernel singularities at an endpoint.
QuadGrid panels_graded_to(double a, double b, double inner, double ratio, int n);

template <class F>
double integrate(const QuadGrid& g, F&& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(g.x[i]);
    return s;
}

}  // namespace qnm
