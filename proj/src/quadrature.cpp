#include "qnm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace qnm {

QuadGrid gauss_legendre(int n, double a, double b) {
    QuadGrid g;
    g.x.resize(n);
    g.w.resize(n);
    const int m = (n + 1) / 2;
    for (int k = 0; k < m; ++k) {
        // Newton on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        g.x[k] = x;
        g.w[k] = w;
        g.x[n - 1 - k] = -x;
        g.w[n - 1 - k] = w;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < n; ++k) {
        g.x[k] = mid - half * g.x[k];  // ascending in [a,b]
        g.w[k] *= half;
    }
    return g;
}

QuadGrid panels_uniform(double a, double b, int count, int n) {
    QuadGrid g;
    const double h = (b - a) / count;
    for (int p = 0; p < count; ++p) g.append(gauss_legendre(n, a + p * h, a + (p + 1) * h));
    return g;
}

QuadGrid panels_graded_to(double a, double b, double inner, double ratio, int n) {
    // Build panel edges from b backwards: widths inner, inner*ratio, ...
    std::vector<double> edges{b};
    double width = inner, pos = b;
    while (pos > a) {
        pos = std::max(a, pos - width);
        edges.push_back(pos);
        width *= ratio;
    }
    QuadGrid g;
    for (std::size_t i = edges.size(); i-- > 1;) g.append(gauss_legendre(n, edges[i], edges[i - 1]));
    return g;
}

}  // namespace qnm
