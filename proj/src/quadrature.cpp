#include "ftrain/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ft {

Quadrature gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    Quadrature q;
    q.nodes.assign(n, 0.0);
    q.weights.assign(n, 0.0);

    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // i-th root counted from the right; Newton from the Chebyshev-like guess.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(z), derivative from the standard identity
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.nodes[i] = -z;
        q.nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0; // exact midpoint for odd rules
    return q;
}

Quadrature clenshaw_curtis(int n) {
    if (n < 1) throw std::invalid_argument("clenshaw_curtis: n >= 1 required");
    Quadrature q;
    if (n == 1) {
        q.nodes = {0.0};
        q.weights = {2.0};
        return q;
    }
    const int N = n - 1; // number of panels
    q.nodes.assign(n, 0.0);
    q.weights.assign(n, 0.0);
    for (int j = 0; j <= N; ++j) {
        const double theta = M_PI * j / N;
        // descending cos order flipped so nodes come out ascending
        q.nodes[N - j] = std::cos(theta);
        double s = 0.0;
        for (int k = 1; k <= N / 2; ++k) {
            const double b = (2 * k == N) ? 1.0 : 2.0;
            s += b * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        const double c = (j == 0 || j == N) ? 1.0 : 2.0;
        q.weights[N - j] = (c / N) * (1.0 - s);
    }
    return q;
}

Quadrature rule_exact_for(QuadRule rule, int deg) {
    if (deg < 0) deg = 0;
    switch (rule) {
        case QuadRule::GaussLegendre: return gauss_legendre(deg / 2 + 1);
        case QuadRule::ClenshawCurtis: return clenshaw_curtis(deg + 1);
    }
    throw std::logic_error("rule_exact_for: unknown rule");
}

} // namespace ft
