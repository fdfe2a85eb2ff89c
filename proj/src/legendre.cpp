#include "ftrain/legendre.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>

namespace ft {
namespace legendre {

double clenshaw(const std::vector<double>& c, double t) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 0) return 0.0;
    if (n == 0) return c[0];
    // P_{k+1} = alpha_k(t) P_k + beta_k P_{k-1},
    // alpha_k = (2k+1) t / (k+1), beta_k = -k / (k+1)
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 1; --k) {
        const double alpha = (2.0 * k + 1.0) * t / (k + 1.0);
        const double beta_next = -(k + 1.0) / (k + 2.0);
        const double b0 = c[k] + alpha * b1 + beta_next * b2;
        b2 = b1;
        b1 = b0;
    }
    // S = c0 + alpha_0(t) b1 + beta_1 b2 with P_0 = 1
    return c[0] + t * b1 - 0.5 * b2;
}

void eval_all(int n, double t, std::vector<double>& out) {
    out.resize(n + 1);
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = t;
    for (int k = 2; k <= n; ++k)
        out[k] = ((2.0 * k - 1.0) * t * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

std::vector<double> derivative(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {0.0};
    // (2l+1) P_l = P'_{l+1} - P'_{l-1}  =>  out[l] = (2l+1) * (c[l+1] + c[l+3] + ...)
    std::vector<double> s(n + 2, 0.0);
    std::vector<double> out(n, 0.0);
    for (int l = n - 1; l >= 0; --l) {
        s[l] = c[l + 1] + s[l + 2];
        out[l] = (2.0 * l + 1.0) * s[l];
    }
    return out;
}

std::vector<double> roots(const std::vector<double>& c) {
    // trim trailing near-zero coefficients
    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, std::abs(v));
    if (cmax == 0.0) return {};
    int n = static_cast<int>(c.size()) - 1;
    while (n > 0 && std::abs(c[n]) <= 1e-14 * cmax) --n;
    if (n < 1) return {};
    if (n == 1) {
        const double t = -c[0] / c[1];
        if (std::abs(t) <= 1.0 + 1e-6) return {std::clamp(t, -1.0, 1.0)};
        return {};
    }

    // symmetrized comrade matrix for the Legendre recurrence
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> scl(n);
    for (int k = 0; k < n; ++k) scl[k] = 1.0 / std::sqrt(2.0 * k + 1.0);
    for (int k = 0; k + 1 < n; ++k) {
        const double v = (k + 1.0) * scl[k] * scl[k + 1];
        m(k, k + 1) = v;
        m(k + 1, k) = v;
    }
    const double f = n / (2.0 * n - 1.0);
    for (int i = 0; i < n; ++i)
        m(i, n - 1) -= (c[i] / c[n]) * (scl[i] / scl[n - 1]) * f;

    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
        const double t = z.real();
        if (std::abs(t) <= 1.0 + 1e-6) out.push_back(std::clamp(t, -1.0, 1.0));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace legendre
} // namespace ft
