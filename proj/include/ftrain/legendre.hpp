#pragma once

#include <cmath>
#include <vector>

namespace ft {
namespace legendre {

/// Normalization that turns P_l on an interval of the given width into an
/// orthonormal basis function: phi_l(x) = scale(l, width) * P_l(t(x)).
inline double scale(int l, double width) { return std::sqrt((2.0 * l + 1.0) / width); }

/// Evaluate sum_l c[l] P_l(t) by the Clenshaw recurrence.
double clenshaw(const std::vector<double>& c, double t);

/// Values of P_0..P_n at t (out resized to n+1).
void eval_all(int n, double t, std::vector<double>& out);

/// P-basis coefficients of d/dt applied to sum_l c[l] P_l(t).
/// Input degree n yields degree max(n-1, 0).
std::vector<double> derivative(const std::vector<double>& c);

/// Real roots of sum_l c[l] P_l(t) inside [-1,1] (comrade-matrix eigenvalues).
/// Trailing coefficients below 1e-14 * max|c| are dropped before solving;
/// eigenvalues with small imaginary part near the interval are clamped in.
std::vector<double> roots(const std::vector<double>& c);

} // namespace legendre
} // namespace ft
