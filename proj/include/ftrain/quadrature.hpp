#pragma once

#include <vector>

#include "ftrain/interval.hpp"

namespace ft {

enum class QuadRule { GaussLegendre, ClenshawCurtis };

/** Nodes/weights on the reference interval [-1,1]; weights sum to 2. */
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule; exact for polynomials of degree <= 2n-1.
Quadrature gauss_legendre(int n);

/// n-point (closed) Clenshaw-Curtis rule; exact for polynomials of degree <= n-1.
Quadrature clenshaw_curtis(int n);

/// Smallest rule of the given kind that integrates degree <= deg exactly.
Quadrature rule_exact_for(QuadRule rule, int deg);

} // namespace ft
