#pragma once

#include "ftrain/fiber.hpp"

namespace ft {

enum class BasisKind { Global, Piecewise };

/** Degree growth map k -> mult*k + add (default 5 -> 11 -> 23 -> ...). */
struct GrowthRule {
    int mult = 2;
    int add = 1;
    int next(int k) const { return mult * k + add; }
};

/** Controls for the recursive bisection edge detector. */
struct EdgeParams {
    double jump_threshold = 0.05; // residual / local range ratio that flags a jump
    double x_tol = 1e-6;          // breakpoint localization tolerance
    int max_edges = 16;
};

/** Adaptive univariate approximation controls. */
struct ApproxScheme {
    BasisKind kind = BasisKind::Global;
    int start_degree = 5;
    GrowthRule growth{};
    double eps_approx = 1e-10;
    int trailing_coeffs = 2; // how many trailing coefficients must sit below eps
    int max_degree = 255;
    bool relative_eps = false; // compare against eps * max|coeff| instead
    QuadRule quadrature = QuadRule::GaussLegendre;
    EdgeParams edges{};

    void validate() const;
};

struct FiberBuild {
    Fiber fiber;
    bool converged = true;
};

/**
 * Adaptive projection of f onto the chosen basis: grow the degree until the
 * trailing coefficients drop below the threshold, then trim them. Piecewise
 * mode first locates breakpoints with detect_edges and adapts per panel.
 * Non-finite function values raise std::domain_error.
 */
FiberBuild fiber_approximate(const RealFn& f, const Interval& iv, const ApproxScheme& s);

/**
 * Like fiber_approximate, but splits at the given interior breakpoints instead
 * of running edge detection (empty list means one global panel).  Grid-based
 * algorithms use this to give every fiber of a grid identical breakpoints.
 */
FiberBuild fiber_approximate_on(const RealFn& f, const Interval& iv, const ApproxScheme& s,
                                const std::vector<double>& interior_edges);

/**
 * Locate discontinuities (and derivative kinks) of f by recursive bisection:
 * a panel whose low-order fit keeps a residual above jump_threshold * range
 * under refinement is narrowed to x_tol and its midpoint reported.
 * Throws std::runtime_error when more than max_edges candidates appear.
 */
std::vector<double> detect_edges(const RealFn& f, const Interval& iv, const EdgeParams& p);

/// Merges edge estimates that agree to within the localization tolerance
/// (4 * x_tol) into one representative each (their mean), ascending.
std::vector<double> cluster_edges(std::vector<double> edges, double x_tol);

} // namespace ft
