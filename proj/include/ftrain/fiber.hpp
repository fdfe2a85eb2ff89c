#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "ftrain/interval.hpp"
#include "ftrain/quadrature.hpp"

namespace ft {

using RealFn = std::function<double(double)>;

/**
 * Univariate polynomial in an orthonormal Legendre basis on an interval.
 *
 * Basis: phi_l(x) = sqrt((2l+1)/(hi-lo)) * P_l(t),  t = (2x - lo - hi)/(hi - lo),
 * so that <phi_l, phi_m> = delta_lm in the plain (unweighted) L2 inner product
 * on [lo, hi]. Coefficients are stored densely; degree() == coeffs().size() - 1.
 */
class PolyExpansion {
public:
    PolyExpansion() : iv_(), coeffs_{0.0} {}
    PolyExpansion(Interval iv, std::vector<double> coeffs);

    const Interval& interval() const { return iv_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Clenshaw evaluation; x slightly outside the interval (1e-12 relative)
    /// is clamped, anything further out throws std::domain_error.
    double operator()(double x) const;

    /// Integral over the interval: coeffs[0] * sqrt(width).
    double integrate() const;

    PolyExpansion derivative() const;

    /// Exact restriction to a subinterval (degree preserved).
    PolyExpansion restricted(const Interval& sub) const;

    double inner(const PolyExpansion& other) const; // requires same interval

private:
    Interval iv_;
    std::vector<double> coeffs_;
};

/** Piecewise collection of PolyExpansions over consecutive subintervals. */
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<double> breakpoints, std::vector<PolyExpansion> pieces);

    const std::vector<double>& breakpoints() const { return bps_; }
    const std::vector<PolyExpansion>& pieces() const { return pieces_; }
    Interval interval() const { return {bps_.front(), bps_.back()}; }
    int npieces() const { return static_cast<int>(pieces_.size()); }

    double operator()(double x) const;
    double integrate() const;
    PiecewisePoly derivative() const;

private:
    int piece_index(double x) const;

    std::vector<double> bps_;
    std::vector<PolyExpansion> pieces_;
};

/**
 * A fiber: one univariate function, represented either by a single global
 * expansion or by a piecewise expansion. Fibers are immutable value types;
 * all operations return new fibers.
 */
class Fiber {
public:
    Fiber() : rep_(PolyExpansion()) {}
    Fiber(PolyExpansion p) : rep_(std::move(p)) {}
    Fiber(PiecewisePoly p) : rep_(std::move(p)) {}

    bool is_piecewise() const { return std::holds_alternative<PiecewisePoly>(rep_); }
    const PolyExpansion& global() const { return std::get<PolyExpansion>(rep_); }
    const PiecewisePoly& piecewise() const { return std::get<PiecewisePoly>(rep_); }

    Interval interval() const;
    /// Largest polynomial degree over the pieces.
    int max_degree() const;

    double operator()(double x) const;
    double integrate() const;
    Fiber derivative() const;

private:
    std::variant<PolyExpansion, PiecewisePoly> rep_;
};

struct AbsMax {
    double x = 0.0;
    double value = 0.0; // |f(x)|, always >= 0
};

Fiber fiber_zero(const Interval& iv);
Fiber fiber_constant(const Interval& iv, double value);
/// Orthonormal basis member phi_q as a fiber.
Fiber fiber_basis(const Interval& iv, int q);

Fiber fiber_add(const Fiber& a, const Fiber& b);
Fiber fiber_scale(const Fiber& a, double c);
/// Pointwise product, represented exactly (degree grows to na + nb).
Fiber fiber_mul(const Fiber& a, const Fiber& b);
/// sum_k w[k] * (*fs[k]); all fibers must share the interval.
Fiber fiber_lincomb(const std::vector<double>& w, const std::vector<const Fiber*>& fs);

/// Plain L2 inner product <a, b>.
double fiber_inner(const Fiber& a, const Fiber& b);
inline double fiber_norm(const Fiber& a) {
    double s = fiber_inner(a, a);
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

/// Location and magnitude of the maximum of |f| over the interval
/// (endpoints, interior stationary points and breakpoints are examined).
AbsMax fiber_absmax(const Fiber& f);

/// Same search, but candidates within excl_tol of any entry of exclude are
/// skipped; pivoted factorizations use this to keep pivot points distinct.
/// Returns value 0 at the midpoint when every candidate is excluded.
AbsMax fiber_absmax(const Fiber& f, const std::vector<double>& exclude, double excl_tol);

/// L2 projection of f onto the orthonormal basis of given degree.
/// Exact when f is a polynomial of degree <= degree (for the default rules).
std::vector<double> project_coeffs(const RealFn& f, const Interval& iv, int degree,
                                   QuadRule rule = QuadRule::GaussLegendre);

/// Union of the two fibers' breakpoint sets; near-duplicates
/// (within 1e-12 * width) are merged.
std::vector<double> merged_breakpoints(const Fiber& a, const Fiber& b);

/// Restrictions of f to the panels of the given breakpoint grid.
std::vector<PolyExpansion> split_to_pieces(const Fiber& f, const std::vector<double>& bps);

} // namespace ft
