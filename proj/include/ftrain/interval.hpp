#pragma once

#include <cmath>
#include <stdexcept>

namespace ft {

/** Closed interval [lo, hi] on the real line. */
struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw std::invalid_argument("Interval: need finite lo < hi");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }

    /// Affine map x in [lo,hi] -> t in [-1,1].
    double to_ref(double x) const { return (2.0 * x - lo - hi) / (hi - lo); }
    /// Affine map t in [-1,1] -> x in [lo,hi].
    double from_ref(double t) const { return 0.5 * ((hi - lo) * t + (lo + hi)); }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

/// Equality up to a relative tolerance on the endpoint positions.
inline bool same_interval(const Interval& a, const Interval& b, double rtol = 1e-12) {
    const double s = std::max(a.width(), b.width());
    return std::abs(a.lo - b.lo) <= rtol * s && std::abs(a.hi - b.hi) <= rtol * s;
}

} // namespace ft
