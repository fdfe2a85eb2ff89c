#include "ftrain/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ftrain/legendre.hpp"

namespace ft {

void ApproxScheme::validate() const {
    if (start_degree < 1) throw std::invalid_argument("ApproxScheme: start_degree >= 1");
    if (max_degree < start_degree)
        throw std::invalid_argument("ApproxScheme: max_degree >= start_degree");
    if (!(eps_approx > 0.0)) throw std::invalid_argument("ApproxScheme: eps_approx > 0");
    if (trailing_coeffs < 1) throw std::invalid_argument("ApproxScheme: trailing_coeffs >= 1");
    if (growth.next(start_degree) <= start_degree)
        throw std::invalid_argument("ApproxScheme: growth rule must increase the degree");
    if (!(edges.x_tol > 0.0)) throw std::invalid_argument("ApproxScheme: x_tol > 0");
    if (edges.max_edges < 0) throw std::invalid_argument("ApproxScheme: max_edges >= 0");
}

namespace {

double coeff_max(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

struct GlobalBuild {
    PolyExpansion poly;
    bool converged;
};

GlobalBuild approximate_global(const RealFn& f, const Interval& iv, const ApproxScheme& s) {
    int n = s.start_degree;
    for (;;) {
        std::vector<double> c = project_coeffs(f, iv, n, s.quadrature);
        const double thresh =
            s.relative_eps ? s.eps_approx * coeff_max(c) : s.eps_approx;

        bool ok = static_cast<int>(c.size()) >= s.trailing_coeffs;
        for (int k = 0; ok && k < s.trailing_coeffs; ++k)
            ok = std::abs(c[c.size() - 1 - k]) <= thresh;

        if (ok) {
            // trim converged tail, keep at least the constant coefficient
            std::size_t last = c.size();
            while (last > 1 && std::abs(c[last - 1]) <= thresh) --last;
            c.resize(last);
            return {PolyExpansion(iv, std::move(c)), true};
        }
        if (n >= s.max_degree) return {PolyExpansion(iv, std::move(c)), false};
        n = std::min(s.growth.next(n), s.max_degree);
    }
}

} // namespace

FiberBuild fiber_approximate_on(const RealFn& f, const Interval& iv, const ApproxScheme& s,
                                const std::vector<double>& interior_edges) {
    s.validate();
    if (interior_edges.empty()) {
        GlobalBuild g = approximate_global(f, iv, s);
        return {Fiber(std::move(g.poly)), g.converged};
    }

    std::vector<double> bps;
    bps.reserve(interior_edges.size() + 2);
    bps.push_back(iv.lo);
    for (double e : interior_edges) {
        if (!(e > iv.lo && e < iv.hi))
            throw std::invalid_argument("fiber_approximate_on: edge outside the interval");
        bps.push_back(e);
    }
    bps.push_back(iv.hi);
    if (!std::is_sorted(bps.begin(), bps.end()))
        throw std::invalid_argument("fiber_approximate_on: edges must be ascending");

    std::vector<PolyExpansion> pieces;
    pieces.reserve(bps.size() - 1);
    bool converged = true;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        GlobalBuild g = approximate_global(f, Interval(bps[i], bps[i + 1]), s);
        converged = converged && g.converged;
        pieces.push_back(std::move(g.poly));
    }
    return {Fiber(PiecewisePoly(std::move(bps), std::move(pieces))), converged};
}

FiberBuild fiber_approximate(const RealFn& f, const Interval& iv, const ApproxScheme& s) {
    s.validate();
    if (s.kind == BasisKind::Global) {
        GlobalBuild g = approximate_global(f, iv, s);
        return {Fiber(std::move(g.poly)), g.converged};
    }
    return fiber_approximate_on(f, iv, s, detect_edges(f, iv, s.edges));
}

namespace {

// Degree of the local trial fit and the Gauss rule probing each panel.
constexpr int kFitDegree = 3;
constexpr int kProbePoints = 8;

struct EdgeScan {
    const RealFn& f;
    const EdgeParams& p;
    std::vector<double> edges;
    const Quadrature probe = gauss_legendre(kProbePoints);

    double sample(double x) const {
        const double v = f(x);
        if (!std::isfinite(v)) throw std::domain_error("detect_edges: non-finite function value");
        return v;
    }

    void explore(double lo, double hi, int depth) {
        const Interval panel(lo, hi);
        const double w = hi - lo;

        // probe values at interior Gauss nodes plus both endpoints
        std::vector<double> xs, fs;
        xs.reserve(kProbePoints + 2);
        xs.push_back(lo);
        for (double t : probe.nodes) xs.push_back(panel.from_ref(t));
        xs.push_back(hi);
        fs.reserve(xs.size());
        for (double x : xs) fs.push_back(sample(x));

        // low-order L2 fit from the interior nodes
        std::vector<double> c(kFitDegree + 1, 0.0);
        {
            std::vector<double> P;
            const double halfw = 0.5 * w;
            for (int k = 0; k < kProbePoints; ++k) {
                legendre::eval_all(kFitDegree, probe.nodes[k], P);
                const double wq = probe.weights[k] * halfw * fs[k + 1];
                for (int l = 0; l <= kFitDegree; ++l)
                    c[l] += wq * legendre::scale(l, w) * P[l];
            }
        }
        PolyExpansion fit(panel, std::move(c));

        double resid = 0.0, fmin = fs[0], fmax = fs[0];
        for (std::size_t k = 0; k < xs.size(); ++k) {
            resid = std::max(resid, std::abs(fs[k] - fit(xs[k])));
            fmin = std::min(fmin, fs[k]);
            fmax = std::max(fmax, fs[k]);
        }
        const double floor = 1e-13 * std::max(1.0, std::max(std::abs(fmin), std::abs(fmax)));
        if (resid <= p.jump_threshold * (fmax - fmin) + floor) return; // smooth panel

        if (w <= p.x_tol || depth >= 64) {
            edges.push_back(refine(lo, hi));
            return;
        }
        const double mid = 0.5 * (lo + hi);
        explore(lo, mid, depth + 1);
        explore(mid, hi, depth + 1);
    }

    // Localize the jump inside [lo, hi] to machine precision: recurse into the
    // half whose endpoint difference dominates.  Downstream consumers nudge
    // evaluation points off a breakpoint by far more than one ulp, so the
    // refined breakpoint must coincide with the jump itself, not merely land
    // within the scan tolerance.
    double refine(double lo, double hi) const {
        double flo = sample(lo), fhi = sample(hi);
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (lo + hi);
            if (m <= lo || m >= hi) break; // bracket is one ulp wide
            const double fm = sample(m);
            if (std::abs(fm - flo) >= std::abs(fhi - fm)) {
                hi = m;
                fhi = fm;
            } else {
                lo = m;
                flo = fm;
            }
        }
        return 0.5 * (lo + hi);
    }
};

} // namespace

std::vector<double> cluster_edges(std::vector<double> edges, double x_tol) {
    std::sort(edges.begin(), edges.end());
    std::vector<double> reps;
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i + 1;
        double sum = edges[i];
        while (j < edges.size() && edges[j] - edges[j - 1] <= 4.0 * x_tol) sum += edges[j++];
        reps.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return reps;
}

std::vector<double> detect_edges(const RealFn& f, const Interval& iv, const EdgeParams& p) {
    EdgeScan scan{f, p, {}};
    scan.explore(iv.lo, iv.hi, 0);
    std::sort(scan.edges.begin(), scan.edges.end());

    // merge candidates closer than the localization tolerance
    std::vector<double> out;
    for (double e : scan.edges) {
        if (out.empty() || e - out.back() > p.x_tol)
            out.push_back(e);
    }
    if (static_cast<int>(out.size()) > p.max_edges)
        throw std::runtime_error("detect_edges: more than max_edges discontinuity candidates");
    return out;
}

} // namespace ft
