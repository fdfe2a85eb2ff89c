#include "ftrain/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ftrain/legendre.hpp"

namespace ft {

namespace {

constexpr double kEvalSlack = 1e-12; // relative clamp tolerance at interval ends

// Orthonormal coefficients -> plain P-basis coefficients in t.
std::vector<double> to_p_basis(const std::vector<double>& c, double width) {
    std::vector<double> p(c.size());
    for (std::size_t l = 0; l < c.size(); ++l)
        p[l] = c[l] * legendre::scale(static_cast<int>(l), width);
    return p;
}

} // namespace

// ---------------------------------------------------------------- PolyExpansion

PolyExpansion::PolyExpansion(Interval iv, std::vector<double> coeffs)
    : iv_(iv), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("PolyExpansion: empty coefficient vector");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("PolyExpansion: non-finite coefficient");
}

double PolyExpansion::operator()(double x) const {
    const double w = iv_.width();
    if (x < iv_.lo || x > iv_.hi) {
        if (x >= iv_.lo - kEvalSlack * w && x <= iv_.hi + kEvalSlack * w)
            x = std::clamp(x, iv_.lo, iv_.hi);
        else
            throw std::domain_error("PolyExpansion: evaluation outside the interval");
    }
    const double t = iv_.to_ref(x);
    thread_local std::vector<double> p;
    p.resize(coeffs_.size());
    for (std::size_t l = 0; l < coeffs_.size(); ++l)
        p[l] = coeffs_[l] * legendre::scale(static_cast<int>(l), w);
    return legendre::clenshaw(p, t);
}

double PolyExpansion::integrate() const { return coeffs_[0] * std::sqrt(iv_.width()); }

PolyExpansion PolyExpansion::derivative() const {
    const double w = iv_.width();
    std::vector<double> p = to_p_basis(coeffs_, w);
    std::vector<double> dp = legendre::derivative(p);
    const double chain = 2.0 / w; // dt/dx
    std::vector<double> out(dp.size());
    for (std::size_t l = 0; l < dp.size(); ++l)
        out[l] = chain * dp[l] / legendre::scale(static_cast<int>(l), w);
    return PolyExpansion(iv_, std::move(out));
}

PolyExpansion PolyExpansion::restricted(const Interval& sub) const {
    const double w = iv_.width();
    if (sub.lo < iv_.lo - kEvalSlack * w || sub.hi > iv_.hi + kEvalSlack * w)
        throw std::invalid_argument("PolyExpansion::restricted: sub not contained");
    auto self = [this](double x) { return (*this)(x); };
    return PolyExpansion(sub, project_coeffs(self, sub, degree()));
}

double PolyExpansion::inner(const PolyExpansion& other) const {
    if (!same_interval(iv_, other.iv_))
        throw std::invalid_argument("PolyExpansion::inner: interval mismatch");
    const std::size_t n = std::min(coeffs_.size(), other.coeffs_.size());
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += coeffs_[l] * other.coeffs_[l];
    return s;
}

// ---------------------------------------------------------------- PiecewisePoly

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<PolyExpansion> pieces)
    : bps_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (bps_.size() < 2 || pieces_.size() + 1 != bps_.size())
        throw std::invalid_argument("PiecewisePoly: inconsistent breakpoints/pieces");
    for (std::size_t i = 0; i + 1 < bps_.size(); ++i) {
        if (!(bps_[i] < bps_[i + 1]))
            throw std::invalid_argument("PiecewisePoly: breakpoints not ascending");
        const Interval& piv = pieces_[i].interval();
        if (piv.lo != bps_[i] || piv.hi != bps_[i + 1])
            throw std::invalid_argument("PiecewisePoly: piece interval disagrees with breakpoints");
    }
}

int PiecewisePoly::piece_index(double x) const {
    const double w = bps_.back() - bps_.front();
    if (x < bps_.front() - kEvalSlack * w || x > bps_.back() + kEvalSlack * w)
        throw std::domain_error("PiecewisePoly: evaluation outside the interval");
    auto it = std::upper_bound(bps_.begin(), bps_.end(), x);
    int idx = static_cast<int>(it - bps_.begin()) - 1;
    return std::clamp(idx, 0, npieces() - 1);
}

double PiecewisePoly::operator()(double x) const { return pieces_[piece_index(x)](x); }

double PiecewisePoly::integrate() const {
    double s = 0.0;
    for (const auto& p : pieces_) s += p.integrate();
    return s;
}

PiecewisePoly PiecewisePoly::derivative() const {
    std::vector<PolyExpansion> dp;
    dp.reserve(pieces_.size());
    for (const auto& p : pieces_) dp.push_back(p.derivative());
    return PiecewisePoly(bps_, std::move(dp));
}

// ------------------------------------------------------------------------ Fiber

Interval Fiber::interval() const {
    return is_piecewise() ? piecewise().interval() : global().interval();
}

int Fiber::max_degree() const {
    if (!is_piecewise()) return global().degree();
    int d = 0;
    for (const auto& p : piecewise().pieces()) d = std::max(d, p.degree());
    return d;
}

double Fiber::operator()(double x) const {
    return is_piecewise() ? piecewise()(x) : global()(x);
}

double Fiber::integrate() const {
    return is_piecewise() ? piecewise().integrate() : global().integrate();
}

Fiber Fiber::derivative() const {
    if (is_piecewise()) return Fiber(piecewise().derivative());
    return Fiber(global().derivative());
}

// -------------------------------------------------------------------- factories

Fiber fiber_zero(const Interval& iv) { return Fiber(PolyExpansion(iv, {0.0})); }

Fiber fiber_constant(const Interval& iv, double value) {
    return Fiber(PolyExpansion(iv, {value * std::sqrt(iv.width())}));
}

Fiber fiber_basis(const Interval& iv, int q) {
    if (q < 0) throw std::invalid_argument("fiber_basis: q >= 0 required");
    std::vector<double> c(q + 1, 0.0);
    c[q] = 1.0;
    return Fiber(PolyExpansion(iv, std::move(c)));
}

// ------------------------------------------------------------------- projection

std::vector<double> project_coeffs(const RealFn& f, const Interval& iv, int degree,
                                   QuadRule rule) {
    if (degree < 0) throw std::invalid_argument("project_coeffs: degree >= 0 required");
    // choose a rule exact for deg(f * phi_l) when f itself has degree <= degree
    const Quadrature q = rule_exact_for(rule, 2 * degree);
    const double w = iv.width();
    const double halfw = 0.5 * w;

    std::vector<double> coeffs(degree + 1, 0.0);
    std::vector<double> P;
    for (int k = 0; k < q.size(); ++k) {
        const double x = iv.from_ref(q.nodes[k]);
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw std::domain_error("project_coeffs: non-finite function value");
        legendre::eval_all(degree, q.nodes[k], P);
        const double wq = q.weights[k] * halfw * fx;
        for (int l = 0; l <= degree; ++l)
            coeffs[l] += wq * legendre::scale(l, w) * P[l];
    }
    return coeffs;
}

// -------------------------------------------------------- piecewise grid merging

static std::vector<double> fiber_breakpoints(const Fiber& f) {
    if (f.is_piecewise()) return f.piecewise().breakpoints();
    const Interval iv = f.interval();
    return {iv.lo, iv.hi};
}

static std::vector<double> merge_grids(const std::vector<double>& a,
                                       const std::vector<double>& b) {
    std::vector<double> all(a);
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    const double tol = 1e-12 * (all.back() - all.front());
    std::vector<double> out;
    for (double x : all)
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    // keep the exact right endpoint
    out.back() = all.back();
    return out;
}

std::vector<double> merged_breakpoints(const Fiber& a, const Fiber& b) {
    if (!same_interval(a.interval(), b.interval()))
        throw std::invalid_argument("merged_breakpoints: interval mismatch");
    return merge_grids(fiber_breakpoints(a), fiber_breakpoints(b));
}

std::vector<PolyExpansion> split_to_pieces(const Fiber& f, const std::vector<double>& bps) {
    std::vector<PolyExpansion> out;
    out.reserve(bps.size() - 1);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const Interval panel(bps[i], bps[i + 1]);
        if (!f.is_piecewise()) {
            out.push_back(f.global().restricted(panel));
        } else {
            const auto& pw = f.piecewise();
            const auto& pbps = pw.breakpoints();
            const double mid = panel.mid();
            auto it = std::upper_bound(pbps.begin(), pbps.end(), mid);
            int idx = std::clamp(static_cast<int>(it - pbps.begin()) - 1, 0, pw.npieces() - 1);
            out.push_back(pw.pieces()[idx].restricted(panel));
        }
    }
    return out;
}

// ------------------------------------------------------------------- arithmetic

static PolyExpansion add_global(const PolyExpansion& a, const PolyExpansion& b,
                                double wa, double wb) {
    std::vector<double> c(std::max(a.coeffs().size(), b.coeffs().size()), 0.0);
    for (std::size_t l = 0; l < a.coeffs().size(); ++l) c[l] += wa * a.coeffs()[l];
    for (std::size_t l = 0; l < b.coeffs().size(); ++l) c[l] += wb * b.coeffs()[l];
    return PolyExpansion(a.interval(), std::move(c));
}

static PolyExpansion mul_global(const PolyExpansion& a, const PolyExpansion& b) {
    const int deg = a.degree() + b.degree();
    auto prod = [&a, &b](double x) { return a(x) * b(x); };
    return PolyExpansion(a.interval(), project_coeffs(prod, a.interval(), deg));
}

template <typename PieceOp>
static Fiber binary_op(const Fiber& a, const Fiber& b, PieceOp op) {
    if (!same_interval(a.interval(), b.interval()))
        throw std::invalid_argument("fiber op: interval mismatch");
    if (!a.is_piecewise() && !b.is_piecewise()) return Fiber(op(a.global(), b.global()));
    const auto bps = merged_breakpoints(a, b);
    auto pa = split_to_pieces(a, bps);
    auto pb = split_to_pieces(b, bps);
    std::vector<PolyExpansion> pieces;
    pieces.reserve(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) pieces.push_back(op(pa[i], pb[i]));
    return Fiber(PiecewisePoly(bps, std::move(pieces)));
}

Fiber fiber_add(const Fiber& a, const Fiber& b) {
    return binary_op(a, b, [](const PolyExpansion& x, const PolyExpansion& y) {
        return add_global(x, y, 1.0, 1.0);
    });
}

Fiber fiber_scale(const Fiber& a, double c) {
    if (!a.is_piecewise()) {
        std::vector<double> cc = a.global().coeffs();
        for (double& v : cc) v *= c;
        return Fiber(PolyExpansion(a.global().interval(), std::move(cc)));
    }
    std::vector<PolyExpansion> pieces;
    pieces.reserve(a.piecewise().pieces().size());
    for (const auto& p : a.piecewise().pieces()) {
        std::vector<double> cc = p.coeffs();
        for (double& v : cc) v *= c;
        pieces.emplace_back(p.interval(), std::move(cc));
    }
    return Fiber(PiecewisePoly(a.piecewise().breakpoints(), std::move(pieces)));
}

Fiber fiber_mul(const Fiber& a, const Fiber& b) {
    return binary_op(a, b, [](const PolyExpansion& x, const PolyExpansion& y) {
        return mul_global(x, y);
    });
}

Fiber fiber_lincomb(const std::vector<double>& w, const std::vector<const Fiber*>& fs) {
    if (w.size() != fs.size())
        throw std::invalid_argument("fiber_lincomb: size mismatch");
    if (fs.empty()) throw std::invalid_argument("fiber_lincomb: empty combination");
    const Interval iv = fs[0]->interval();

    bool any_pw = false;
    for (const Fiber* f : fs) {
        if (!same_interval(f->interval(), iv))
            throw std::invalid_argument("fiber_lincomb: interval mismatch");
        any_pw = any_pw || f->is_piecewise();
    }

    if (!any_pw) {
        std::size_t n = 1;
        for (const Fiber* f : fs) n = std::max(n, f->global().coeffs().size());
        std::vector<double> c(n, 0.0);
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const auto& fc = fs[k]->global().coeffs();
            for (std::size_t l = 0; l < fc.size(); ++l) c[l] += w[k] * fc[l];
        }
        return Fiber(PolyExpansion(iv, std::move(c)));
    }

    std::vector<double> bps = fiber_breakpoints(*fs[0]);
    for (std::size_t k = 1; k < fs.size(); ++k)
        bps = merge_grids(bps, fiber_breakpoints(*fs[k]));

    std::vector<std::vector<PolyExpansion>> split;
    split.reserve(fs.size());
    for (const Fiber* f : fs) split.push_back(split_to_pieces(*f, bps));

    std::vector<PolyExpansion> pieces;
    pieces.reserve(bps.size() - 1);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        std::size_t n = 1;
        for (const auto& s : split) n = std::max(n, s[i].coeffs().size());
        std::vector<double> c(n, 0.0);
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const auto& fc = split[k][i].coeffs();
            for (std::size_t l = 0; l < fc.size(); ++l) c[l] += w[k] * fc[l];
        }
        pieces.emplace_back(Interval(bps[i], bps[i + 1]), std::move(c));
    }
    return Fiber(PiecewisePoly(std::move(bps), std::move(pieces)));
}

double fiber_inner(const Fiber& a, const Fiber& b) {
    if (!same_interval(a.interval(), b.interval()))
        throw std::invalid_argument("fiber_inner: interval mismatch");
    if (!a.is_piecewise() && !b.is_piecewise()) return a.global().inner(b.global());
    const auto bps = merged_breakpoints(a, b);
    auto pa = split_to_pieces(a, bps);
    auto pb = split_to_pieces(b, bps);
    double s = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) s += pa[i].inner(pb[i]);
    return s;
}

// ----------------------------------------------------------------------- absmax

static void absmax_candidates(const PolyExpansion& p, bool nudge_right, std::vector<double>& xs) {
    const Interval& iv = p.interval();
    xs.push_back(iv.lo);
    // a piece's right endpoint at an interior breakpoint is owned by the next
    // piece under evaluation, so the candidate is nudged inwards to keep the
    // reported point and its value consistent (matters at discontinuities)
    xs.push_back(nudge_right ? iv.hi - 1e-9 * iv.width() : iv.hi);
    // stationary points: roots of the t-derivative (chain factor is positive)
    std::vector<double> pc = to_p_basis(p.coeffs(), iv.width());
    std::vector<double> dp = legendre::derivative(pc);
    for (double t : legendre::roots(dp)) xs.push_back(iv.from_ref(t));
}

AbsMax fiber_absmax(const Fiber& f) { return fiber_absmax(f, {}, 0.0); }

AbsMax fiber_absmax(const Fiber& f, const std::vector<double>& exclude, double excl_tol) {
    AbsMax best{f.interval().mid(), 0.0};
    bool first = true;
    auto consider = [&](const PolyExpansion& p, double x) {
        for (double e : exclude)
            if (std::abs(x - e) <= excl_tol) return;
        const double v = std::abs(p(x));
        if (first || v > best.value) {
            best.x = x;
            best.value = v;
            first = false;
        }
    };
    std::vector<double> xs;
    if (!f.is_piecewise()) {
        absmax_candidates(f.global(), false, xs);
        for (double x : xs) consider(f.global(), x);
        return best;
    }
    const auto& pieces = f.piecewise().pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        xs.clear();
        absmax_candidates(pieces[i], i + 1 < pieces.size(), xs);
        for (double x : xs) consider(pieces[i], x);
    }
    return best;
}

} // namespace ft
