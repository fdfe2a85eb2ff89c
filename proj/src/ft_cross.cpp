#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "ftrain/function_train.hpp"
#include "ftrain/rng.hpp"

namespace ft {

namespace {

using Tuple = std::vector<double>;
using TupleSet = std::vector<Tuple>;

std::vector<double> make_point(const Tuple& left, double t, const Tuple& right) {
    std::vector<double> x;
    x.reserve(left.size() + 1 + right.size());
    x.insert(x.end(), left.begin(), left.end());
    x.push_back(t);
    x.insert(x.end(), right.begin(), right.end());
    return x;
}

std::vector<ApproxScheme> broadcast_schemes(const std::vector<ApproxScheme>& s, int d) {
    std::vector<ApproxScheme> out;
    if (s.empty())
        out.assign(d, ApproxScheme{});
    else if (s.size() == 1)
        out.assign(d, s[0]);
    else if (static_cast<int>(s.size()) == d)
        out = s;
    else
        throw std::invalid_argument("cross: schemes must have size 1 or d");
    for (const auto& x : out) x.validate();
    return out;
}

void validate_ranks(const std::vector<int>& ranks, int d) {
    if (static_cast<int>(ranks.size()) != d + 1)
        throw std::invalid_argument("cross: ranks vector must have d+1 entries");
    if (ranks.front() != 1 || ranks.back() != 1)
        throw std::invalid_argument("cross: boundary ranks must be 1");
    for (int r : ranks)
        if (r < 1) throw std::invalid_argument("cross: ranks must be positive");
}

/// Builds the fiber grids A_k[i][j](t) = f(left_i, t, right_j), optionally in parallel.
/// In piecewise mode, discontinuities are located once per dimension and every
/// fiber of every grid along that dimension is split at the same points, so that
/// the factorizations never see panels that disagree between fibers.
struct GridBuilder {
    const MultiFn& f;
    const std::vector<Interval>& domain;
    const std::vector<ApproxScheme>& schemes;
    int threads = 1;
    bool fibers_ok = true;
    std::vector<std::optional<std::vector<double>>> edge_cache;

    const std::vector<double>& shared_edges(int dimk, const TupleSet& lefts,
                                            const TupleSet& rights) {
        auto& slot = edge_cache[dimk];
        if (!slot) {
            const Interval iv = domain[dimk];
            std::vector<double> all;
            for (const auto& left : lefts)
                for (const auto& right : rights) {
                    auto slice = [&](double t) { return f(make_point(left, t, right)); };
                    const auto es = detect_edges(slice, iv, schemes[dimk].edges);
                    all.insert(all.end(), es.begin(), es.end());
                }
            slot = cluster_edges(std::move(all), schemes[dimk].edges.x_tol);
        }
        return *slot;
    }

    MatrixValuedFunction build(int dimk, const TupleSet& lefts, const TupleSet& rights) {
        const int rows = static_cast<int>(lefts.size());
        const int cols = static_cast<int>(rights.size());
        const int n = rows * cols;
        const Interval iv = domain[dimk];
        const ApproxScheme& sch = schemes[dimk];

        static const std::vector<double> no_edges;
        const std::vector<double>& edges =
            sch.kind == BasisKind::Piecewise ? shared_edges(dimk, lefts, rights) : no_edges;

        std::vector<Fiber> entries(static_cast<std::size_t>(n), fiber_zero(iv));
        std::vector<char> ok(static_cast<std::size_t>(n), 1);

        auto work = [&](int lo, int hi) {
            for (int e = lo; e < hi; ++e) {
                const int i = e / cols;
                const int j = e % cols;
                auto slice = [&, i, j](double t) {
                    return f(make_point(lefts[i], t, rights[j]));
                };
                FiberBuild b = fiber_approximate_on(slice, iv, sch, edges);
                entries[e] = std::move(b.fiber);
                ok[e] = b.converged ? 1 : 0;
            }
        };

        const int nt = std::max(1, std::min(threads, n));
        if (nt == 1) {
            work(0, n);
        } else {
            std::vector<std::future<void>> fut;
            fut.reserve(nt);
            const int chunk = (n + nt - 1) / nt;
            for (int t = 0; t < nt; ++t)
                fut.push_back(std::async(std::launch::async, work, t * chunk,
                                         std::min(n, (t + 1) * chunk)));
            for (auto& ftr : fut) ftr.get();
        }
        for (char c : ok) fibers_ok = fibers_ok && c;
        return MatrixValuedFunction(iv, rows, cols, std::move(entries));
    }
};

struct SweepState {
    std::vector<TupleSet> lefts;  // lefts[b], b = 0..d-1; lefts[0] = {()}
    std::vector<TupleSet> rights; // rights[b], b = 1..d; rights[d] = {()}
};

CrossResult cross_attempt(const MultiFn& f, const std::vector<Interval>& domain,
                          const CrossOptions& opt, const std::vector<ApproxScheme>& schemes,
                          const std::vector<std::vector<double>>& pts, std::uint64_t skip) {
    const int d = static_cast<int>(domain.size());
    const std::vector<int>& ranks = opt.ranks;

    SweepState st;
    st.lefts.assign(d + 1, TupleSet{});
    st.rights.assign(d + 1, TupleSet{});
    st.lefts[0] = {Tuple{}};
    st.rights[d] = {Tuple{}};

    CrossIndexSet init = opt.init_indices ? *opt.init_indices
                                          : CrossIndexSet::halton_init(domain, ranks, skip);
    if (static_cast<int>(init.right.size()) != d - 1)
        throw std::invalid_argument("cross: init index set has wrong dimension");
    for (int b = 1; b <= d - 1; ++b) {
        const TupleSet& ts = init.right[b - 1];
        if (static_cast<int>(ts.size()) != ranks[b])
            throw std::invalid_argument("cross: init right set size disagrees with ranks");
        for (const auto& tp : ts)
            if (static_cast<int>(tp.size()) != d - b)
                throw std::invalid_argument("cross: init right tuple has wrong length");
        st.rights[b] = ts;
    }

    GridBuilder gb{f, domain, schemes, opt.threads, true, {}};
    gb.edge_cache.resize(domain.size());

    std::vector<MatrixValuedFunction> cores;
    cores.reserve(d);
    for (int k = 0; k < d; ++k)
        cores.push_back(MatrixValuedFunction::zeros(domain[k], ranks[k], ranks[k + 1]));

    CrossResult res;
    std::vector<double> prev(pts.size(), 0.0);

    for (int half = 1; half <= 2 * opt.max_sweeps; ++half) {
        const bool forward = (half % 2 == 1);
        if (forward) {
            for (int k = 0; k + 1 < d; ++k) {
                MatrixValuedFunction A = gb.build(k, st.lefts[k], st.rights[k + 1]);
                QrResult qr = qr_mvf(A);
                MaxvolResult mv = maxvol_mvf(qr.Q, opt.maxvol);
                const Eigen::MatrixXd qhat = eval_submatrix(qr.Q, mv.pivots);
                cores[k] = qr.Q * pseudo_inverse(qhat);

                TupleSet next;
                next.reserve(mv.pivots.size());
                for (const auto& p : mv.pivots.items()) {
                    Tuple t = st.lefts[k][p.row];
                    t.push_back(p.x);
                    next.push_back(std::move(t));
                }
                st.lefts[k + 1] = std::move(next);
            }
            cores[d - 1] = gb.build(d - 1, st.lefts[d - 1], st.rights[d]);
        } else {
            for (int k = d - 1; k >= 1; --k) {
                MatrixValuedFunction A = gb.build(k, st.lefts[k], st.rights[k + 1]);
                QrResult qr = qr_mvf(A.transpose());
                MaxvolResult mv = maxvol_mvf(qr.Q, opt.maxvol);
                const Eigen::MatrixXd qhat = eval_submatrix(qr.Q, mv.pivots);
                cores[k] = (qr.Q * pseudo_inverse(qhat)).transpose();

                TupleSet next;
                next.reserve(mv.pivots.size());
                for (const auto& p : mv.pivots.items()) {
                    Tuple t;
                    t.reserve(d - k);
                    t.push_back(p.x);
                    const Tuple& tail = st.rights[k + 1][p.row];
                    t.insert(t.end(), tail.begin(), tail.end());
                    next.push_back(std::move(t));
                }
                st.rights[k] = std::move(next);
            }
            cores[0] = gb.build(0, st.lefts[0], st.rights[1]);
        }

        res.ft = FunctionTrain(cores);
        res.sweeps = (half + 1) / 2;

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = res.ft(pts[i]);
            num += (v - prev[i]) * (v - prev[i]);
            den += v * v;
            prev[i] = v;
        }
        res.final_delta =
            half == 1 ? 1.0 : (den > 0.0 ? std::sqrt(num / den) : (num > 0.0 ? 1.0 : 0.0));
        if (half >= 2 && res.final_delta <= opt.delta_cross) {
            res.converged = true;
            break;
        }
    }

    res.fibers_converged = gb.fibers_ok;
    res.indices.left.assign(st.lefts.begin() + 1, st.lefts.begin() + d);
    res.indices.right.assign(st.rights.begin() + 1, st.rights.begin() + d);
    return res;
}

} // namespace

CrossIndexSet CrossIndexSet::halton_init(const std::vector<Interval>& domain,
                                         const std::vector<int>& ranks, std::uint64_t skip) {
    const int d = static_cast<int>(domain.size());
    validate_ranks(ranks, d);
    CrossIndexSet out;
    if (d < 2) return out;
    const std::vector<int> bases = rng::primes(d);

    out.right.resize(d - 1);
    for (int b = d - 1; b >= 1; --b) {
        TupleSet ts(ranks[b]);
        for (int a = 0; a < ranks[b]; ++a) {
            const double u = rng::radical_inverse(bases[b], skip + a + 1);
            Tuple t;
            t.reserve(d - b);
            t.push_back(domain[b].lo + u * domain[b].width());
            if (b < d - 1) {
                const TupleSet& tail = out.right[b]; // boundary b+1 sits at index b
                const Tuple& suffix = tail[a % tail.size()];
                t.insert(t.end(), suffix.begin(), suffix.end());
            }
            ts[a] = std::move(t);
        }
        out.right[b - 1] = std::move(ts);
    }
    return out;
}

CrossResult ft_cross(const MultiFn& f, const std::vector<Interval>& domain,
                     const CrossOptions& opt) {
    const int d = static_cast<int>(domain.size());
    if (d < 1) throw std::invalid_argument("ft_cross: empty domain");
    validate_ranks(opt.ranks, d);
    const std::vector<ApproxScheme> schemes = broadcast_schemes(opt.schemes, d);
    if (opt.max_sweeps < 1) throw std::invalid_argument("ft_cross: max_sweeps >= 1");

    if (d == 1) {
        FiberBuild b =
            fiber_approximate([&f](double t) { return f({t}); }, domain[0], schemes[0]);
        CrossResult res;
        res.ft = FunctionTrain(
            {MatrixValuedFunction(domain[0], 1, 1, {std::move(b.fiber)})});
        res.converged = true;
        res.fibers_converged = b.converged;
        res.sweeps = 1;
        res.final_delta = 0.0;
        return res;
    }

    rng::Uniform u(opt.seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(opt.mc_samples);
    for (int i = 0; i < opt.mc_samples; ++i) pts.push_back(u.point(domain));

    std::uint64_t skip = 0;
    for (int attempt = 0;; ++attempt) {
        try {
            return cross_attempt(f, domain, opt, schemes, pts, skip);
        } catch (const std::runtime_error&) {
            if (attempt >= 3 || opt.init_indices) throw;
            skip += 7919u * (attempt + 1u); // jump to a fresh low-discrepancy segment
        }
    }
}

AdaptResult ft_rank_adapt(const MultiFn& f, const std::vector<Interval>& domain,
                          const AdaptConfig& cfg) {
    const int d = static_cast<int>(domain.size());
    if (d < 1) throw std::invalid_argument("ft_rank_adapt: empty domain");
    if (cfg.kickrank < 1) throw std::invalid_argument("ft_rank_adapt: kickrank >= 1");
    if (cfg.max_adapt < 0) throw std::invalid_argument("ft_rank_adapt: max_adapt >= 0");

    std::vector<int> ranks = cfg.init_ranks;
    if (ranks.empty()) ranks.assign(d + 1, 1);
    validate_ranks(ranks, d);

    CrossOptions co;
    co.schemes = cfg.schemes;
    co.delta_cross = cfg.delta_cross;
    co.max_sweeps = cfg.max_sweeps;
    co.mc_samples = cfg.mc_samples;
    co.seed = cfg.seed;
    co.maxvol = cfg.maxvol;
    co.threads = cfg.threads;

    AdaptResult res;
    for (int round = 0;; ++round) {
        co.ranks = ranks;
        co.init_indices.reset();
        co.seed = cfg.seed + 1013u * static_cast<std::uint64_t>(round);
        CrossResult cr = ft_cross(f, domain, co);
        FunctionTrain rounded = ft_round(cr.ft, cfg.eps_round);
        const std::vector<int> rhat = rounded.ranks();

        res.ft = std::move(rounded);
        res.cross_converged = cr.converged;
        res.fibers_converged = cr.fibers_converged;
        res.final_ranks = rhat;
        res.adaptations = round;

        bool all_reduced = true;
        for (int k = 1; k <= d - 1; ++k) all_reduced = all_reduced && (rhat[k] < ranks[k]);
        if (all_reduced) {
            res.converged = true;
            break;
        }
        if (round >= cfg.max_adapt) {
            res.converged = false;
            break;
        }
        for (int k = 1; k <= d - 1; ++k) ranks[k] = rhat[k] + cfg.kickrank;
    }
    return res;
}

} // namespace ft
