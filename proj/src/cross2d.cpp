#include "ftrain/cross2d.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "ftrain/rng.hpp"

namespace ft {

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& M, double rtol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = rtol * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        inv(i) = sv(i) > tol ? 1.0 / sv(i) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double skeleton_eval(const Skeleton2D& s, double x, double y) {
    const Eigen::RowVectorXd cx = s.C.eval(x); // 1 x r
    const Eigen::RowVectorXd ry = s.R.eval(y); // 1 x r
    return cx * s.Ginv * ry.transpose();
}

BivariateFn with_eval_log(BivariateFn f, std::vector<std::array<double, 3>>* log) {
    return [f = std::move(f), log](double x, double y) {
        const double v = f(x, y);
        if (log) log->push_back({x, y, v});
        return v;
    };
}

void write_eval_log_csv(std::ostream& os, const std::vector<std::array<double, 3>>& log) {
    os << "x,y,f\n";
    os.precision(17);
    for (const auto& e : log) os << e[0] << ',' << e[1] << ',' << e[2] << '\n';
}

namespace {

// One shared breakpoint set per axis: slices of a bivariate function along one
// axis must split at identical points or the pivoted factorizations see panels
// that disagree between fibers.
struct AxisEdges {
    std::optional<std::vector<double>> cache;

    const std::vector<double>& get(const std::function<double(double, double)>& slice,
                                   const Interval& iv, const ApproxScheme& s,
                                   const std::vector<double>& anchors) {
        static const std::vector<double> none;
        if (s.kind != BasisKind::Piecewise) return none;
        if (!cache) {
            std::vector<double> all;
            for (double a : anchors) {
                auto es = detect_edges([&](double t) { return slice(t, a); }, iv, s.edges);
                all.insert(all.end(), es.begin(), es.end());
            }
            cache = cluster_edges(std::move(all), s.edges.x_tol);
        }
        return *cache;
    }
};

// Column fibers f(., y_j) as a 1 x r matrix-valued function.
MatrixValuedFunction build_columns(const BivariateFn& f, const Interval& ix,
                                   const std::vector<double>& ys, const ApproxScheme& s,
                                   const std::vector<double>& edges, bool& fibers_ok) {
    std::vector<Fiber> cols;
    cols.reserve(ys.size());
    for (double y : ys) {
        FiberBuild b = fiber_approximate_on([&f, y](double x) { return f(x, y); }, ix, s, edges);
        fibers_ok = fibers_ok && b.converged;
        cols.push_back(std::move(b.fiber));
    }
    return MatrixValuedFunction(ix, 1, static_cast<int>(ys.size()), std::move(cols));
}

} // namespace

Cross2dResult cross_approx_2d(const BivariateFn& f, const Interval& ix, const Interval& iy,
                              const Cross2dOptions& opt) {
    if (opt.rank < 1) throw std::invalid_argument("cross_approx_2d: rank >= 1");
    if (opt.max_sweeps < 1) throw std::invalid_argument("cross_approx_2d: max_sweeps >= 1");
    opt.scheme_x.validate();
    opt.scheme_y.validate();
    const int r = opt.rank;

    std::vector<double> ys = opt.y_init;
    if (ys.empty()) {
        for (int j = 0; j < r; ++j)
            ys.push_back(iy.lo + (j + 1) * iy.width() / (r + 1.0));
    }
    if (static_cast<int>(ys.size()) != r)
        throw std::invalid_argument("cross_approx_2d: y_init size must equal rank");
    for (double y : ys)
        if (!iy.contains(y)) throw std::invalid_argument("cross_approx_2d: y_init outside domain");

    // fixed Monte-Carlo probe for the convergence metric
    rng::Uniform u(opt.seed);
    std::vector<std::pair<double, double>> pts(opt.mc_samples);
    for (auto& p : pts) p = {u.in(ix), u.in(iy)};
    std::vector<double> prev(pts.size(), 0.0);

    Cross2dResult out{Skeleton2D{MatrixValuedFunction::zeros(ix, 1, r), Eigen::MatrixXd::Zero(r, r),
                                 Quasimatrix(iy, std::vector<Fiber>(r, fiber_zero(iy))), {}, {}},
                      false, true, 0, 1.0};

    int retries = 0;
    MatrixValuedFunction C = MatrixValuedFunction::zeros(ix, 1, r);
    bool have_columns = false;

    AxisEdges xedges, yedges;
    auto fx = [&f](double x, double y) { return f(x, y); };
    auto fy = [&f](double y, double x) { return f(x, y); };

    for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
        try {
            if (!have_columns)
                C = build_columns(f, ix, ys, opt.scheme_x,
                                  xedges.get(fx, ix, opt.scheme_x, ys), out.fibers_converged);

            // x pivots from the orthonormalized column span
            QrResult qx = qr_mvf(C);
            MaxvolResult mx = maxvol_mvf(qx.Q, opt.maxvol);
            std::vector<double> xs;
            xs.reserve(r);
            for (const auto& p : mx.pivots.items()) xs.push_back(p.x);

            // row fibers at the x pivots
            std::vector<Fiber> rows;
            rows.reserve(r);
            const std::vector<double>& yed = yedges.get(fy, iy, opt.scheme_y, xs);
            for (double x : xs) {
                FiberBuild b = fiber_approximate_on([&f, x](double y) { return f(x, y); }, iy,
                                                    opt.scheme_y, yed);
                out.fibers_converged = out.fibers_converged && b.converged;
                rows.push_back(std::move(b.fiber));
            }
            QrVvfResult qy = qr_vvf(Quasimatrix(iy, std::move(rows)));

            // y pivots from the orthonormal row span
            std::vector<Fiber> qfibers;
            qfibers.reserve(r);
            for (int j = 0; j < r; ++j) qfibers.push_back(qy.Q.col(j));
            MaxvolResult my =
                maxvol_mvf(MatrixValuedFunction(iy, 1, r, std::move(qfibers)), opt.maxvol);
            ys.clear();
            for (const auto& p : my.pivots.items()) ys.push_back(p.x);

            // fresh columns at the new y pivots; kept for the next sweep
            C = build_columns(f, ix, ys, opt.scheme_x,
                              xedges.get(fx, ix, opt.scheme_x, ys), out.fibers_converged);
            have_columns = true;

            // qhat column k holds the Q values at pivot ys[k], so that
            // Ginv * Q(ys[k]) = e_k and the skeleton interpolates C's columns
            Eigen::MatrixXd qhat(r, r);
            for (int k = 0; k < r; ++k)
                for (int j = 0; j < r; ++j) qhat(j, k) = qy.Q.col(j)(ys[k]);

            out.skeleton = Skeleton2D{C, pseudo_inverse(qhat), qy.Q, xs, ys};
            out.sweeps = sweep;
        } catch (const std::runtime_error&) {
            // singular pivot matrix somewhere in the pipeline: perturb and retry
            if (++retries > 3) throw;
            rng::Uniform pu(opt.seed + 77777 * retries);
            for (double& y : ys) y = pu.in(iy);
            have_columns = false;
            --sweep;
            continue;
        }

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = skeleton_eval(out.skeleton, pts[i].first, pts[i].second);
            num += (v - prev[i]) * (v - prev[i]);
            den += v * v;
            prev[i] = v;
        }
        out.final_delta = den > 0.0 ? std::sqrt(num / den) : (num > 0.0 ? 1.0 : 0.0);
        if (out.final_delta <= opt.delta_cross) {
            out.converged = true;
            break;
        }
    }
    return out;
}

} // namespace ft
