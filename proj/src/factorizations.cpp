#include "ftrain/factorizations.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ft {

namespace {

// A stacked column: one fiber per matrix row.
using Stack = std::vector<Fiber>;

double stack_inner(const Stack& a, const Stack& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += fiber_inner(a[i], b[i]);
    return s;
}

double stack_norm(const Stack& a) {
    const double s = stack_inner(a, a);
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

// y <- y + c * x
void stack_axpy(Stack& y, double c, const Stack& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = fiber_lincomb({1.0, c}, {&y[i], &x[i]});
}

void stack_scale(Stack& y, double c) {
    for (auto& f : y) f = fiber_scale(f, c);
}

Stack stack_column(const MatrixValuedFunction& A, int j) {
    Stack s;
    s.reserve(A.rows());
    for (int i = 0; i < A.rows(); ++i) s.push_back(A.at(i, j));
    return s;
}

// Orthonormal reference element e_k of the stacked space: basis function
// phi_{k / n} placed in row (k % n), zero elsewhere.
Stack basis_column(const Interval& iv, int n, int k) {
    Stack s(static_cast<std::size_t>(n), fiber_zero(iv));
    s[static_cast<std::size_t>(k % n)] = fiber_basis(iv, k / n);
    return s;
}

} // namespace

QrResult qr_mvf(const MatrixValuedFunction& A) {
    const int n = A.rows();
    const int m = A.cols();
    const Interval iv = A.interval();

    std::vector<Stack> W;
    W.reserve(m);
    for (int j = 0; j < m; ++j) W.push_back(stack_column(A, j));

    std::vector<Stack> V;   // Householder directions, unit norm
    std::vector<double> sg; // sign applied to the reference element at each step
    V.reserve(m);
    sg.reserve(m);
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(m, m);

    for (int k = 0; k < m; ++k) {
        Stack& x = W[k];
        const double r = stack_norm(x);
        R(k, k) = r;

        Stack e = basis_column(iv, n, k);
        const double ex = stack_inner(e, x);
        const double sign = ex > 0.0 ? -1.0 : 1.0;
        if (sign < 0.0) stack_scale(e, -1.0);
        sg.push_back(sign);

        // v = r e - x, normalized; ||v||^2 = 2 r (r - <e,x>) >= 2 r^2
        Stack v = e;
        stack_scale(v, r);
        stack_axpy(v, -1.0, x);
        const double nv = stack_norm(v);
        if (nv > 0.0)
            stack_scale(v, 1.0 / nv);
        else
            v = e; // exactly zero column: any unit direction orthogonal to earlier e's
        V.push_back(std::move(v));

        for (int j = k + 1; j < m; ++j) {
            const double c = 2.0 * stack_inner(V[k], W[j]);
            stack_axpy(W[j], -c, V[k]);
            const double rij = stack_inner(e, W[j]);
            R(k, j) = rij;
            stack_axpy(W[j], -rij, e);
        }
    }

    // Q column i = H_1 ... H_i e_i (apply reflectors from the innermost out)
    std::vector<Fiber> qentries(static_cast<std::size_t>(n) * m, fiber_zero(iv));
    for (int i = 0; i < m; ++i) {
        Stack q = basis_column(iv, n, i);
        stack_scale(q, sg[i]);
        for (int k = i; k >= 0; --k) {
            const double c = 2.0 * stack_inner(V[k], q);
            stack_axpy(q, -c, V[k]);
        }
        for (int row = 0; row < n; ++row)
            qentries[static_cast<std::size_t>(row) * m + i] = std::move(q[row]);
    }

    QrResult out{MatrixValuedFunction(iv, n, m, std::move(qentries)), std::move(R), {}};
    double dmax = 0.0;
    for (int k = 0; k < m; ++k) dmax = std::max(dmax, out.R(k, k));
    for (int k = 0; k < m; ++k)
        if (out.R(k, k) <= 1e-13 * dmax) out.deficient.push_back(k);
    return out;
}

QrVvfResult qr_vvf(const Quasimatrix& A) {
    std::vector<Fiber> entries;
    entries.reserve(A.cols());
    for (int j = 0; j < A.cols(); ++j) entries.push_back(A.col(j));
    MatrixValuedFunction M(A.interval(), 1, A.cols(), std::move(entries));
    QrResult r = qr_mvf(M);
    std::vector<Fiber> qcols;
    qcols.reserve(A.cols());
    for (int j = 0; j < A.cols(); ++j) qcols.push_back(r.Q.at(0, j));
    return {Quasimatrix(A.interval(), std::move(qcols)), std::move(r.R),
            std::move(r.deficient)};
}

LuResult lu_mvf(const MatrixValuedFunction& A) {
    const int n = A.rows();
    const int m = A.cols();
    const Interval iv = A.interval();

    std::vector<Stack> W;
    W.reserve(m);
    for (int j = 0; j < m; ++j) W.push_back(stack_column(A, j));

    std::vector<Stack> Lcols;
    Lcols.reserve(m);
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(m, m);
    std::vector<Pivot> piv;
    piv.reserve(m);

    const double excl_tol = 1e-9 * iv.width();
    double scale = 0.0; // largest pivot magnitude seen so far
    for (int k = 0; k < m; ++k) {
        Pivot best{0, iv.mid()};
        double bestval = -1.0;
        std::vector<double> taken;
        for (int i = 0; i < n; ++i) {
            // keep pivots distinct: ignore points already chosen in this row
            taken.clear();
            for (const Pivot& p : piv)
                if (p.row == i) taken.push_back(p.x);
            const AbsMax am = fiber_absmax(W[k][i], taken, excl_tol);
            if (am.value > bestval) {
                bestval = am.value;
                best = {i, am.x};
            }
        }
        scale = std::max(scale, bestval);
        if (bestval <= 1e-14 * scale)
            throw std::runtime_error("lu_mvf: rank-deficient input (residual column vanished)");

        const double pval = W[k][best.row](best.x);
        if (std::abs(pval) <= 1e-14 * scale)
            throw std::runtime_error("lu_mvf: pivot value vanished under re-evaluation");
        piv.push_back(best);

        Stack lc = W[k];
        stack_scale(lc, 1.0 / pval);
        for (int j = k; j < m; ++j) U(k, j) = W[j][best.row](best.x);
        for (int j = k + 1; j < m; ++j) stack_axpy(W[j], -U(k, j), lc);
        Lcols.push_back(std::move(lc));
    }

    std::vector<Fiber> lentries;
    lentries.reserve(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) lentries.push_back(Lcols[j][i]);
    return {MatrixValuedFunction(iv, n, m, std::move(lentries)), std::move(U),
            PivotSet(std::move(piv), iv)};
}

Eigen::MatrixXd eval_submatrix(const MatrixValuedFunction& A, const PivotSet& pivots) {
    Eigen::MatrixXd M(pivots.size(), A.cols());
    for (int k = 0; k < pivots.size(); ++k)
        for (int j = 0; j < A.cols(); ++j)
            M(k, j) = A.at(pivots[k].row, j)(pivots[k].x);
    return M;
}

MaxvolResult maxvol_mvf(const MatrixValuedFunction& A, const MaxvolOptions& opt) {
    const Interval iv = A.interval();
    const int r = A.cols();

    std::vector<Pivot> piv = lu_mvf(A).pivots.items();

    std::vector<Pivot> best_piv = piv;
    double best_growth = std::numeric_limits<double>::infinity();
    int restarts = 0;

    for (int iter = 1; iter <= opt.max_iter; ++iter) {
        const Eigen::MatrixXd Asub = eval_submatrix(A, PivotSet(piv, iv));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Asub);
        const auto& sv = svd.singularValues();
        if (sv(r - 1) <= 1e-13 * sv(0)) {
            if (++restarts > 2)
                throw std::runtime_error("maxvol_mvf: singular pivot submatrix");
            piv = lu_mvf(A).pivots.items();
            continue;
        }

        const MatrixValuedFunction B = A * Asub.inverse();
        const double excl_tol = 1e-9 * iv.width();
        double growth = 0.0;
        Pivot cand{0, iv.mid()};
        int jstar = 0;
        std::vector<double> taken;
        for (int i = 0; i < B.rows(); ++i) {
            // |B| equals 1 exactly at the current pivots; skipping their
            // neighborhoods keeps the swapped set distinct
            taken.clear();
            for (const Pivot& p : piv)
                if (p.row == i) taken.push_back(p.x);
            for (int j = 0; j < B.cols(); ++j) {
                const AbsMax am = fiber_absmax(B.at(i, j), taken, excl_tol);
                if (am.value > growth) {
                    growth = am.value;
                    cand = {i, am.x};
                    jstar = j;
                }
            }
        }

        if (growth < best_growth) {
            best_growth = growth;
            best_piv = piv;
        }
        if (growth <= 1.0 + opt.delta)
            return {PivotSet(piv, iv), true, growth, iter};
        piv[jstar] = cand;
    }
    return {PivotSet(best_piv, iv), false, best_growth, opt.max_iter};
}

} // namespace ft
