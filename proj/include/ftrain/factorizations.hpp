#pragma once

#include "ftrain/quasimatrix.hpp"

namespace ft {

/**
 * Householder QR of a matrix-valued function, treating each column of fibers
 * as one element of the stacked L2 space: A = Q R with Q'Q = I (stacked inner
 * product) and R upper triangular with nonnegative diagonal.
 */
struct QrResult {
    MatrixValuedFunction Q;
    Eigen::MatrixXd R;
    std::vector<int> deficient; // columns whose R diagonal fell below 1e-13 * max
    bool rank_deficient() const { return !deficient.empty(); }
};
QrResult qr_mvf(const MatrixValuedFunction& A);

struct QrVvfResult {
    Quasimatrix Q;
    Eigen::MatrixXd R;
    std::vector<int> deficient;
    bool rank_deficient() const { return !deficient.empty(); }
};
QrVvfResult qr_vvf(const Quasimatrix& A);

/**
 * Cross/LU factorization with continuous row pivoting: A = L U where U is an
 * upper-triangular coefficient matrix and L's columns interpolate the residual
 * columns, scaled so L[i_k, k](x_k) = 1 and |L| <= 1 everywhere.
 * Throws std::runtime_error when a residual column vanishes (rank deficiency).
 */
struct LuResult {
    MatrixValuedFunction L;
    Eigen::MatrixXd U;
    PivotSet pivots;
};
LuResult lu_mvf(const MatrixValuedFunction& A);

struct MaxvolOptions {
    double delta = 1e-2; // relaxed dominance: stop once growth <= 1 + delta
    int max_iter = 100;
};

struct MaxvolResult {
    PivotSet pivots;
    bool converged = true;
    double growth = 1.0; // max |A(x) A(pivots)^-1| at the returned pivots
    int iterations = 0;
};

/**
 * Continuous maxvol pivot selection on the columns of A: starting from LU
 * pivots, swap in the entry of B(x) = A(x) A(pivots)^{-1} of largest magnitude
 * until |B| <= 1 + delta everywhere. Non-converged runs return the best
 * pivot set seen, flagged.
 */
MaxvolResult maxvol_mvf(const MatrixValuedFunction& A, const MaxvolOptions& opt = {});

/// Matrix of pivot evaluations: out(k, j) = A[pivots[k].row, j](pivots[k].x).
Eigen::MatrixXd eval_submatrix(const MatrixValuedFunction& A, const PivotSet& pivots);

} // namespace ft
