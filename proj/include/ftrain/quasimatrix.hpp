#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ftrain/fiber.hpp"

namespace ft {

/** Column of continuous functions: an "infinity by n" array of fibers. */
class Quasimatrix {
public:
    Quasimatrix(Interval iv, std::vector<Fiber> cols);

    int cols() const { return static_cast<int>(cols_.size()); }
    const Interval& interval() const { return iv_; }
    const Fiber& col(int j) const { return cols_.at(j); }
    Fiber& col(int j) { return cols_.at(j); }

    /// Row vector of column values at x.
    Eigen::RowVectorXd eval(double x) const;

private:
    Interval iv_;
    std::vector<Fiber> cols_;
};

/** n-by-m matrix of univariate fibers over a shared interval. */
class MatrixValuedFunction {
public:
    MatrixValuedFunction(Interval iv, int rows, int cols, std::vector<Fiber> entries);
    static MatrixValuedFunction zeros(const Interval& iv, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Interval& interval() const { return iv_; }

    const Fiber& at(int i, int j) const { return entries_.at(idx(i, j)); }
    Fiber& at(int i, int j) { return entries_.at(idx(i, j)); }

    Eigen::MatrixXd eval(double x) const;
    MatrixValuedFunction transpose() const;

    /// Stacked column j as a quasimatrix-style fiber list.
    std::vector<const Fiber*> column(int j) const;

private:
    std::size_t idx(int i, int j) const;

    Interval iv_;
    int rows_ = 0, cols_ = 0;
    std::vector<Fiber> entries_; // row-major
};

/** One cross pivot: a row index paired with a coordinate. */
struct Pivot {
    int row = 0;
    double x = 0.0;
};

/** Ordered pivot list with a distinctness invariant. */
class PivotSet {
public:
    PivotSet() = default;
    PivotSet(std::vector<Pivot> pivots, const Interval& iv);

    int size() const { return static_cast<int>(piv_.size()); }
    const Pivot& operator[](int k) const { return piv_.at(k); }
    const std::vector<Pivot>& items() const { return piv_; }

private:
    std::vector<Pivot> piv_;
};

/// Sum of columnwise inner products <a_j, b_j>.
double qm_inner(const Quasimatrix& a, const Quasimatrix& b);

/// Sum of entrywise inner products (the quasimatrix inner product of the
/// stacked representation).
double mvf_inner(const MatrixValuedFunction& a, const MatrixValuedFunction& b);

/// F * M and M * F with a constant matrix: entrywise fiber linear combinations.
MatrixValuedFunction operator*(const MatrixValuedFunction& F, const Eigen::MatrixXd& M);
MatrixValuedFunction operator*(const Eigen::MatrixXd& M, const MatrixValuedFunction& F);

} // namespace ft
