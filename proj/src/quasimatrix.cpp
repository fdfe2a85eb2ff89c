#include "ftrain/quasimatrix.hpp"

#include <stdexcept>

namespace ft {

Quasimatrix::Quasimatrix(Interval iv, std::vector<Fiber> cols)
    : iv_(iv), cols_(std::move(cols)) {
    if (cols_.empty()) throw std::invalid_argument("Quasimatrix: at least one column");
    for (const auto& f : cols_)
        if (!same_interval(f.interval(), iv_))
            throw std::invalid_argument("Quasimatrix: column interval mismatch");
}

Eigen::RowVectorXd Quasimatrix::eval(double x) const {
    Eigen::RowVectorXd v(cols());
    for (int j = 0; j < cols(); ++j) v(j) = cols_[j](x);
    return v;
}

MatrixValuedFunction::MatrixValuedFunction(Interval iv, int rows, int cols,
                                           std::vector<Fiber> entries)
    : iv_(iv), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1)
        throw std::invalid_argument("MatrixValuedFunction: positive shape required");
    if (entries_.size() != static_cast<std::size_t>(rows_) * cols_)
        throw std::invalid_argument("MatrixValuedFunction: entry count mismatch");
    for (const auto& f : entries_)
        if (!same_interval(f.interval(), iv_))
            throw std::invalid_argument("MatrixValuedFunction: entry interval mismatch");
}

MatrixValuedFunction MatrixValuedFunction::zeros(const Interval& iv, int rows, int cols) {
    std::vector<Fiber> e(static_cast<std::size_t>(rows) * cols, fiber_zero(iv));
    return MatrixValuedFunction(iv, rows, cols, std::move(e));
}

std::size_t MatrixValuedFunction::idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("MatrixValuedFunction: index out of range");
    return static_cast<std::size_t>(i) * cols_ + j;
}

Eigen::MatrixXd MatrixValuedFunction::eval(double x) const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j)(x);
    return m;
}

MatrixValuedFunction MatrixValuedFunction::transpose() const {
    std::vector<Fiber> e;
    e.reserve(entries_.size());
    for (int j = 0; j < cols_; ++j)
        for (int i = 0; i < rows_; ++i) e.push_back(at(i, j));
    return MatrixValuedFunction(iv_, cols_, rows_, std::move(e));
}

std::vector<const Fiber*> MatrixValuedFunction::column(int j) const {
    std::vector<const Fiber*> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = &at(i, j);
    return c;
}

PivotSet::PivotSet(std::vector<Pivot> pivots, const Interval& iv) : piv_(std::move(pivots)) {
    const double tol = 1e-12 * iv.width();
    for (std::size_t a = 0; a < piv_.size(); ++a)
        for (std::size_t b = a + 1; b < piv_.size(); ++b)
            if (piv_[a].row == piv_[b].row && std::abs(piv_[a].x - piv_[b].x) <= tol)
                throw std::invalid_argument("PivotSet: duplicate pivot");
}

double qm_inner(const Quasimatrix& a, const Quasimatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("qm_inner: column count mismatch");
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += fiber_inner(a.col(j), b.col(j));
    return s;
}

double mvf_inner(const MatrixValuedFunction& a, const MatrixValuedFunction& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mvf_inner: shape mismatch");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += fiber_inner(a.at(i, j), b.at(i, j));
    return s;
}

MatrixValuedFunction operator*(const MatrixValuedFunction& F, const Eigen::MatrixXd& M) {
    if (F.cols() != M.rows())
        throw std::invalid_argument("mvf * matrix: inner dimension mismatch");
    std::vector<Fiber> out;
    out.reserve(static_cast<std::size_t>(F.rows()) * M.cols());
    std::vector<double> w(F.cols());
    std::vector<const Fiber*> fs(F.cols());
    for (int i = 0; i < F.rows(); ++i) {
        for (int l = 0; l < F.cols(); ++l) fs[l] = &F.at(i, l);
        for (int j = 0; j < M.cols(); ++j) {
            for (int l = 0; l < F.cols(); ++l) w[l] = M(l, j);
            out.push_back(fiber_lincomb(w, fs));
        }
    }
    return MatrixValuedFunction(F.interval(), F.rows(), static_cast<int>(M.cols()),
                                std::move(out));
}

MatrixValuedFunction operator*(const Eigen::MatrixXd& M, const MatrixValuedFunction& F) {
    if (M.cols() != F.rows())
        throw std::invalid_argument("matrix * mvf: inner dimension mismatch");
    std::vector<Fiber> out;
    out.reserve(static_cast<std::size_t>(M.rows()) * F.cols());
    std::vector<double> w(F.rows());
    std::vector<const Fiber*> fs(F.rows());
    for (int i = 0; i < M.rows(); ++i) {
        for (int l = 0; l < F.rows(); ++l) w[l] = M(i, l);
        for (int j = 0; j < F.cols(); ++j) {
            for (int l = 0; l < F.rows(); ++l) fs[l] = &F.at(l, j);
            out.push_back(fiber_lincomb(w, fs));
        }
    }
    return MatrixValuedFunction(F.interval(), static_cast<int>(M.rows()), F.cols(),
                                std::move(out));
}

} // namespace ft
