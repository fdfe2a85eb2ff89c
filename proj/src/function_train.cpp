#include "ftrain/function_train.hpp"

#include <cmath>
#include <stdexcept>

namespace ft {

FunctionTrain::FunctionTrain(std::vector<MatrixValuedFunction> cores)
    : cores_(std::move(cores)) {
    if (cores_.empty()) throw std::invalid_argument("FunctionTrain: at least one core");
    if (cores_.front().rows() != 1 || cores_.back().cols() != 1)
        throw std::invalid_argument("FunctionTrain: boundary ranks must be 1");
    for (std::size_t k = 0; k + 1 < cores_.size(); ++k)
        if (cores_[k].cols() != cores_[k + 1].rows())
            throw std::invalid_argument("FunctionTrain: rank chain mismatch");
}

std::vector<int> FunctionTrain::ranks() const {
    std::vector<int> r;
    r.reserve(cores_.size() + 1);
    r.push_back(cores_.front().rows());
    for (const auto& c : cores_) r.push_back(c.cols());
    return r;
}

std::vector<Interval> FunctionTrain::intervals() const {
    std::vector<Interval> iv;
    iv.reserve(cores_.size());
    for (const auto& c : cores_) iv.push_back(c.interval());
    return iv;
}

double FunctionTrain::operator()(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("FunctionTrain: point dimension mismatch");
    Eigen::MatrixXd v = cores_[0].eval(x[0]);
    for (int k = 1; k < dim(); ++k) v = v * cores_[k].eval(x[k]);
    return v(0, 0);
}

namespace {

void check_compatible(const FunctionTrain& a, const FunctionTrain& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    for (int k = 0; k < a.dim(); ++k)
        if (!same_interval(a.core(k).interval(), b.core(k).interval()))
            throw std::invalid_argument(std::string(op) + ": interval mismatch");
}

} // namespace

FunctionTrain ft_add(const FunctionTrain& a, const FunctionTrain& b) {
    check_compatible(a, b, "ft_add");
    const int d = a.dim();

    if (d == 1) {
        std::vector<Fiber> e{fiber_add(a.core(0).at(0, 0), b.core(0).at(0, 0))};
        return FunctionTrain({MatrixValuedFunction(a.core(0).interval(), 1, 1, std::move(e))});
    }

    std::vector<MatrixValuedFunction> cores;
    cores.reserve(d);
    for (int k = 0; k < d; ++k) {
        const auto& A = a.core(k);
        const auto& B = b.core(k);
        const Interval iv = A.interval();
        if (k == 0) {
            std::vector<Fiber> e;
            e.reserve(A.cols() + B.cols());
            for (int j = 0; j < A.cols(); ++j) e.push_back(A.at(0, j));
            for (int j = 0; j < B.cols(); ++j) e.push_back(B.at(0, j));
            cores.emplace_back(iv, 1, A.cols() + B.cols(), std::move(e));
        } else if (k == d - 1) {
            std::vector<Fiber> e;
            e.reserve(A.rows() + B.rows());
            for (int i = 0; i < A.rows(); ++i) e.push_back(A.at(i, 0));
            for (int i = 0; i < B.rows(); ++i) e.push_back(B.at(i, 0));
            cores.emplace_back(iv, A.rows() + B.rows(), 1, std::move(e));
        } else {
            const int rows = A.rows() + B.rows();
            const int cols = A.cols() + B.cols();
            MatrixValuedFunction blk = MatrixValuedFunction::zeros(iv, rows, cols);
            for (int i = 0; i < A.rows(); ++i)
                for (int j = 0; j < A.cols(); ++j) blk.at(i, j) = A.at(i, j);
            for (int i = 0; i < B.rows(); ++i)
                for (int j = 0; j < B.cols(); ++j) blk.at(A.rows() + i, A.cols() + j) = B.at(i, j);
            cores.push_back(std::move(blk));
        }
    }
    return FunctionTrain(std::move(cores));
}

FunctionTrain ft_scale(const FunctionTrain& a, double c) {
    std::vector<MatrixValuedFunction> cores;
    cores.reserve(a.dim());
    for (int k = 0; k < a.dim(); ++k) cores.push_back(a.core(k));
    for (int i = 0; i < cores[0].rows(); ++i)
        for (int j = 0; j < cores[0].cols(); ++j)
            cores[0].at(i, j) = fiber_scale(cores[0].at(i, j), c);
    return FunctionTrain(std::move(cores));
}

FunctionTrain ft_mul(const FunctionTrain& a, const FunctionTrain& b) {
    check_compatible(a, b, "ft_mul");
    const int d = a.dim();
    std::vector<MatrixValuedFunction> cores;
    cores.reserve(d);
    for (int k = 0; k < d; ++k) {
        const auto& A = a.core(k);
        const auto& B = b.core(k);
        const int rows = A.rows() * B.rows();
        const int cols = A.cols() * B.cols();
        std::vector<Fiber> e;
        e.reserve(static_cast<std::size_t>(rows) * cols);
        for (int i = 0; i < A.rows(); ++i)
            for (int p = 0; p < B.rows(); ++p)
                for (int j = 0; j < A.cols(); ++j)
                    for (int q = 0; q < B.cols(); ++q)
                        e.push_back(fiber_mul(A.at(i, j), B.at(p, q)));
        cores.emplace_back(A.interval(), rows, cols, std::move(e));
    }
    return FunctionTrain(std::move(cores));
}

double ft_integrate(const FunctionTrain& f) {
    Eigen::MatrixXd acc;
    for (int k = 0; k < f.dim(); ++k) {
        const auto& C = f.core(k);
        Eigen::MatrixXd g(C.rows(), C.cols());
        for (int i = 0; i < C.rows(); ++i)
            for (int j = 0; j < C.cols(); ++j) g(i, j) = C.at(i, j).integrate();
        acc = (k == 0) ? g : Eigen::MatrixXd(acc * g);
    }
    return acc(0, 0);
}

FunctionTrain ft_diff(const FunctionTrain& f, int k) {
    if (k < 0 || k >= f.dim()) throw std::invalid_argument("ft_diff: dimension out of range");
    std::vector<MatrixValuedFunction> cores;
    cores.reserve(f.dim());
    for (int c = 0; c < f.dim(); ++c) cores.push_back(f.core(c));
    for (int i = 0; i < cores[k].rows(); ++i)
        for (int j = 0; j < cores[k].cols(); ++j)
            cores[k].at(i, j) = cores[k].at(i, j).derivative();
    return FunctionTrain(std::move(cores));
}

FunctionTrain ft_laplacian(const FunctionTrain& f) {
    FunctionTrain acc = ft_diff(ft_diff(f, 0), 0);
    for (int k = 1; k < f.dim(); ++k) acc = ft_add(acc, ft_diff(ft_diff(f, k), k));
    return acc;
}

double ft_inner(const FunctionTrain& a, const FunctionTrain& b) {
    check_compatible(a, b, "ft_inner");
    const int d = a.dim();

    Eigen::MatrixXd M(a.core(0).cols(), b.core(0).cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            M(i, j) = fiber_inner(a.core(0).at(0, i), b.core(0).at(0, j));

    for (int k = 1; k < d; ++k) {
        const auto& A = a.core(k);
        const auto& B = b.core(k);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(A.cols(), B.cols());
        std::vector<double> w(A.rows());
        std::vector<const Fiber*> fs(A.rows());
        for (int bi = 0; bi < B.rows(); ++bi) {
            for (int i = 0; i < A.rows(); ++i) w[i] = M(i, bi);
            for (int alpha = 0; alpha < A.cols(); ++alpha) {
                for (int i = 0; i < A.rows(); ++i) fs[i] = &A.at(i, alpha);
                const Fiber t = fiber_lincomb(w, fs);
                for (int beta = 0; beta < B.cols(); ++beta)
                    T(alpha, beta) += fiber_inner(t, B.at(bi, beta));
            }
        }
        M = std::move(T);
    }
    return M(0, 0);
}

double ft_norm2(const FunctionTrain& f) {
    const double s = ft_inner(f, f);
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

FunctionTrain ft_orthogonalize(const FunctionTrain& f, OrthoSide side) {
    std::vector<MatrixValuedFunction> cores;
    cores.reserve(f.dim());
    for (int k = 0; k < f.dim(); ++k) cores.push_back(f.core(k));
    const int d = f.dim();

    if (side == OrthoSide::Left) {
        for (int k = 0; k + 1 < d; ++k) {
            QrResult qr = qr_mvf(cores[k]);
            cores[k] = std::move(qr.Q);
            cores[k + 1] = qr.R * cores[k + 1];
        }
    } else {
        for (int k = d - 1; k >= 1; --k) {
            QrResult qr = qr_mvf(cores[k].transpose());
            cores[k] = qr.Q.transpose();
            cores[k - 1] = cores[k - 1] * Eigen::MatrixXd(qr.R.transpose());
        }
    }
    return FunctionTrain(std::move(cores));
}

FunctionTrain ft_round(const FunctionTrain& f, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("ft_round: eps >= 0 required");
    const int d = f.dim();
    if (d == 1) return f;

    FunctionTrain g = ft_orthogonalize(f, OrthoSide::Right);
    const double norm = std::sqrt(std::max(0.0, mvf_inner(g.core(0), g.core(0))));
    const double delta = eps / std::sqrt(static_cast<double>(d - 1)) * norm;
    const double delta2 = delta * delta;

    std::vector<MatrixValuedFunction> cores;
    cores.reserve(d);
    for (int k = 0; k < d; ++k) cores.push_back(g.core(k));

    for (int k = 0; k + 1 < d; ++k) {
        QrResult qr = qr_mvf(cores[k]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(qr.R, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const int m = static_cast<int>(sv.size());

        int rhat = m;
        double tail = 0.0;
        while (rhat > 1 && tail + sv(rhat - 1) * sv(rhat - 1) <= delta2) {
            tail += sv(rhat - 1) * sv(rhat - 1);
            --rhat;
        }

        const Eigen::MatrixXd U = svd.matrixU().leftCols(rhat);
        const Eigen::MatrixXd SV = sv.head(rhat).asDiagonal() *
                                   Eigen::MatrixXd(svd.matrixV().leftCols(rhat).transpose());
        cores[k] = qr.Q * U;
        cores[k + 1] = SV * cores[k + 1];
    }
    return FunctionTrain(std::move(cores));
}

} // namespace ft
