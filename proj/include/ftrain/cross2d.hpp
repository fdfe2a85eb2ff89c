#pragma once

#include <array>
#include <cstdint>
#include <ostream>

#include "ftrain/approx.hpp"
#include "ftrain/factorizations.hpp"

namespace ft {

using BivariateFn = std::function<double(double, double)>;

struct Cross2dOptions {
    int rank = 1;
    ApproxScheme scheme_x{};
    ApproxScheme scheme_y{};
    double delta_cross = 1e-3;
    int max_sweeps = 5;
    std::vector<double> y_init; // optional initial y pivots (size == rank)
    MaxvolOptions maxvol{};
    int mc_samples = 1000;
    std::uint64_t seed = 8927349871ull;
};

/** CUR-style skeleton f(x,y) ~ C(x) * Ginv * R(y). */
struct Skeleton2D {
    MatrixValuedFunction C; // 1 x r, column slices as functions of x
    Eigen::MatrixXd Ginv;   // r x r
    Quasimatrix R;          // r orthonormal row functions of y
    std::vector<double> xs; // x pivots
    std::vector<double> ys; // y pivots
};

struct Cross2dResult {
    Skeleton2D skeleton;
    bool converged = false;        // successive-iterate delta criterion met
    bool fibers_converged = true;  // every fiber approximation converged
    int sweeps = 0;
    double final_delta = 1.0;
};

/**
 * Rank-r cross approximation of a bivariate function by alternating
 * column/row fiber approximation, continuous QR and maxvol pivoting.
 * Convergence is measured as the relative RMS difference of successive
 * skeletons on a fixed-seed Monte-Carlo sample.
 */
Cross2dResult cross_approx_2d(const BivariateFn& f, const Interval& ix, const Interval& iy,
                              const Cross2dOptions& opt);

double skeleton_eval(const Skeleton2D& s, double x, double y);

/// Wrap f so every evaluation is appended to *log as {x, y, f(x,y)}.
BivariateFn with_eval_log(BivariateFn f, std::vector<std::array<double, 3>>* log);

/// CSV dump of an evaluation log with an "x,y,f" header.
void write_eval_log_csv(std::ostream& os, const std::vector<std::array<double, 3>>& log);

/// Moore-Penrose pseudoinverse dropping singular values below rtol * sigma_max.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& M, double rtol = 1e-13);

} // namespace ft
