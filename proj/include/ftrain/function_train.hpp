#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "ftrain/cross2d.hpp"

namespace ft {

using MultiFn = std::function<double(const std::vector<double>&)>;

/**
 * Function train: f(x_1,...,x_d) = F_1(x_1) F_2(x_2) ... F_d(x_d) where core k
 * is an r_{k-1} x r_k matrix of univariate fibers and r_0 = r_d = 1.
 */
class FunctionTrain {
public:
    FunctionTrain() = default;
    explicit FunctionTrain(std::vector<MatrixValuedFunction> cores);

    int dim() const { return static_cast<int>(cores_.size()); }
    /// Rank vector (r_0, ..., r_d); always starts and ends with 1.
    std::vector<int> ranks() const;
    std::vector<Interval> intervals() const;

    const MatrixValuedFunction& core(int k) const { return cores_.at(k); }
    MatrixValuedFunction& core(int k) { return cores_.at(k); }

    /// Pointwise evaluation, O(d r^2) fiber evaluations.
    double operator()(const std::vector<double>& x) const;

private:
    std::vector<MatrixValuedFunction> cores_;
};

/** Nested pivot tuples produced/consumed by the cross algorithm. */
struct CrossIndexSet {
    // left[k-1][a]  : tuple over dims 1..k   (a < r_k), k = 1..d-1
    // right[k-1][a] : tuple over dims k+1..d (a < r_k), k = 1..d-1
    std::vector<std::vector<std::vector<double>>> left;
    std::vector<std::vector<std::vector<double>>> right;

    /// Deterministic low-discrepancy initial right sets, nested from the right.
    static CrossIndexSet halton_init(const std::vector<Interval>& domain,
                                     const std::vector<int>& ranks,
                                     std::uint64_t skip = 0);
};

struct CrossOptions {
    std::vector<int> ranks;            // full vector (1, r_1, ..., r_{d-1}, 1)
    std::vector<ApproxScheme> schemes; // size d, or size 1 to broadcast
    double delta_cross = 1e-3;
    int max_sweeps = 5;
    int mc_samples = 1000;
    std::uint64_t seed = 8927349871ull;
    MaxvolOptions maxvol{};
    int threads = 1;
    std::optional<CrossIndexSet> init_indices; // overrides the Halton default
};

struct CrossResult {
    FunctionTrain ft;
    bool converged = false;       // delta criterion met within the sweep cap
    bool fibers_converged = true; // all fiber approximations converged
    int sweeps = 0;               // full forward+backward passes
    double final_delta = 1.0;
    CrossIndexSet indices; // final nested pivot tuples
};

/**
 * d-dimensional cross approximation with nested pivots: alternating forward
 * and backward half-sweeps of (fiber grid -> QR -> maxvol -> interpolative
 * core), stopping when successive iterates agree to delta_cross in relative
 * RMS on a fixed Monte-Carlo sample.
 */
CrossResult ft_cross(const MultiFn& f, const std::vector<Interval>& domain,
                     const CrossOptions& opt);

/// SVD-based rounding to relative accuracy eps (tail-sum truncation rule).
FunctionTrain ft_round(const FunctionTrain& f, double eps);

enum class OrthoSide { Left, Right };
/// QR sweep making all cores except the last (Left) or first (Right)
/// orthonormal; evaluation is preserved.
FunctionTrain ft_orthogonalize(const FunctionTrain& f, OrthoSide side);

FunctionTrain ft_add(const FunctionTrain& a, const FunctionTrain& b);
FunctionTrain ft_scale(const FunctionTrain& a, double c);
/// Pointwise product; ranks multiply.
FunctionTrain ft_mul(const FunctionTrain& a, const FunctionTrain& b);

/// Integral over the full domain: product of the core integral matrices.
double ft_integrate(const FunctionTrain& f);

/// Partial derivative along dimension k (0-based).
FunctionTrain ft_diff(const FunctionTrain& f, int k);
/// Sum of second partials along every dimension.
FunctionTrain ft_laplacian(const FunctionTrain& f);

/// <f, g> via the structured core contraction, O(d r^3 n).
double ft_inner(const FunctionTrain& a, const FunctionTrain& b);
double ft_norm2(const FunctionTrain& f);

struct AdaptConfig {
    std::vector<int> init_ranks;       // full vector; empty = all ones
    std::vector<ApproxScheme> schemes; // size d or 1
    double delta_cross = 1e-3;
    double eps_round = 1e-5;
    int kickrank = 5;
    int max_adapt = 5;
    int max_sweeps = 5;
    int mc_samples = 1000;
    std::uint64_t seed = 8927349871ull;
    MaxvolOptions maxvol{};
    int threads = 1;
};

struct AdaptResult {
    FunctionTrain ft; // rounded result
    bool converged = false;
    bool cross_converged = true;
    bool fibers_converged = true;
    int adaptations = 0; // rank-kick rounds executed
    std::vector<int> final_ranks;
};

/**
 * Rank adaptation: cross at the current ranks, round, and kick every internal
 * rank that was not strictly reduced by rounding; repeat up to max_adapt times.
 */
AdaptResult ft_rank_adapt(const MultiFn& f, const std::vector<Interval>& domain,
                          const AdaptConfig& cfg);

} // namespace ft
