#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ftrain/registry.hpp"

namespace ft {

/**
 * Callable wrapper that counts evaluations.  Copies share one counter (the
 * adaptive solvers copy their function object freely), and the counter is
 * atomic so threaded fiber builds stay accurate.
 */
class CountingFunction {
public:
    explicit CountingFunction(MultiFn f)
        : f_(std::move(f)), n_(std::make_shared<std::atomic<std::size_t>>(0)) {}

    double operator()(const std::vector<double>& x) const {
        n_->fetch_add(1, std::memory_order_relaxed);
        return f_(x);
    }

    std::size_t count() const { return n_->load(std::memory_order_relaxed); }
    void reset() const { n_->store(0, std::memory_order_relaxed); }

private:
    MultiFn f_;
    std::shared_ptr<std::atomic<std::size_t>> n_;
};

/** Outcome of one benchmark run, serializable as JSON or a CSV row. */
struct ExperimentReport {
    std::string function;
    int dim = 0;
    std::string mode;       // "integrate" or "approximate"
    double delta = 0.0;     // delta_cross the run was configured with
    double value = 0.0;     // integral estimate (integrate mode only)
    double reference = 0.0; // exact integral when known, else NaN
    double rel_error = 0.0; // relative integral error, or relative RMSE
    std::size_t evals = 0;  // black-box evaluations spent building the train
    double seconds = 0.0;
    std::vector<int> ranks;
    int adaptations = 0;
    bool converged = true;
    bool fibers_converged = true;

    nlohmann::json to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

/// Builds a rank-adapted train for the benchmark and compares the train's
/// integral against the exact value (rel_error is NaN when none is known).
/// The built train is copied into *keep when keep is non-null.
ExperimentReport run_integrate(const BenchFunction& bench, const AdaptConfig& cfg,
                               FunctionTrain* keep = nullptr);

/// Builds a rank-adapted train and reports the relative RMS error over
/// n_test uniform points (fixed seed), relative to the RMS of f itself.
/// Only build-time evaluations are counted in evals.
ExperimentReport run_approximate(const BenchFunction& bench, const AdaptConfig& cfg,
                                 int n_test = 10000, std::uint64_t test_seed = 777,
                                 FunctionTrain* keep = nullptr);

} // namespace ft
