#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftrain/function_train.hpp"

namespace ft {

/**
 * One benchmark target: a black-box function together with its domain and,
 * when available, its exact integral over that domain.
 *
 * Physical models (borehole, otl, piston, robotarm, wingweight, friedman,
 * gramacylee09, dettepep8, dettepepexp) are exposed on [-1,1]^d; inputs are
 * mapped affinely onto the usual parameter ranges inside fn.  The two
 * analytic families (sinsum, genz-disc) live on [0,1]^d and scale to any
 * dimension.
 */
struct BenchFunction {
    std::string name;
    int dim = 0;
    std::vector<Interval> domain;
    MultiFn fn;
    std::optional<double> integral; // exact value of int_domain f, when known
    std::string description;
};

/// Names accepted by make_bench, in display order.
const std::vector<std::string>& bench_names();

/// Builds a benchmark by name.  For the scalable families (sinsum, genz-disc)
/// dim selects the dimension and must be >= 1; for fixed-dimension models dim
/// must be 0 (meaning "the model's own") or equal to it.  Unknown names throw
/// std::invalid_argument.
BenchFunction make_bench(const std::string& name, int dim = 0);

} // namespace ft
