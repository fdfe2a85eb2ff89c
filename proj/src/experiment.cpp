#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ftrain/experiment.hpp"
#include "ftrain/rng.hpp"

namespace ft {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentReport base_report(const BenchFunction& bench, const AdaptResult& res,
                             const AdaptConfig& cfg, std::size_t evals, double secs) {
    ExperimentReport r;
    r.function = bench.name;
    r.dim = bench.dim;
    r.delta = cfg.delta_cross;
    r.evals = evals;
    r.seconds = secs;
    r.ranks = res.ft.ranks();
    r.adaptations = res.adaptations;
    r.converged = res.converged && res.cross_converged;
    r.fibers_converged = res.fibers_converged;
    return r;
}

} // namespace

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["function"] = function;
    j["dim"] = dim;
    j["mode"] = mode;
    j["delta"] = delta;
    j["value"] = value;
    j["reference"] = reference;
    j["rel_error"] = rel_error;
    j["evals"] = evals;
    j["seconds"] = seconds;
    j["ranks"] = ranks;
    j["adaptations"] = adaptations;
    j["converged"] = converged;
    j["fibers_converged"] = fibers_converged;
    return j;
}

std::string ExperimentReport::csv_header() {
    return "function,dim,mode,delta,value,reference,rel_error,evals,seconds,ranks,adaptations,"
           "converged,fibers_converged";
}

std::string ExperimentReport::csv_row() const {
    std::ostringstream os;
    os.precision(17);
    os << function << ',' << dim << ',' << mode << ',' << delta << ',' << value << ','
       << reference << ',' << rel_error << ',' << evals << ',' << seconds << ',';
    for (std::size_t i = 0; i < ranks.size(); ++i) os << (i ? ";" : "") << ranks[i];
    os << ',' << adaptations << ',' << (converged ? 1 : 0) << ','
       << (fibers_converged ? 1 : 0);
    return os.str();
}

ExperimentReport run_integrate(const BenchFunction& bench, const AdaptConfig& cfg,
                               FunctionTrain* keep) {
    CountingFunction f(bench.fn);
    const auto t0 = std::chrono::steady_clock::now();
    AdaptResult res = ft_rank_adapt(f, bench.domain, cfg);
    if (keep) *keep = res.ft;
    ExperimentReport r = base_report(bench, res, cfg, f.count(), seconds_since(t0));
    r.mode = "integrate";
    r.value = ft_integrate(res.ft);
    if (bench.integral) {
        r.reference = *bench.integral;
        const double den = std::abs(r.reference);
        r.rel_error = std::abs(r.value - r.reference) / (den > 0.0 ? den : 1.0);
    } else {
        r.reference = std::numeric_limits<double>::quiet_NaN();
        r.rel_error = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

ExperimentReport run_approximate(const BenchFunction& bench, const AdaptConfig& cfg,
                                 int n_test, std::uint64_t test_seed, FunctionTrain* keep) {
    CountingFunction f(bench.fn);
    const auto t0 = std::chrono::steady_clock::now();
    AdaptResult res = ft_rank_adapt(f, bench.domain, cfg);
    if (keep) *keep = res.ft;
    const double secs = seconds_since(t0);
    const std::size_t build_evals = f.count();

    rng::Uniform u(test_seed);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_test; ++i) {
        const std::vector<double> x = u.point(bench.domain);
        const double fx = bench.fn(x);
        const double gx = res.ft(x);
        num += (fx - gx) * (fx - gx);
        den += fx * fx;
    }

    ExperimentReport r = base_report(bench, res, cfg, build_evals, secs);
    r.mode = "approximate";
    r.value = 0.0;
    r.reference = std::numeric_limits<double>::quiet_NaN();
    r.rel_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num / n_test);
    return r;
}

} // namespace ft
