#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ftrain/experiment.hpp"
#include "ftrain/registry.hpp"
#include "property_suites.hpp"

using namespace ft;
using namespace ft::test;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void print_status(int criterion, bool pass) {
    std::printf("criterion %d: %s\n", criterion, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
}

bool ranks_all(const std::vector<int>& ranks, int interior) {
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k)
        if (ranks[k] != interior) return false;
    return ranks.front() == 1 && ranks.back() == 1;
}

bool ranks_within(const std::vector<int>& got, const std::vector<int>& ref, int slack) {
    if (got.size() != ref.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
        if (std::abs(got[k] - ref[k]) > slack) return false;
    return true;
}

void dump_fails(const char* label, const std::vector<std::string>& fails) {
    for (std::size_t i = 0; i < fails.size() && i < 5; ++i)
        std::printf("  %s failure: %s\n", label, fails[i].c_str());
}

} // namespace

TEST_CASE("criterion 1: trigonometric sum family, integration scaling") {
    constexpr double kErrTol = 1e-8;    // relative integral error per dimension
    constexpr double kEvalRatio = 3.0;  // allowed evaluation growth per dim doubling
    constexpr double kBudgetSec = 60.0; // wall-clock budget for the whole family

    const double t0 = now_seconds();
    bool pass = true;
    std::vector<std::size_t> evals_by_run;
    for (int d : {2, 5, 10, 20}) {
        AdaptConfig cfg;
        cfg.init_ranks.assign(d + 1, 2);
        cfg.init_ranks.front() = cfg.init_ranks.back() = 1;
        ApproxScheme s;
        s.start_degree = 7;
        s.eps_approx = 1e-10;
        s.relative_eps = true;
        cfg.schemes = {s};
        cfg.delta_cross = 1e-7;
        cfg.eps_round = 1e-10;

        const ExperimentReport r = run_integrate(make_bench("sinsum", d), cfg);
        evals_by_run.push_back(r.evals);
        const bool ranks_ok = ranks_all(r.ranks, 2);
        std::printf("  sinsum d=%-2d rel_error=%.3e evals=%zu ranks2=%d converged=%d\n", d,
                    r.rel_error, r.evals, ranks_ok ? 1 : 0, r.converged ? 1 : 0);
        pass = pass && r.rel_error <= kErrTol && ranks_ok && r.converged && r.fibers_converged;
    }
    // evaluation growth across the dimension doublings 5 -> 10 -> 20
    const double g1 = double(evals_by_run[2]) / double(evals_by_run[1]);
    const double g2 = double(evals_by_run[3]) / double(evals_by_run[2]);
    std::printf("  eval growth per doubling: %.2f, %.2f (cap %.1f)\n", g1, g2, kEvalRatio);
    pass = pass && g1 <= kEvalRatio && g2 <= kEvalRatio;

    const double elapsed = now_seconds() - t0;
    std::printf("  elapsed %.1fs (budget %.0fs)\n", elapsed, kBudgetSec);
    pass = pass && elapsed <= kBudgetSec;

    print_status(1, pass);
    CHECK(pass);
}

TEST_CASE("criterion 2: gated exponential family, discontinuity handling") {
    constexpr double kErrTol = 5e-3;
    constexpr double kBudgetSec = 120.0;
    const double kRefD10 = 3131.0260403604102; // frozen dense-quadrature value

    const double t0 = now_seconds();
    bool pass = true;
    for (int d : {2, 5, 10}) {
        AdaptConfig cfg;
        ApproxScheme s;
        s.kind = BasisKind::Piecewise;
        s.start_degree = 7;
        s.eps_approx = 1e-7;
        s.relative_eps = true;
        cfg.schemes = {s};

        const ExperimentReport r = run_integrate(make_bench("genz-disc", d), cfg);
        const bool rank_one = ranks_all(r.ranks, 1);
        std::printf("  genz-disc d=%-2d rel_error=%.3e evals=%zu rank1=%d\n", d, r.rel_error,
                    r.evals, rank_one ? 1 : 0);
        pass = pass && r.rel_error <= kErrTol && rank_one && r.fibers_converged;
        if (d == 10)
            pass = pass && std::abs(r.value - kRefD10) <= kErrTol * std::abs(kRefD10);
    }

    const double elapsed = now_seconds() - t0;
    std::printf("  elapsed %.1fs (budget %.0fs)\n", elapsed, kBudgetSec);
    pass = pass && elapsed <= kBudgetSec;

    print_status(2, pass);
    CHECK(pass);
}

TEST_CASE("criterion 3: physical surrogate models") {
    constexpr double kBudgetSec = 600.0;
    constexpr int kRankSlack = 5; // adaptation kick size

    struct ModelSpec {
        const char* name;
        double rmse_tol;
        std::size_t eval_cap; // 0 = no cap
        std::vector<int> ref_ranks;
    };
    const ModelSpec specs[] = {
        {"borehole", 1e-3, 40130, {1, 2, 2, 2, 3, 3, 2, 2, 1}},
        {"otl", 1e-3, 0, {1, 3, 2, 2, 2, 2, 1}},
        {"wingweight", 1e-6, 0, {1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1}},
    };

    const double t0 = now_seconds();
    bool pass = true;
    for (const ModelSpec& m : specs) {
        AdaptConfig cfg;
        ApproxScheme s;
        s.start_degree = 7;
        s.eps_approx = 1e-9;
        s.relative_eps = true;
        cfg.schemes = {s};

        const ExperimentReport r = run_approximate(make_bench(m.name), cfg);
        const bool rank_ok = ranks_within(r.ranks, m.ref_ranks, kRankSlack);
        std::printf("  %-10s rmse=%.3e evals=%zu rank_ok=%d\n", m.name, r.rel_error, r.evals,
                    rank_ok ? 1 : 0);
        pass = pass && r.rel_error <= m.rmse_tol && rank_ok;
        if (m.eval_cap > 0) pass = pass && r.evals <= m.eval_cap;
    }

    const double elapsed = now_seconds() - t0;
    std::printf("  elapsed %.1fs (budget %.0fs)\n", elapsed, kBudgetSec);
    pass = pass && elapsed <= kBudgetSec;

    print_status(3, pass);
    CHECK(pass);
}

TEST_CASE("criterion 4: factorization property suites") {
    const auto qr = qr_property_suite(200, 0x17A0u);
    const auto lu = lu_property_suite(200, 0x28B1u);
    const auto mv = maxvol_property_suite(200, 0x39C2u);
    const auto vol = volume_ratio_suite(200, 0x4AD3u, 60);
    std::printf("  qr=%zu lu=%zu maxvol=%zu volume=%zu failures (200 instances each)\n",
                qr.size(), lu.size(), mv.size(), vol.size());
    dump_fails("qr", qr);
    dump_fails("lu", lu);
    dump_fails("maxvol", mv);
    dump_fails("volume", vol);
    const bool pass = qr.empty() && lu.empty() && mv.empty() && vol.empty();
    print_status(4, pass);
    CHECK(pass);
}

TEST_CASE("criterion 5: multilinear algebra suite") {
    const auto fails = mla_property_suite(200, 0x5BE4u);
    std::printf("  %zu failures over 200 random trains\n", fails.size());
    dump_fails("mla", fails);
    const bool pass = fails.empty();
    print_status(5, pass);
    CHECK(pass);
}

TEST_CASE("criterion 6: cross exactness on separable sums") {
    const auto fails = cross_exactness_suite(50, 0x6CF5u);
    std::printf("  %zu failures over 50 separable-sum instances\n", fails.size());
    dump_fails("cross", fails);
    const bool pass = fails.empty();
    print_status(6, pass);
    CHECK(pass);
}
