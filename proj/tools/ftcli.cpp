// Command line front end: build, round, store and evaluate function trains
// for the bundled benchmark functions.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftrain/experiment.hpp"
#include "ftrain/serialize.hpp"

namespace {

struct Knobs {
    std::string function;
    int dim = 0;
    std::vector<int> ranks;
    double eps_approx = 1e-7;
    double eps_round = 1e-5;
    double delta_cross = 1e-3;
    int start_degree = 7;
    int kickrank = 5;
    int max_sweeps = 5;
    int max_adapt = 5;
    int mc_samples = 1000;
    int threads = 1;
    std::uint64_t seed = 8927349871ull;
    std::string scheme = "poly";
    std::string out = "json";
    std::string save_path;
    bool strict = false;
};

void add_build_options(CLI::App* cmd, Knobs& k) {
    cmd->add_option("-f,--function", k.function, "benchmark function name")->required();
    cmd->add_option("-d,--dim", k.dim, "dimension (scalable families only)");
    cmd->add_option("--ranks", k.ranks,
                    "initial internal ranks, comma separated (default: all 1)")
        ->delimiter(',');
    cmd->add_option("--eps-approx", k.eps_approx, "fiber approximation tolerance");
    cmd->add_option("--eps-round", k.eps_round, "rounding tolerance");
    cmd->add_option("--delta-cross", k.delta_cross, "cross stagnation tolerance");
    cmd->add_option("--start-degree", k.start_degree, "initial fiber polynomial degree");
    cmd->add_option("--kickrank", k.kickrank, "rank increment between adaptations");
    cmd->add_option("--max-sweeps", k.max_sweeps, "sweep limit per cross invocation");
    cmd->add_option("--max-adapt", k.max_adapt, "rank adaptation limit");
    cmd->add_option("--mc-samples", k.mc_samples, "points for the stagnation estimate");
    cmd->add_option("--threads", k.threads, "threads for fiber construction");
    cmd->add_option("--seed", k.seed, "random seed");
    cmd->add_option("--scheme", k.scheme, "fiber basis: poly or piecewise")
        ->check(CLI::IsMember({"poly", "piecewise"}));
    cmd->add_option("--out", k.out, "report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--save", k.save_path, "write the built train to this JSON file");
    cmd->add_flag("--strict", k.strict, "exit nonzero if any stage failed to converge");
}

ft::AdaptConfig to_config(const Knobs& k, int dim) {
    ft::AdaptConfig cfg;
    if (!k.ranks.empty()) {
        cfg.init_ranks.push_back(1);
        cfg.init_ranks.insert(cfg.init_ranks.end(), k.ranks.begin(), k.ranks.end());
        cfg.init_ranks.push_back(1);
        if (static_cast<int>(cfg.init_ranks.size()) != dim + 1)
            throw CLI::ValidationError("--ranks", "expected dim-1 internal ranks");
    }
    ft::ApproxScheme sch;
    sch.kind = k.scheme == "piecewise" ? ft::BasisKind::Piecewise : ft::BasisKind::Global;
    sch.start_degree = k.start_degree;
    sch.eps_approx = k.eps_approx;
    // cross fibers carry pivot-dependent scales, so tolerance is relative
    sch.relative_eps = true;
    cfg.schemes = {sch};
    cfg.delta_cross = k.delta_cross;
    cfg.eps_round = k.eps_round;
    cfg.kickrank = k.kickrank;
    cfg.max_adapt = k.max_adapt;
    cfg.max_sweeps = k.max_sweeps;
    cfg.mc_samples = k.mc_samples;
    cfg.seed = k.seed;
    cfg.threads = k.threads;
    return cfg;
}

int emit(const ft::ExperimentReport& rep, const Knobs& k, const ft::FunctionTrain* built) {
    if (k.out == "csv")
        std::cout << ft::ExperimentReport::csv_header() << '\n' << rep.csv_row() << '\n';
    else
        std::cout << rep.to_json().dump(2) << '\n';
    if (!k.save_path.empty() && built) ft::ft_save(*built, k.save_path);
    if (k.strict && !(rep.converged && rep.fibers_converged)) {
        std::cerr << "ftcli: run did not converge\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"function-train toolbox"};
    app.require_subcommand(1);

    Knobs ki, ka;
    CLI::App* ci = app.add_subcommand("integrate", "integrate a benchmark function");
    add_build_options(ci, ki);
    CLI::App* ca = app.add_subcommand("approximate", "build a surrogate and report its error");
    add_build_options(ca, ka);
    int n_test = 10000;
    ca->add_option("--test-points", n_test, "points for the error estimate");

    std::string rin, rout;
    double reps = 1e-5;
    CLI::App* cr = app.add_subcommand("round", "re-compress a stored train");
    cr->add_option("-i,--in", rin, "input train JSON")->required();
    cr->add_option("-o,--out-file", rout, "output train JSON")->required();
    cr->add_option("--eps-round", reps, "rounding tolerance");

    std::string ein;
    std::vector<double> point;
    CLI::App* ce = app.add_subcommand("eval", "evaluate a stored train at a point");
    ce->add_option("-i,--in", ein, "input train JSON")->required();
    ce->add_option("-p,--point", point, "comma separated coordinates")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (ci->parsed()) {
            ft::BenchFunction b = ft::make_bench(ki.function, ki.dim);
            ft::FunctionTrain built;
            ft::ExperimentReport rep =
                ft::run_integrate(b, to_config(ki, b.dim), &built);
            return emit(rep, ki, &built);
        }
        if (ca->parsed()) {
            ft::BenchFunction b = ft::make_bench(ka.function, ka.dim);
            ft::FunctionTrain built;
            ft::ExperimentReport rep = ft::run_approximate(b, to_config(ka, b.dim), n_test,
                                                           777, &built);
            return emit(rep, ka, &built);
        }
        if (cr->parsed()) {
            ft::FunctionTrain f = ft::ft_load(rin);
            const std::vector<int> before = f.ranks();
            ft::FunctionTrain g = ft::ft_round(f, reps);
            ft::ft_save(g, rout);
            nlohmann::json j;
            j["ranks_in"] = before;
            j["ranks_out"] = g.ranks();
            std::cout << j.dump(2) << '\n';
            return 0;
        }
        if (ce->parsed()) {
            ft::FunctionTrain f = ft::ft_load(ein);
            std::printf("%.17g\n", f(point));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "ftcli: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
