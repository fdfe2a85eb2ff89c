#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ftrain/experiment.hpp"
#include "ftrain/registry.hpp"

using namespace ft;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct SpotValue {
    const char* name;
    std::vector<double> x;
    double value;
};

// Frozen reference evaluations, one interior / one structured / one random
// probe per model, computed independently of the registry implementation.
const std::vector<SpotValue>& spot_values() {
    static const std::vector<SpotValue> table = {
        {"borehole",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009},
         77.344449950426096},
        {"borehole",
         {-0.77777777777777779, -0.55555555555555558, -0.33333333333333337,
          -0.11111111111111116, 0.11111111111111116, 0.33333333333333326, 0.55555555555555558,
          0.77777777777777768},
         23.396323570706492},
        {"borehole",
         {-0.54532795506566067, -0.36648332058049427, 0.59473091466546824, 0.35250934150194912,
          -0.21778089879618201, -0.33437214426723094, 0.19661750717437965,
          -0.62653162879257329},
         38.723494611906034},
        {"otl",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009},
         5.3285399363461607},
        {"otl",
         {-0.7142857142857143, -0.4285714285714286, -0.1428571428571429, 0.14285714285714279,
          0.4285714285714286, 0.71428571428571419},
         5.7894119412189715},
        {"otl",
         {0.3455120880292426, 0.88360573053987435, -0.50350857074085797, 0.89776230366663645,
          0.33447490620074483, -0.80820412881177583},
         5.4685667526293313},
        {"piston",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009, 0.10000000000000009},
         0.46104271602839042},
        {"piston", {-0.75, -0.5, -0.25, 0, 0.25, 0.5, 0.75}, 0.48718099567112128},
        {"piston",
         {-0.11632066766437443, 0.77295983865503537, 0.3949069997640442, -0.34705427185977578,
          0.46785632666013299, -0.55973008890902753, -0.83681086091558377},
         0.39130775041554017},
        {"robotarm",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009},
         0.32731163816924758},
        {"robotarm",
         {-0.77777777777777779, -0.55555555555555558, -0.33333333333333337,
          -0.11111111111111116, 0.11111111111111116, 0.33333333333333326, 0.55555555555555558,
          0.77777777777777768},
         0.91668389703002029},
        {"robotarm",
         {-0.68020879784990496, -0.31979963009058943, -0.069613692595898113,
          -0.46715794341845807, 0.6315528068496139, -0.61341122142101101, -0.74106184764559946,
          -0.81667049691012816},
         0.84263106848627878},
        {"wingweight",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009},
         280.1512467137112},
        {"wingweight",
         {-0.81818181818181812, -0.63636363636363635, -0.45454545454545459,
          -0.27272727272727271, -0.090909090909090939, 0.090909090909090828,
          0.27272727272727271, 0.45454545454545459, 0.63636363636363646, 0.81818181818181812},
         256.24645177877744},
        {"wingweight",
         {0.19713602732982638, 0.70948380874800265, 0.20324248338742623, 0.86397672227196698,
          0.44956272218404014, 0.72110263478658476, 0.85867560315063263, 0.092372018164706082,
          0.87534591753551383, -0.010024119842351409},
         289.20223116986671},
        {"friedman",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009},
         16.436084495007872},
        {"friedman",
         {-0.66666666666666674, -0.33333333333333337, 0, 0.33333333333333326,
          0.66666666666666674},
         12.569815110002637},
        {"friedman",
         {-0.452453635020025, -0.096442585050478646, 0.3300778467990606, -0.33821813906589071,
          0.80690801361647813},
         12.159567714387681},
        {"gramacylee09",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009},
         2.4233751556481922},
        {"gramacylee09",
         {-0.7142857142857143, -0.4285714285714286, -0.1428571428571429, 0.14285714285714279,
          0.4285714285714286, 0.71428571428571419},
         1.696946392440883},
        {"gramacylee09",
         {-0.48585164944693138, -0.32034332477936034, -0.48229320271414533,
          -0.28910704011142796, -0.98995533256573642, 0.25720908819935739},
         1.4600503666380538},
        {"dettepep8",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009,
          0.10000000000000009, 0.10000000000000009, 0.10000000000000009, 0.10000000000000009},
         37.703461892782435},
        {"dettepep8",
         {-0.77777777777777779, -0.55555555555555558, -0.33333333333333337,
          -0.11111111111111116, 0.11111111111111116, 0.33333333333333326, 0.55555555555555558,
          0.77777777777777768},
         42.291566426486135},
        {"dettepep8",
         {-0.43523458514976343, -0.86382462102410851, 0.23365795451276106, -0.64734735943759314,
          -0.39122322556082079, -0.11822637824776394, -0.69959531787459839,
          -0.56414227382912996},
         41.495258183713503},
        {"dettepepexp",
         {0.10000000000000009, 0.10000000000000009, 0.10000000000000009},
         2.5450289425742114},
        {"dettepepexp", {-0.5, 0, 0.5}, 6.0447007386594818},
        {"dettepepexp",
         {-0.051333769332911006, -0.047262289837616267, -0.48953529236099946},
         0.29231407595904518},
        {"sinsum", {0.55000000000000004, 0.55000000000000004}, 0.89120736006143542},
        {"sinsum", {0.33333333333333331, 0.66666666666666663}, 0.8414709848078965},
        {"sinsum", {0.29756526814804807, 0.27906711981376664}, 0.54520395291184631},
        {"genz-disc", {0.31, 0.31}, 22.197951281441636},
        {"genz-disc", {0.31, 0.62}, 0.0},
        {"sinsum",
         {0.55000000000000004, 0.55000000000000004, 0.55000000000000004, 0.55000000000000004,
          0.55000000000000004},
         0.38166099205233167},
        {"sinsum",
         {0.16666666666666666, 0.33333333333333331, 0.5, 0.66666666666666663,
          0.83333333333333337},
         0.59847214410395655},
        {"sinsum",
         {0.26057921249129756, 0.48276159279931574, 0.21197903635151061, 0.49563059667304066,
          0.24626132583073757},
         0.99202020409845459},
        {"genz-disc", {0.31, 0.31, 0.31, 0.31, 0.31}, 2321.572414611057},
        {"genz-disc", {0.31, 0.31, 0.31, 0.31, 0.62}, 0.0},
        {"sinsum",
         {0.55000000000000004, 0.55000000000000004, 0.55000000000000004, 0.55000000000000004,
          0.55000000000000004, 0.55000000000000004, 0.55000000000000004, 0.55000000000000004,
          0.55000000000000004, 0.55000000000000004},
         -0.70554032557039192},
        {"sinsum",
         {0.090909090909090912, 0.18181818181818182, 0.27272727272727271, 0.36363636363636365,
          0.45454545454545453, 0.54545454545454541, 0.63636363636363635, 0.72727272727272729,
          0.81818181818181823, 0.90909090909090906},
         -0.95892427466313845},
        {"sinsum",
         {0.83848265246694476, 0.18013059009503507, 0.86215629150923645, 0.17829944484518745,
          0.75053133193724408, 0.61112040383056521, 0.20915503492860732, 0.75987242112399522,
          0.24926056953491249, 0.085571731986557986},
         -0.99992568468342735},
        {"genz-disc",
         {0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31},
         5389698.476283012},
        {"genz-disc", {0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.31, 0.62}, 0.0},
    };
    return table;
}

} // namespace

TEST_CASE("registry lists every benchmark and rejects bad requests") {
    const auto& names = bench_names();
    for (const char* expected :
         {"borehole", "otl", "piston", "robotarm", "wingweight", "friedman", "gramacylee09",
          "dettepep8", "dettepepexp", "sinsum", "genz-disc"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());

    for (const auto& name : names) {
        const bool scalable = name == "sinsum" || name == "genz-disc";
        const BenchFunction b = make_bench(name, scalable ? 5 : 0);
        CHECK(b.name == name);
        CHECK(b.dim >= 1);
        CHECK(static_cast<int>(b.domain.size()) == b.dim);
        CHECK(std::isfinite(b.fn(std::vector<double>(b.dim, b.domain[0].mid()))));
    }

    CHECK_THROWS_AS(make_bench("no-such-model"), std::invalid_argument);
    CHECK_THROWS_AS(make_bench("borehole", 3), std::invalid_argument); // fixed at d = 8
    CHECK_THROWS_AS(make_bench("sinsum", 0), std::invalid_argument);   // scalable needs d >= 1
    CHECK(make_bench("borehole", 8).dim == 8);
    CHECK(make_bench("sinsum", 7).dim == 7);
    CHECK(make_bench("genz-disc", 13).dim == 13);
}

TEST_CASE("benchmark domains") {
    // physical models live on [-1,1]^d, the scalable families on [0,1]^d
    for (const auto& name : bench_names()) {
        const bool unit = name == "sinsum" || name == "genz-disc";
        const BenchFunction b = make_bench(name, unit ? 5 : 0);
        for (const Interval& iv : b.domain) {
            CHECK(iv.lo == (unit ? 0.0 : -1.0));
            CHECK(iv.hi == 1.0);
        }
    }
}

TEST_CASE("frozen spot values") {
    for (const SpotValue& s : spot_values()) {
        CAPTURE(s.name, s.x);
        const BenchFunction b = make_bench(s.name, std::string(s.name) == "sinsum" ||
                                                           std::string(s.name) == "genz-disc"
                                                       ? static_cast<int>(s.x.size())
                                                       : 0);
        REQUIRE(b.dim == static_cast<int>(s.x.size()));
        const double got = b.fn(s.x);
        if (s.value == 0.0)
            CHECK_THAT(got, WithinAbs(0.0, 1e-300));
        else
            CHECK_THAT(got, WithinRel(s.value, 1e-12));
    }
}

TEST_CASE("analytic integrals of the scalable families") {
    struct Ref {
        const char* name;
        int dim;
        double integral;
    };
    // frozen values, cross-checked against Monte-Carlo / dense quadrature
    const Ref refs[] = {
        {"sinsum", 2, 0.77364454279011119},   {"sinsum", 5, 0.48506478141104636},
        {"sinsum", 10, -0.62993525905472603}, {"sinsum", 20, -0.23476803378603245},
        {"genz-disc", 2, 5.0019268472467857}, {"genz-disc", 5, 55.955572022457332},
        {"genz-disc", 10, 3131.0260403604102},
    };
    for (const Ref& r : refs) {
        const BenchFunction b = make_bench(r.name, r.dim);
        REQUIRE(b.integral.has_value());
        CHECK_THAT(*b.integral, WithinRel(r.integral, 1e-12));
    }

    // product-form closed expressions, derived independently of the registry:
    // int sin(sum x) = (2 sin(1/2))^d sin(d/2);  int gated exp = ((e^2.5-1)/5)^d
    for (int d : {1, 3, 7, 25}) {
        const BenchFunction s = make_bench("sinsum", d);
        REQUIRE(s.integral.has_value());
        CHECK_THAT(*s.integral,
                   WithinRel(std::pow(2.0 * std::sin(0.5), d) * std::sin(0.5 * d), 1e-12));
    }
    for (int d : {1, 4, 100}) {
        const BenchFunction g = make_bench("genz-disc", d);
        REQUIRE(g.integral.has_value());
        CHECK_THAT(*g.integral, WithinRel(std::pow((std::exp(2.5) - 1.0) / 5.0, d), 1e-12));
    }
    CHECK_THAT(*make_bench("sinsum", 1).integral, WithinRel(1.0 - std::cos(1.0), 1e-13));
    // d = 100 stays finite; frozen closed-form value
    CHECK_THAT(*make_bench("genz-disc", 100).integral, WithinRel(9.054548431647887e34, 1e-12));

    // the physical models advertise no exact integral
    for (const char* name : {"borehole", "otl", "wingweight"})
        CHECK_FALSE(make_bench(name).integral.has_value());
}

TEST_CASE("counting wrapper shares its counter across copies") {
    const CountingFunction f([](const std::vector<double>& x) { return x[0]; });
    const CountingFunction g = f; // copy
    CHECK(f.count() == 0);
    (void)f({1.0});
    (void)g({2.0});
    (void)g({3.0});
    CHECK(f.count() == 3);
    CHECK(g.count() == 3);
    f.reset();
    CHECK(g.count() == 0);
}

TEST_CASE("experiment reports serialize consistently") {
    CHECK(ExperimentReport::csv_header() ==
          "function,dim,mode,delta,value,reference,rel_error,evals,seconds,ranks,adaptations,"
          "converged,fibers_converged");

    ExperimentReport r;
    r.function = "sinsum";
    r.dim = 3;
    r.mode = "integrate";
    r.delta = 1e-3;
    r.value = 1.25;
    r.reference = 1.25;
    r.rel_error = 0.0;
    r.evals = 420;
    r.seconds = 0.125;
    r.ranks = {1, 2, 2, 1};
    r.adaptations = 1;

    const std::string row = r.csv_row();
    CHECK(std::count(row.begin(), row.end(), ',') == 12);
    CHECK(row.find("sinsum,3,integrate,") == 0);
    CHECK(row.find("1;2;2;1") != std::string::npos);

    const nlohmann::json j = r.to_json();
    for (const char* key : {"function", "dim", "mode", "delta", "value", "reference",
                            "rel_error", "evals", "seconds", "ranks", "adaptations", "converged",
                            "fibers_converged"})
        CHECK(j.contains(key));
    CHECK(j["ranks"] == std::vector<int>({1, 2, 2, 1}));
    CHECK(j["delta"] == 1e-3);
}

TEST_CASE("integration experiment on a small problem") {
    AdaptConfig cfg;
    cfg.init_ranks = {1, 2, 2, 1};
    ApproxScheme s;
    s.start_degree = 7;
    s.eps_approx = 1e-10;
    s.relative_eps = true;
    cfg.schemes = {s};
    cfg.delta_cross = 1e-7;
    cfg.eps_round = 1e-10;

    FunctionTrain kept;
    const ExperimentReport r = run_integrate(make_bench("sinsum", 3), cfg, &kept);
    CHECK(r.function == "sinsum");
    CHECK(r.dim == 3);
    CHECK(r.mode == "integrate");
    CHECK(r.delta == 1e-7);
    CHECK(r.evals > 0);
    CHECK(r.converged);
    CHECK(r.fibers_converged);
    CHECK(r.rel_error < 1e-8);
    CHECK(kept.dim() == 3);
    CHECK_THAT(ft_integrate(kept), WithinAbs(r.value, 1e-14));

    const ExperimentReport a = run_approximate(make_bench("sinsum", 3), cfg, 2000);
    CHECK(a.mode == "approximate");
    CHECK(a.rel_error < 1e-7);
    CHECK(std::isnan(a.reference));
}
