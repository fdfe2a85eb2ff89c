#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ftrain/cross2d.hpp"
#include "test_support.hpp"

using namespace ft;
using namespace ft::test;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ApproxScheme tight_scheme() {
    ApproxScheme s;
    s.start_degree = 5;
    s.eps_approx = 1e-12;
    s.relative_eps = true;
    return s;
}

Cross2dOptions tight_options(int rank) {
    Cross2dOptions opt;
    opt.rank = rank;
    opt.scheme_x = tight_scheme();
    opt.scheme_y = tight_scheme();
    opt.delta_cross = 1e-10;
    opt.max_sweeps = 8;
    return opt;
}

double max_grid_error(const BivariateFn& f, const Skeleton2D& s, const Interval& ix,
                      const Interval& iy, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = ix.lo + (i + 0.5) * ix.width() / n;
            const double y = iy.lo + (j + 0.5) * iy.width() / n;
            worst = std::max(worst, std::abs(skeleton_eval(s, x, y) - f(x, y)));
        }
    return worst;
}

} // namespace

TEST_CASE("rank-1 cross recovers a separable product") {
    const Interval ix(0.0, 1.0), iy(-1.0, 2.0);
    const BivariateFn f = [](double x, double y) {
        return (1.0 + 2.0 * x) * std::sin(y);
    };
    const Cross2dResult res = cross_approx_2d(f, ix, iy, tight_options(1));
    REQUIRE(res.converged);
    REQUIRE(res.fibers_converged);
    CHECK(max_grid_error(f, res.skeleton, ix, iy, 30) < 1e-9);
    CHECK(res.skeleton.xs.size() == 1);
    CHECK(res.skeleton.ys.size() == 1);
}

TEST_CASE("cross is exact on sums of separable polynomial terms") {
    Rng rng(424242);
    for (int r = 1; r <= 3; ++r) {
        const Interval ix = random_interval(rng);
        const Interval iy = random_interval(rng);
        std::vector<Fiber> px, py;
        for (int t = 0; t < r; ++t) {
            px.push_back(random_fiber(rng, ix, 4, 0.8));
            py.push_back(random_fiber(rng, iy, 4, 0.8));
        }
        const BivariateFn f = [&](double x, double y) {
            double s = 0.0;
            for (int t = 0; t < r; ++t) s += px[t](x) * py[t](y);
            return s;
        };

        const Cross2dResult res = cross_approx_2d(f, ix, iy, tight_options(r));
        REQUIRE(res.fibers_converged);
        double scale = 1.0;
        for (int g = 0; g < 10; ++g)
            scale = std::max(scale, std::abs(f(ix.lo + g * ix.width() / 9.0, iy.mid())));
        CHECK(max_grid_error(f, res.skeleton, ix, iy, 25) < 1e-9 * scale);
    }
}

TEST_CASE("skeleton evaluation is the CUR contraction") {
    Rng rng(99);
    const Interval ix(0.0, 2.0), iy(0.0, 1.0);
    const BivariateFn f = [](double x, double y) {
        return std::exp(-x * y) + 0.5 * x * y * y;
    };
    Cross2dOptions opt = tight_options(3);
    const Cross2dResult res = cross_approx_2d(f, ix, iy, opt);
    const Skeleton2D& s = res.skeleton;

    for (int trial = 0; trial < 40; ++trial) {
        const double x = rng.unif(ix.lo, ix.hi);
        const double y = rng.unif(iy.lo, iy.hi);
        Eigen::RowVectorXd cx(s.C.cols());
        for (int j = 0; j < s.C.cols(); ++j) cx(j) = s.C.at(0, j)(x);
        Eigen::VectorXd ry(s.R.cols());
        for (int j = 0; j < s.R.cols(); ++j) ry(j) = s.R.col(j)(y);
        const double manual = cx * s.Ginv * ry;
        CHECK_THAT(skeleton_eval(s, x, y), WithinAbs(manual, 1e-12 * (1.0 + std::abs(manual))));
    }

    // a rank-3 skeleton of this smooth kernel is close on the whole square
    CHECK(max_grid_error(f, s, ix, iy, 25) < 5e-3);
}

TEST_CASE("cross interpolates its pivot fibers") {
    const Interval ix(0.0, 1.0), iy(0.0, 1.0);
    const BivariateFn f = [](double x, double y) {
        return 1.0 / (1.0 + x + 2.0 * y) + x * y;
    };
    Cross2dOptions opt = tight_options(4);
    opt.delta_cross = 1e-12;
    const Cross2dResult res = cross_approx_2d(f, ix, iy, opt);
    const Skeleton2D& s = res.skeleton;

    // along pivot rows and columns the skeleton reproduces f (CUR identity)
    for (double xp : s.xs)
        for (int g = 0; g <= 20; ++g) {
            const double y = iy.lo + g * iy.width() / 20;
            CHECK_THAT(skeleton_eval(s, xp, y), WithinAbs(f(xp, y), 1e-7));
        }
    for (double yp : s.ys)
        for (int g = 0; g <= 20; ++g) {
            const double x = ix.lo + g * ix.width() / 20;
            CHECK_THAT(skeleton_eval(s, x, yp), WithinAbs(f(x, yp), 1e-7));
        }
}

TEST_CASE("piecewise schemes resolve a gated kernel") {
    // separable discontinuous target: e^{x+y} gated to the lower-left quadrant
    const Interval ix(0.0, 1.0), iy(0.0, 1.0);
    const BivariateFn f = [](double x, double y) {
        return (x > 0.5 || y > 0.5) ? 0.0 : std::exp(x + y);
    };
    Cross2dOptions opt;
    opt.rank = 1;
    opt.scheme_x.kind = BasisKind::Piecewise;
    opt.scheme_x.eps_approx = 1e-9;
    opt.scheme_x.relative_eps = true;
    opt.scheme_y = opt.scheme_x;
    opt.delta_cross = 1e-8;
    opt.max_sweeps = 8;

    const Cross2dResult res = cross_approx_2d(f, ix, iy, opt);
    REQUIRE(res.fibers_converged);
    CHECK(max_grid_error(f, res.skeleton, ix, iy, 40) < 1e-6);
}

TEST_CASE("evaluation logging") {
    std::vector<std::array<double, 3>> log;
    const BivariateFn base = [](double x, double y) { return x + 10.0 * y; };
    const BivariateFn logged = with_eval_log(base, &log);

    CHECK_THAT(logged(0.25, 0.5), WithinAbs(5.25, 1e-15));
    CHECK_THAT(logged(1.0, -1.0), WithinAbs(-9.0, 1e-15));
    REQUIRE(log.size() == 2);
    CHECK(log[0][0] == 0.25);
    CHECK(log[0][1] == 0.5);
    CHECK(log[0][2] == 5.25);

    std::ostringstream os;
    write_eval_log_csv(os, log);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "x,y,f");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 2);
    }
    CHECK(rows == 2);

    // a full cross run through the logger records every evaluation it spends
    log.clear();
    const Cross2dResult res =
        cross_approx_2d(with_eval_log(base, &log), Interval(0, 1), Interval(0, 1),
                        tight_options(1));
    CHECK(res.converged);
    CHECK(log.size() > 10);
    for (const auto& e : log) CHECK_THAT(e[2], WithinAbs(e[0] + 10.0 * e[1], 1e-14));
}

TEST_CASE("cross options are validated") {
    const Interval iv(0.0, 1.0);
    const BivariateFn f = [](double x, double y) { return x + y; };

    Cross2dOptions bad_rank;
    bad_rank.rank = 0;
    CHECK_THROWS_AS(cross_approx_2d(f, iv, iv, bad_rank), std::invalid_argument);

    Cross2dOptions bad_sweeps;
    bad_sweeps.max_sweeps = 0;
    CHECK_THROWS_AS(cross_approx_2d(f, iv, iv, bad_sweeps), std::invalid_argument);

    Cross2dOptions bad_init;
    bad_init.rank = 2;
    bad_init.y_init = {0.5}; // wrong size
    CHECK_THROWS_AS(cross_approx_2d(f, iv, iv, bad_init), std::invalid_argument);

    Cross2dOptions outside;
    outside.rank = 1;
    outside.y_init = {2.0};
    CHECK_THROWS_AS(cross_approx_2d(f, iv, iv, outside), std::invalid_argument);
}

TEST_CASE("pseudo-inverse handles deficient matrices") {
    Eigen::MatrixXd M(2, 2);
    M << 1.0, 2.0, 2.0, 4.0; // rank one
    const Eigen::MatrixXd P = pseudo_inverse(M);
    // Moore-Penrose identities
    CHECK(((M * P * M) - M).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(((P * M * P) - P).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
    CHECK((pseudo_inverse(I2) - I2).cwiseAbs().maxCoeff() < 1e-14);
}
