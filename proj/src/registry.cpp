#include <cmath>
#include <complex>
#include <stdexcept>

#include "ftrain/registry.hpp"

namespace ft {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Interval> cube(int d, double lo, double hi) {
    return std::vector<Interval>(static_cast<std::size_t>(d), Interval{lo, hi});
}

void check_arity(const std::vector<double>& x, int d, const char* name) {
    if (static_cast<int>(x.size()) != d)
        throw std::invalid_argument(std::string(name) + ": wrong input dimension");
}

/// Affine map from z in [-1,1] onto [lo, hi].
double to_range(double z, double lo, double hi) { return lo + 0.5 * (z + 1.0) * (hi - lo); }

BenchFunction make_sinsum(int d) {
    BenchFunction b;
    b.name = "sinsum";
    b.dim = d;
    b.domain = cube(d, 0.0, 1.0);
    b.fn = [d](const std::vector<double>& x) {
        check_arity(x, d, "sinsum");
        double s = 0.0;
        for (double v : x) s += v;
        return std::sin(s);
    };
    // int_{[0,1]^d} sin(sum x_i) dx = Im[ ((e^i - 1)/i)^d ]
    const std::complex<double> base(std::sin(1.0), 1.0 - std::cos(1.0));
    b.integral = std::pow(base, d).imag();
    b.description = "sine of the coordinate sum on the unit cube";
    return b;
}

BenchFunction make_genz_disc(int d) {
    BenchFunction b;
    b.name = "genz-disc";
    b.dim = d;
    b.domain = cube(d, 0.0, 1.0);
    b.fn = [d](const std::vector<double>& x) {
        check_arity(x, d, "genz-disc");
        double s = 0.0;
        for (double v : x) {
            if (v > 0.5) return 0.0;
            s += v;
        }
        return std::exp(5.0 * s);
    };
    b.integral = std::pow((std::exp(2.5) - 1.0) / 5.0, d);
    b.description = "separable exponential cut off outside [0,0.5]^d";
    return b;
}

BenchFunction make_borehole() {
    BenchFunction b;
    b.name = "borehole";
    b.dim = 8;
    b.domain = cube(8, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 8, "borehole");
        const double rw = to_range(z[0], 0.05, 0.15);
        const double r = to_range(z[1], 100.0, 50000.0);
        const double Tu = to_range(z[2], 63070.0, 115600.0);
        const double Hu = to_range(z[3], 990.0, 1110.0);
        const double Tl = to_range(z[4], 63.1, 116.0);
        const double Hl = to_range(z[5], 700.0, 820.0);
        const double L = to_range(z[6], 1120.0, 1680.0);
        const double Kw = to_range(z[7], 9855.0, 12045.0);
        const double lg = std::log(r / rw);
        return 2.0 * kPi * Tu * (Hu - Hl) /
               (lg * (1.0 + 2.0 * L * Tu / (lg * rw * rw * Kw) + Tu / Tl));
    };
    b.description = "water flow through a borehole, 8 inputs";
    return b;
}

BenchFunction make_otl() {
    BenchFunction b;
    b.name = "otl";
    b.dim = 6;
    b.domain = cube(6, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 6, "otl");
        const double Rb1 = to_range(z[0], 50.0, 150.0);
        const double Rb2 = to_range(z[1], 25.0, 70.0);
        const double Rf = to_range(z[2], 0.5, 3.0);
        const double Rc1 = to_range(z[3], 1.2, 2.5);
        const double Rc2 = to_range(z[4], 0.25, 1.2);
        const double beta = to_range(z[5], 50.0, 300.0);
        const double Vb1 = 12.0 * Rb2 / (Rb1 + Rb2);
        const double den = beta * (Rc2 + 9.0) + Rf;
        return (Vb1 + 0.74) * beta * (Rc2 + 9.0) / den + 11.35 * Rf / den +
               0.74 * Rf * beta * (Rc2 + 9.0) / (den * Rc1);
    };
    b.description = "midpoint voltage of an output transformerless push-pull circuit";
    return b;
}

BenchFunction make_piston() {
    BenchFunction b;
    b.name = "piston";
    b.dim = 7;
    b.domain = cube(7, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 7, "piston");
        const double M = to_range(z[0], 30.0, 60.0);
        const double S = to_range(z[1], 0.005, 0.020);
        const double V0 = to_range(z[2], 0.002, 0.010);
        const double k = to_range(z[3], 1000.0, 5000.0);
        const double P0 = to_range(z[4], 90000.0, 110000.0);
        const double Ta = to_range(z[5], 290.0, 296.0);
        const double T0 = to_range(z[6], 340.0, 360.0);
        const double A = P0 * S + 19.62 * M - k * V0 / S;
        const double V =
            S / (2.0 * k) * (std::sqrt(A * A + 4.0 * k * P0 * V0 * Ta / T0) - A);
        return 2.0 * kPi * std::sqrt(M / (k + S * S * P0 * V0 * Ta / (T0 * V * V)));
    };
    b.description = "cycle time of a piston within a cylinder";
    return b;
}

BenchFunction make_robotarm() {
    BenchFunction b;
    b.name = "robotarm";
    b.dim = 8;
    b.domain = cube(8, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 8, "robotarm");
        double u = 0.0, v = 0.0, phi = 0.0;
        for (int i = 0; i < 4; ++i) {
            phi += to_range(z[i], 0.0, 2.0 * kPi);
            const double Li = to_range(z[4 + i], 0.0, 1.0);
            u += Li * std::cos(phi);
            v += Li * std::sin(phi);
        }
        return std::sqrt(u * u + v * v);
    };
    b.description = "distance of a four-segment arm tip from the origin";
    return b;
}

BenchFunction make_wingweight() {
    BenchFunction b;
    b.name = "wingweight";
    b.dim = 10;
    b.domain = cube(10, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 10, "wingweight");
        const double Sw = to_range(z[0], 150.0, 200.0);
        const double Wfw = to_range(z[1], 220.0, 300.0);
        const double A = to_range(z[2], 6.0, 10.0);
        const double Lam = to_range(z[3], -10.0, 10.0) * kPi / 180.0;
        const double q = to_range(z[4], 16.0, 45.0);
        const double lam = to_range(z[5], 0.5, 1.0);
        const double tc = to_range(z[6], 0.08, 0.18);
        const double Nz = to_range(z[7], 2.5, 6.0);
        const double Wdg = to_range(z[8], 1700.0, 2500.0);
        const double Wp = to_range(z[9], 0.025, 0.08);
        const double c = std::cos(Lam);
        return 0.036 * std::pow(Sw, 0.758) * std::pow(Wfw, 0.0035) *
                   std::pow(A / (c * c), 0.6) * std::pow(q, 0.006) * std::pow(lam, 0.04) *
                   std::pow(100.0 * tc / c, -0.3) * std::pow(Nz * Wdg, 0.49) +
               Sw * Wp;
    };
    b.description = "weight of a light aircraft wing, 10 inputs";
    return b;
}

BenchFunction make_friedman() {
    BenchFunction b;
    b.name = "friedman";
    b.dim = 5;
    b.domain = cube(5, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 5, "friedman");
        double x[5];
        for (int i = 0; i < 5; ++i) x[i] = to_range(z[i], 0.0, 1.0);
        return 10.0 * std::sin(kPi * x[0] * x[1]) + 20.0 * (x[2] - 0.5) * (x[2] - 0.5) +
               10.0 * x[3] + 5.0 * x[4];
    };
    b.description = "classic five-input regression surface";
    return b;
}

BenchFunction make_gramacylee09() {
    BenchFunction b;
    b.name = "gramacylee09";
    b.dim = 6;
    b.domain = cube(6, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 6, "gramacylee09");
        double x[6];
        for (int i = 0; i < 6; ++i) x[i] = to_range(z[i], 0.0, 1.0);
        const double t = 0.9 * (x[0] + 0.48);
        return std::exp(std::sin(std::pow(t, 10.0))) + x[1] * x[2] + x[3];
    };
    b.description = "six-input surface with two inert variables";
    return b;
}

BenchFunction make_dettepep8() {
    BenchFunction b;
    b.name = "dettepep8";
    b.dim = 8;
    b.domain = cube(8, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 8, "dettepep8");
        double x[8];
        for (int i = 0; i < 8; ++i) x[i] = to_range(z[i], 0.0, 1.0);
        const double a = x[0] - 2.0 + 8.0 * x[1] - 8.0 * x[1] * x[1];
        const double bq = 3.0 - 4.0 * x[1];
        double s = 4.0 * a * a + bq * bq +
                   16.0 * std::sqrt(x[2] + 1.0) * (2.0 * x[2] - 1.0) * (2.0 * x[2] - 1.0);
        double inner = x[2];
        for (int i = 3; i < 8; ++i) {
            inner += x[i];
            s += (i + 1) * std::log(1.0 + inner);
        }
        return s;
    };
    b.description = "curved eight-input test surface with nested log terms";
    return b;
}

BenchFunction make_dettepepexp() {
    BenchFunction b;
    b.name = "dettepepexp";
    b.dim = 3;
    b.domain = cube(3, -1.0, 1.0);
    b.fn = [](const std::vector<double>& z) {
        check_arity(z, 3, "dettepepexp");
        const double x1 = to_range(z[0], 0.0, 1.0);
        const double x2 = to_range(z[1], 0.0, 1.0);
        const double x3 = to_range(z[2], 0.0, 1.0);
        return 100.0 * (std::exp(-2.0 / std::pow(x1, 1.75)) +
                        std::exp(-2.0 / std::pow(x2, 1.5)) +
                        std::exp(-2.0 / std::pow(x3, 1.25)));
    };
    b.description = "sum of three sharp exponential ridges";
    return b;
}

} // namespace

const std::vector<std::string>& bench_names() {
    static const std::vector<std::string> names = {
        "sinsum",     "genz-disc",    "borehole",  "otl",        "piston",     "robotarm",
        "wingweight", "friedman",     "gramacylee09", "dettepep8", "dettepepexp"};
    return names;
}

BenchFunction make_bench(const std::string& name, int dim) {
    if (name == "sinsum" || name == "genz-disc") {
        if (dim < 1)
            throw std::invalid_argument("make_bench: '" + name + "' needs dim >= 1");
        return name == "sinsum" ? make_sinsum(dim) : make_genz_disc(dim);
    }

    BenchFunction b;
    if (name == "borehole")
        b = make_borehole();
    else if (name == "otl")
        b = make_otl();
    else if (name == "piston")
        b = make_piston();
    else if (name == "robotarm")
        b = make_robotarm();
    else if (name == "wingweight")
        b = make_wingweight();
    else if (name == "friedman")
        b = make_friedman();
    else if (name == "gramacylee09")
        b = make_gramacylee09();
    else if (name == "dettepep8")
        b = make_dettepep8();
    else if (name == "dettepepexp")
        b = make_dettepepexp();
    else
        throw std::invalid_argument("make_bench: unknown function '" + name + "'");

    if (dim != 0 && dim != b.dim)
        throw std::invalid_argument("make_bench: '" + name + "' is fixed at dim " +
                                    std::to_string(b.dim));
    return b;
}

} // namespace ft
