#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ftrain/serialize.hpp"

namespace ft {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json interval_to_json(const Interval& iv) {
    return nlohmann::json::array({iv.lo, iv.hi});
}

Interval interval_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error("ft_load: interval must be a [lo, hi] pair");
    return Interval{j[0].get<double>(), j[1].get<double>()};
}

} // namespace

nlohmann::json fiber_to_json(const Fiber& f) {
    nlohmann::json j;
    if (!f.is_piecewise()) {
        const PolyExpansion& p = f.global();
        j["kind"] = "poly";
        j["interval"] = interval_to_json(p.interval());
        j["coeffs"] = p.coeffs();
        return j;
    }
    const PiecewisePoly& pw = f.piecewise();
    j["kind"] = "piecewise";
    j["breakpoints"] = pw.breakpoints();
    nlohmann::json pieces = nlohmann::json::array();
    for (const PolyExpansion& p : pw.pieces()) pieces.push_back(p.coeffs());
    j["pieces"] = std::move(pieces);
    return j;
}

Fiber fiber_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poly") {
        Interval iv = interval_from_json(j.at("interval"));
        auto coeffs = j.at("coeffs").get<std::vector<double>>();
        return Fiber(PolyExpansion(iv, std::move(coeffs)));
    }
    if (kind == "piecewise") {
        auto bps = j.at("breakpoints").get<std::vector<double>>();
        const nlohmann::json& pj = j.at("pieces");
        if (!pj.is_array() || pj.size() + 1 != bps.size())
            throw std::runtime_error("ft_load: piece count disagrees with breakpoints");
        std::vector<PolyExpansion> pieces;
        pieces.reserve(pj.size());
        for (std::size_t i = 0; i < pj.size(); ++i)
            pieces.emplace_back(Interval{bps[i], bps[i + 1]},
                                pj[i].get<std::vector<double>>());
        return Fiber(PiecewisePoly(std::move(bps), std::move(pieces)));
    }
    throw std::runtime_error("ft_load: unknown fiber kind '" + kind + "'");
}

nlohmann::json ft_to_json(const FunctionTrain& ft) {
    nlohmann::json j;
    j["format"] = "ftrain";
    j["version"] = kFormatVersion;
    j["basis"] = "legendre-orthonormal";
    j["dim"] = ft.dim();
    j["ranks"] = ft.ranks();
    nlohmann::json cores = nlohmann::json::array();
    for (int k = 0; k < ft.dim(); ++k) {
        const MatrixValuedFunction& c = ft.core(k);
        nlohmann::json cj;
        cj["interval"] = interval_to_json(c.interval());
        cj["rows"] = c.rows();
        cj["cols"] = c.cols();
        nlohmann::json entries = nlohmann::json::array();
        for (int i = 0; i < c.rows(); ++i)
            for (int q = 0; q < c.cols(); ++q) entries.push_back(fiber_to_json(c.at(i, q)));
        cj["entries"] = std::move(entries);
        cores.push_back(std::move(cj));
    }
    j["cores"] = std::move(cores);
    return j;
}

FunctionTrain ft_from_json(const nlohmann::json& j) {
    if (j.value("format", std::string{}) != "ftrain")
        throw std::runtime_error("ft_load: not a function-train document");
    if (j.value("version", -1) != kFormatVersion)
        throw std::runtime_error("ft_load: unsupported format version");
    const nlohmann::json& cores_j = j.at("cores");
    if (!cores_j.is_array() || cores_j.empty())
        throw std::runtime_error("ft_load: document has no cores");

    std::vector<MatrixValuedFunction> cores;
    cores.reserve(cores_j.size());
    for (const nlohmann::json& cj : cores_j) {
        Interval iv = interval_from_json(cj.at("interval"));
        const int rows = cj.at("rows").get<int>();
        const int cols = cj.at("cols").get<int>();
        const nlohmann::json& entries = cj.at("entries");
        if (rows < 1 || cols < 1 ||
            entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
            throw std::runtime_error("ft_load: core entry count disagrees with its shape");
        std::vector<Fiber> fibers;
        fibers.reserve(entries.size());
        for (const nlohmann::json& e : entries) fibers.push_back(fiber_from_json(e));
        cores.emplace_back(iv, rows, cols, std::move(fibers));
    }
    return FunctionTrain(std::move(cores));
}

void ft_save(const FunctionTrain& ft, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("ft_save: cannot open '" + path + "' for writing");
    out << ft_to_json(ft).dump(2) << '\n';
    if (!out) throw std::runtime_error("ft_save: write to '" + path + "' failed");
}

FunctionTrain ft_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ft_load: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("ft_load: '" + path + "' is not valid JSON: " + e.what());
    }
    return ft_from_json(j);
}

} // namespace ft
