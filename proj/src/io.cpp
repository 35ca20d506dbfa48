#include "treeldp/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeldp/numeric.hpp"
#include "treeldp/version.hpp"

namespace treeldp::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

json json_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double real_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw std::invalid_argument("real_from_json: unknown string value " + s);
    }
    return j.get<double>();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json Manifest::to_json() const {
    json j;
    j["version"] = TREELDP_VERSION;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["rng"] = "mt19937_64";
    j["config_hash"] = fnv1a(config.dump());
    return j;
}

void write_csv(std::ostream& os, const Manifest& manifest,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    os << "# manifest " << manifest.to_json().dump() << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Manifest& manifest, const json& payload) {
    json doc;
    doc["manifest"] = manifest.to_json();
    doc["data"] = payload;
    os << doc.dump(2) << "\n";
}

json to_json(const MgfTable& table) {
    json j;
    j["d"] = table.d;
    j["J"] = table.J.times();
    j["lambda_axes"] = table.lambda_grid.axes;
    j["n_values"] = table.n_values;
    j["extrapolation_model"] = table.extrapolation_model;
    json rows = json::array();
    for (const auto& row : table.values_by_n) {
        json r = json::array();
        for (double v : row) r.push_back(json_real(v));
        rows.push_back(std::move(r));
    }
    j["values_by_n"] = std::move(rows);
    json ex = json::array(), hw = json::array();
    for (double v : table.extrapolated) ex.push_back(json_real(v));
    for (double v : table.halfwidth) hw.push_back(json_real(v));
    j["extrapolated"] = std::move(ex);
    j["halfwidth"] = std::move(hw);
    return j;
}

MgfTable mgf_table_from_json(const json& j) {
    MgfTable table;
    table.d = j.at("d").get<int>();
    table.J = TimeGrid(j.at("J").get<std::vector<double>>());
    table.lambda_grid.axes = j.at("lambda_axes").get<std::vector<std::vector<double>>>();
    table.n_values = j.at("n_values").get<std::vector<int>>();
    table.extrapolation_model = j.value("extrapolation_model", std::string("c + a/n"));
    for (const auto& row : j.at("values_by_n")) {
        std::vector<double> r;
        r.reserve(row.size());
        for (const auto& v : row) r.push_back(real_from_json(v));
        table.values_by_n.push_back(std::move(r));
    }
    for (const auto& v : j.at("extrapolated")) table.extrapolated.push_back(real_from_json(v));
    for (const auto& v : j.at("halfwidth")) table.halfwidth.push_back(real_from_json(v));
    table.validate();
    return table;
}

json to_json(const RateGrid& grid) {
    json j;
    j["J"] = grid.J.times();
    j["x_axes"] = grid.axes;
    json vals = json::array();
    for (double v : grid.values) vals.push_back(json_real(v));
    j["values"] = std::move(vals);
    j["argmax_lambda"] = grid.argmax_lambda;
    json flags = json::array();
    for (char f : grid.boundary_flag) flags.push_back(static_cast<bool>(f));
    j["boundary_flag"] = std::move(flags);
    json gaps = json::array();
    for (double g : grid.resolution_gap) gaps.push_back(json_real(g));
    j["resolution_gap"] = std::move(gaps);
    j["lambda_radius"] = grid.lambda_radius;
    j["certificate"] = {{"ok", grid.certificate.ok},
                        {"worst_violation", json_real(grid.certificate.worst_violation)}};
    return j;
}

RateGrid rate_grid_from_json(const json& j) {
    RateGrid grid;
    grid.J = TimeGrid(j.at("J").get<std::vector<double>>());
    grid.axes = j.at("x_axes").get<std::vector<std::vector<double>>>();
    for (const auto& v : j.at("values")) grid.values.push_back(real_from_json(v));
    grid.argmax_lambda = j.at("argmax_lambda").get<std::vector<std::vector<double>>>();
    for (const auto& f : j.at("boundary_flag")) grid.boundary_flag.push_back(f.get<bool>() ? 1 : 0);
    for (const auto& g : j.at("resolution_gap")) grid.resolution_gap.push_back(real_from_json(g));
    grid.lambda_radius = j.at("lambda_radius").get<double>();
    grid.certificate.ok = j.at("certificate").at("ok").get<bool>();
    grid.certificate.worst_violation = real_from_json(j.at("certificate").at("worst_violation"));
    return grid;
}

json to_json(const RateEstimate& est) {
    json j;
    j["J"] = est.point.J.times();
    j["x"] = est.point.x;
    j["rho"] = est.point.rho;
    j["samples"] = est.samples;
    j["seed"] = est.seed;
    if (est.tilt) {
        j["tilt"] = *est.tilt;
    } else {
        j["tilt"] = nullptr;
    }
    j["n_values"] = est.n_values;
    auto dump_reals = [](const std::vector<double>& xs) {
        json a = json::array();
        for (double x : xs) a.push_back(json_real(x));
        return a;
    };
    j["prob"] = dump_reals(est.prob);
    j["prob_stderr"] = dump_reals(est.prob_stderr);
    j["rate"] = dump_reals(est.rate);
    j["rate_stderr"] = dump_reals(est.rate_stderr);
    j["hits"] = est.hits;
    j["flags"] = est.flags;
    if (est.stabilization_defined) {
        j["stabilization"] = json_real(est.stabilization);
    } else {
        j["stabilization"] = nullptr;
        j["stabilization_flag"] = "undefined";
    }
    return j;
}

}  // namespace treeldp::io
