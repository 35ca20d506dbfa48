#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "treeldp/legendre.hpp"
#include "treeldp/mgf.hpp"
#include "treeldp/montecarlo.hpp"

namespace treeldp::io {

using nlohmann::json;

/// Shortest round-trip decimal rendering; infinities and NaN serialize as
/// the strings "inf" / "-inf" / "nan".
std::string format_double(double v);

/// JSON value for a possibly non-finite real (number, or one of the strings
/// above; nlohmann would otherwise emit null).
json json_real(double v);
double real_from_json(const json& j);

std::uint64_t fnv1a(const std::string& s);

/// Run manifest: version, command, resolved config, seed. Written at the top
/// of every output artifact; equal manifests imply byte-identical data
/// sections (nothing time- or host-dependent is recorded).
struct Manifest {
    std::string command;
    json config = json::object();
    std::uint64_t seed = 0;

    json to_json() const;
};

/// CSV with '#'-prefixed manifest header, comma separator, '.' decimal
/// point, one header row, LF line endings.
void write_csv(std::ostream& os, const Manifest& manifest,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_json(std::ostream& os, const Manifest& manifest, const json& payload);

json to_json(const MgfTable& table);
MgfTable mgf_table_from_json(const json& j);

json to_json(const RateGrid& grid);
RateGrid rate_grid_from_json(const json& j);

json to_json(const RateEstimate& est);

}  // namespace treeldp::io
