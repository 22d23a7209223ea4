#pragma once

#include <string>

#include <json.hpp>

#include "blaschke/cone.hpp"
#include "blaschke/core.hpp"
#include "blaschke/dyadic.hpp"
#include "blaschke/lab.hpp"

namespace blaschke::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Interchange schema for zero lists:
//   {"zeros": [{"re": f, "im": f, "mult": n}, ...],
//    "unimodular": {"re": f, "im": f}}   (optional)
json zero_list_to_json(const ZeroList& zeros);
ZeroList zero_list_from_json(const json& j);

json product_to_json(const BlaschkeProduct& B);
// Uses the "unimodular" field when present, the default normalization otherwise.
BlaschkeProduct product_from_json(const json& j);

json config_to_json(const LabConfig& cfg);

json report_to_json(const FunctionalReport& rep, const LabConfig& cfg);
std::string report_csv_header();
std::string report_csv_row(const FunctionalReport& rep);

// Occupied sectors with their densities, the maximal families, and both sums.
json tree_report_json(const DyadicTree& tree, double p, int n_max);

json arcs_to_json(const BoundaryArcSet& arcs);

json sweep_to_json(const SweepResult& res, const LabConfig& cfg);
std::string sweep_series_csv(const SweepResult& res); // (delta, value) rows

json ratios_to_json(const SweepReport& report, const LabConfig& cfg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace blaschke::io
