#pragma once

#include <string>

#include "crflat/construct.hpp"
#include "crflat/invariants.hpp"
#include "crflat/xcheck.hpp"

namespace crflat {

// crflat-series-v1: terms sorted graded-lexicographically, absent terms are
// zero, re/im round-trip at full double precision.
std::string series_to_json(const Series& s);
Series series_from_json(const std::string& text);
void write_series_file(const std::string& path, const Series& s);
Series read_series_file(const std::string& path);

// crflat-config-v1: construction input (order, rho, u_seed).
struct ConstructConfig {
  int order = 12;
  HoloSeries rho;
  HoloSeries seed;
};
ConstructConfig read_config_file(const std::string& path);
std::string config_to_json(const ConstructConfig& cfg);
void write_config_file(const std::string& path, const ConstructConfig& cfg);

// crflat-sidecar-v1: the (r, t, u, rev) pipeline intermediates.
void write_sidecar_file(const std::string& path, const RigidModelData& data);
RigidModelData read_sidecar_file(const std::string& path);

// crflat-report-v1.
std::string report_to_json(const InvariantReport& rep, bool embed_series);
void write_report_file(const std::string& path, const InvariantReport& rep,
                       bool embed_series);

// Grid CSV: one row per node, columns x, y, re, im.
std::string grid_to_csv(const GridSample& g);
void write_grid_csv(const std::string& path, const GridSample& g);

}  // namespace crflat
