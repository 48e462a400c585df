#pragma once

#include <cstdint>
#include <string>

#include "qcontrol/field.hpp"

namespace qcontrol {

/// Run parameters shared by every subcommand.  Parsed from a flat key = value
/// document (bracketed section headers are cosmetic grouping); unknown keys
/// are hard errors so configs stay total and replayable.
struct RunConfig {
  int dimension = 1;
  int n = 64;
  double half_side = 8.0;
  double radius = 2.0;
  double horizon = 2.0;
  int nt = 256;

  double tol_cg = 1e-8;
  double tol_fixed_point = 1e-6;
  double tol_picard = 1e-9;
  double smallness_delta = 0.05;
  double ball_radius = 0.5;
  int cg_max_iter = 400;
  int fixed_point_max_iter = 40;
  std::size_t dense_threshold = 1024;

  std::uint64_t seed = 42;
  std::string output_dir = "qcontrol-out";

  // Initial datum u0: a radial bump centered on the first axis ("gaussian"),
  // a single plane-wave mode ("mode"), or "zero"; rescaled to u0_h1_norm.
  std::string u0_kind = "gaussian";
  double u0_center = 4.0;
  double u0_width = 0.7;
  double u0_h1_norm = 0.01;
  int u0_mode_index = 1;

  int frame_stride = 16;          // trajectory snapshot decimation
  std::string radius_sweep;       // "a:b:step" for the observability sweep
  std::string diag_name = "all";  // diagnostic key for the diag subcommand
  bool sweep = false;             // add a refinement level to diagnostics

  void validate() const;  // throws invalid_config_error
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Canonical echo (sorted keys) used in manifests and determinism checks.
std::string config_to_string(const RunConfig& config);

Grid make_grid_from(const RunConfig& config);
Field make_initial_datum(const RunConfig& config, const Grid& grid);

struct RadiusSweep {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};
RadiusSweep parse_radius_sweep(const std::string& text);

}  // namespace qcontrol
