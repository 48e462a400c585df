#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qcontrol/norms.hpp"
#include "qcontrol/trajectory.hpp"

namespace qcontrol {

// Field snapshot binary format "QCF1": 32-byte little-endian header
//   magic[4] = "QCF1", u32 d, u32 n, f64 L, u64 payload bytes, u32 reserved
// followed by n^d complex pairs of 64-bit floats, row-major (axis 0 slowest).

void write_field(const std::filesystem::path& path, const Field& field);
Field read_field(const std::filesystem::path& path);

/// Spectrum CSV with columns |k|^2, re, im.
void write_spectrum_csv(const std::filesystem::path& path, const Field& field);

/// Frame snapshots (decimated by `stride`) plus an index JSON
/// {"times": [...], "frame_files": [...]}.
std::vector<std::string> write_trajectory(const std::filesystem::path& directory,
                                          const std::string& stem, const Trajectory& traj,
                                          int stride);

void write_norm_bundle_json(const std::filesystem::path& path, const NormBundle& bundle);

/// CSV with an explicit header row; each row must match the header width.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Self-contained SVG line plot of (x, y) pairs.
void write_svg_line_plot(const std::filesystem::path& path, const std::string& title,
                         const std::vector<double>& x, const std::vector<double>& y);

/// Slice CSV at x3 = 0 (or the full line in 1-D): columns are the first one
/// or two coordinates plus re, im.
void write_slice_csv(const std::filesystem::path& path, const Field& field);

std::uint64_t checksum_file(const std::filesystem::path& path);

}  // namespace qcontrol
