#pragma once

#include <iosfwd>
#include <map>

#include "qcontrol/config.hpp"
#include "qcontrol/io.hpp"

namespace qcontrol {

inline constexpr const char* kVersion = "0.1.0";

// Exit code table (documented in the CLI help):
//   0 all verdicts pass, 2 config error, 3 solver non-convergence,
//   4 blowup detected, 5 io error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitBlowup = 4;
inline constexpr int kExitIo = 5;

struct FileRecord {
  std::string name;
  std::uint64_t bytes = 0;
  std::uint64_t checksum = 0;
};

struct RunManifest {
  std::string subcommand;
  std::string version;
  std::string config_echo;
  std::string started_at;
  std::string finished_at;
  std::vector<FileRecord> files;        // every emitted file, checksummed
  std::map<std::string, bool> verdicts;
  int exit_code = 0;
};

/// Dispatches one of simulate | hum | nlcontrol | observe | diag, writes all
/// artifacts into config.output_dir (which must be empty or absent) and the
/// manifest last.  Solver and blowup failures are recorded in the manifest
/// and rethrown after it is written.
RunManifest run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log);

int exit_code_for(const std::exception& error);

}  // namespace qcontrol
