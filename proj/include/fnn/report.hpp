#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fnn/optimize.hpp"

namespace fnn {

/// 12 significant digits, C locale; used for every number written to disk.
std::string format_sig(double v);

std::string fnv1a64_hex(const std::string& bytes);
std::string file_checksum(const std::filesystem::path& path);

// Record of one reproduce-all run: what was invoked, which files it wrote
// and their content hashes.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> checksums;

  std::string to_json() const;
  /// True when every listed output exists and matches its checksum.
  bool verify(const std::filesystem::path& dir) const;
};

/// One reproduced number compared against its published value.
struct PaperCheck {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass() const { return std::abs(value - target) <= tolerance; }
};

/// Every reproduced headline number. tolerance_override > 0 replaces each
/// check's declared tolerance.
std::vector<PaperCheck> paper_checks(double tolerance_override = 0.0);

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRecord>& records);

namespace cli {

/// Entry point shared by the binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cli

}  // namespace fnn
