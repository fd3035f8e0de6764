#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace colombeau::app {

/// Plain CSV table; every cell is already formatted text.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  std::string csv() const;
};

/// Shortest decimal that reads back to the same double.
std::string cell(double v);
std::string cell(long v);
inline std::string cell(int v) { return cell(static_cast<long>(v)); }
inline std::string cell(std::size_t v) { return cell(static_cast<long>(v)); }
inline std::string cell(bool v) { return v ? "true" : "false"; }

/// One asserted check of an experiment.
struct Check {
  std::string name;
  bool passed = false;
  std::string measured;   // the number the verdict rests on
  std::string threshold;  // what it was compared against
  std::string detail;
};

struct ExperimentResult {
  std::deque<Table> tables;  // deque: table() references stay valid
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;  // stage, seconds
  std::vector<std::string> warnings;
  std::vector<std::string> notes;  // flagged caveats printed with the report

  Table& table(const std::string& name, std::vector<std::string> columns);
  void check(std::string name, bool passed, std::string measured, std::string threshold,
             std::string detail = {});
  bool passed() const;
  std::vector<const Check*> failures() const;
};

struct RunInfo {
  std::string config_text;
  std::string config_source;
  std::string experiment;
  std::uint64_t seed = 0;
  int workers = 1;
  double wall_seconds = 0;
};

/// Writes config.cfg, one CSV per table, checks.csv and manifest.txt.
void write_results(const std::filesystem::path& dir, const RunInfo& info,
                   const ExperimentResult& result);

/// Raised by `report` when the directory holds no manifest.
class MissingManifest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Human-readable summary of a results directory.
std::string report(const std::filesystem::path& dir);

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace colombeau::app
