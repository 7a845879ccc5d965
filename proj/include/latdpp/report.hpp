#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace latdpp {

// One verified quantity: a statistic against its analytic reference.  For
// tolerance checks pass means |statistic - reference| <= tolerance; for
// one-sided margins the tolerance column records the allowed slack.
struct CheckRecord {
  std::string name;
  double statistic = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool empty() const { return header.empty(); }
};

struct ExperimentReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  CsvTable table;  // one row per sweep point
  CsvTable plot;   // (x, y, envelope...) data for sweep suites; empty otherwise
  std::uint64_t seed = 0;
  std::string symbol_hash;
  std::string version;
  double wall_time_s = 0.0;
  nlohmann::ordered_json resolved_config;

  bool all_pass() const;
  void add_check(std::string name, double statistic, double reference, double tolerance,
                 bool pass, std::string note = "");
  // pass iff |statistic - reference| <= tolerance
  void add_tolerance_check(std::string name, double statistic, double reference,
                           double tolerance, std::string note = "");
};

// 17 significant digits, enough to round-trip a double
std::string fmt17(double v);

std::string csv_to_string(const CsvTable& table);
nlohmann::ordered_json report_to_json(const ExperimentReport& report);

// plot data for sweep suites; throws NotASweep when the report has none
CsvTable emit_plot_data(const ExperimentReport& report);

// write-then-rename so partial files never appear under the final name
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace latdpp
