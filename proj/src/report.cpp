#include "latdpp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "latdpp/errors.hpp"

namespace latdpp {

bool ExperimentReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void ExperimentReport::add_check(std::string name, double statistic, double reference,
                                 double tolerance, bool pass, std::string note) {
  checks.push_back({std::move(name), statistic, reference, tolerance, pass, std::move(note)});
}

void ExperimentReport::add_tolerance_check(std::string name, double statistic,
                                           double reference, double tolerance,
                                           std::string note) {
  bool pass = std::abs(statistic - reference) <= tolerance;
  add_check(std::move(name), statistic, reference, tolerance, pass, std::move(note));
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_to_string(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["version"] = report.version;
  j["provenance"] = {{"seed", report.seed}, {"symbol_hash", report.symbol_hash}};
  j["wall_time_s"] = report.wall_time_s;
  j["all_pass"] = report.all_pass();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["statistic"] = c.statistic;
    cj["reference"] = c.reference;
    cj["tolerance"] = c.tolerance;
    cj["verdict"] = c.pass ? "pass" : "fail";
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["config"] = report.resolved_config;
  return j;
}

CsvTable emit_plot_data(const ExperimentReport& report) {
  if (report.plot.empty()) {
    throw NotASweep("suite '" + report.suite + "' does not produce sweep plot data");
  }
  return report.plot;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace latdpp
