#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "irlc/config.hpp"

namespace irlc::runner {

struct Check {
  std::string name;
  double value = 0;
  std::string relation;  // "<=" or ">="
  double threshold = 0;
  bool pass = false;
};

// cells are preformatted so that equal runs give equal bytes
struct Table {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct StudyReport {
  std::string name;
  nlohmann::json input;
  nlohmann::json results;
  std::vector<Check> checks;
  std::vector<Table> tables;
  double seconds = 0;
  std::string error;  // set when the study threw

  bool pass() const;
  const Check* find(const std::string& check) const;
};

struct RunReport {
  std::vector<StudyReport> studies;
  bool pass() const;
};

std::string fmt(double v);  // shortest round-trip representation

RunReport run_studies(const config::ScenarioConfig& c, std::ostream* log = nullptr);
StudyReport run_study(const config::ScenarioConfig& c, const config::Study& s);

nlohmann::json to_json(const RunReport& r);
// report.json plus one CSV per table
void write_outputs(const RunReport& r, const std::filesystem::path& dir);

// IRLC_OUTPUT_DIR when set, otherwise the config value
std::filesystem::path output_directory(const config::ScenarioConfig& c);

}  // namespace irlc::runner
