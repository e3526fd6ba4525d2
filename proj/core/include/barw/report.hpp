#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace barw {

// Outcome of one verification check. Violations are data, not errors.
struct Report {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool passed = true;
  std::vector<std::pair<std::string, double>> values;  // extremal observations
  std::vector<std::string> violations;
  std::string note;

  void add_parameter(std::string key, double value);
  void add_parameter(std::string key, std::string value);
  void add_value(std::string key, double value);
  std::optional<double> value(const std::string& key) const;

  // Block of "key=value" lines, terminated by a blank line.
  std::string to_text() const;
};

std::string reports_to_text(const std::vector<Report>& reports);

}  // namespace barw
