#include "barw/report.hpp"

#include <sstream>

#include "barw/csv.hpp"

namespace barw {

void Report::add_parameter(std::string key, double value) {
  parameters.emplace_back(std::move(key), format_real(value));
}

void Report::add_parameter(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
}

void Report::add_value(std::string key, double value) { values.emplace_back(std::move(key), value); }

std::optional<double> Report::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return std::nullopt;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "check=" << name << '\n';
  out << "parameters:";
  for (const auto& [k, v] : parameters) out << ' ' << k << '=' << v;
  out << '\n';
  out << "status=" << (passed ? "pass" : "fail") << '\n';
  for (const auto& [k, v] : values) out << k << '=' << format_real(v) << '\n';
  if (!note.empty()) out << "note=" << note << '\n';
  out << "violations=" << violations.size() << '\n';
  for (const auto& v : violations) out << "  " << v << '\n';
  out << '\n';
  return out.str();
}

std::string reports_to_text(const std::vector<Report>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_text();
  return out;
}

}  // namespace barw
