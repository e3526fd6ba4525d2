#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace barw {

// 17 significant digits, '.' separator, locale independent.
std::string format_real(double v);

// Writes a CSV with LF line endings; every field is preformatted.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace barw
