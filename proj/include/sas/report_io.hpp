#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace sas::report_io {

// Atomic writes (temp file + rename) so partially written reports are never
// observed; identical content produces byte-identical files.
void write_json(const std::string& path, const nlohmann::json& j);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

}  // namespace sas::report_io
