#include "sas/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sas::report_io {

namespace {

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("report_io: cannot open " + tmp.string());
    }
    out << content;
    if (!out) {
      throw std::runtime_error("report_io: write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace

void write_json(const std::string& path, const nlohmann::json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string s;
  auto append_row = [&s](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += row[i];
    }
    s += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("report_io: ragged CSV row");
    }
    append_row(row);
  }
  write_atomic(path, s);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) {
    throw std::runtime_error("report_io: double formatting failed");
  }
  return std::string(buf, ptr);
}

}  // namespace sas::report_io
