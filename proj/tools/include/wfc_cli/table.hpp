#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wfc::cli {

// A missing cell is written as NA (CSV) or null (JSON).
using Cell = std::optional<double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// 9 significant digits, trailing zeros trimmed ("%.9g").
std::string format_number(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wfc::cli
