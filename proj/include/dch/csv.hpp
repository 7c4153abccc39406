#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dch {

/// Parsed CSV file: one header row followed by data rows. Quoted fields with
/// embedded commas and doubled quotes are supported; blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based source line number of each row, for diagnostics.
    std::vector<std::size_t> line_numbers;

    /// Index of a header column, if present.
    std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Round-trip text for a double using 17 significant digits;
/// infinities are written as "inf" / "-inf".
std::string format_double(double value);

/// Strict parse of a floating-point field; nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string trim(std::string_view text);

}  // namespace dch
