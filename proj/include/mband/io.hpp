#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mband/bank.hpp"
#include "mband/transform.hpp"

namespace mband {

/// Malformed file content.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int bank_schema_version = 1;

enum class FilterRole { scaling, analysis, synthesis };

nlohmann::json filter_to_json(const Filter& f, FilterRole role, int channel);
nlohmann::json bank_to_json(const FilterBank& bank);
/// A file holding only a scaling filter.
nlohmann::json scaling_filter_to_json(const Filter& f, const BankParameters& parameters);
FilterBank bank_from_json(const nlohmann::json& j);

void write_bank(const std::filesystem::path& path, const FilterBank& bank);
FilterBank read_bank(const std::filesystem::path& path);

/// N rows of N rationals ("p" or "p/q"), whitespace or comma separated.
RationalMatrix read_rational_matrix(const std::filesystem::path& path);

/// Numbers from a text file: one sample per line, or delimiter-separated
/// rows (comma, semicolon, tab, space) from which `column` is taken.
/// Lines starting with '#' are ignored; a leading non-numeric row is a header.
Signal read_signal(const std::filesystem::path& path, int column = 0);
void write_signal(const std::filesystem::path& path, const Signal& x);
/// Two columns "x value".
void write_columns(const std::filesystem::path& path, const std::vector<double>& x, const std::vector<double>& y);

/// 17 significant digits, enough for any double to round-trip.
std::string format_double(double v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mband
