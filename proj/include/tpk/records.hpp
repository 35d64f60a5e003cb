#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tpk/verify.hpp"

namespace tpk {

/// One field of a record; monostate is an absent value.
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Rows of cells under a fixed header, emitted as CSV, JSON lines or text.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
  /// Throws if the row width differs from the header.
  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json, Text };

/// Locale-free rendering with 17 significant digits,
/// '.' separator, "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double x);

/// Parses a real written in the C locale. Throws ParameterError unless the
/// whole string is consumed.
double parse_real(std::string_view s);

/// Parses a base-10 integer. Throws ParameterError unless the whole string
/// is consumed.
long long parse_integer(std::string_view s);

/// Reals joined by `sep` with format_real.
std::string join_reals(std::span<const double> xs, char sep = ';');

/// Quotes a CSV field when it holds ',', '"', CR or LF; quotes are doubled.
std::string csv_escape(std::string_view field);

/// CSV with a header row and "\n" line endings. Absent cells are empty.
void write_csv(std::ostream& out, const Table& table);

/// One JSON object per row, keys in column order; absent cells are null.
void write_json_lines(std::ostream& out, const Table& table);

/// Space-aligned columns for reading in a terminal.
void write_text(std::ostream& out, const Table& table);

void write_table(std::ostream& out, const Table& table, Format format);

/// Splits CSV text into rows of unescaped fields (quoted fields may span
/// lines). Throws ParameterError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Parses CSV and emits it again, re-rendering every numeric field through
/// format_real. Output produced by write_csv comes back byte-identical.
std::string reformat_csv(std::string_view text);

/// Verification reports as records. Grid cells give one row each, where
/// check, max_gap and tolerance describe the cell's worst check; the
/// identity suite gives one row per check. `elapsed_ms` is empty unless
/// `include_timing` is set.
Table reports_table(const std::vector<VerificationReport>& reports,
                    bool include_timing);

}  // namespace tpk
