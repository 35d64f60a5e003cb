#include "tpk/records.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tpk/errors.hpp"

namespace tpk {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw ParameterError("table row has " + std::to_string(row.size()) +
                         " cells, header has " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s) {
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (s.empty() || res.ec != std::errc() || res.ptr != last)
    throw ParameterError("not a real number: '" + std::string(s) + "'");
  return x;
}

long long parse_integer(std::string_view s) {
  long long x = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (s.empty() || res.ec != std::errc() || res.ptr != last)
    throw ParameterError("not an integer: '" + std::string(s) + "'");
  return x;
}

std::string join_reals(std::span<const double> xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += format_real(xs[i]);
  }
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cell_text(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double x) const { return format_real(x); }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, cell);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

bool is_real(const std::string& s) {
  try {
    parse_real(s);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  write_csv_row(out, table.columns);
  std::vector<std::string> fields;
  for (const auto& row : table.rows) {
    fields.clear();
    for (const auto& cell : row) fields.push_back(cell_text(cell));
    write_csv_row(out, fields);
  }
}

void write_json_lines(std::ostream& out, const Table& table) {
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& key = table.columns[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[key] = nullptr;
            } else {
              obj[key] = v;
            }
          },
          row[i]);
    }
    out << obj.dump() << '\n';
  }
}

void write_text(std::ostream& out, const Table& table) {
  std::vector<std::vector<std::string>> text;
  text.push_back(table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& cell : row) fields.push_back(cell_text(cell));
    text.push_back(std::move(fields));
  }
  std::vector<std::size_t> width(table.columns.size(), 0);
  for (const auto& fields : text)
    for (std::size_t i = 0; i < fields.size(); ++i)
      width[i] = std::max(width[i], fields[i].size());
  for (const auto& fields : text) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) line += "  ";
      line += fields[i];
      if (i + 1 < fields.size()) line.append(width[i] - fields[i].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

void write_table(std::ostream& out, const Table& table, Format format) {
  switch (format) {
    case Format::Csv:
      write_csv(out, table);
      return;
    case Format::Json:
      write_json_lines(out, table);
      return;
    case Format::Text:
      write_text(out, table);
      return;
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParameterError("csv: unterminated quoted field");
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string reformat_csv(std::string_view text) {
  std::ostringstream out;
  for (auto& row : parse_csv(text)) {
    for (auto& field : row)
      if (is_real(field)) field = format_real(parse_real(field));
    write_csv_row(out, row);
  }
  return out.str();
}

namespace {

Cell opt(const std::optional<double>& x) {
  if (x) return *x;
  return std::monostate{};
}

// The check that matters most for a one-line summary: the first failing
// one, otherwise the one closest to its tolerance.
const CheckResult* worst_check(const VerificationReport& r) {
  const CheckResult* worst = nullptr;
  double worst_score = -1.0;
  for (const auto& c : r.checks) {
    double score = c.tolerance > 0.0 ? c.max_gap / c.tolerance
                                     : (c.max_gap > 0.0 ? 1e300 : 0.0);
    if (!c.passed()) score = std::numeric_limits<double>::infinity();
    if (score > worst_score) {
      worst_score = score;
      worst = &c;
    }
  }
  return worst;
}

Cell elapsed_ms(const VerificationReport& r, bool include_timing) {
  if (!include_timing) return std::monostate{};
  return std::chrono::duration<double, std::milli>(r.elapsed).count();
}

}  // namespace

Table reports_table(const std::vector<VerificationReport>& reports,
                    bool include_timing) {
  Table t({"suite", "check", "alpha", "K", "closed_form", "empirical_min_ratio",
           "witness_ratio_at_tmin", "analytic_value", "max_gap", "tolerance",
           "n_samples", "violations", "elapsed_ms"});
  for (const auto& r : reports) {
    const Cell alpha = opt(r.alpha);
    const Cell K = r.K ? Cell(static_cast<long long>(*r.K)) : Cell(std::monostate{});
    if (r.suite == "identities") {
      for (const auto& c : r.checks)
        t.add({r.suite, c.name, alpha, K, std::monostate{}, std::monostate{},
               std::monostate{}, std::monostate{}, c.max_gap, c.tolerance,
               static_cast<long long>(c.samples), static_cast<long long>(c.violations),
               elapsed_ms(r, include_timing)});
      continue;
    }
    const CheckResult* w = worst_check(r);
    t.add({r.suite, w ? Cell(w->name) : Cell(std::monostate{}), alpha, K,
           opt(r.closed_form), opt(r.empirical_min_ratio), opt(r.witness_ratio_at_tmin),
           opt(r.analytic_value), w ? Cell(w->max_gap) : Cell(std::monostate{}),
           w ? Cell(w->tolerance) : Cell(std::monostate{}),
           static_cast<long long>(r.n_samples), static_cast<long long>(r.violations),
           elapsed_ms(r, include_timing)});
  }
  return t;
}

}  // namespace tpk
