#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "its/error.hpp"
#include "its/report.hpp"

namespace its {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// RFC 4180 fields of one record; quotes may wrap commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "row " + std::to_string(row) + ": unterminated quote");
  fields.push_back(std::move(field));
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

double parse_number(std::string_view cell, std::size_t row, std::string_view column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
    throw Error(ErrorCode::Parse, "row " + std::to_string(row) + ", column '" + std::string(column) +
                                      "': '" + std::string(cell) + "' is not a plain decimal number");
  return value;
}

}  // namespace

TimeSeriesDataset parse_csv(std::string_view text, std::string_view date_column, std::string_view date_format,
                            const std::vector<std::string>& columns) {
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.emplace_back(line);
      start = end + 1;
    }
  }
  // Header is the first non-blank line; a UTF-8 byte-order mark is dropped.
  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw Error(ErrorCode::Data, "CSV input is empty");
  std::string header_line = lines[li];
  if (header_line.starts_with("\xEF\xBB\xBF")) header_line.erase(0, 3);
  const std::vector<std::string> header = split_record(header_line, li + 1);

  auto find_column = [&](std::string_view name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::Config, "missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t date_idx = find_column(date_column);

  std::vector<std::string> labels = columns;
  if (labels.empty())
    for (const auto& h : header)
      if (h != date_column) labels.push_back(h);
  if (labels.empty()) throw Error(ErrorCode::Config, "no outcome columns in CSV input");
  std::vector<std::size_t> idx;
  for (const auto& l : labels) idx.push_back(find_column(l));

  std::vector<YearMonth> periods;
  std::vector<std::vector<double>> values(labels.size());
  for (++li; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const std::size_t row = li + 1;
    const std::vector<std::string> fields = split_record(lines[li], row);
    if (fields.size() != header.size())
      throw Error(ErrorCode::Parse, "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                                        " fields, header has " + std::to_string(header.size()));
    try {
      periods.push_back(parse_year_month(fields[date_idx], date_format));
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "row " + std::to_string(row) + ", column '" + std::string(date_column) +
                                        "': " + e.what());
    }
    for (std::size_t s = 0; s < labels.size(); ++s)
      values[s].push_back(parse_number(fields[idx[s]], row, labels[s]));
  }
  if (periods.empty()) throw Error(ErrorCode::Data, "CSV input has a header but no rows");
  return TimeSeriesDataset(std::move(periods), std::move(labels), std::move(values));
}

TimeSeriesDataset ingest_csv(const std::filesystem::path& path, std::string_view date_column,
                             std::string_view date_format, const std::vector<std::string>& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), date_column, date_format, columns);
}

std::string dataset_to_csv(const TimeSeriesDataset& data) {
  std::string out = "date";
  for (const auto& l : data.labels()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += data.periods()[i].to_string();
    for (std::size_t s = 0; s < data.series_count(); ++s) out += "," + format_number(data.series(s)[i]);
    out += "\n";
  }
  return out;
}

}  // namespace its
