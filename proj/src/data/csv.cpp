#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "qnnbench/core/errors.hpp"
#include "qnnbench/data/dataset.hpp"

namespace qnnbench::data {

double column_value(const SamplePoint &p, std::size_t column) {
  switch (column) {
  case 0:
    return p.temperature;
  case 1:
    return p.pressure;
  case 2:
    return p.direction;
  case 3:
    return p.velocity;
  case 4:
    return p.power;
  }
  throw std::out_of_range("column_value: column index out of range");
}

std::array<double, kNumFeatures> features(const SamplePoint &p) {
  return {p.temperature, p.pressure, p.direction, p.velocity};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  if (field.empty())
    return std::nullopt;
  if (field.front() == '+')
    field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    return std::nullopt;
  return value;
}

} // namespace

LoadedDataset parse_dataset(std::istream &in, const ColumnAliases &aliases) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF"))
      line.erase(0, 3);
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header)
    throw SchemaError("dataset is empty: no header row");

  const auto header = split_fields(line);
  std::array<std::size_t, kNumColumns> position{};
  for (std::size_t c = 0; c < kNumColumns; ++c) {
    const std::string canonical(kColumnNames[c]);
    const auto alias = aliases.find(canonical);
    const std::string wanted = alias != aliases.end() ? alias->second : canonical;
    std::size_t found = header.size();
    for (std::size_t h = 0; h < header.size(); ++h)
      if (header[h] == wanted) {
        found = h;
        break;
      }
    if (found == header.size())
      throw SchemaError("missing column \"" + wanted + "\"" +
                        (wanted != canonical ? " (alias for " + canonical + ")" : ""));
    position[c] = found;
  }

  LoadedDataset result;
  std::array<std::size_t, kNumColumns> out_of_range{};
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty())
      continue;
    const auto fields = split_fields(line);
    std::array<double, kNumColumns> values{};
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      if (position[c] >= fields.size())
        throw RowError(line_no, "too few fields");
      const auto v = parse_number(fields[position[c]]);
      if (!v || !std::isfinite(*v))
        throw RowError(line_no, "bad value \"" + std::string(fields[position[c]]) +
                                    "\" in column " + std::string(kColumnNames[c]));
      values[c] = *v;
      if (*v < kReferenceRanges[c].min || *v > kReferenceRanges[c].max)
        ++out_of_range[c];
    }
    SamplePoint p{values[0], values[1], values[2], values[3], values[4]};
    if (p.direction < 0.0 || p.direction >= 360.0)
      throw RowError(line_no, "direction outside [0, 360)");
    if (p.velocity < 0.0)
      throw RowError(line_no, "negative velocity");
    result.rows.push_back(p);
  }

  for (std::size_t c = 0; c < kNumColumns; ++c) {
    if (out_of_range[c] == 0)
      continue;
    std::ostringstream w;
    w << out_of_range[c] << " row(s) have " << kColumnNames[c] << " outside the reference range ["
      << kReferenceRanges[c].min << ", " << kReferenceRanges[c].max << "]";
    result.warnings.push_back(w.str());
  }
  return result;
}

LoadedDataset load_dataset(const std::filesystem::path &path, const ColumnAliases &aliases) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open dataset " + path.string());
  return parse_dataset(in, aliases);
}

void write_dataset(std::ostream &out, std::span<const SamplePoint> rows) {
  for (std::size_t c = 0; c < kNumColumns; ++c)
    out << (c ? "," : "") << kColumnNames[c];
  out << '\n';
  char buf[32];
  for (const auto &p : rows) {
    for (std::size_t c = 0; c < kNumColumns; ++c) {
      auto res = std::to_chars(buf, buf + sizeof buf, column_value(p, c));
      out << (c ? "," : "") << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

} // namespace qnnbench::data
