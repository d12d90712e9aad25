#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnbench::data {

// One turbine measurement. Units: degC, hPa, degrees, m/s, kW.
struct SamplePoint {
  double temperature = 0.0;
  double pressure = 0.0;
  double direction = 0.0;
  double velocity = 0.0;
  double power = 0.0;

  bool operator==(const SamplePoint &) const = default;
};

inline constexpr std::size_t kNumFeatures = 4;
inline constexpr std::size_t kNumColumns = 5;
inline constexpr std::size_t kTargetColumn = 4;

// Column order used everywhere: the four features, then the target.
inline constexpr std::array<std::string_view, kNumColumns> kColumnNames = {
    "Temperature", "Pressure", "Direction", "Velocity", "Power"};

double column_value(const SamplePoint &p, std::size_t column);
std::array<double, kNumFeatures> features(const SamplePoint &p);

// Observed range of each column in the reference turbine dataset. Used for
// plausibility warnings and by the synthetic generator.
struct ColumnRange {
  double min;
  double max;
};
inline constexpr std::array<ColumnRange, kNumColumns> kReferenceRanges = {{
    {-5.29, 10.00},     // Temperature
    {979.79, 1035.72},  // Pressure
    {100.67, 359.78},   // Direction
    {0.32, 21.07},      // Velocity
    {2.24, 2033.12},    // Power
}};

// Canonical column name -> header used in the file.
using ColumnAliases = std::map<std::string, std::string>;

struct LoadedDataset {
  std::vector<SamplePoint> rows;
  std::vector<std::string> warnings;
};

// Comma-separated with a header row. Extra columns are ignored.
// Throws SchemaError for a missing column or an empty file and RowError (with
// the 1-based line number) for a row that does not parse or violates the
// point invariants (finite values, direction in [0, 360), velocity >= 0).
// Values outside kReferenceRanges only produce warnings.
LoadedDataset parse_dataset(std::istream &in, const ColumnAliases &aliases = {});
LoadedDataset load_dataset(const std::filesystem::path &path, const ColumnAliases &aliases = {});

// Writes the canonical header followed by one row per point, full precision.
void write_dataset(std::ostream &out, std::span<const SamplePoint> rows);

} // namespace qnnbench::data
