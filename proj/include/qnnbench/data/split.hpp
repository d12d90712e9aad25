#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace qnnbench::data {

// A random subset of a row list divided 80/20 into train and test indices.
// Indices refer to the original row list.
struct SplitBundle {
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  bool operator==(const SplitBundle &) const = default;
};

// Number of training rows for a subset of `size`: floor(0.8 * size).
std::size_t train_count(std::size_t size);

// Seeded partial Fisher-Yates draw of `size` distinct indices from
// [0, n_rows); the first train_count(size) drawn become the training set.
// Throws std::invalid_argument if size > n_rows or size < 2.
SplitBundle subset_and_split(std::size_t n_rows, std::size_t size, std::uint64_t seed);

void to_json(nlohmann::json &j, const SplitBundle &s);
void from_json(const nlohmann::json &j, SplitBundle &s);

} // namespace qnnbench::data
