#include "qnnbench/data/split.hpp"

#include <numeric>
#include <stdexcept>

#include "qnnbench/core/random.hpp"

namespace qnnbench::data {

std::size_t train_count(std::size_t size) { return size * 4 / 5; }

SplitBundle subset_and_split(std::size_t n_rows, std::size_t size, std::uint64_t seed) {
  if (size > n_rows)
    throw std::invalid_argument("subset_and_split: subset size " + std::to_string(size) +
                                " exceeds row count " + std::to_string(n_rows));
  if (size < 2)
    throw std::invalid_argument("subset_and_split: subset size must be >= 2");

  std::vector<std::size_t> pool(n_rows);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n_rows - i));
    std::swap(pool[i], pool[j]);
  }

  SplitBundle s;
  s.size = size;
  s.seed = seed;
  const std::size_t n_train = train_count(size);
  s.train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_train),
                pool.begin() + static_cast<std::ptrdiff_t>(size));
  return s;
}

void to_json(nlohmann::json &j, const SplitBundle &s) {
  j = nlohmann::json{{"size", s.size}, {"seed", s.seed}, {"train", s.train}, {"test", s.test}};
}

void from_json(const nlohmann::json &j, SplitBundle &s) {
  j.at("size").get_to(s.size);
  j.at("seed").get_to(s.seed);
  j.at("train").get_to(s.train);
  j.at("test").get_to(s.test);
}

} // namespace qnnbench::data
