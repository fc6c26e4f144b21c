#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace eeguide {

// Seeded generator with portable derived draws. std::uniform_int_distribution
// and std::shuffle are implementation-defined, so all sampling goes through
// these helpers to keep emitted files identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, n); n must be positive.
  std::size_t uniform(std::size_t n);
  // Uniform double in [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for (seed, key), e.g. one stream per instance_id.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view key);

// k distinct indices from [0, n) in draw order. Requires k <= n.
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k);

// Weighted sampling without replacement (Efraimidis-Spirakis keys). Weights
// must be positive. Returns k indices in descending key order.
std::vector<std::size_t> weighted_sample(Rng& rng, std::span<const double> weights, std::size_t k);

}  // namespace eeguide
