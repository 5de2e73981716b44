// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <random>
#include <string_view>
#include <utility>

namespace sumaug {

/// Mixes an arbitrary list of integers and strings into one 64-bit seed.
/// Used to give every (seed, sample id, k) triple its own random stream so
/// results do not depend on processing order.
class SeedBuilder {
 public:
  explicit SeedBuilder(std::uint64_t seed) { add(seed); }

  SeedBuilder& add(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      mix_byte(static_cast<unsigned char>(value >> (8 * i)));
    }
    return *this;
  }

  SeedBuilder& add(std::string_view text) {
    add(static_cast<std::uint64_t>(text.size()));
    for (char c : text) mix_byte(static_cast<unsigned char>(c));
    return *this;
  }

  [[nodiscard]] std::uint64_t value() const {
    // splitmix64 finalizer over the FNV-1a state
    std::uint64_t z = state_ + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  void mix_byte(unsigned char b) {
    state_ ^= b;
    state_ *= 0x100000001b3ULL;
  }

  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// Seeded generator with platform-independent integer and real draws.
///
/// std::mt19937_64 output is fully specified by the standard, but the
/// standard distributions are not, so the bounded-integer, unit-interval and
/// shuffle helpers are implemented here directly on top of the raw engine.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return x % n;
  }

  /// Fisher-Yates shuffle.
  template <typename RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::uint64_t>(std::distance(first, last));
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      using std::swap;
      swap(first[static_cast<std::ptrdiff_t>(i - 1)], first[static_cast<std::ptrdiff_t>(j)]);
    }
  }

  /// Gamma(shape, 1) draw. Marsaglia-Tsang; shapes below one use the
  /// boosting identity Gamma(a) = Gamma(a + 1) * U^(1/a).
  double gamma(double shape);

  /// Standard normal draw (polar Box-Muller, no cached second value).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace sumaug
