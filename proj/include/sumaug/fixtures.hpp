// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "sumaug/corpus.hpp"

namespace sumaug {

/// Parameters of a synthetic multi-unit summarization corpus.
struct FixtureShape {
  std::size_t documents = 40;
  std::size_t groups = 4;
  std::size_t mean_units = 6;
  std::size_t unit_spread = 2;  // unit counts uniform in mean +/- spread
  std::size_t train = 32;
  std::size_t val = 4;
  std::size_t test = 4;
  bool reviews = false;  // review-style (products) instead of reflections (courses)
  std::uint64_t seed = 7;
};

/// 368 documents in 4 course groups, about 44 reflections each, 294/37/37.
FixtureShape reflection_fixture_shape();
/// 160 products with 8 reviews each, 58/42/60.
FixtureShape review_fixture_shape();
/// 16 short documents, all in train; used for overfit checks.
FixtureShape toy_fixture_shape();
/// 40 short documents in 4 groups, 32/4/4; used for pipeline runs.
FixtureShape small_fixture_shape();

FixtureShape fixture_shape(std::string_view name);

/// Deterministic corpus with the given shape. Splits are dealt round-robin
/// over groups so every split sees every group.
Corpus make_fixture(const FixtureShape& shape);

}  // namespace sumaug
