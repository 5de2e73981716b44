// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sumaug/corpus.hpp"

namespace sumaug::testing {

inline Sample make_sample(std::string id, std::vector<std::string> units, std::string summary,
                          std::string group = "g") {
  Sample s;
  s.document.id = std::move(id);
  s.document.group = std::move(group);
  for (auto& u : units) s.document.units.push_back({std::move(u)});
  s.summary = std::move(summary);
  return s;
}

}  // namespace sumaug::testing
