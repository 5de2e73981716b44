// SPDX-License-Identifier: Apache-2.0
#include "sumaug/rouge.hpp"

#include "sumaug/tokenizer.hpp"

namespace sumaug {

RougeSuite rouge_suite(std::string_view candidate, std::string_view reference) {
  const auto c = normalize_tokens(candidate);
  const auto r = normalize_tokens(reference);
  return rouge_suite_tokens(c, r);
}

}  // namespace sumaug
