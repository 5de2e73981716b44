// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "sumaug/model.hpp"

namespace sumaug::testing {

struct GradCheckResult {
  double worst = 0.0;
  std::string where;
  std::size_t checked = 0;
};

/// Central differences against the analytic gradient of one instance.
/// Relative error uses max(|fd|, |analytic|, floor) as the denominator so
/// entries whose true gradient is zero compare on an absolute scale.
/// `stride` > 1 checks every stride-th entry of each tensor (always
/// including the first).
inline GradCheckResult gradient_check(Seq2SeqModel& model, const TrainingInstance& instance,
                                      std::size_t stride = 1, double h = 1e-5, double floor = 1e-6) {
  auto& params = model.parameters();
  params.zero_grad();
  model.accumulate_gradients(instance, 1.0);
  GradCheckResult result;
  for (std::size_t t = 0; t < params.size(); ++t) {
    Mat& value = params.value(t);
    const Mat analytic = params.grad(t);
    const auto n = static_cast<std::size_t>(value.size());
    for (std::size_t flat = 0; flat < n; flat += stride) {
      double* x = value.data() + flat;
      const double saved = *x;
      *x = saved + h;
      const double up = model.loss(instance);
      *x = saved - h;
      const double down = model.loss(instance);
      *x = saved;
      const double fd = (up - down) / (2.0 * h);
      const double an = analytic.data()[flat];
      const double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), floor});
      ++result.checked;
      if (rel > result.worst) {
        result.worst = rel;
        result.where = params.tensors()[t].name + "[" + std::to_string(flat) + "]";
      }
    }
  }
  return result;
}

}  // namespace sumaug::testing
