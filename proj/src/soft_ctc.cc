// src/soft_ctc.cc

// Copyright 2026  The softctc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "softctc/soft_ctc.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace softctc {

LossResult soft_ctc(const PosteriorMatrix &y, const CompiledTarget &target,
                    ForwardBackwardWorkspace *ws) {
  return evaluate_target(y, target, ws);
}

LossResult soft_ctc(const PosteriorMatrix &y, const CompiledTarget &target) {
  ForwardBackwardWorkspace ws;
  return evaluate_target(y, target, &ws);
}

std::vector<double> soft_ctc_log_values(const PosteriorMatrix &y,
                                        const CompiledTarget &target) {
  ForwardBackwardWorkspace ws;
  try {
    forward_backward(y, target, &ws);
  } catch (const InfeasibleError &) {
    return std::vector<double>(y.num_frames(),
                               -std::numeric_limits<double>::infinity());
  }
  std::vector<double> out(y.num_frames());
  for (int t = 0; t < y.num_frames(); ++t)
    out[t] = log_state_posterior_sum(y, target, ws, t);
  return out;
}

double soft_ctc_value_at(const PosteriorMatrix &y,
                         const CompiledTarget &target, int t) {
  if (t < 0 || t >= y.num_frames())
    throw ValidationError(ValidationError::Kind::kShapeMismatch,
                          "frame index out of range", t);
  return std::exp(soft_ctc_log_values(y, target)[t]);
}

std::vector<LossResult> soft_ctc_batch(std::span<const SoftCtcItem> items,
                                       int jobs) {
  std::vector<LossResult> results(items.size());
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(items.size())));

  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    ForwardBackwardWorkspace ws;
    for (size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = soft_ctc(*items[i].posteriors, *items[i].target, &ws);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace softctc
