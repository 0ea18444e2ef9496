// softctc/soft_ctc.h

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

#ifndef SOFTCTC_SOFT_CTC_H_
#define SOFTCTC_SOFT_CTC_H_

#include <span>
#include <utility>
#include <vector>

#include "softctc/compiled_target.h"
#include "softctc/forward_backward.h"
#include "softctc/types.h"

namespace softctc {

// -log of the total weight of all alignments admitted by `target`, and its
// gradient w.r.t. the posterior entries. The loss is read off the last
// frame, -log sum_s alpha_T(s) beta_hat(s).
//
// Throws InfeasibleError when that total is zero, ValidationError when a
// state symbol is not a column of y.
LossResult soft_ctc(const PosteriorMatrix &y, const CompiledTarget &target);

// Same with a caller-owned workspace, left holding this instance's
// rescaled forward/backward variables.
LossResult soft_ctc(const PosteriorMatrix &y, const CompiledTarget &target,
                    ForwardBackwardWorkspace *ws);

// sum_s alpha_t(s) beta_t(s) / q_t(s) for 0-based frame t (0/0 terms count
// as 0). Equal for every t; 0 for an infeasible instance.
double soft_ctc_value_at(const PosteriorMatrix &y,
                         const CompiledTarget &target, int t);

// Log of soft_ctc_value_at() for every frame, from a single forward-backward
// run, without underflow. -inf everywhere for an infeasible instance.
std::vector<double> soft_ctc_log_values(const PosteriorMatrix &y,
                                        const CompiledTarget &target);

struct SoftCtcItem {
  const PosteriorMatrix *posteriors;
  const CompiledTarget *target;
};

// soft_ctc() over independent items, spread over up to `jobs` threads
// (0 = hardware concurrency). Results are in input order; the first error
// encountered is rethrown after all workers finish.
std::vector<LossResult> soft_ctc_batch(std::span<const SoftCtcItem> items,
                                       int jobs = 1);

}  // namespace softctc

#endif  // SOFTCTC_SOFT_CTC_H_
