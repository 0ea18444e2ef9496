// softctc/forward_backward.h

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

#ifndef SOFTCTC_FORWARD_BACKWARD_H_
#define SOFTCTC_FORWARD_BACKWARD_H_

#include <vector>

#include "softctc/compiled_target.h"
#include "softctc/types.h"

namespace softctc {

// Negative log-likelihood of a target and its gradient with respect to the
// raw posterior entries y_t(k).
struct LossResult {
  double loss = 0.0;
  double log_likelihood = 0.0;  // == -loss
  int num_frames = 0;
  int num_symbols = 0;
  std::vector<double> grad;  // num_frames x num_symbols, row-major

  double grad_at(int t, Symbol k) const {
    return grad[static_cast<size_t>(t) * num_symbols + k];
  }
};

// Forward and backward variables of one (posteriors, target) pair, stored
// rescaled: every row of `alphas` and `betas` sums to one. The unscaled
// values are
//
//   alpha_t(s) = alphas[t][s] * exp(log_alpha_scale[t])
//   beta_t(s)  = betas[t][s]  * exp(log_beta_scale[t])
//
// where log_alpha_scale[t] accumulates the log row sums of frames 0..t and
// log_beta_scale[t] those of frames t..T-1.
//
// A workspace may be reused across calls by one caller; it is not safe to
// share between threads.
struct ForwardBackwardWorkspace {
  int num_frames = 0;
  int num_states = 0;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> log_alpha_scale;
  std::vector<double> log_beta_scale;
  double log_likelihood = 0.0;

  const double *alpha_row(int t) const {
    return alphas.data() + static_cast<size_t>(t) * num_states;
  }
  const double *beta_row(int t) const {
    return betas.data() + static_cast<size_t>(t) * num_states;
  }
};

// Runs
//   alpha_1 = alpha_hat * q_1,  alpha_t = (alpha_{t-1} A) * q_t
//   beta_T  = beta_hat * q_T,   beta_t  = (beta_{t+1} A^T) * q_t
// with q_t(s) = y_t(symbol of s) and per-frame rescaling, and sets
// ws->log_likelihood = log sum_s alpha_T(s) beta_hat(s).
//
// Throws InfeasibleError when the target admits no alignment of nonzero
// mass.
void forward_backward(const PosteriorMatrix &y, const CompiledTarget &target,
                      ForwardBackwardWorkspace *ws);

// log sum_s alpha_t(s) beta_t(s) / q_t(s), with terms where q_t(s) == 0
// taken as 0. Independent of t up to rounding.
double log_state_posterior_sum(const PosteriorMatrix &y,
                               const CompiledTarget &target,
                               const ForwardBackwardWorkspace &ws, int t);

// Loss and gradient from a filled workspace:
//   d(-log p)/dy_t(k) = -(1/p) sum_{s: X_s = k} alpha_t(s) beta_t(s) / q_t(s)^2
LossResult loss_from_workspace(const PosteriorMatrix &y,
                               const CompiledTarget &target,
                               const ForwardBackwardWorkspace &ws);

// forward_backward() followed by loss_from_workspace().
LossResult evaluate_target(const PosteriorMatrix &y,
                           const CompiledTarget &target,
                           ForwardBackwardWorkspace *ws);

}  // namespace softctc

#endif  // SOFTCTC_FORWARD_BACKWARD_H_
