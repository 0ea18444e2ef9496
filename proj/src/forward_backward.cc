// src/forward_backward.cc

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

#include "softctc/forward_backward.h"

#include <cmath>
#include <limits>

namespace softctc {

namespace {

// Divides row[0..n) by its sum and returns log(sum); throws when the row
// has no mass left.
double normalize_row(double *row, int n, int t, const char *pass) {
  double sum = 0.0;
  for (int s = 0; s < n; ++s) sum += row[s];
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw InfeasibleError(std::string("no admissible alignment: ") + pass +
                          " variables vanish at frame " + std::to_string(t));
  const double inv = 1.0 / sum;
  for (int s = 0; s < n; ++s) row[s] *= inv;
  return std::log(sum);
}

}  // namespace

void forward_backward(const PosteriorMatrix &y, const CompiledTarget &target,
                      ForwardBackwardWorkspace *ws) {
  check_target(target, y.num_symbols());
  const int T = y.num_frames();
  const int S = target.num_states();
  if (T < 1 || S < 1)
    throw InfeasibleError("empty posterior matrix or target");

  ws->num_frames = T;
  ws->num_states = S;
  ws->alphas.assign(static_cast<size_t>(T) * S, 0.0);
  ws->betas.assign(static_cast<size_t>(T) * S, 0.0);
  ws->log_alpha_scale.assign(T, 0.0);
  ws->log_beta_scale.assign(T, 0.0);

  const auto &A = target.transitions;
  const auto &sym = target.state_symbols;

  double *alpha = ws->alphas.data();
  for (int s = 0; s < S; ++s) alpha[s] = target.alpha_hat[s] * y(0, sym[s]);
  double log_scale = normalize_row(alpha, S, 0, "forward");
  ws->log_alpha_scale[0] = log_scale;
  for (int t = 1; t < T; ++t) {
    const double *prev = alpha;
    alpha += S;
    auto q = y.row(t);
    for (int j = 0; j < S; ++j) {
      auto from = A.in_sources(j);
      auto w = A.in_weights(j);
      double acc = 0.0;
      for (size_t n = 0; n < from.size(); ++n) acc += prev[from[n]] * w[n];
      alpha[j] = acc * q[sym[j]];
    }
    log_scale += normalize_row(alpha, S, t, "forward");
    ws->log_alpha_scale[t] = log_scale;
  }

  double final_mass = 0.0;
  for (int s = 0; s < S; ++s) final_mass += alpha[s] * target.beta_hat[s];
  if (!(final_mass > 0.0))
    throw InfeasibleError("no admissible alignment ends in a final state");
  ws->log_likelihood = std::log(final_mass) + log_scale;

  double *beta = ws->betas.data() + static_cast<size_t>(T - 1) * S;
  for (int s = 0; s < S; ++s) beta[s] = target.beta_hat[s] * y(T - 1, sym[s]);
  log_scale = normalize_row(beta, S, T - 1, "backward");
  ws->log_beta_scale[T - 1] = log_scale;
  for (int t = T - 2; t >= 0; --t) {
    const double *next = beta;
    beta -= S;
    auto q = y.row(t);
    for (int i = 0; i < S; ++i) {
      auto to = A.out_targets(i);
      auto w = A.out_weights(i);
      double acc = 0.0;
      for (size_t n = 0; n < to.size(); ++n) acc += next[to[n]] * w[n];
      beta[i] = acc * q[sym[i]];
    }
    log_scale += normalize_row(beta, S, t, "backward");
    ws->log_beta_scale[t] = log_scale;
  }
}

double log_state_posterior_sum(const PosteriorMatrix &y,
                               const CompiledTarget &target,
                               const ForwardBackwardWorkspace &ws, int t) {
  const double *a = ws.alpha_row(t);
  const double *b = ws.beta_row(t);
  double sum = 0.0;
  for (int s = 0; s < ws.num_states; ++s) {
    double q = y(t, target.state_symbols[s]);
    if (q > 0.0) sum += a[s] * b[s] / q;
  }
  if (!(sum > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(sum) + ws.log_alpha_scale[t] + ws.log_beta_scale[t];
}

LossResult loss_from_workspace(const PosteriorMatrix &y,
                               const CompiledTarget &target,
                               const ForwardBackwardWorkspace &ws) {
  const int T = ws.num_frames;
  const int K = y.num_symbols();
  LossResult r;
  r.num_frames = T;
  r.num_symbols = K;
  r.log_likelihood = ws.log_likelihood;
  r.loss = -ws.log_likelihood;
  r.grad.assign(static_cast<size_t>(T) * K, 0.0);

  for (int t = 0; t < T; ++t) {
    const double *a = ws.alpha_row(t);
    const double *b = ws.beta_row(t);
    // alpha_t beta_t / p in unscaled terms.
    const double factor = std::exp(ws.log_alpha_scale[t] +
                                   ws.log_beta_scale[t] - ws.log_likelihood);
    double *g = r.grad.data() + static_cast<size_t>(t) * K;
    for (int s = 0; s < ws.num_states; ++s) {
      Symbol k = target.state_symbols[s];
      double q = y(t, k);
      if (q > 0.0) g[k] -= a[s] * b[s] / (q * q) * factor;
    }
  }
  return r;
}

LossResult evaluate_target(const PosteriorMatrix &y,
                           const CompiledTarget &target,
                           ForwardBackwardWorkspace *ws) {
  forward_backward(y, target, ws);
  return loss_from_workspace(y, target, *ws);
}

}  // namespace softctc
