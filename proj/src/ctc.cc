// src/ctc.cc

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

#include "softctc/ctc.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace softctc {

CompiledTarget build_linear_transition_matrix(const Labeling &l, Symbol blank) {
  const int S = 2 * static_cast<int>(l.size()) + 1;
  CompiledTarget target;
  target.state_symbols.resize(S);
  target.state_group.resize(S);
  target.state_roles.resize(S);
  target.alpha_hat.assign(S, 0.0);
  target.beta_hat.assign(S, 0.0);

  std::vector<Transition> edges;
  edges.reserve(3 * S);
  for (int s = 0; s < S; ++s) {
    const bool is_letter = s % 2 == 1;
    target.state_symbols[s] = is_letter ? l[s / 2] : blank;
    target.state_roles[s] = is_letter ? StateRole::kLetter : StateRole::kBlank;
    // Letter k and the blank preceding it share group k; the trailing blank
    // gets its own group.
    target.state_group[s] = s / 2;
    edges.push_back({s, s, 1.0});
    if (s + 1 < S) edges.push_back({s, s + 1, 1.0});
    if (is_letter && s + 2 < S && l[s / 2] != l[s / 2 + 1])
      edges.push_back({s, s + 2, 1.0});
  }
  target.transitions = SparseTransitions(S, std::move(edges));

  target.alpha_hat[0] = 1.0;
  if (S > 1) target.alpha_hat[1] = 1.0;
  target.beta_hat[S - 1] = 1.0;
  if (S > 1) target.beta_hat[S - 2] = 1.0;
  return target;
}

LossResult ctc_forward_backward(const PosteriorMatrix &y, const Labeling &l,
                                const Vocabulary &v,
                                ForwardBackwardWorkspace *ws) {
  if (y.num_symbols() != v.size())
    throw ValidationError(ValidationError::Kind::kShapeMismatch,
                          "posterior columns do not match the vocabulary");
  require_valid_labeling(l, v);
  return evaluate_target(y, build_linear_transition_matrix(l, v.blank()), ws);
}

LossResult ctc_forward_backward(const PosteriorMatrix &y, const Labeling &l,
                                const Vocabulary &v) {
  ForwardBackwardWorkspace ws;
  return ctc_forward_backward(y, l, v, &ws);
}

LossResult multi_ctc(const PosteriorMatrix &y, const NBestList &nbest,
                     const Vocabulary &v) {
  require_valid_nbest(nbest, v);

  // log(w_i p_i) per feasible variant.
  std::vector<double> log_terms;
  std::vector<LossResult> parts;
  ForwardBackwardWorkspace ws;
  for (const auto &entry : nbest) {
    try {
      LossResult r = ctc_forward_backward(y, entry.labeling, v, &ws);
      log_terms.push_back(std::log(entry.weight) + r.log_likelihood);
      parts.push_back(std::move(r));
    } catch (const InfeasibleError &) {
    }
  }
  if (parts.empty())
    throw InfeasibleError("every n-best variant is infeasible");

  const double top = *std::max_element(log_terms.begin(), log_terms.end());
  double acc = 0.0;
  for (double lt : log_terms) acc += std::exp(lt - top);
  const double log_total = top + std::log(acc);

  LossResult out;
  out.num_frames = y.num_frames();
  out.num_symbols = y.num_symbols();
  out.log_likelihood = log_total;
  out.loss = -log_total;
  out.grad.assign(parts.front().grad.size(), 0.0);
  for (size_t i = 0; i < parts.size(); ++i) {
    // Posterior weight of variant i within the mixture.
    const double share = std::exp(log_terms[i] - log_total);
    const auto &g = parts[i].grad;
    for (size_t n = 0; n < g.size(); ++n) out.grad[n] += share * g[n];
  }
  return out;
}

}  // namespace softctc
