// src/target_compiler.cc

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

#include "softctc/target_compiler.h"

#include <algorithm>

namespace softctc {

namespace {

struct StateLayout {
  // First state of every group; group_begin.back() == number of states.
  std::vector<int> group_begin;
};

StateLayout layout_of(const TranscriptionConfusionModel &tcm) {
  StateLayout out;
  int next = 0;
  for (const auto &g : tcm.groups) {
    out.group_begin.push_back(next);
    next += 1 + static_cast<int>(g.letter_weights.size());
  }
  out.group_begin.push_back(next);
  return out;
}

}  // namespace

TranscriptionConfusionModel build_tcm(const ConfusionNetwork &cn,
                                      Symbol blank) {
  if (!cn.normalized)
    throw ValidationError(ValidationError::Kind::kInvalidConfusionNetwork,
                          "only normalized networks can be compiled");
  TranscriptionConfusionModel tcm;
  tcm.blank = blank;
  for (size_t i = 0; i < cn.sets.size(); ++i) {
    const auto &set = cn.sets[i];
    if (set.null_prob >= 1.0 - kDegenerateMargin)
      throw DegenerateSetError(static_cast<int>(i),
                               "confusion set " + std::to_string(i) +
                                   " is null with probability ~1");
    if (set.alternatives.contains(blank))
      throw ValidationError(ValidationError::Kind::kInvalidConfusionNetwork,
                            "confusion set contains the blank symbol");
    CharacterConfusionGroup g;
    g.epsilon = set.null_prob;
    g.blank_weight = 1.0 - set.null_prob;
    for (const auto &[sym, p] : set.alternatives)
      if (p > 0.0) g.letter_weights[sym] = p;
    if (g.letter_weights.empty())
      throw ValidationError(ValidationError::Kind::kInvalidConfusionNetwork,
                            "confusion set without alternatives");
    tcm.groups.push_back(std::move(g));
  }
  tcm.groups.push_back(CharacterConfusionGroup{});
  return tcm;
}

CompiledTarget compile(const TranscriptionConfusionModel &tcm) {
  const StateLayout layout = layout_of(tcm);
  const int G = tcm.group_count();
  const int S = layout.group_begin.back();

  CompiledTarget target;
  target.state_symbols.resize(S);
  target.state_group.resize(S);
  target.state_roles.resize(S);
  for (int g = 0; g < G; ++g) {
    int s = layout.group_begin[g];
    target.state_symbols[s] = tcm.blank;
    target.state_group[s] = g;
    target.state_roles[s] = StateRole::kBlank;
    for (const auto &[sym, p] : tcm.groups[g].letter_weights) {
      ++s;
      target.state_symbols[s] = sym;
      target.state_group[s] = g;
      target.state_roles[s] = StateRole::kLetter;
    }
  }

  std::vector<Transition> edges;
  for (int s = 0; s < S; ++s) edges.push_back({s, s, 1.0});

  for (int g = 0; g < G; ++g) {
    const auto &group = tcm.groups[g];
    const int blank_state = layout.group_begin[g];

    // Blank into its own letters.
    int s = blank_state;
    for (const auto &[sym, p] : group.letter_weights)
      edges.push_back({blank_state, ++s, p / group.blank_weight});

    // Letters into later groups, through the epsilon chain.
    s = blank_state;
    for (const auto &[from_sym, unused] : group.letter_weights) {
      const int from = ++s;
      double skip = 1.0;  // product of epsilons of the groups jumped over
      for (int h = g + 1; h < G && skip > 0.0; ++h) {
        const auto &next = tcm.groups[h];
        const int h_blank = layout.group_begin[h];
        edges.push_back({from, h_blank, skip * next.blank_weight});
        int t = h_blank;
        for (const auto &[to_sym, p] : next.letter_weights) {
          ++t;
          if (to_sym != from_sym) edges.push_back({from, t, skip * p});
        }
        skip *= next.epsilon;
      }
    }
  }
  target.transitions = SparseTransitions(S, std::move(edges));
  std::tie(target.alpha_hat, target.beta_hat) = initial_vectors(tcm);
  return target;
}

std::pair<std::vector<double>, std::vector<double>> initial_vectors(
    const TranscriptionConfusionModel &tcm) {
  const StateLayout layout = layout_of(tcm);
  const int G = tcm.group_count();
  const int S = layout.group_begin.back();
  std::vector<double> alpha_hat(S, 0.0), beta_hat(S, 0.0);

  double prefix = 1.0;  // product of epsilons of groups before g
  for (int g = 0; g < G && prefix > 0.0; ++g) {
    const auto &group = tcm.groups[g];
    int s = layout.group_begin[g];
    alpha_hat[s] = prefix * group.blank_weight;
    for (const auto &[sym, p] : group.letter_weights) alpha_hat[++s] = prefix * p;
    prefix *= group.epsilon;
  }

  // Terminal blank.
  beta_hat[S - 1] = 1.0;
  double suffix = 1.0;  // product of epsilons of groups after g
  for (int g = G - 2; g >= 0 && suffix > 0.0; --g) {
    const auto &group = tcm.groups[g];
    int s = layout.group_begin[g];
    for (size_t n = 0; n < group.letter_weights.size(); ++n)
      beta_hat[++s] = suffix;
    suffix *= group.epsilon;
  }
  return {std::move(alpha_hat), std::move(beta_hat)};
}

CompiledTarget compile_cn(const ConfusionNetwork &cn, Symbol blank) {
  return compile(build_tcm(cn, blank));
}

CompiledTarget compile_nbest(const NBestList &nbest, Symbol blank) {
  if (nbest.empty())
    throw ValidationError(ValidationError::Kind::kInvalidNBest,
                          "n-best list is empty");
  double total = 0.0;
  for (const auto &e : nbest) total += e.weight;
  if (!(total > 0.0))
    throw ValidationError(ValidationError::Kind::kInvalidNBest,
                          "n-best weights must be positive");

  CompiledTarget target;
  std::vector<Transition> edges;
  auto add_state = [&](Symbol sym, int group, StateRole role) {
    target.state_symbols.push_back(sym);
    target.state_group.push_back(group);
    target.state_roles.push_back(role);
    target.alpha_hat.push_back(0.0);
    target.beta_hat.push_back(0.0);
    int s = static_cast<int>(target.state_symbols.size()) - 1;
    edges.push_back({s, s, 1.0});
    return s;
  };

  const int initial = add_state(blank, 0, StateRole::kBlank);
  target.alpha_hat[initial] = 1.0;
  // Chain ends that must connect to the shared final blank.
  std::vector<int> last_letters;
  for (size_t v = 0; v < nbest.size(); ++v) {
    const double w = nbest[v].weight / total;
    const Labeling &l = nbest[v].labeling;
    const int group = static_cast<int>(v) + 1;
    if (l.empty()) {
      target.beta_hat[initial] += w;
      continue;
    }
    int prev = add_state(l[0], group, StateRole::kLetter);
    edges.push_back({initial, prev, w});
    target.alpha_hat[prev] = w;
    for (size_t k = 1; k < l.size(); ++k) {
      const int mid = add_state(blank, group, StateRole::kBlank);
      const int cur = add_state(l[k], group, StateRole::kLetter);
      edges.push_back({prev, mid, 1.0});
      edges.push_back({mid, cur, 1.0});
      if (l[k] != l[k - 1]) edges.push_back({prev, cur, 1.0});
      prev = cur;
    }
    target.beta_hat[prev] = 1.0;
    last_letters.push_back(prev);
  }
  if (!last_letters.empty()) {
    const int final_blank =
        add_state(blank, static_cast<int>(nbest.size()) + 1, StateRole::kBlank);
    target.beta_hat[final_blank] = 1.0;
    for (int s : last_letters) edges.push_back({s, final_blank, 1.0});
  }
  target.transitions = SparseTransitions(target.num_states(), std::move(edges));
  return target;
}

}  // namespace softctc
