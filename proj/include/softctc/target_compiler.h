// softctc/target_compiler.h

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

// Compilation of confusion networks and n-best lists into CompiledTarget.
//
// Each confusion set becomes a group of states: one blank followed by one
// letter state per alternative (ascending symbol order). A null alternative
// becomes an epsilon edge bypassing the whole group, so a group can be
// entered directly from any earlier group whose epsilon chain reaches it.
// The epsilon closure is expanded eagerly into A. A final blank-only group
// lets alignments end in trailing blanks.

#ifndef SOFTCTC_TARGET_COMPILER_H_
#define SOFTCTC_TARGET_COMPILER_H_

#include <map>
#include <utility>
#include <vector>

#include "softctc/compiled_target.h"
#include "softctc/confusion_network.h"
#include "softctc/types.h"

namespace softctc {

// Null probabilities at or above 1 - kDegenerateMargin are rejected.
inline constexpr double kDegenerateMargin = 1e-9;

struct CharacterConfusionGroup {
  double epsilon = 0.0;       // null probability of the source set
  double blank_weight = 1.0;  // 1 - epsilon
  std::map<Symbol, double> letter_weights;
};

struct TranscriptionConfusionModel {
  // One group per source set plus the terminal blank-only group.
  std::vector<CharacterConfusionGroup> groups;
  Symbol blank = 0;

  int group_count() const { return static_cast<int>(groups.size()); }
};

// Throws ValidationError if `cn` is not normalized, DegenerateSetError if
// a set's null probability leaves (almost) no mass for the blank.
TranscriptionConfusionModel build_tcm(const ConfusionNetwork &cn,
                                      Symbol blank);

// Transition matrix of a confusion model. Entry (i, j):
//  - i letter in group g, j in a later group h, symbols differ:
//      prod_{g < u < h} eps_u * in_h(X_j)
//    with in_h(blank) = 1 - eps_h and in_h(X) = p_h(X);
//  - i blank, j letter of the same group: p_h(X_j) / (1 - eps_h);
//  - i == j: 1.
// Jumps stop at the first group with eps == 0.
CompiledTarget compile(const TranscriptionConfusionModel &tcm);

// alpha_hat(i) = prod_{u < g} eps_u * in_g(X_i);
// beta_hat(i)  = prod_{g < u < terminal} eps_u for letters, 0 for group
// blanks, and 1 for the terminal blank.
std::pair<std::vector<double>, std::vector<double>> initial_vectors(
    const TranscriptionConfusionModel &tcm);

// build_tcm() then compile().
CompiledTarget compile_cn(const ConfusionNetwork &cn, Symbol blank);

// Encodes an n-best list as parallel CTC chains between a shared initial
// and a shared final blank. Weights are normalized to sum to one and
// placed on the edges leaving the initial blank and on alpha_hat of each
// chain's first letter. Any chain end (or the shared final blank) is
// final with weight 1; an empty variant makes the initial blank final with
// its weight.
CompiledTarget compile_nbest(const NBestList &nbest, Symbol blank);

}  // namespace softctc

#endif  // SOFTCTC_TARGET_COMPILER_H_
