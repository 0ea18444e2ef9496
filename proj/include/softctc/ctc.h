// softctc/ctc.h

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

#ifndef SOFTCTC_CTC_H_
#define SOFTCTC_CTC_H_

#include "softctc/compiled_target.h"
#include "softctc/forward_backward.h"
#include "softctc/types.h"

namespace softctc {

// The CTC automaton of one labeling: 2|l|+1 states alternating blank and
// letter, starting and ending with a blank. A has unit self-loops, unit
// edges to the next state, and unit letter->letter skips over a blank when
// the two letters differ. alpha_hat marks the first blank and first letter,
// beta_hat the last letter and last blank.
CompiledTarget build_linear_transition_matrix(const Labeling &l, Symbol blank);

// Vanilla CTC: -log p(l | y) and its gradient w.r.t. y.
// Throws InfeasibleError when no path of length T collapses to l.
LossResult ctc_forward_backward(const PosteriorMatrix &y, const Labeling &l,
                                const Vocabulary &v);

// Same, reusing a caller-owned workspace (left holding this instance's
// forward and backward variables).
LossResult ctc_forward_backward(const PosteriorMatrix &y, const Labeling &l,
                                const Vocabulary &v,
                                ForwardBackwardWorkspace *ws);

// -log sum_i w_i p(l_i | y) evaluated one variant at a time. Infeasible
// variants contribute zero; throws InfeasibleError only if all are.
LossResult multi_ctc(const PosteriorMatrix &y, const NBestList &nbest,
                     const Vocabulary &v);

}  // namespace softctc

#endif  // SOFTCTC_CTC_H_
