// softctc/compiled_target.h

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

#ifndef SOFTCTC_COMPILED_TARGET_H_
#define SOFTCTC_COMPILED_TARGET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "softctc/types.h"

namespace softctc {

struct Transition {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Square sparse weight matrix stored twice: by row (outgoing edges, used by
// the backward pass) and by column (incoming edges, used by the forward
// pass). Within a row columns are ascending, within a column rows are
// ascending. Zero weights are dropped on construction.
class SparseTransitions {
 public:
  SparseTransitions() = default;
  // Duplicate (from, to) pairs are summed.
  SparseTransitions(int num_states, std::vector<Transition> entries);

  int num_states() const { return num_states_; }
  size_t num_nonzeros() const { return out_to_.size(); }

  std::span<const int> out_targets(int i) const {
    return {out_to_.data() + out_offsets_[i],
            out_to_.data() + out_offsets_[i + 1]};
  }
  std::span<const double> out_weights(int i) const {
    return {out_w_.data() + out_offsets_[i], out_w_.data() + out_offsets_[i + 1]};
  }
  std::span<const int> in_sources(int j) const {
    return {in_from_.data() + in_offsets_[j],
            in_from_.data() + in_offsets_[j + 1]};
  }
  std::span<const double> in_weights(int j) const {
    return {in_w_.data() + in_offsets_[j], in_w_.data() + in_offsets_[j + 1]};
  }

  // Weight of (i, j), 0 if absent.
  double at(int i, int j) const;

  // All nonzero entries in row-major order.
  std::vector<Transition> entries() const;

  bool is_upper_triangular() const;

 private:
  int num_states_ = 0;
  std::vector<int> out_offsets_{0}, out_to_;
  std::vector<double> out_w_;
  std::vector<int> in_offsets_{0}, in_from_;
  std::vector<double> in_w_;
};

enum class StateRole : uint8_t { kBlank, kLetter };

// Executable form of a training target: the transition weights A, the
// symbol emitted by each state and the initial / final weight vectors.
// Initial forward variables are alpha_hat * y_1, final backward variables
// beta_hat * y_T.
struct CompiledTarget {
  SparseTransitions transitions;
  std::vector<Symbol> state_symbols;
  std::vector<double> alpha_hat;
  std::vector<double> beta_hat;
  // Which group (confusion set, n-best chain...) each state belongs to.
  std::vector<int> state_group;
  std::vector<StateRole> state_roles;

  int num_states() const { return static_cast<int>(state_symbols.size()); }
};

// Throws ValidationError(kShapeMismatch) when the vectors disagree in size
// or a state symbol does not index a column of a `num_symbols` wide matrix.
void check_target(const CompiledTarget &target, int num_symbols);

// Human-readable listing of states, initial/final weights and nonzero
// transitions. Deterministic; used for golden comparisons.
std::string dump_target(const CompiledTarget &target, const Vocabulary &v);

}  // namespace softctc

#endif  // SOFTCTC_COMPILED_TARGET_H_
