// src/compiled_target.cc

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

#include "softctc/compiled_target.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace softctc {

SparseTransitions::SparseTransitions(int num_states,
                                     std::vector<Transition> entries)
    : num_states_(num_states) {
  for (const auto &e : entries)
    if (e.from < 0 || e.from >= num_states || e.to < 0 || e.to >= num_states)
      throw ValidationError(ValidationError::Kind::kShapeMismatch,
                            "transition endpoint out of range");

  std::sort(entries.begin(), entries.end(),
            [](const Transition &a, const Transition &b) {
              return a.from != b.from ? a.from < b.from : a.to < b.to;
            });
  std::vector<Transition> merged;
  merged.reserve(entries.size());
  for (const auto &e : entries) {
    if (!merged.empty() && merged.back().from == e.from &&
        merged.back().to == e.to)
      merged.back().weight += e.weight;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Transition &e) { return e.weight == 0.0; });

  out_offsets_.assign(num_states + 1, 0);
  in_offsets_.assign(num_states + 1, 0);
  for (const auto &e : merged) {
    ++out_offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  for (int i = 0; i < num_states; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_to_.resize(merged.size());
  out_w_.resize(merged.size());
  in_from_.resize(merged.size());
  in_w_.resize(merged.size());
  std::vector<int> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // `merged` is row-major, so both fills come out sorted.
  for (size_t n = 0; n < merged.size(); ++n) {
    const auto &e = merged[n];
    out_to_[n] = e.to;
    out_w_[n] = e.weight;
    int slot = in_fill[e.to]++;
    in_from_[slot] = e.from;
    in_w_[slot] = e.weight;
  }
}

double SparseTransitions::at(int i, int j) const {
  auto targets = out_targets(i);
  auto it = std::lower_bound(targets.begin(), targets.end(), j);
  if (it == targets.end() || *it != j) return 0.0;
  return out_weights(i)[it - targets.begin()];
}

std::vector<Transition> SparseTransitions::entries() const {
  std::vector<Transition> out;
  out.reserve(num_nonzeros());
  for (int i = 0; i < num_states_; ++i) {
    auto targets = out_targets(i);
    auto weights = out_weights(i);
    for (size_t n = 0; n < targets.size(); ++n)
      out.push_back({i, targets[n], weights[n]});
  }
  return out;
}

bool SparseTransitions::is_upper_triangular() const {
  for (int i = 0; i < num_states_; ++i)
    for (int j : out_targets(i))
      if (j < i) return false;
  return true;
}

void check_target(const CompiledTarget &target, int num_symbols) {
  const size_t s = target.state_symbols.size();
  if (target.alpha_hat.size() != s || target.beta_hat.size() != s ||
      target.transitions.num_states() != static_cast<int>(s))
    throw ValidationError(ValidationError::Kind::kShapeMismatch,
                          "compiled target vectors disagree in size");
  for (Symbol x : target.state_symbols)
    if (x < 0 || x >= num_symbols)
      throw ValidationError(ValidationError::Kind::kShapeMismatch,
                            "target state symbol outside the posterior columns",
                            -1, x);
}

std::string dump_target(const CompiledTarget &target, const Vocabulary &v) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "states " << target.num_states() << "\n";
  for (int i = 0; i < target.num_states(); ++i) {
    Symbol x = target.state_symbols[i];
    os << "state " << i << " group "
       << (target.state_group.empty() ? -1 : target.state_group[i]) << " "
       << (x == v.blank() ? "blank" : "letter") << " "
       << (x == v.blank() ? std::string("<blank>") : v.symbol(x))
       << " alpha_hat " << target.alpha_hat[i] << " beta_hat "
       << target.beta_hat[i] << "\n";
  }
  os << "transitions " << target.transitions.num_nonzeros() << "\n";
  for (const auto &e : target.transitions.entries())
    os << e.from << " " << e.to << " " << e.weight << "\n";
  return os.str();
}

}  // namespace softctc
