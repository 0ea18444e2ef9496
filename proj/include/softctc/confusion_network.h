// softctc/confusion_network.h

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

// Character-level confusion networks: construction from n-best lists,
// merging, smoothing, pruning and size statistics.

#ifndef SOFTCTC_CONFUSION_NETWORK_H_
#define SOFTCTC_CONFUSION_NETWORK_H_

#include <limits>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "softctc/types.h"

namespace softctc {

inline constexpr double kDefaultPruneCutoff = 0.01;
inline constexpr double kInfiniteRoot = std::numeric_limits<double>::infinity();

// One position of a confusion network. Scores are either raw accumulated
// hypothesis weights or, once the owning network is normalized,
// probabilities summing to one together with null_prob.
struct ConfusionSet {
  std::map<Symbol, double> alternatives;
  double null_prob = 0.0;

  double total() const;
  // Number of alternatives, null included when present.
  int size() const;
  bool has_null() const { return null_prob > 0.0; }

  bool operator==(const ConfusionSet &) const = default;
};

struct ConfusionNetwork {
  std::vector<ConfusionSet> sets;
  bool normalized = false;
  // Total hypothesis weight folded into a raw network; every set of a raw
  // network sums to it. 1 once normalized.
  double mass = 0.0;

  bool operator==(const ConfusionNetwork &) const = default;
};

// Throws ValidationError(kInvalidConfusionNetwork) if a set holds the
// blank, an out-of-range symbol, a negative score, or no alternatives;
// or, for normalized networks, if a set does not sum to one within 1e-9.
void require_valid_cn(const ConfusionNetwork &cn, const Vocabulary &v);

// Single-path network: one singleton set per symbol, each scored `score`.
ConfusionNetwork linear_cn(const Labeling &l, double score);

// Divides every set by its total. Sets left without alternatives are
// dropped.
ConfusionNetwork normalize(ConfusionNetwork cn);

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

// One step of an alignment. Delete consumes a pivot symbol only, insert a
// hypothesis symbol only; the unused index is -1.
struct EditOp {
  EditKind kind;
  int pivot_index = -1;
  int hyp_index = -1;

  bool operator==(const EditOp &) const = default;
};

// Minimum edit distance alignment. Among optimal alignments the earliest
// differing step prefers match, then substitution, then deletion, then
// insertion.
std::vector<EditOp> levenshtein_align(const Labeling &pivot,
                                      const Labeling &hyp);

// Per set, the highest scoring alternative; sets won by null contribute
// nothing. A tie between null and a symbol goes to the symbol, ties among
// symbols to the lowest one.
Labeling best_path(const ConfusionNetwork &cn);

// Listing 1 without the final normalization: sort by descending weight,
// seed a linear network with the best hypothesis, then fold in each
// further hypothesis aligned against the current best path.
ConfusionNetwork accumulate_cn(const NBestList &nbest);

// accumulate_cn() followed by normalize().
ConfusionNetwork build_cn(const NBestList &nbest);

// Folds raw network `b` into raw network `a`. The best paths of both
// (including the positions won by null, which are free to delete) are
// aligned; paired sets add their scores, and a set without a partner gets
// the other network's whole mass as null. The result is raw.
ConfusionNetwork merge_pair(const ConfusionNetwork &a,
                            const ConfusionNetwork &b);

// Left fold of merge_pair() over raw networks, normalized once at the end.
ConfusionNetwork merge_cns(const std::vector<ConfusionNetwork> &cns);

// Replaces every probability (null included) by its n-th root and
// renormalizes; root == kInfiniteRoot gives uniform sets. Requires a
// normalized network and root >= 1.
ConfusionNetwork smooth(const ConfusionNetwork &cn, double root);

// Drops alternatives with probability <= cutoff and renormalizes. Null is
// never dropped; a set losing every alternative keeps its best one.
ConfusionNetwork prune(const ConfusionNetwork &cn,
                       double cutoff = kDefaultPruneCutoff);

// The training-target pipeline: prune first, then smooth.
ConfusionNetwork prepare_target(const ConfusionNetwork &cn,
                                double cutoff = kDefaultPruneCutoff,
                                double root = 1.0);

// (product of set sizes) / (number of sets), null counted as an
// alternative. 0 for a network without sets.
double outlier_metric(const ConfusionNetwork &cn);

// Product of set sizes, null counted as an alternative.
boost::multiprecision::cpp_int count_variant_paths(const ConfusionNetwork &cn);

}  // namespace softctc

#endif  // SOFTCTC_CONFUSION_NETWORK_H_
