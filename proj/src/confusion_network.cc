// src/confusion_network.cc

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

#include "softctc/confusion_network.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace softctc {

namespace {

using Kind = ValidationError::Kind;

// Token used for positions of a best path that are won by null.
constexpr Symbol kNullToken = -1;

// Best-path tokens of every set, kNullToken where null wins.
std::vector<Symbol> set_winners(const ConfusionNetwork &cn) {
  std::vector<Symbol> out;
  out.reserve(cn.sets.size());
  for (const auto &set : cn.sets) {
    Symbol best = kNullToken;
    double best_score = -1.0;
    for (const auto &[sym, score] : set.alternatives) {
      if (score > best_score) {
        best = sym;
        best_score = score;
      }
    }
    if (set.null_prob > best_score) best = kNullToken;
    out.push_back(best);
  }
  return out;
}

// Edit distance over token sequences where kNullToken may be deleted or
// inserted for free and costs 1 to pair with a real symbol. Traced from the
// front so that ties prefer match > substitute > delete > insert at the
// earliest position.
std::vector<EditOp> align_tokens(const std::vector<Symbol> &a,
                                 const std::vector<Symbol> &b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  auto gap = [](Symbol s) { return s == kNullToken ? 0 : 1; };
  auto pair = [](Symbol x, Symbol y) { return x == y ? 0 : 1; };

  // cost[i][j]: cost of aligning a[i..] with b[j..].
  std::vector<int> cost(static_cast<size_t>(n + 1) * (m + 1), 0);
  auto at = [&](int i, int j) -> int & {
    return cost[static_cast<size_t>(i) * (m + 1) + j];
  };
  for (int i = n - 1; i >= 0; --i) at(i, m) = at(i + 1, m) + gap(a[i]);
  for (int j = m - 1; j >= 0; --j) at(n, j) = at(n, j + 1) + gap(b[j]);
  for (int i = n - 1; i >= 0; --i)
    for (int j = m - 1; j >= 0; --j)
      at(i, j) = std::min({at(i + 1, j + 1) + pair(a[i], b[j]),
                           at(i + 1, j) + gap(a[i]), at(i, j + 1) + gap(b[j])});

  std::vector<EditOp> ops;
  int i = 0, j = 0;
  while (i < n || j < m) {
    const int here = at(i, j);
    if (i < n && j < m && here == at(i + 1, j + 1) + pair(a[i], b[j])) {
      ops.push_back({a[i] == b[j] ? EditKind::kMatch : EditKind::kSubstitute,
                     i, j});
      ++i;
      ++j;
    } else if (i < n && here == at(i + 1, j) + gap(a[i])) {
      ops.push_back({EditKind::kDelete, i, -1});
      ++i;
    } else {
      ops.push_back({EditKind::kInsert, -1, j});
      ++j;
    }
  }
  return ops;
}

void add_scores(ConfusionSet *into, const ConfusionSet &from) {
  for (const auto &[sym, score] : from.alternatives)
    into->alternatives[sym] += score;
  into->null_prob += from.null_prob;
}

void require_normalized(const ConfusionNetwork &cn, const char *op) {
  if (!cn.normalized)
    throw ValidationError(Kind::kInvalidConfusionNetwork,
                          std::string(op) + " needs a normalized network");
}

// Renormalizes one set in place; no-op on an empty set.
void renormalize(ConfusionSet *set) {
  double total = set->total();
  if (!(total > 0.0)) return;
  for (auto &[sym, p] : set->alternatives) p /= total;
  set->null_prob /= total;
}

}  // namespace

double ConfusionSet::total() const {
  double t = null_prob;
  for (const auto &[sym, score] : alternatives) t += score;
  return t;
}

int ConfusionSet::size() const {
  return static_cast<int>(alternatives.size()) + (has_null() ? 1 : 0);
}

void require_valid_cn(const ConfusionNetwork &cn, const Vocabulary &v) {
  for (size_t i = 0; i < cn.sets.size(); ++i) {
    const auto &set = cn.sets[i];
    const std::string where = "confusion set " + std::to_string(i);
    if (set.alternatives.empty())
      throw ValidationError(Kind::kInvalidConfusionNetwork,
                            where + " has no alternatives");
    if (!(set.null_prob >= 0.0))
      throw ValidationError(Kind::kInvalidConfusionNetwork,
                            where + " has a negative null score");
    for (const auto &[sym, score] : set.alternatives) {
      if (sym < 0 || sym >= v.size())
        throw ValidationError(Kind::kInvalidConfusionNetwork,
                              where + " has an out-of-range symbol", -1, sym);
      if (sym == v.blank())
        throw ValidationError(Kind::kInvalidConfusionNetwork,
                              where + " contains the blank symbol", -1, sym);
      if (!(score >= 0.0))
        throw ValidationError(Kind::kInvalidConfusionNetwork,
                              where + " has a negative score", -1, sym);
    }
    if (cn.normalized && std::abs(set.total() - 1.0) > 1e-9)
      throw ValidationError(Kind::kInvalidConfusionNetwork,
                            where + " does not sum to one");
  }
}

ConfusionNetwork linear_cn(const Labeling &l, double score) {
  ConfusionNetwork cn;
  cn.mass = score;
  for (Symbol s : l) {
    ConfusionSet set;
    set.alternatives[s] = score;
    cn.sets.push_back(std::move(set));
  }
  return cn;
}

ConfusionNetwork normalize(ConfusionNetwork cn) {
  std::erase_if(cn.sets, [](ConfusionSet &set) {
    std::erase_if(set.alternatives, [](const auto &kv) { return kv.second <= 0.0; });
    return set.alternatives.empty();
  });
  for (auto &set : cn.sets) renormalize(&set);
  cn.normalized = true;
  cn.mass = 1.0;
  return cn;
}

std::vector<EditOp> levenshtein_align(const Labeling &pivot,
                                      const Labeling &hyp) {
  return align_tokens(pivot, hyp);
}

Labeling best_path(const ConfusionNetwork &cn) {
  Labeling out;
  for (Symbol s : set_winners(cn))
    if (s != kNullToken) out.push_back(s);
  return out;
}

ConfusionNetwork merge_pair(const ConfusionNetwork &a,
                            const ConfusionNetwork &b) {
  const auto ops = align_tokens(set_winners(a), set_winners(b));
  ConfusionNetwork out;
  out.mass = a.mass + b.mass;
  out.sets.reserve(ops.size());
  for (const auto &op : ops) {
    ConfusionSet set;
    if (op.pivot_index >= 0) add_scores(&set, a.sets[op.pivot_index]);
    else set.null_prob += a.mass;
    if (op.hyp_index >= 0) add_scores(&set, b.sets[op.hyp_index]);
    else set.null_prob += b.mass;
    out.sets.push_back(std::move(set));
  }
  return out;
}

ConfusionNetwork accumulate_cn(const NBestList &nbest) {
  if (nbest.empty())
    throw ValidationError(Kind::kInvalidNBest, "n-best list is empty");
  std::vector<const NBestEntry *> order;
  for (const auto &e : nbest) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const NBestEntry *x, const NBestEntry *y) {
                     if (x->weight != y->weight) return x->weight > y->weight;
                     return x->labeling < y->labeling;
                   });

  ConfusionNetwork cn = linear_cn(order.front()->labeling,
                                  order.front()->weight);
  for (size_t i = 1; i < order.size(); ++i)
    cn = merge_pair(cn, linear_cn(order[i]->labeling, order[i]->weight));
  return cn;
}

ConfusionNetwork build_cn(const NBestList &nbest) {
  return normalize(accumulate_cn(nbest));
}

ConfusionNetwork merge_cns(const std::vector<ConfusionNetwork> &cns) {
  if (cns.empty())
    throw ValidationError(Kind::kInvalidConfusionNetwork,
                          "nothing to merge");
  ConfusionNetwork acc = cns.front();
  for (size_t i = 1; i < cns.size(); ++i) acc = merge_pair(acc, cns[i]);
  return normalize(std::move(acc));
}

ConfusionNetwork smooth(const ConfusionNetwork &cn, double root) {
  require_normalized(cn, "smoothing");
  if (!(root >= 1.0))
    throw ValidationError(Kind::kInvalidConfig,
                          "smoothing root must be >= 1 or infinite");
  if (root == 1.0) return cn;
  ConfusionNetwork out = cn;
  for (auto &set : out.sets) {
    if (std::isinf(root)) {
      for (auto &[sym, p] : set.alternatives) p = 1.0;
      if (set.has_null()) set.null_prob = 1.0;
    } else {
      const double e = 1.0 / root;
      for (auto &[sym, p] : set.alternatives) p = std::pow(p, e);
      set.null_prob = std::pow(set.null_prob, e);
    }
    renormalize(&set);
  }
  return out;
}

ConfusionNetwork prune(const ConfusionNetwork &cn, double cutoff) {
  require_normalized(cn, "pruning");
  if (!(cutoff >= 0.0 && cutoff < 1.0))
    throw ValidationError(Kind::kInvalidConfig,
                          "prune cutoff must lie in [0, 1)");
  ConfusionNetwork out = cn;
  for (auto &set : out.sets) {
    if (set.alternatives.empty()) continue;
    auto best = std::max_element(
        set.alternatives.begin(), set.alternatives.end(),
        [](const auto &x, const auto &y) { return x.second < y.second; });
    const auto kept = *best;
    const auto removed = std::erase_if(
        set.alternatives, [cutoff](const auto &kv) { return kv.second <= cutoff; });
    if (removed == 0) continue;
    if (set.alternatives.empty()) set.alternatives.insert(kept);
    renormalize(&set);
  }
  return out;
}

ConfusionNetwork prepare_target(const ConfusionNetwork &cn, double cutoff,
                                double root) {
  return smooth(prune(cn, cutoff), root);
}

double outlier_metric(const ConfusionNetwork &cn) {
  if (cn.sets.empty()) return 0.0;
  double product = 1.0;
  for (const auto &set : cn.sets) product *= set.size();
  return product / static_cast<double>(cn.sets.size());
}

boost::multiprecision::cpp_int count_variant_paths(const ConfusionNetwork &cn) {
  boost::multiprecision::cpp_int n = 1;
  for (const auto &set : cn.sets) n *= set.size();
  return n;
}

}  // namespace softctc
