// src/oracle.cc

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

#include "softctc/oracle.h"

#include <cmath>

namespace softctc::oracle {

namespace {

// Calls visit(path, probability) for every frame path of y.
template <typename Visit>
void for_each_path(const PosteriorMatrix &y, Visit &&visit) {
  const int T = y.num_frames();
  const int K = y.num_symbols();
  if (std::pow(static_cast<double>(K), T) > kMaxCtcPaths)
    throw TooLargeError("path enumeration over budget: |V|^T = " +
                        std::to_string(K) + "^" + std::to_string(T));
  std::vector<Symbol> path(T, 0);
  while (true) {
    double p = 1.0;
    for (int t = 0; t < T; ++t) p *= y(t, path[t]);
    visit(path, p);
    int t = T - 1;
    while (t >= 0 && ++path[t] == K) path[t--] = 0;
    if (t < 0) break;
  }
}

}  // namespace

void KahanSum::add(double x) {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

double enumerate_ctc(const PosteriorMatrix &y, const Labeling &l,
                     Symbol blank) {
  KahanSum total;
  for_each_path(y, [&](const std::vector<Symbol> &path, double p) {
    if (collapse_path(path, blank) == l) total.add(p);
  });
  return total.value();
}

std::map<Labeling, double> enumerate_ctc_distribution(const PosteriorMatrix &y,
                                                      Symbol blank) {
  std::map<Labeling, KahanSum> acc;
  for_each_path(y, [&](const std::vector<Symbol> &path, double p) {
    acc[collapse_path(path, blank)].add(p);
  });
  std::map<Labeling, double> out;
  for (const auto &[l, s] : acc) out[l] = s.value();
  return out;
}

CnStrings enumerate_cn_strings(const ConfusionNetwork &cn) {
  double combos = 1.0;
  for (const auto &set : cn.sets) combos *= set.size();
  if (combos > kMaxCnPaths)
    throw TooLargeError("confusion network has too many paths to enumerate");

  // Per set: (symbol or -1 for null, score).
  std::vector<std::vector<std::pair<Symbol, double>>> choices;
  for (const auto &set : cn.sets) {
    std::vector<std::pair<Symbol, double>> c;
    if (set.has_null()) c.push_back({-1, set.null_prob});
    for (const auto &[sym, p] : set.alternatives) c.push_back({sym, p});
    choices.push_back(std::move(c));
  }

  CnStrings out;
  std::vector<size_t> pick(choices.size(), 0);
  while (true) {
    WeightedString ws{{}, 1.0};
    for (size_t i = 0; i < choices.size(); ++i) {
      const auto &[sym, p] = choices[i][pick[i]];
      ws.weight *= p;
      if (sym >= 0) ws.labeling.push_back(sym);
    }
    out.paths.push_back(std::move(ws));
    int i = static_cast<int>(choices.size()) - 1;
    while (i >= 0 && ++pick[i] == choices[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }

  std::map<Labeling, KahanSum> merged;
  for (const auto &p : out.paths) merged[p.labeling].add(p.weight);
  for (const auto &[l, s] : merged) out.distinct.push_back({l, s.value()});
  return out;
}

double oracle_softctc(const PosteriorMatrix &y, const ConfusionNetwork &cn,
                      Symbol blank) {
  const CnStrings strings = enumerate_cn_strings(cn);
  const auto dist = enumerate_ctc_distribution(y, blank);
  KahanSum total;
  for (const auto &p : strings.paths) {
    auto it = dist.find(p.labeling);
    if (it != dist.end()) total.add(p.weight * it->second);
  }
  return total.value();
}

std::vector<double> finite_difference_grad(
    const std::function<double(const PosteriorMatrix &)> &f,
    const PosteriorMatrix &y, double step) {
  if (!(step >= 1e-8 && step <= 1e-4))
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "finite-difference step must lie in [1e-8, 1e-4]");
  std::vector<double> values = y.values();
  std::vector<double> grad(values.size());
  for (size_t n = 0; n < values.size(); ++n) {
    const double saved = values[n];
    values[n] = saved + step;
    const double up = f(PosteriorMatrix(y.num_frames(), y.num_symbols(), values));
    values[n] = saved - step;
    const double down =
        f(PosteriorMatrix(y.num_frames(), y.num_symbols(), values));
    values[n] = saved;
    grad[n] = (up - down) / (2.0 * step);
  }
  return grad;
}

}  // namespace softctc::oracle
