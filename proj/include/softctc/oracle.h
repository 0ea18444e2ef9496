// softctc/oracle.h

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

// Brute-force references for testing. Nothing here depends on the
// forward-backward code, the target compiler or the decoder; only the core
// types and the confusion network data model are shared.

#ifndef SOFTCTC_ORACLE_H_
#define SOFTCTC_ORACLE_H_

#include <functional>
#include <map>
#include <vector>

#include "softctc/confusion_network.h"
#include "softctc/types.h"

namespace softctc::oracle {

inline constexpr double kMaxCtcPaths = 1e7;
inline constexpr double kMaxCnPaths = 1e6;

// Neumaier-compensated running sum.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// p(l | y): sum over all |V|^T frame paths collapsing to l of the product
// of their entries. Throws TooLargeError past kMaxCtcPaths paths.
double enumerate_ctc(const PosteriorMatrix &y, const Labeling &l, Symbol blank);

// The whole distribution over collapsed labelings in one enumeration.
std::map<Labeling, double> enumerate_ctc_distribution(const PosteriorMatrix &y,
                                                      Symbol blank);

struct WeightedString {
  Labeling labeling;
  double weight = 0.0;
};

struct CnStrings {
  // One entry per combination of per-set choices, in lexicographic choice
  // order (null first in each set).
  std::vector<WeightedString> paths;
  // Same strings with duplicates merged, sorted by labeling.
  std::vector<WeightedString> distinct;
};

// Throws TooLargeError past kMaxCnPaths combinations.
CnStrings enumerate_cn_strings(const ConfusionNetwork &cn);

// sum over CN paths of path weight * p(string | y).
double oracle_softctc(const PosteriorMatrix &y, const ConfusionNetwork &cn,
                      Symbol blank);

// Central differences (f(y + h e) - f(y - h e)) / 2h for every entry of y.
// Entries are perturbed in place with no renormalization. `step` must lie
// in [1e-8, 1e-4].
std::vector<double> finite_difference_grad(
    const std::function<double(const PosteriorMatrix &)> &f,
    const PosteriorMatrix &y, double step);

}  // namespace softctc::oracle

#endif  // SOFTCTC_ORACLE_H_
