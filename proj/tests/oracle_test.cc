// tests/oracle_test.cc

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

#include <gtest/gtest.h>

#include "softctc/oracle.h"
#include "test_util.h"

namespace softctc::oracle {
namespace {

TEST(EnumerateCtc, TwoFrameExample) {
  // V = {a, #}.
  PosteriorMatrix y({{0.6, 0.4}, {0.5, 0.5}});
  EXPECT_NEAR(enumerate_ctc(y, {0}, 1), 0.8, 1e-15);
  EXPECT_NEAR(enumerate_ctc(y, {}, 1), 0.2, 1e-15);
  EXPECT_EQ(enumerate_ctc(y, {0, 0, 0}, 1), 0.0);
}

TEST(EnumerateCtc, UniformSingleFrame) {
  EXPECT_DOUBLE_EQ(enumerate_ctc(PosteriorMatrix({{0.5, 0.5}}), {}, 0), 0.5);
}

TEST(EnumerateCtc, DistributionSumsToOne) {
  std::mt19937_64 rng(103);
  auto y = testing::random_posteriors(5, 4, rng);
  double total = 0.0;
  auto dist = enumerate_ctc_distribution(y, 0);
  for (const auto &[l, p] : dist) {
    total += p;
    EXPECT_NEAR(p, enumerate_ctc(y, l, 0), 1e-15);
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(EnumerateCtc, GuardsSize) {
  std::mt19937_64 rng(107);
  auto y = testing::random_posteriors(12, 5, rng);  // 5^12 > 1e7
  EXPECT_THROW(enumerate_ctc(y, {1}, 0), TooLargeError);
}

TEST(EnumerateCnStrings, SingletonNetwork) {
  ConfusionNetwork cn;
  cn.normalized = true;
  cn.mass = 1.0;
  cn.sets.resize(2);
  cn.sets[0].alternatives = {{1, 1.0}};
  cn.sets[1].alternatives = {{2, 1.0}};
  auto s = enumerate_cn_strings(cn);
  ASSERT_EQ(s.distinct.size(), 1u);
  EXPECT_EQ(s.distinct[0].labeling, (Labeling{1, 2}));
  EXPECT_EQ(s.distinct[0].weight, 1.0);
}

TEST(EnumerateCnStrings, PathsAndDistinct) {
  // {a:0.5, null:0.5} twice: "a" is reached by two of the four paths.
  ConfusionNetwork cn;
  cn.normalized = true;
  cn.mass = 1.0;
  cn.sets.resize(2);
  for (auto &set : cn.sets) {
    set.alternatives = {{1, 0.5}};
    set.null_prob = 0.5;
  }
  auto s = enumerate_cn_strings(cn);
  ASSERT_EQ(s.paths.size(), 4u);
  EXPECT_TRUE(s.paths[0].labeling.empty());
  ASSERT_EQ(s.distinct.size(), 3u);
  EXPECT_EQ(s.distinct[1].labeling, (Labeling{1}));
  EXPECT_DOUBLE_EQ(s.distinct[1].weight, 0.5);
}

TEST(OracleSoftCtc, NBestExample) {
  ConfusionNetwork cn;
  cn.normalized = true;
  cn.mass = 1.0;
  cn.sets.resize(1);
  cn.sets[0].alternatives = {{0, 0.6}, {1, 0.4}};
  EXPECT_NEAR(oracle_softctc(PosteriorMatrix({{0.5, 0.3, 0.2}}), cn, 2), 0.42,
              1e-15);
}

TEST(FiniteDifference, QuadraticIsExact) {
  PosteriorMatrix y({{0.2, 0.8}, {0.4, 0.6}});
  auto g = finite_difference_grad(
      [](const PosteriorMatrix &p) {
        double s = 0.0;
        for (double x : p.values()) s += 3.0 * x * x;
        return s;
      },
      y, 1e-5);
  for (size_t n = 0; n < g.size(); ++n)
    EXPECT_NEAR(g[n], 6.0 * y.values()[n], 1e-9);
  EXPECT_THROW(finite_difference_grad([](const PosteriorMatrix &) { return 0.0; },
                                      y, 1e-3),
               ValidationError);
}

TEST(KahanSum, RecoversSmallTerms) {
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}

}  // namespace
}  // namespace softctc::oracle
