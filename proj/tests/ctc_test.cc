// tests/ctc_test.cc

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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "softctc/ctc.h"
#include "softctc/oracle.h"
#include "softctc/soft_ctc.h"
#include "test_util.h"

namespace softctc {
namespace {

using testing::grad_close;
using testing::letters_vocab;
using testing::random_labeling;
using testing::random_posteriors;
using testing::rel_err;

TEST(LinearTransitionMatrix, CatHasSevenStatesAndSkips) {
  Vocabulary v({"#", "C", "A", "T"}, 0);
  auto target = build_linear_transition_matrix(v.parse("CAT"), v.blank());
  ASSERT_EQ(target.num_states(), 7);
  EXPECT_EQ(target.state_symbols, (std::vector<Symbol>{0, 1, 0, 2, 0, 3, 0}));
  EXPECT_TRUE(target.transitions.is_upper_triangular());
  // Skip edges C->A and A->T.
  EXPECT_EQ(target.transitions.at(1, 3), 1.0);
  EXPECT_EQ(target.transitions.at(3, 5), 1.0);
  // No blank->blank skip.
  EXPECT_EQ(target.transitions.at(0, 2), 0.0);
  // Exactly two initial and two final states.
  EXPECT_EQ(target.alpha_hat, (std::vector<double>{1, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(target.beta_hat, (std::vector<double>{0, 0, 0, 0, 0, 1, 1}));
  for (int s = 0; s < 7; ++s) EXPECT_EQ(target.transitions.at(s, s), 1.0);
  // diagonal + 6 next-state edges + 2 skips
  EXPECT_EQ(target.transitions.num_nonzeros(), 15u);
}

TEST(LinearTransitionMatrix, RepeatedLetterHasNoSkip) {
  auto target = build_linear_transition_matrix({1, 1}, 0);
  ASSERT_EQ(target.num_states(), 5);
  EXPECT_EQ(target.transitions.at(1, 3), 0.0);
  EXPECT_EQ(target.transitions.at(1, 2), 1.0);
}

TEST(LinearTransitionMatrix, EmptyLabelingIsSingleBlank) {
  auto target = build_linear_transition_matrix({}, 0);
  ASSERT_EQ(target.num_states(), 1);
  EXPECT_EQ(target.transitions.entries().size(), 1u);
  EXPECT_EQ(target.transitions.at(0, 0), 1.0);
  EXPECT_EQ(target.alpha_hat[0], 1.0);
  EXPECT_EQ(target.beta_hat[0], 1.0);
}

TEST(CtcForwardBackward, SingleFrameSinglePath) {
  Vocabulary v({"a", "#"}, 1);
  auto r = ctc_forward_backward(PosteriorMatrix({{0.7, 0.3}}), {0}, v);
  EXPECT_NEAR(r.loss, -std::log(0.7), 1e-15);
  EXPECT_NEAR(r.log_likelihood, std::log(0.7), 1e-15);
}

TEST(CtcForwardBackward, TwoFrameEnumeration) {
  // Paths collapsing to "a": aa, a#, #a -> 0.6*0.5 + 0.6*0.5 + 0.4*0.5.
  Vocabulary v({"a", "#"}, 1);
  PosteriorMatrix y({{0.6, 0.4}, {0.5, 0.5}});
  auto r = ctc_forward_backward(y, {0}, v);
  EXPECT_NEAR(std::exp(-r.loss), 0.8, 1e-15);
  EXPECT_NEAR(oracle::enumerate_ctc(y, {0}, v.blank()), 0.8, 1e-15);
}

TEST(CtcForwardBackward, InfeasibleWhenTooShort) {
  auto v = letters_vocab(3);
  PosteriorMatrix y({{0.3, 0.3, 0.4}, {0.3, 0.3, 0.4}});
  // "aa" needs three frames.
  EXPECT_THROW(ctc_forward_backward(y, {1, 1}, v), InfeasibleError);
  EXPECT_THROW(ctc_forward_backward(y, {1, 2, 1}, v), InfeasibleError);
  EXPECT_NO_THROW(ctc_forward_backward(y, {1, 2}, v));
}

TEST(CtcForwardBackward, InfeasibleWhenRequiredSymbolHasZeroMass) {
  auto v = letters_vocab(3);
  PosteriorMatrix y({{0.5, 0.0, 0.5}, {0.5, 0.0, 0.5}});
  EXPECT_THROW(ctc_forward_backward(y, {1}, v), InfeasibleError);
}

TEST(CtcForwardBackward, RejectsBlankInLabeling) {
  auto v = letters_vocab(3);
  PosteriorMatrix y({{0.3, 0.3, 0.4}});
  EXPECT_THROW(ctc_forward_backward(y, {0}, v), ValidationError);
}

TEST(CtcForwardBackward, MatchesEnumerationOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int V = 2 + trial % 3;
    const int T = 1 + trial % 6;
    auto v = letters_vocab(V);
    auto y = random_posteriors(T, V, rng);
    auto l = random_labeling(3, V, rng);
    const double expect = oracle::enumerate_ctc(y, l, v.blank());
    if (expect == 0.0) {
      EXPECT_THROW(ctc_forward_backward(y, l, v), InfeasibleError);
      continue;
    }
    auto r = ctc_forward_backward(y, l, v);
    EXPECT_LT(rel_err(std::exp(r.log_likelihood), expect), 1e-9)
        << "trial " << trial;
  }
}

TEST(CtcForwardBackward, StatePosteriorSumIsFrameInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto v = letters_vocab(5);
    auto y = random_posteriors(30, 5, rng);
    auto l = random_labeling(10, 5, rng);
    auto target = build_linear_transition_matrix(l, v.blank());
    ForwardBackwardWorkspace ws;
    forward_backward(y, target, &ws);
    for (int t = 0; t < y.num_frames(); ++t)
      EXPECT_LT(rel_err(log_state_posterior_sum(y, target, ws, t),
                        ws.log_likelihood),
                1e-10);
  }
}

TEST(CtcForwardBackward, LongLineDoesNotUnderflow) {
  std::mt19937_64 rng(3);
  auto v = letters_vocab(30);
  auto y = random_posteriors(800, 30, rng);
  auto l = random_labeling(200, 30, rng, 150);
  auto r = ctc_forward_backward(y, l, v);
  EXPECT_TRUE(std::isfinite(r.loss));
  EXPECT_GT(r.loss, 745.0);  // p far below the smallest double
  for (double g : r.grad) ASSERT_TRUE(std::isfinite(g));
}

TEST(CtcForwardBackward, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto v = letters_vocab(4);
    auto y = random_posteriors(6, 4, rng);
    auto l = random_labeling(3, 4, rng, 1);
    auto r = ctc_forward_backward(y, l, v);
    auto fd = oracle::finite_difference_grad(
        [&](const PosteriorMatrix &p) { return ctc_forward_backward(p, l, v).loss; },
        y, 1e-6);
    for (size_t n = 0; n < fd.size(); ++n)
      EXPECT_TRUE(grad_close(r.grad[n], fd[n]))
          << "entry " << n << ": " << r.grad[n] << " vs " << fd[n];
  }
}

TEST(CtcForwardBackward, InvariantUnderVocabularyRelabeling) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int V = 5;
    auto v = letters_vocab(V);
    auto y = random_posteriors(8, V, rng);
    auto l = random_labeling(4, V, rng);
    // Permute columns (blank included) and the labeling consistently.
    std::vector<Symbol> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names(V);
    for (int k = 0; k < V; ++k) names[perm[k]] = v.symbol(k);
    Vocabulary pv(names, perm[v.blank()]);
    std::vector<double> pvals(y.values().size());
    for (int t = 0; t < y.num_frames(); ++t)
      for (int k = 0; k < V; ++k) pvals[t * V + perm[k]] = y(t, k);
    PosteriorMatrix py(y.num_frames(), V, pvals);
    Labeling pl;
    for (Symbol s : l) pl.push_back(perm[s]);
    EXPECT_NEAR(ctc_forward_backward(y, l, v).loss,
                ctc_forward_backward(py, pl, pv).loss, 1e-12);
  }
}

TEST(MultiCtc, SingleVariantEqualsCtc) {
  std::mt19937_64 rng(17);
  auto v = letters_vocab(4);
  auto y = random_posteriors(6, 4, rng);
  auto ctc = ctc_forward_backward(y, {1, 2}, v);
  auto multi = multi_ctc(y, {{{1, 2}, 1.0}}, v);
  EXPECT_NEAR(multi.loss, ctc.loss, 1e-12);
  for (size_t n = 0; n < ctc.grad.size(); ++n)
    EXPECT_NEAR(multi.grad[n], ctc.grad[n], 1e-12);
}

TEST(MultiCtc, WeightedSumInProbabilityDomain) {
  Vocabulary v({"a", "b", "#"}, 2);
  PosteriorMatrix y({{0.5, 0.3, 0.2}});
  auto r = multi_ctc(y, {{{0}, 0.6}, {{1}, 0.4}}, v);
  EXPECT_NEAR(std::exp(-r.loss), 0.42, 1e-15);
}

TEST(MultiCtc, InfeasibleVariantsContributeZero) {
  Vocabulary v({"a", "b", "#"}, 2);
  PosteriorMatrix y({{0.5, 0.3, 0.2}});
  auto r = multi_ctc(y, {{{0}, 0.6}, {{0, 1}, 0.4}}, v);
  EXPECT_NEAR(std::exp(-r.loss), 0.3, 1e-15);
  EXPECT_THROW(multi_ctc(y, {{{0, 1}, 1.0}}, v), InfeasibleError);
}

TEST(MultiCtc, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(19);
  auto v = letters_vocab(4);
  auto y = random_posteriors(5, 4, rng);
  NBestList nbest = {{{1, 2}, 0.5}, {{1, 3}, 0.3}, {{2}, 0.2}};
  auto r = multi_ctc(y, nbest, v);
  auto fd = oracle::finite_difference_grad(
      [&](const PosteriorMatrix &p) { return multi_ctc(p, nbest, v).loss; }, y,
      1e-6);
  for (size_t n = 0; n < fd.size(); ++n)
    EXPECT_TRUE(grad_close(r.grad[n], fd[n])) << r.grad[n] << " vs " << fd[n];
}

TEST(MultiCtc, VariantsSharingAPrefixShareForwardVariables) {
  // "cat" and "cab" differ in the last letter only; their forward variables
  // agree on every state before that letter.
  Vocabulary v({"#", "c", "a", "t", "b"}, 0);
  std::mt19937_64 rng(23);
  auto y = random_posteriors(9, 5, rng);
  ForwardBackwardWorkspace ws1, ws2;
  ctc_forward_backward(y, v.parse("cat"), v, &ws1);
  ctc_forward_backward(y, v.parse("cab"), v, &ws2);
  for (int t = 0; t < 9; ++t) {
    // Unscaled alpha over the shared states # c # a #.
    for (int s = 0; s < 5; ++s) {
      double a1 = ws1.alpha_row(t)[s] * std::exp(ws1.log_alpha_scale[t]);
      double a2 = ws2.alpha_row(t)[s] * std::exp(ws2.log_alpha_scale[t]);
      EXPECT_LT(rel_err(a1, a2), 1e-12);
    }
  }
}

}  // namespace
}  // namespace softctc
