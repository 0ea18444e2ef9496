// tests/decoder_test.cc

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

#include "softctc/ctc.h"
#include "softctc/decoder.h"
#include "softctc/oracle.h"
#include "test_util.h"

namespace softctc {
namespace {

// Rows for V = {#, a, b}.
std::vector<double> peak(Symbol k, double p = 1.0) {
  std::vector<double> row(3, (1.0 - p) / 2);
  row[k] = p;
  return row;
}

// Six frames: # # (a|b) (a|b) # #, the middle split evenly.
PosteriorMatrix ambiguous_line() {
  return PosteriorMatrix({peak(0, 0.995), peak(0, 0.995), {0.0, 0.5, 0.5},
                          {0.0, 0.5, 0.5}, peak(0, 0.995), peak(0, 0.995)});
}

TEST(GreedyDecode, CollapsesRepeatsAndDropsBlanks) {
  EXPECT_EQ(greedy_decode(PosteriorMatrix({peak(0), peak(1), peak(1), peak(0), peak(2)}), 0),
            (Labeling{1, 2}));
  EXPECT_TRUE(greedy_decode(PosteriorMatrix({peak(0), peak(0)}), 0).empty());
  EXPECT_EQ(greedy_decode(PosteriorMatrix({peak(1), peak(0), peak(1)}), 0),
            (Labeling{1, 1}));
}

TEST(PrefixBeamSearch, TwoFrameExample) {
  // V = {a, #}.
  PosteriorMatrix y({{0.6, 0.4}, {0.5, 0.5}});
  auto nbest = prefix_beam_search(y, 1, 2);
  ASSERT_EQ(nbest.size(), 2u);
  EXPECT_EQ(nbest[0].labeling, (Labeling{0}));
  EXPECT_NEAR(nbest[0].weight, 0.8, 1e-15);
  EXPECT_TRUE(nbest[1].labeling.empty());
  EXPECT_NEAR(nbest[1].weight, 0.2, 1e-15);
}

TEST(PrefixBeamSearch, PeakedInputGivesGreedyResult) {
  PosteriorMatrix y({peak(0), peak(1), peak(1), peak(0), peak(2), peak(2)});
  auto nbest = prefix_beam_search(y, 0, 8);
  ASSERT_EQ(nbest.size(), 1u);
  EXPECT_EQ(nbest[0].labeling, greedy_decode(y, 0));
  EXPECT_EQ(nbest[0].weight, 1.0);
}

TEST(PrefixBeamSearch, ExhaustiveBeamMatchesEnumeration) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    auto y = testing::random_posteriors(4, 3, rng);
    auto dist = oracle::enumerate_ctc_distribution(y, 0);
    auto nbest = prefix_beam_search(y, 0, 1000);
    ASSERT_EQ(nbest.size(), dist.size());
    for (const auto &e : nbest) EXPECT_NEAR(e.weight, dist.at(e.labeling), 1e-14);
  }
}

TEST(PrefixBeamSearch, ScoresAreSortedLowerBounds) {
  std::mt19937_64 rng(113);
  auto v = testing::letters_vocab(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto y = testing::random_posteriors(10, 5, rng);
    auto nbest = prefix_beam_search(y, 0, 1 + trial % 6);
    ASSERT_FALSE(nbest.empty());
    for (size_t i = 1; i < nbest.size(); ++i)
      EXPECT_GE(nbest[i - 1].weight, nbest[i].weight);
    for (const auto &e : nbest)
      EXPECT_LE(e.weight, std::exp(-ctc_forward_backward(y, e.labeling, v).loss) + 1e-9);
  }
}

TEST(PrefixBeamSearch, BeamOneOnShortInput) {
  // With a single frame every path of the top prefix survives.
  auto v = testing::letters_vocab(3);
  PosteriorMatrix y({{0.2, 0.5, 0.3}});
  auto nbest = prefix_beam_search(y, 0, 1);
  ASSERT_EQ(nbest.size(), 1u);
  EXPECT_NEAR(nbest[0].weight,
              std::exp(-ctc_forward_backward(y, nbest[0].labeling, v).loss), 1e-9);
}

TEST(SegmentLine, AllBlankIsOneConfidentSegment) {
  auto segs = segment_line(PosteriorMatrix({peak(0), peak(0), peak(0)}), 0, 0.99);
  EXPECT_EQ(segs, (std::vector<Segment>{{0, 3, SegmentKind::kConfident}}));
}

TEST(SegmentLine, AmbiguousMiddle) {
  auto segs = segment_line(ambiguous_line(), 0, 0.99);
  EXPECT_EQ(segs, (std::vector<Segment>{{0, 2, SegmentKind::kConfident},
                                        {2, 4, SegmentKind::kUnconfident},
                                        {4, 6, SegmentKind::kConfident}}));
}

TEST(SegmentLine, LineEdgeActsAsConfidentBlank) {
  PosteriorMatrix y({{0.0, 0.5, 0.5}, peak(1, 0.995), peak(0, 0.995), peak(2)});
  auto segs = segment_line(y, 0, 0.99);
  EXPECT_EQ(segs, (std::vector<Segment>{{0, 2, SegmentKind::kUnconfident},
                                        {2, 4, SegmentKind::kConfident}}));
}

TEST(SegmentLine, ConfidentLettersBetweenBlanksStayConfident) {
  PosteriorMatrix y({peak(0), peak(1, 0.995), peak(2, 0.995), peak(0)});
  EXPECT_EQ(segment_line(y, 0, 0.99),
            (std::vector<Segment>{{0, 4, SegmentKind::kConfident}}));
}

TEST(SegmentLine, PartitionsTheLine) {
  std::mt19937_64 rng(127);
  std::bernoulli_distribution confident(0.7);
  std::uniform_int_distribution<Symbol> sym(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> rows;
    for (int t = 0; t < 15; ++t)
      rows.push_back(confident(rng) ? peak(sym(rng), 0.995) : peak(sym(rng), 0.6));
    auto segs = segment_line(PosteriorMatrix(rows), 0, 0.99);
    int next = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      EXPECT_EQ(segs[i].begin, next);
      EXPECT_LT(segs[i].begin, segs[i].end);
      if (i > 0) EXPECT_NE(segs[i].kind, segs[i - 1].kind);
      next = segs[i].end;
    }
    EXPECT_EQ(next, 15);
  }
}

TEST(DecodeToCn, ConfidentLineIsTrivial) {
  PosteriorMatrix peaked({peak(0), peak(1), peak(0), peak(2)});
  for (auto strategy : {DecodeStrategy::kFullLine, DecodeStrategy::kPartialLine}) {
    auto cn = decode_to_cn(peaked, 0, {16, 0.99, strategy});
    ASSERT_EQ(cn.sets.size(), 2u);
    EXPECT_EQ(best_path(cn), (Labeling{1, 2}));
    for (const auto &s : cn.sets) EXPECT_EQ(s.size(), 1);
  }
  PosteriorMatrix y({peak(0, 0.995), peak(1, 0.995), peak(0, 0.995), peak(2, 0.995)});
  auto cn = decode_to_cn(y, 0, {16, 0.99, DecodeStrategy::kPartialLine});
  ASSERT_EQ(cn.sets.size(), 2u);
  for (const auto &s : cn.sets) EXPECT_EQ(s.size(), 1);
}

TEST(DecodeToCn, PartialLineIsolatesAmbiguity) {
  // a # (a|b) # b
  PosteriorMatrix y({peak(1, 0.995), peak(0, 0.995), {0.0, 0.5, 0.5},
                     peak(0, 0.995), peak(2, 0.995)});
  auto result = decode(y, 0, {16, 0.99, DecodeStrategy::kPartialLine});
  ASSERT_EQ(result.cn.sets.size(), 3u);
  EXPECT_EQ(result.cn.sets[0].alternatives, (std::map<Symbol, double>{{1, 1.0}}));
  EXPECT_EQ(result.cn.sets[1].alternatives,
            (std::map<Symbol, double>{{1, 0.5}, {2, 0.5}}));
  EXPECT_EQ(result.cn.sets[2].alternatives, (std::map<Symbol, double>{{2, 1.0}}));
  ASSERT_EQ(result.segments.size(), 3u);
  EXPECT_EQ(result.segments[1].segment, (Segment{2, 3, SegmentKind::kUnconfident}));
  EXPECT_EQ(result.segments[0].stats.max_live_prefixes, 1);
  EXPECT_EQ(result.segments[2].stats.max_live_prefixes, 1);
}

TEST(DecodeToCn, TwoAmbiguousFramesGiveFourVariants) {
  // Both frames split evenly: a, b, ab and ba are equally likely.
  auto result = decode(ambiguous_line(), 0, {16, 0.99, DecodeStrategy::kPartialLine});
  ASSERT_EQ(result.segments.size(), 3u);
  const auto &nbest = result.segments[1].nbest;
  ASSERT_EQ(nbest.size(), 4u);
  for (const auto &e : nbest) EXPECT_DOUBLE_EQ(e.weight, 0.25);
  EXPECT_GE(oracle::enumerate_cn_strings(result.cn).distinct.size(), 4u);
}

TEST(DecodeToCn, GreedyPathIsRepresented) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    auto y = testing::random_posteriors(8, 4, rng);
    auto greedy = greedy_decode(y, 0);
    for (auto strategy : {DecodeStrategy::kFullLine, DecodeStrategy::kPartialLine}) {
      auto cn = decode_to_cn(y, 0, {4, 0.99, strategy});
      bool found = false;
      for (const auto &d : oracle::enumerate_cn_strings(cn).distinct)
        found |= d.labeling == greedy;
      EXPECT_TRUE(found);
    }
  }
}

TEST(DecodeConfig, Validation) {
  EXPECT_NO_THROW(require_valid_config({}));
  EXPECT_THROW(require_valid_config({0, 0.99, DecodeStrategy::kFullLine}), ValidationError);
  EXPECT_THROW(require_valid_config({4, 0.5, DecodeStrategy::kFullLine}), ValidationError);
  EXPECT_THROW(require_valid_config({4, 1.0, DecodeStrategy::kFullLine}), ValidationError);
}

}  // namespace
}  // namespace softctc
