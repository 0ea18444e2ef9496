// tests/types_test.cc

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

#include "softctc/types.h"
#include "test_util.h"

namespace softctc {
namespace {

using Kind = ValidationError::Kind;

TEST(ValidatePosteriors, AcceptsNormalizedRow) {
  Vocabulary v({"a", "#"}, 1);
  EXPECT_FALSE(validate_posteriors(PosteriorMatrix({{0.7, 0.3}}), v));
}

TEST(ValidatePosteriors, RejectsRowNotSummingToOne) {
  Vocabulary v({"a", "#"}, 1);
  auto err = validate_posteriors(PosteriorMatrix({{0.7, 0.2}}), v);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), Kind::kRowNotNormalized);
  EXPECT_EQ(err->frame(), 0);
}

TEST(ValidatePosteriors, RejectsShapeMismatch) {
  Vocabulary v({"a", "#"}, 1);
  auto err = validate_posteriors(PosteriorMatrix({{0.2, 0.3, 0.5}}), v);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), Kind::kShapeMismatch);
}

TEST(ValidatePosteriors, RejectsNegativeEntry) {
  Vocabulary v({"a", "b", "#"}, 2);
  auto err =
      validate_posteriors(PosteriorMatrix({{0.5, 0.5, 0.0}, {1.1, -0.1, 0.0}}), v);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), Kind::kNegativeEntry);
  EXPECT_EQ(err->frame(), 1);
  EXPECT_EQ(err->symbol(), 1);
}

TEST(ValidatePosteriors, RejectsEmptyMatrix) {
  Vocabulary v({"a", "#"}, 1);
  auto err = validate_posteriors(PosteriorMatrix(0, 2, {}), v);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->kind(), Kind::kShapeMismatch);
}

TEST(Vocabulary, RejectsBadDefinitions) {
  EXPECT_THROW(Vocabulary({"#"}, 0), ValidationError);
  EXPECT_THROW(Vocabulary({"a", "a", "#"}, 2), ValidationError);
  EXPECT_THROW(Vocabulary({"a", "#"}, 2), ValidationError);
}

TEST(Vocabulary, ParsesGreedyLongestMatch) {
  Vocabulary v({"#", "c", "ch", "a", " "}, 0);
  EXPECT_EQ(v.parse("cha c"), (Labeling{2, 3, 4, 1}));
  EXPECT_EQ(v.render(v.parse("cha c")), "cha c");
  EXPECT_THROW(v.parse("x"), ValidationError);
  EXPECT_THROW(v.parse("#"), ValidationError);
}

TEST(Labeling, RejectsBlank) {
  auto v = testing::letters_vocab(3);
  EXPECT_NO_THROW(require_valid_labeling({1, 2}, v));
  EXPECT_THROW(require_valid_labeling({1, 0}, v), ValidationError);
  EXPECT_THROW(require_valid_labeling({7}, v), ValidationError);
}

TEST(NBest, Validation) {
  auto v = testing::letters_vocab(3);
  EXPECT_NO_THROW(require_valid_nbest({{{1}, 0.5}, {{2}, 0.7}}, v));
  // Weights need not sum to one, but must be positive and labelings distinct.
  EXPECT_THROW(require_valid_nbest({}, v), ValidationError);
  EXPECT_THROW(require_valid_nbest({{{1}, 0.0}}, v), ValidationError);
  EXPECT_THROW(require_valid_nbest({{{1}, 0.5}, {{1}, 0.2}}, v), ValidationError);
}

TEST(CollapsePath, MergesRepeatsThenDropsBlanks) {
  const Symbol blank = 0;
  EXPECT_EQ(collapse_path(std::vector<Symbol>{0, 1, 1, 0, 2}, blank),
            (Labeling{1, 2}));
  EXPECT_EQ(collapse_path(std::vector<Symbol>{1, 0, 1}, blank), (Labeling{1, 1}));
  EXPECT_EQ(collapse_path(std::vector<Symbol>{0, 0}, blank), Labeling{});
}

TEST(PosteriorMatrix, SliceAndArgmax) {
  PosteriorMatrix m({{0.1, 0.9}, {0.6, 0.4}, {0.5, 0.5}});
  auto s = m.slice(1, 3);
  EXPECT_EQ(s.num_frames(), 2);
  EXPECT_DOUBLE_EQ(s(0, 0), 0.6);
  EXPECT_EQ(m.argmax(0), 1);
  EXPECT_EQ(m.argmax(2), 0);  // tie goes to the lower symbol
  EXPECT_THROW(m.slice(2, 4), ValidationError);
}

}  // namespace
}  // namespace softctc
