// softctc/types.h

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

#ifndef SOFTCTC_TYPES_H_
#define SOFTCTC_TYPES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softctc/errors.h"

namespace softctc {

// Symbols are column indices into the posterior matrix. The display string
// of a symbol lives in the Vocabulary.
using Symbol = int32_t;

// Blank-free sequence of symbols.
using Labeling = std::vector<Symbol>;

// Tolerance used when checking that posterior rows sum to one.
inline constexpr double kRowSumTolerance = 1e-6;

// Ordered list of distinct symbol strings, one of which is the CTC blank.
class Vocabulary {
 public:
  // Throws ValidationError(kInvalidVocabulary) on duplicate symbols, an
  // out-of-range blank or fewer than two symbols.
  Vocabulary(std::vector<std::string> symbols, Symbol blank);

  int size() const { return static_cast<int>(symbols_.size()); }
  Symbol blank() const { return blank_; }
  const std::string &symbol(Symbol s) const { return symbols_.at(s); }
  const std::vector<std::string> &symbols() const { return symbols_; }

  // Returns the symbol whose display string is `text`, if any.
  std::optional<Symbol> find(std::string_view text) const;

  // Splits a UTF-8 transcript into symbols. Matching is greedy longest
  // match, so multi-codepoint symbols are supported. Throws
  // ValidationError(kInvalidLabeling) on unknown text or on the blank.
  Labeling parse(std::string_view text) const;

  // Concatenates display strings.
  std::string render(const Labeling &labeling) const;

  bool operator==(const Vocabulary &other) const = default;

 private:
  std::vector<std::string> symbols_;
  Symbol blank_;
  size_t max_symbol_bytes_ = 0;
};

// T x |V| matrix of per-frame symbol probabilities, row-major.
//
// Construction only checks the shape; use validate_posteriors() for the
// probability invariants. Loss functions accept unnormalized rows so that
// they can be differentiated entry-wise.
class PosteriorMatrix {
 public:
  PosteriorMatrix() = default;
  PosteriorMatrix(int num_frames, int num_symbols, std::vector<double> values);
  explicit PosteriorMatrix(const std::vector<std::vector<double>> &rows);

  int num_frames() const { return num_frames_; }
  int num_symbols() const { return num_symbols_; }
  double operator()(int t, Symbol k) const {
    return values_[static_cast<size_t>(t) * num_symbols_ + k];
  }
  std::span<const double> row(int t) const {
    return {values_.data() + static_cast<size_t>(t) * num_symbols_,
            static_cast<size_t>(num_symbols_)};
  }
  const std::vector<double> &values() const { return values_; }

  // Frames [begin, end).
  PosteriorMatrix slice(int begin, int end) const;

  // argmax per frame; ties resolve to the lowest symbol.
  Symbol argmax(int t) const;

 private:
  int num_frames_ = 0;
  int num_symbols_ = 0;
  std::vector<double> values_;
};

struct NBestEntry {
  Labeling labeling;
  double weight = 0.0;
};

// Weighted transcription variants. Weights are positive but need not sum
// to one.
using NBestList = std::vector<NBestEntry>;

// Returns nullopt when `m` is a valid posterior matrix over `v`, otherwise
// the first violation found (ShapeMismatch, then per-frame NegativeEntry /
// RowNotNormalized in frame order).
std::optional<ValidationError> validate_posteriors(const PosteriorMatrix &m,
                                                   const Vocabulary &v);

// Throwing form of validate_posteriors().
void require_valid_posteriors(const PosteriorMatrix &m, const Vocabulary &v);

// Throws ValidationError(kInvalidLabeling) if `l` holds the blank or
// out-of-range symbols.
void require_valid_labeling(const Labeling &l, const Vocabulary &v);

// Throws ValidationError(kInvalidNBest) on an empty list, non-positive
// weights, duplicate labelings or invalid labelings.
void require_valid_nbest(const NBestList &nbest, const Vocabulary &v);

// Collapse repeats, then drop blanks.
Labeling collapse_path(std::span<const Symbol> path, Symbol blank);

}  // namespace softctc

#endif  // SOFTCTC_TYPES_H_
