// src/types.cc

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

#include "softctc/types.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace softctc {

using Kind = ValidationError::Kind;

Vocabulary::Vocabulary(std::vector<std::string> symbols, Symbol blank)
    : symbols_(std::move(symbols)), blank_(blank) {
  if (symbols_.size() < 2)
    throw ValidationError(Kind::kInvalidVocabulary,
                          "vocabulary needs a blank and at least one letter");
  if (blank_ < 0 || blank_ >= size())
    throw ValidationError(Kind::kInvalidVocabulary,
                          "blank index out of range");
  std::set<std::string> seen;
  for (const auto &s : symbols_) {
    if (s.empty())
      throw ValidationError(Kind::kInvalidVocabulary, "empty symbol string");
    if (!seen.insert(s).second)
      throw ValidationError(Kind::kInvalidVocabulary,
                            "duplicate symbol '" + s + "'");
    max_symbol_bytes_ = std::max(max_symbol_bytes_, s.size());
  }
}

std::optional<Symbol> Vocabulary::find(std::string_view text) const {
  for (Symbol s = 0; s < size(); ++s)
    if (symbols_[s] == text) return s;
  return std::nullopt;
}

Labeling Vocabulary::parse(std::string_view text) const {
  Labeling out;
  size_t pos = 0;
  while (pos < text.size()) {
    std::optional<Symbol> hit;
    size_t hit_len = 0;
    for (size_t len = std::min(max_symbol_bytes_, text.size() - pos); len > 0;
         --len) {
      if (auto s = find(text.substr(pos, len)); s && *s != blank_) {
        hit = s;
        hit_len = len;
        break;
      }
    }
    if (!hit)
      throw ValidationError(Kind::kInvalidLabeling,
                            "transcript has text outside the vocabulary at "
                            "byte " + std::to_string(pos));
    out.push_back(*hit);
    pos += hit_len;
  }
  return out;
}

std::string Vocabulary::render(const Labeling &labeling) const {
  std::string out;
  for (Symbol s : labeling) out += symbol(s);
  return out;
}

PosteriorMatrix::PosteriorMatrix(int num_frames, int num_symbols,
                                 std::vector<double> values)
    : num_frames_(num_frames),
      num_symbols_(num_symbols),
      values_(std::move(values)) {
  if (num_frames_ < 0 || num_symbols_ < 0 ||
      values_.size() != static_cast<size_t>(num_frames_) * num_symbols_)
    throw ValidationError(Kind::kShapeMismatch,
                          "posterior values do not match the declared shape");
}

PosteriorMatrix::PosteriorMatrix(const std::vector<std::vector<double>> &rows) {
  num_frames_ = static_cast<int>(rows.size());
  num_symbols_ = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  values_.reserve(static_cast<size_t>(num_frames_) * num_symbols_);
  for (const auto &r : rows) {
    if (static_cast<int>(r.size()) != num_symbols_)
      throw ValidationError(Kind::kShapeMismatch, "ragged posterior rows");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

PosteriorMatrix PosteriorMatrix::slice(int begin, int end) const {
  if (begin < 0 || end > num_frames_ || begin > end)
    throw ValidationError(Kind::kShapeMismatch, "frame slice out of range");
  std::vector<double> v(values_.begin() + static_cast<ptrdiff_t>(begin) * num_symbols_,
                        values_.begin() + static_cast<ptrdiff_t>(end) * num_symbols_);
  return PosteriorMatrix(end - begin, num_symbols_, std::move(v));
}

Symbol PosteriorMatrix::argmax(int t) const {
  auto r = row(t);
  return static_cast<Symbol>(std::max_element(r.begin(), r.end()) - r.begin());
}

std::optional<ValidationError> validate_posteriors(const PosteriorMatrix &m,
                                                   const Vocabulary &v) {
  if (m.num_symbols() != v.size() || m.num_frames() < 1) {
    std::ostringstream os;
    os << "posterior shape " << m.num_frames() << "x" << m.num_symbols()
       << " does not fit a vocabulary of " << v.size() << " symbols";
    return ValidationError(Kind::kShapeMismatch, os.str());
  }
  for (int t = 0; t < m.num_frames(); ++t) {
    double sum = 0.0;
    for (Symbol k = 0; k < m.num_symbols(); ++k) {
      double p = m(t, k);
      if (!(p >= 0.0)) {
        std::ostringstream os;
        os << "entry (" << t << ", " << k << ") = " << p
           << " is negative";
        return ValidationError(Kind::kNegativeEntry, os.str(), t, k);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      std::ostringstream os;
      os << "frame " << t << " sums to " << sum;
      return ValidationError(Kind::kRowNotNormalized, os.str(), t);
    }
  }
  return std::nullopt;
}

void require_valid_posteriors(const PosteriorMatrix &m, const Vocabulary &v) {
  if (auto err = validate_posteriors(m, v)) throw *err;
}

void require_valid_labeling(const Labeling &l, const Vocabulary &v) {
  for (Symbol s : l) {
    if (s < 0 || s >= v.size())
      throw ValidationError(Kind::kInvalidLabeling,
                            "labeling symbol out of range", -1, s);
    if (s == v.blank())
      throw ValidationError(Kind::kInvalidLabeling,
                            "labeling contains the blank symbol", -1, s);
  }
}

void require_valid_nbest(const NBestList &nbest, const Vocabulary &v) {
  if (nbest.empty())
    throw ValidationError(Kind::kInvalidNBest, "n-best list is empty");
  std::set<Labeling> seen;
  for (const auto &e : nbest) {
    require_valid_labeling(e.labeling, v);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw ValidationError(Kind::kInvalidNBest,
                            "n-best weights must be positive and finite");
    if (!seen.insert(e.labeling).second)
      throw ValidationError(Kind::kInvalidNBest,
                            "duplicate labeling '" + v.render(e.labeling) +
                                "' in n-best list");
  }
}

Labeling collapse_path(std::span<const Symbol> path, Symbol blank) {
  Labeling out;
  Symbol prev = -1;
  for (Symbol s : path) {
    if (s != prev && s != blank) out.push_back(s);
    prev = s;
  }
  return out;
}

}  // namespace softctc
