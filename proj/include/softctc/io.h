// softctc/io.h

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

// Text file formats.
//
// Posterior file: whitespace separated. '#' starts a comment line. The
// first non-comment line lists the symbols in column order; the blank is
// written `<blank>` and a literal space `<space>`. Every following line is
// one frame of probabilities.
//
// Confusion network file: JSON,
//   {"format": "softctc-cn/1",
//    "vocabulary": ["<blank>", "a", ...],
//    "metadata": {"normalized": true, "mass": 1.0, "strategy": "partial",
//                 "beam": 16, "smoothing": 2 | "inf" | null,
//                 "cutoff": 0.01 | null},
//    "sets": [{"a": 0.6, "u": 0.3, "<null>": 0.1}, ...]}
//
// N-best file: one hypothesis per line, `weight<TAB>transcript`; the
// transcript may be empty.

#ifndef SOFTCTC_IO_H_
#define SOFTCTC_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "softctc/confusion_network.h"
#include "softctc/types.h"

namespace softctc::io {

inline constexpr std::string_view kBlankToken = "<blank>";
inline constexpr std::string_view kNullToken = "<null>";
inline constexpr std::string_view kSpaceToken = "<space>";
inline constexpr std::string_view kCnFormat = "softctc-cn/1";

struct PosteriorFile {
  Vocabulary vocabulary;
  PosteriorMatrix posteriors;
};

// Parses and validates (validate_posteriors) a posterior document.
PosteriorFile parse_posteriors(std::string_view text);
std::string format_posteriors(const Vocabulary &v, const PosteriorMatrix &m);

struct CnMetadata {
  std::optional<std::string> strategy;
  std::optional<int> beam;
  std::optional<double> smoothing;  // kInfiniteRoot for "inf"
  std::optional<double> cutoff;
};

struct CnFile {
  Vocabulary vocabulary;
  ConfusionNetwork cn;
  CnMetadata metadata;
};

// Parses and validates (require_valid_cn) a confusion network document.
CnFile parse_cn(std::string_view text);
// Deterministic; probabilities printed with round-trip precision.
std::string format_cn(const CnFile &file);

// Re-expresses a network over another vocabulary by symbol string. Throws
// ValidationError if a symbol is missing from `to`.
ConfusionNetwork remap_cn(const ConfusionNetwork &cn, const Vocabulary &from,
                          const Vocabulary &to);

NBestList parse_nbest(std::string_view text, const Vocabulary &v);
std::string format_nbest(const NBestList &nbest, const Vocabulary &v);

// Whole-file helpers; throw IoError.
std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

}  // namespace softctc::io

#endif  // SOFTCTC_IO_H_
