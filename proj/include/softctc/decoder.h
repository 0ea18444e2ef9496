// softctc/decoder.h

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

// Decoding CTC posteriors into n-best lists and confusion networks.

#ifndef SOFTCTC_DECODER_H_
#define SOFTCTC_DECODER_H_

#include <vector>

#include "softctc/confusion_network.h"
#include "softctc/types.h"

namespace softctc {

enum class DecodeStrategy { kFullLine, kPartialLine };

struct DecodeConfig {
  int beam_size = 16;
  double confidence_threshold = 0.99;
  DecodeStrategy strategy = DecodeStrategy::kPartialLine;
};

// Throws ValidationError(kInvalidConfig) unless beam_size >= 1 and
// 0.5 < confidence_threshold < 1.
void require_valid_config(const DecodeConfig &cfg);

enum class SegmentKind { kConfident, kUnconfident };

// Frames [begin, end), 0-based.
struct Segment {
  int begin = 0;
  int end = 0;
  SegmentKind kind = SegmentKind::kConfident;

  bool operator==(const Segment &) const = default;
};

// Argmax per frame, then collapse repeats and drop blanks.
Labeling greedy_decode(const PosteriorMatrix &y, Symbol blank);

struct BeamStats {
  // Largest number of distinct prefixes alive after any frame.
  int max_live_prefixes = 0;
};

// CTC prefix search. Each prefix carries the mass of the paths ending in
// blank and of those ending in its last symbol; after every frame the
// `beam` prefixes with the largest total survive, except that the collapsed
// best path is never pruned: it takes the last slot when it would fall out.
// Returns up to `beam` labelings sorted by descending score (ties by
// labeling).
NBestList prefix_beam_search(const PosteriorMatrix &y, Symbol blank, int beam,
                             BeamStats *stats = nullptr);

// Splits the line into confident and unconfident segments. A frame is a
// confident blank when the blank exceeds `threshold`, confident when any
// symbol does. Unconfident segments are maximal runs without confident
// blanks that contain at least one frame with no symbol above the
// threshold; line edges act as confident blanks. The remaining frames are
// grouped into confident segments. The result covers [0, T) in order.
std::vector<Segment> segment_line(const PosteriorMatrix &y, Symbol blank,
                                  double threshold);

// A segment together with how it was decoded.
struct DecodedSegment {
  Segment segment;
  NBestList nbest;  // one entry (greedy, weight 1) for confident segments
  BeamStats stats;
};

struct DecodeResult {
  ConfusionNetwork cn;  // normalized
  std::vector<DecodedSegment> segments;
};

// Full line: build_cn(prefix_beam_search(y)). Partial line: beam search on
// every unconfident segment, greedy decoding elsewhere, the per-segment
// networks concatenated in frame order.
DecodeResult decode(const PosteriorMatrix &y, Symbol blank,
                    const DecodeConfig &cfg);

// decode(...).cn
ConfusionNetwork decode_to_cn(const PosteriorMatrix &y, Symbol blank,
                              const DecodeConfig &cfg);

}  // namespace softctc

#endif  // SOFTCTC_DECODER_H_
