// src/decoder.cc

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

#include "softctc/decoder.h"

#include <algorithm>
#include <unordered_map>

namespace softctc {

namespace {

struct PrefixMass {
  double blank = 0.0;      // paths ending in blank
  double non_blank = 0.0;  // paths ending in the prefix's last symbol
  double total() const { return blank + non_blank; }
};

struct LabelingHash {
  size_t operator()(const Labeling &l) const {
    size_t h = 1469598103934665603ull;
    for (Symbol s : l) h = (h ^ static_cast<size_t>(s)) * 1099511628211ull;
    return h;
  }
};

using Beam = std::vector<std::pair<Labeling, PrefixMass>>;

// Highest total first, ties by labeling.
void sort_beam(Beam *beam) {
  std::sort(beam->begin(), beam->end(), [](const auto &a, const auto &b) {
    double ta = a.second.total(), tb = b.second.total();
    if (ta != tb) return ta > tb;
    return a.first < b.first;
  });
}

ConfusionNetwork concatenate(std::vector<ConfusionNetwork> parts) {
  ConfusionNetwork out;
  out.normalized = true;
  out.mass = 1.0;
  for (auto &p : parts)
    for (auto &set : p.sets) out.sets.push_back(std::move(set));
  return out;
}

}  // namespace

void require_valid_config(const DecodeConfig &cfg) {
  if (cfg.beam_size < 1)
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "beam size must be at least 1");
  if (!(cfg.confidence_threshold > 0.5 && cfg.confidence_threshold < 1.0))
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "confidence threshold must lie in (0.5, 1)");
}

Labeling greedy_decode(const PosteriorMatrix &y, Symbol blank) {
  std::vector<Symbol> path(y.num_frames());
  for (int t = 0; t < y.num_frames(); ++t) path[t] = y.argmax(t);
  return collapse_path(path, blank);
}

NBestList prefix_beam_search(const PosteriorMatrix &y, Symbol blank, int beam,
                             BeamStats *stats) {
  if (beam < 1)
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "beam size must be at least 1");
  Beam live = {{Labeling{}, PrefixMass{1.0, 0.0}}};
  int max_live = 1;
  std::unordered_map<Labeling, PrefixMass, LabelingHash> next;
  // Collapsed best path so far; always kept alive so that the greedy
  // labeling is among the results.
  Labeling greedy;
  Symbol greedy_last = blank;

  for (int t = 0; t < y.num_frames(); ++t) {
    auto probs = y.row(t);
    const Symbol top = y.argmax(t);
    if (top != blank && top != greedy_last) greedy.push_back(top);
    greedy_last = top;
    next.clear();
    for (const auto &[prefix, mass] : live) {
      const double all = mass.total();
      if (probs[blank] > 0.0) next[prefix].blank += all * probs[blank];
      for (Symbol k = 0; k < y.num_symbols(); ++k) {
        const double p = probs[k];
        if (k == blank || p == 0.0) continue;
        Labeling extended = prefix;
        extended.push_back(k);
        if (!prefix.empty() && prefix.back() == k) {
          // Repeat without a blank in between stays on the same prefix.
          next[prefix].non_blank += mass.non_blank * p;
          next[std::move(extended)].non_blank += mass.blank * p;
        } else {
          next[std::move(extended)].non_blank += all * p;
        }
      }
    }
    live.clear();
    for (auto &entry : next)
      if (entry.second.total() > 0.0) live.push_back(std::move(entry));
    sort_beam(&live);
    if (static_cast<int>(live.size()) > beam) {
      auto kept = std::find_if(live.begin(), live.begin() + beam,
                               [&](const auto &e) { return e.first == greedy; });
      if (kept == live.begin() + beam) {
        auto it = std::find_if(live.begin() + beam, live.end(),
                               [&](const auto &e) { return e.first == greedy; });
        if (it != live.end()) std::swap(live[beam - 1], *it);
      }
      live.resize(beam);
      sort_beam(&live);
    }
    max_live = std::max(max_live, static_cast<int>(live.size()));
  }

  if (stats) stats->max_live_prefixes = max_live;
  NBestList out;
  for (auto &[prefix, mass] : live)
    if (mass.total() > 0.0) out.push_back({prefix, mass.total()});
  return out;
}

std::vector<Segment> segment_line(const PosteriorMatrix &y, Symbol blank,
                                  double threshold) {
  const int T = y.num_frames();
  std::vector<bool> confident_blank(T), confident(T);
  for (int t = 0; t < T; ++t) {
    auto r = y.row(t);
    confident_blank[t] = r[blank] > threshold;
    confident[t] = *std::max_element(r.begin(), r.end()) > threshold;
  }

  std::vector<bool> unconfident(T, false);
  for (int t = 0; t < T;) {
    if (confident_blank[t]) {
      ++t;
      continue;
    }
    int end = t;
    bool ambiguous = false;
    while (end < T && !confident_blank[end]) ambiguous |= !confident[end++];
    if (ambiguous)
      for (int u = t; u < end; ++u) unconfident[u] = true;
    t = end;
  }

  std::vector<Segment> out;
  for (int t = 0; t < T;) {
    int end = t;
    while (end < T && unconfident[end] == unconfident[t]) ++end;
    out.push_back({t, end,
                   unconfident[t] ? SegmentKind::kUnconfident
                                  : SegmentKind::kConfident});
    t = end;
  }
  return out;
}

DecodeResult decode(const PosteriorMatrix &y, Symbol blank,
                    const DecodeConfig &cfg) {
  require_valid_config(cfg);
  DecodeResult result;

  if (cfg.strategy == DecodeStrategy::kFullLine) {
    DecodedSegment seg;
    seg.segment = {0, y.num_frames(), SegmentKind::kUnconfident};
    seg.nbest = prefix_beam_search(y, blank, cfg.beam_size, &seg.stats);
    result.cn = build_cn(seg.nbest);
    result.segments.push_back(std::move(seg));
    return result;
  }

  std::vector<ConfusionNetwork> parts;
  for (const Segment &s : segment_line(y, blank, cfg.confidence_threshold)) {
    DecodedSegment seg;
    seg.segment = s;
    PosteriorMatrix slice = y.slice(s.begin, s.end);
    if (s.kind == SegmentKind::kConfident) {
      seg.nbest = {{greedy_decode(slice, blank), 1.0}};
      seg.stats.max_live_prefixes = 1;
    } else {
      seg.nbest = prefix_beam_search(slice, blank, cfg.beam_size, &seg.stats);
    }
    parts.push_back(build_cn(seg.nbest));
    result.segments.push_back(std::move(seg));
  }
  result.cn = concatenate(std::move(parts));
  return result;
}

ConfusionNetwork decode_to_cn(const PosteriorMatrix &y, Symbol blank,
                              const DecodeConfig &cfg) {
  return decode(y, blank, cfg).cn;
}

}  // namespace softctc
