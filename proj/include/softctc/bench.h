// softctc/bench.h

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

// Synthetic text lines and the CTC / MultiCTC / SoftCTC timing harness.

#ifndef SOFTCTC_BENCH_H_
#define SOFTCTC_BENCH_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "softctc/confusion_network.h"
#include "softctc/types.h"

namespace softctc::bench {

struct SyntheticConfig {
  int frames = 250;
  int vocab_size = 100;  // blank included
  // Probability that a character is rendered ambiguous. With the default
  // frame layout this leaves roughly 85 % of the frames confident.
  double ambiguous_char_rate = 0.3;
  double confident_prob = 0.995;
};

// Blank "<blank>" at index 0, letters "s1".."s{n-1}".
Vocabulary synthetic_vocabulary(int size);

struct SyntheticLine {
  PosteriorMatrix posteriors;
  Labeling truth;
  // Frames whose top symbol does not exceed 0.99.
  int unconfident_frames = 0;
};

// A line of blank-separated characters. Confident frames put
// `confident_prob` on one symbol. Ambiguous characters are surrounded by
// confident blanks and split their mass between the true letter, one or
// two competitors and some blank.
SyntheticLine generate_line(const SyntheticConfig &cfg, std::mt19937_64 &rng);

struct BenchConfig {
  std::vector<int> batch_sizes = {16};
  int beam = 16;
  int repeats = 30;
  int warmup = 3;
  uint64_t seed = 20230517;
  SyntheticConfig line;
};

struct BenchRow {
  std::string method;  // "ctc", "multictc" or "softctc"
  int batch = 0;
  int beam = 0;
  double mean_ms = 0.0;  // wall time per batch
  double std_ms = 0.0;
};

struct BenchReport {
  BenchConfig config;
  double confident_frame_fraction = 0.0;
  double mean_cn_sets = 0.0;
  double mean_cn_alternatives = 0.0;
  std::vector<BenchRow> rows;

  const BenchRow *find(const std::string &method, int batch) const;
};

// Times, per batch of lines:
//   ctc       one CTC evaluation (loss and gradient) per line;
//   multictc  `beam` sequential CTC evaluations per line, over the line's
//             full-line beam search hypotheses (padded with the best one);
//   softctc   compilation of the line's pruned partial-line network plus
//             one SoftCTC evaluation.
// Warmup iterations are not recorded. Single-threaded.
BenchReport run_bench(const BenchConfig &cfg);

// Human table and line-oriented `key=value` rows.
std::string format_table(const BenchReport &report);
std::string format_machine(const BenchReport &report);

}  // namespace softctc::bench

#endif  // SOFTCTC_BENCH_H_
