// src/bench.cc

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

#include "softctc/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "softctc/ctc.h"
#include "softctc/decoder.h"
#include "softctc/soft_ctc.h"
#include "softctc/target_compiler.h"

namespace softctc::bench {

namespace {

constexpr Symbol kBlank = 0;

void push_confident_row(std::vector<double> *values, int vocab, Symbol top,
                        double p) {
  const double rest = (1.0 - p) / (vocab - 1);
  for (Symbol k = 0; k < vocab; ++k) values->push_back(k == top ? p : rest);
}

// Frame probabilities for an ambiguous character: the true letter, one or
// two competitors and a little blank, plus a floor on everything else.
void push_ambiguous_row(std::vector<double> *values, int vocab, Symbol truth,
                        const std::vector<Symbol> &rivals,
                        std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> row(vocab, 1e-5);
  row[truth] += 0.45 + 0.25 * u(rng);
  double left = 1.0 - row[truth];
  row[kBlank] += left * (0.05 + 0.15 * u(rng));
  left = 1.0 - row[truth] - row[kBlank];
  if (rivals.size() == 1) {
    row[rivals[0]] += left;
  } else {
    double share = 0.55 + 0.3 * u(rng);
    row[rivals[0]] += left * share;
    row[rivals[1]] += left * (1.0 - share);
  }
  double sum = 0.0;
  for (double p : row) sum += p;
  for (double p : row) values->push_back(p / sum);
}

struct PreparedLine {
  SyntheticLine line;
  Labeling best;
  std::vector<Labeling> variants;  // exactly `beam` labelings
  ConfusionNetwork target_cn;
};

double mean_of(const std::vector<double> &x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / x.size();
}

double stddev_of(const std::vector<double> &x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / (x.size() - 1));
}

template <typename Body>
BenchRow time_batches(const std::string &method, int batch, int beam,
                      int warmup, int repeats, Body &&body) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> samples;
  for (int r = 0; r < warmup + repeats; ++r) {
    auto start = Clock::now();
    body();
    std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    if (r >= warmup) samples.push_back(elapsed.count());
  }
  return {method, batch, beam, mean_of(samples), stddev_of(samples)};
}

}  // namespace

Vocabulary synthetic_vocabulary(int size) {
  std::vector<std::string> symbols{"<blank>"};
  for (int k = 1; k < size; ++k) symbols.push_back("s" + std::to_string(k));
  return Vocabulary(std::move(symbols), kBlank);
}

SyntheticLine generate_line(const SyntheticConfig &cfg, std::mt19937_64 &rng) {
  const int V = cfg.vocab_size;
  std::uniform_int_distribution<Symbol> letter(1, V - 1);
  std::uniform_int_distribution<int> one_or_two(1, 2);
  std::bernoulli_distribution ambiguous(cfg.ambiguous_char_rate);
  std::bernoulli_distribution two_rivals(0.3);

  SyntheticLine out;
  std::vector<double> values;
  int frames = 0;
  auto blanks = [&](int n) {
    for (int i = 0; i < n; ++i)
      push_confident_row(&values, V, kBlank, cfg.confident_prob);
    frames += n;
  };

  blanks(one_or_two(rng));
  while (true) {
    const int letter_frames = one_or_two(rng);
    const int blank_frames = one_or_two(rng);
    if (frames + letter_frames + blank_frames > cfg.frames) break;
    const Symbol truth = letter(rng);
    out.truth.push_back(truth);
    if (ambiguous(rng)) {
      std::vector<Symbol> rivals;
      const int n_rivals = two_rivals(rng) ? 2 : 1;
      while (static_cast<int>(rivals.size()) < n_rivals) {
        Symbol r = letter(rng);
        if (r != truth && std::find(rivals.begin(), rivals.end(), r) == rivals.end())
          rivals.push_back(r);
      }
      for (int i = 0; i < letter_frames; ++i)
        push_ambiguous_row(&values, V, truth, rivals, rng);
      out.unconfident_frames += letter_frames;
    } else {
      for (int i = 0; i < letter_frames; ++i)
        push_confident_row(&values, V, truth, cfg.confident_prob);
    }
    frames += letter_frames;
    blanks(blank_frames);
  }
  blanks(cfg.frames - frames);
  out.posteriors = PosteriorMatrix(cfg.frames, V, std::move(values));
  return out;
}

const BenchRow *BenchReport::find(const std::string &method, int batch) const {
  for (const auto &r : rows)
    if (r.method == method && r.batch == batch) return &r;
  return nullptr;
}

BenchReport run_bench(const BenchConfig &cfg) {
  BenchReport report;
  report.config = cfg;
  const Vocabulary vocab = synthetic_vocabulary(cfg.line.vocab_size);
  const int max_batch =
      *std::max_element(cfg.batch_sizes.begin(), cfg.batch_sizes.end());

  std::mt19937_64 rng(cfg.seed);
  DecodeConfig partial{cfg.beam, 0.99, DecodeStrategy::kPartialLine};
  std::vector<PreparedLine> lines;
  long total_frames = 0, unconfident = 0;
  double sets = 0.0, alternatives = 0.0;
  for (int i = 0; i < max_batch; ++i) {
    PreparedLine p;
    p.line = generate_line(cfg.line, rng);
    const PosteriorMatrix &y = p.line.posteriors;
    NBestList nbest = prefix_beam_search(y, vocab.blank(), cfg.beam);
    for (const auto &e : nbest) p.variants.push_back(e.labeling);
    p.best = p.variants.front();
    while (static_cast<int>(p.variants.size()) < cfg.beam)
      p.variants.push_back(p.best);
    p.target_cn = prune(decode_to_cn(y, vocab.blank(), partial));
    total_frames += y.num_frames();
    unconfident += p.line.unconfident_frames;
    sets += p.target_cn.sets.size();
    for (const auto &s : p.target_cn.sets) alternatives += s.size();
    lines.push_back(std::move(p));
  }
  report.confident_frame_fraction =
      1.0 - static_cast<double>(unconfident) / static_cast<double>(total_frames);
  report.mean_cn_sets = sets / max_batch;
  report.mean_cn_alternatives = sets > 0 ? alternatives / sets : 0.0;

  // Keeps results observable so the evaluations are not optimized away.
  volatile double sink = 0.0;
  ForwardBackwardWorkspace ws;
  for (int batch : cfg.batch_sizes) {
    report.rows.push_back(time_batches("ctc", batch, cfg.beam, cfg.warmup,
                                       cfg.repeats, [&] {
      for (int i = 0; i < batch; ++i)
        sink = sink + ctc_forward_backward(lines[i].line.posteriors,
                                           lines[i].best, vocab, &ws).loss;
    }));
    report.rows.push_back(time_batches("multictc", batch, cfg.beam,
                                       cfg.warmup, cfg.repeats, [&] {
      for (int i = 0; i < batch; ++i)
        for (const auto &l : lines[i].variants)
          sink = sink + ctc_forward_backward(lines[i].line.posteriors, l,
                                             vocab, &ws).loss;
    }));
    report.rows.push_back(time_batches("softctc", batch, cfg.beam, cfg.warmup,
                                       cfg.repeats, [&] {
      for (int i = 0; i < batch; ++i) {
        CompiledTarget target = compile_cn(lines[i].target_cn, vocab.blank());
        sink = sink + soft_ctc(lines[i].line.posteriors, target, &ws).loss;
      }
    }));
  }
  return report;
}

std::string format_table(const BenchReport &report) {
  const auto &c = report.config;
  std::ostringstream os;
  os << "# softctc bench: seed=" << c.seed << " frames=" << c.line.frames
     << " vocab=" << c.line.vocab_size << " beam=" << c.beam
     << " repeats=" << c.repeats << " warmup=" << c.warmup << "\n";
  os << std::fixed << std::setprecision(3);
  os << "# confident frames " << 100.0 * report.confident_frame_fraction
     << " %, partial-line CN: " << report.mean_cn_sets << " sets/line, "
     << report.mean_cn_alternatives << " alternatives/set\n";
  os << std::left << std::setw(10) << "method" << std::right << std::setw(7)
     << "batch" << std::setw(6) << "beam" << std::setw(13) << "mean [ms]"
     << std::setw(12) << "std [ms]" << std::setw(14) << "vs ctc" << "\n";
  for (const auto &r : report.rows) {
    const BenchRow *ctc = report.find("ctc", r.batch);
    os << std::left << std::setw(10) << r.method << std::right << std::setw(7)
       << r.batch << std::setw(6) << r.beam << std::setw(13) << r.mean_ms
       << std::setw(12) << r.std_ms << std::setw(13)
       << (ctc && ctc->mean_ms > 0 ? r.mean_ms / ctc->mean_ms : 0.0) << "x\n";
  }
  for (int batch : c.batch_sizes) {
    const BenchRow *multi = report.find("multictc", batch);
    const BenchRow *soft = report.find("softctc", batch);
    if (multi && soft && multi->mean_ms > 0)
      os << "# batch " << batch << ": softctc / multictc = "
         << soft->mean_ms / multi->mean_ms << "\n";
  }
  return os.str();
}

std::string format_machine(const BenchReport &report) {
  std::ostringstream os;
  os << std::setprecision(6);
  const auto &c = report.config;
  for (const auto &r : report.rows)
    os << "bench method=" << r.method << " batch=" << r.batch
       << " beam=" << r.beam << " frames=" << c.line.frames
       << " vocab=" << c.line.vocab_size << " repeats=" << c.repeats
       << " mean_ms=" << r.mean_ms << " std_ms=" << r.std_ms << "\n";
  return os.str();
}

}  // namespace softctc::bench
