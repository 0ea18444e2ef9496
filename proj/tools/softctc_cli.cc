// tools/softctc_cli.cc

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

// softctc: command-line front end.
//
//   softctc decode POSTERIORS [--beam 16] [--strategy partial] [-o CN]
//   softctc loss POSTERIORS (--cn F | --transcript S | --nbest F) [--naive]
//   softctc transform CN [--merge F...] [--prune 0.01] [--smooth N|inf]
//   softctc filter CN... --drop-frac 0.1 [--jobs N]
//   softctc bench [--batch 16 ...] [--beam 16] [--repeats 30]
//   softctc oracle POSTERIORS (--cn F | --transcript S)
//
// Exit status: 0 success, 1 invalid input, 2 infeasible target, 3 I/O error.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "softctc/bench.h"
#include "softctc/ctc.h"
#include "softctc/decoder.h"
#include "softctc/io.h"
#include "softctc/oracle.h"
#include "softctc/soft_ctc.h"
#include "softctc/target_compiler.h"

namespace softctc {
namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kInfeasible = 2, kIo = 3 };

std::string format_double(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

void emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

double parse_root(const std::string &s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInfiniteRoot;
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "--smooth expects a number or 'inf', got '" + s + "'");
  return v;
}

int default_jobs() {
  if (const char *env = std::getenv("SOFTCTC_JOBS")) {
    int n = 0;
    auto r = std::from_chars(env, env + std::char_traits<char>::length(env), n);
    if (r.ec == std::errc() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

io::CnFile read_cn_for(const std::string &path, const Vocabulary &v) {
  io::CnFile f = io::parse_cn(io::read_file(path));
  if (!(f.vocabulary == v)) {
    f.cn = io::remap_cn(f.cn, f.vocabulary, v);
    f.vocabulary = v;
  }
  return f;
}

// decode

struct DecodeArgs {
  std::string posteriors, output = "-", nbest_output;
  int beam = 16;
  std::string strategy = "partial";
  double confidence = 0.99;
};

int run_decode(const DecodeArgs &a) {
  auto file = io::parse_posteriors(io::read_file(a.posteriors));
  DecodeConfig cfg;
  cfg.beam_size = a.beam;
  cfg.confidence_threshold = a.confidence;
  cfg.strategy = a.strategy == "full" ? DecodeStrategy::kFullLine
                                      : DecodeStrategy::kPartialLine;
  DecodeResult r = decode(file.posteriors, file.vocabulary.blank(), cfg);

  io::CnFile out{file.vocabulary, r.cn, {}};
  out.metadata.strategy = a.strategy;
  out.metadata.beam = a.beam;
  emit(a.output, io::format_cn(out));

  if (!a.nbest_output.empty()) {
    std::ostringstream os;
    for (const auto &seg : r.segments) {
      os << "# segment " << seg.segment.begin << " " << seg.segment.end << " "
         << (seg.segment.kind == SegmentKind::kConfident ? "confident"
                                                         : "unconfident")
         << " live_prefixes " << seg.stats.max_live_prefixes << "\n";
      os << io::format_nbest(seg.nbest, file.vocabulary);
    }
    emit(a.nbest_output, os.str());
  }
  return kOk;
}

// loss

struct LossArgs {
  std::string posteriors, cn, transcript, nbest, grad_output;
  bool has_transcript = false;
  bool naive = false;
  bool dump = false;
};

int run_loss(const LossArgs &a) {
  auto file = io::parse_posteriors(io::read_file(a.posteriors));
  const Vocabulary &v = file.vocabulary;
  const PosteriorMatrix &y = file.posteriors;
  LossResult r;
  std::string method;
  if (a.has_transcript) {
    Labeling l = v.parse(a.transcript);
    r = ctc_forward_backward(y, l, v);
    method = "ctc";
  } else if (!a.cn.empty()) {
    io::CnFile f = read_cn_for(a.cn, v);
    CompiledTarget target = compile_cn(f.cn, v.blank());
    if (a.dump) std::cerr << dump_target(target, v);
    r = soft_ctc(y, target);
    method = "softctc";
  } else {
    NBestList nbest = io::parse_nbest(io::read_file(a.nbest), v);
    require_valid_nbest(nbest, v);
    double total = 0.0;
    for (const auto &e : nbest) total += e.weight;
    for (auto &e : nbest) e.weight /= total;
    if (a.naive) {
      r = multi_ctc(y, nbest, v);
      method = "multictc";
    } else {
      CompiledTarget target = compile_nbest(nbest, v.blank());
      if (a.dump) std::cerr << dump_target(target, v);
      r = soft_ctc(y, target);
      method = "softctc";
    }
  }
  std::cout << "method " << method << "\n"
            << "frames " << r.num_frames << "\n"
            << "loss " << format_double(r.loss) << "\n";
  if (!a.grad_output.empty()) {
    std::ostringstream os;
    os << "# gradient of the loss w.r.t. the posterior entries\n";
    os << io::format_posteriors(v, PosteriorMatrix(r.num_frames, r.num_symbols, r.grad));
    emit(a.grad_output, os.str());
  }
  return kOk;
}

// transform

struct TransformArgs {
  std::string cn, output = "-", smooth;
  std::vector<std::string> merge;
  double prune = -1.0;
};

int run_transform(const TransformArgs &a) {
  io::CnFile first = io::parse_cn(io::read_file(a.cn));
  ConfusionNetwork cn = first.cn;
  if (!a.merge.empty()) {
    std::vector<ConfusionNetwork> all{cn};
    for (const auto &path : a.merge)
      all.push_back(read_cn_for(path, first.vocabulary).cn);
    cn = merge_cns(all);
  }
  io::CnFile out{first.vocabulary, cn, first.metadata};
  if (a.prune >= 0.0) {
    out.cn = prune(out.cn, a.prune);
    out.metadata.cutoff = a.prune;
  }
  if (!a.smooth.empty()) {
    const double root = parse_root(a.smooth);
    out.cn = smooth(out.cn, root);
    out.metadata.smoothing = root;
  }
  emit(a.output, io::format_cn(out));
  return kOk;
}

// filter

struct FilterArgs {
  std::vector<std::string> files;
  double drop_frac = 0.0;
  int jobs = 0;
};

int run_filter(const FilterArgs &a) {
  if (!(a.drop_frac >= 0.0 && a.drop_frac < 1.0))
    throw ValidationError(ValidationError::Kind::kInvalidConfig,
                          "--drop-frac must lie in [0, 1)");
  const size_t n = a.files.size();
  std::vector<double> metric(n);
  std::vector<std::exception_ptr> errors(n);
  const int jobs = std::clamp<int>(a.jobs > 0 ? a.jobs : default_jobs(), 1,
                                   std::max<size_t>(n, 1));
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (size_t i = w; i < n; i += jobs) {
          try {
            metric[i] = outlier_metric(io::parse_cn(io::read_file(a.files[i])).cn);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (metric[x] != metric[y]) return metric[x] < metric[y];
    return a.files[x] < a.files[y];
  });
  const size_t dropped = static_cast<size_t>(a.drop_frac * static_cast<double>(n));
  for (size_t r = 0; r < n; ++r) {
    const size_t i = order[r];
    std::cout << (r < n - dropped ? "keep" : "drop") << "\t"
              << format_double(metric[i]) << "\t" << a.files[i] << "\n";
  }
  return kOk;
}

// bench

struct BenchArgs {
  bench::BenchConfig cfg;
  bool machine = false;
};

int run_bench_cmd(const BenchArgs &a) {
  bench::BenchReport report = bench::run_bench(a.cfg);
  std::cout << (a.machine ? bench::format_machine(report)
                          : bench::format_table(report));
  return kOk;
}

// oracle

struct OracleArgs {
  std::string posteriors, cn, transcript;
  bool has_transcript = false;
};

int run_oracle(const OracleArgs &a) {
  auto file = io::parse_posteriors(io::read_file(a.posteriors));
  const Vocabulary &v = file.vocabulary;
  double p = 0.0;
  if (a.has_transcript) {
    Labeling l = v.parse(a.transcript);
    require_valid_labeling(l, v);
    p = oracle::enumerate_ctc(file.posteriors, l, v.blank());
  } else {
    p = oracle::oracle_softctc(file.posteriors, read_cn_for(a.cn, v).cn, v.blank());
  }
  std::cout << "probability " << format_double(p) << "\n";
  return kOk;
}

}  // namespace
}  // namespace softctc

int main(int argc, char **argv) {
  using namespace softctc;
  CLI::App app{"SoftCTC loss, confusion networks and decoding"};
  app.require_subcommand(1);

  DecodeArgs dec;
  auto *decode_cmd = app.add_subcommand("decode", "Decode posteriors into a confusion network");
  decode_cmd->add_option("posteriors", dec.posteriors, "Posterior file")->required();
  decode_cmd->add_option("--beam", dec.beam, "Beam size")->check(CLI::PositiveNumber);
  decode_cmd->add_option("--strategy", dec.strategy, "full or partial")
      ->check(CLI::IsMember({"full", "partial"}));
  decode_cmd->add_option("--confidence", dec.confidence, "Confidence threshold");
  decode_cmd->add_option("-o,--output", dec.output, "Confusion network output (- for stdout)");
  decode_cmd->add_option("--nbest-out", dec.nbest_output, "Per-segment n-best listing");

  LossArgs loss;
  auto *loss_cmd = app.add_subcommand("loss", "Evaluate CTC, MultiCTC or SoftCTC loss");
  loss_cmd->add_option("posteriors", loss.posteriors, "Posterior file")->required();
  auto *cn_opt = loss_cmd->add_option("--cn", loss.cn, "Confusion network target");
  auto *tr_opt = loss_cmd->add_option("--transcript", loss.transcript, "Transcript target");
  auto *nb_opt = loss_cmd->add_option("--nbest", loss.nbest, "N-best target");
  cn_opt->excludes(tr_opt)->excludes(nb_opt);
  tr_opt->excludes(nb_opt);
  loss_cmd->add_flag("--naive", loss.naive, "MultiCTC for n-best targets");
  loss_cmd->add_option("--grad", loss.grad_output, "Write the gradient here");
  loss_cmd->add_flag("--dump-target", loss.dump, "Print the compiled target to stderr");

  TransformArgs tr;
  auto *transform_cmd = app.add_subcommand("transform", "Merge, prune and smooth a confusion network");
  transform_cmd->add_option("cn", tr.cn, "Confusion network file")->required();
  transform_cmd->add_option("--merge", tr.merge, "Networks to merge in");
  transform_cmd->add_option("--prune", tr.prune, "Alternative cutoff");
  transform_cmd->add_option("--smooth", tr.smooth, "Root n, or inf");
  transform_cmd->add_option("-o,--output", tr.output, "Output (- for stdout)");

  FilterArgs filt;
  auto *filter_cmd = app.add_subcommand("filter", "Drop the networks with the largest outlier metric");
  filter_cmd->add_option("files", filt.files, "Confusion network files")->required();
  filter_cmd->add_option("--drop-frac", filt.drop_frac, "Fraction to drop");
  filter_cmd->add_option("--jobs", filt.jobs, "Worker threads (default $SOFTCTC_JOBS)");

  BenchArgs ben;
  auto *bench_cmd = app.add_subcommand("bench", "Time CTC, MultiCTC and SoftCTC on synthetic lines");
  bench_cmd->add_option("--batch", ben.cfg.batch_sizes, "Batch sizes");
  bench_cmd->add_option("--beam", ben.cfg.beam, "Beam size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--frames", ben.cfg.line.frames, "Frames per line")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--vocab", ben.cfg.line.vocab_size, "Vocabulary size")->check(CLI::Range(3, 100000));
  bench_cmd->add_option("--repeats", ben.cfg.repeats, "Timed repetitions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", ben.cfg.warmup, "Untimed repetitions");
  bench_cmd->add_option("--seed", ben.cfg.seed, "Generator seed");
  bench_cmd->add_flag("--machine", ben.machine, "Line-oriented output");

  OracleArgs orc;
  auto *oracle_cmd = app.add_subcommand("oracle", "Brute-force probability of a target");
  oracle_cmd->add_option("posteriors", orc.posteriors, "Posterior file")->required();
  auto *ocn = oracle_cmd->add_option("--cn", orc.cn, "Confusion network target");
  auto *otr = oracle_cmd->add_option("--transcript", orc.transcript, "Transcript target");
  ocn->excludes(otr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*decode_cmd) return run_decode(dec);
    if (*loss_cmd) {
      loss.has_transcript = tr_opt->count() > 0;
      if (!loss.has_transcript && loss.cn.empty() && loss.nbest.empty()) {
        std::cerr << "softctc loss: one of --cn, --transcript, --nbest is required\n";
        return kInvalid;
      }
      return run_loss(loss);
    }
    if (*transform_cmd) return run_transform(tr);
    if (*filter_cmd) return run_filter(filt);
    if (*bench_cmd) return run_bench_cmd(ben);
    if (*oracle_cmd) {
      orc.has_transcript = otr->count() > 0;
      if (!orc.has_transcript && orc.cn.empty()) {
        std::cerr << "softctc oracle: one of --cn, --transcript is required\n";
        return kInvalid;
      }
      return run_oracle(orc);
    }
  } catch (const InfeasibleError &e) {
    std::cerr << "softctc: infeasible target: " << e.what() << "\n";
    return kInfeasible;
  } catch (const IoError &e) {
    std::cerr << "softctc: " << e.what() << "\n";
    return kIo;
  } catch (const Error &e) {
    std::cerr << "softctc: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
