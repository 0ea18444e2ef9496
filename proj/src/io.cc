// src/io.cc

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

#include "softctc/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace softctc::io {

namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string &where) {
  double x = 0.0;
  const char *end = token.data() + token.size();
  auto res = std::from_chars(token.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end)
    throw ParseError(where + ": '" + std::string(token) + "' is not a number");
  return x;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::string decode_symbol(std::string_view token) {
  if (token == kSpaceToken) return " ";
  return std::string(token);
}

std::string encode_symbol(const std::string &symbol) {
  if (symbol == " ") return std::string(kSpaceToken);
  return symbol;
}

Vocabulary vocabulary_from(const std::vector<std::string> &tokens) {
  std::vector<std::string> symbols;
  std::optional<Symbol> blank;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == kBlankToken) {
      if (blank) throw ParseError("vocabulary lists <blank> twice");
      blank = static_cast<Symbol>(i);
    }
    symbols.push_back(decode_symbol(tokens[i]));
  }
  if (!blank) throw ParseError("vocabulary has no <blank> column");
  return Vocabulary(std::move(symbols), *blank);
}

std::vector<std::string> vocabulary_tokens(const Vocabulary &v) {
  std::vector<std::string> out;
  for (Symbol s = 0; s < v.size(); ++s)
    out.push_back(s == v.blank() ? std::string(kBlankToken)
                                 : encode_symbol(v.symbol(s)));
  return out;
}

}  // namespace

PosteriorFile parse_posteriors(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Vocabulary> vocab;
  std::vector<double> values;
  int frames = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].starts_with('#')) continue;
    if (!vocab) {
      vocab = vocabulary_from({tokens.begin(), tokens.end()});
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (static_cast<int>(tokens.size()) != vocab->size())
      throw ParseError(where + ": expected " + std::to_string(vocab->size()) +
                       " columns, found " + std::to_string(tokens.size()));
    for (auto tok : tokens) values.push_back(parse_double(tok, where));
    ++frames;
  }
  if (!vocab) throw ParseError("posterior file has no vocabulary header");
  PosteriorMatrix m(frames, vocab->size(), std::move(values));
  require_valid_posteriors(m, *vocab);
  return {std::move(*vocab), std::move(m)};
}

std::string format_posteriors(const Vocabulary &v, const PosteriorMatrix &m) {
  std::string out;
  auto tokens = vocabulary_tokens(v);
  for (size_t i = 0; i < tokens.size(); ++i)
    out += (i ? " " : "") + tokens[i];
  out += "\n";
  for (int t = 0; t < m.num_frames(); ++t) {
    for (Symbol k = 0; k < m.num_symbols(); ++k)
      out += (k ? " " : "") + format_double(m(t, k));
    out += "\n";
  }
  return out;
}

CnFile parse_cn(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("confusion network JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != kCnFormat)
      throw ParseError("confusion network file lacks format '" +
                       std::string(kCnFormat) + "'");
    Vocabulary vocab =
        vocabulary_from(doc.at("vocabulary").get<std::vector<std::string>>());
    CnFile file{vocab, {}, {}};
    const Json &meta = doc.value("metadata", Json::object());
    file.cn.normalized = meta.value("normalized", true);
    file.cn.mass = meta.value("mass", 1.0);
    if (meta.contains("strategy") && !meta["strategy"].is_null())
      file.metadata.strategy = meta["strategy"].get<std::string>();
    if (meta.contains("beam") && !meta["beam"].is_null())
      file.metadata.beam = meta["beam"].get<int>();
    if (meta.contains("smoothing") && !meta["smoothing"].is_null()) {
      const Json &n = meta["smoothing"];
      if (n.is_string()) {
        if (n.get<std::string>() != "inf")
          throw ParseError("smoothing must be a number or \"inf\"");
        file.metadata.smoothing = kInfiniteRoot;
      } else {
        file.metadata.smoothing = n.get<double>();
      }
    }
    if (meta.contains("cutoff") && !meta["cutoff"].is_null())
      file.metadata.cutoff = meta["cutoff"].get<double>();

    for (const Json &jset : doc.at("sets")) {
      ConfusionSet set;
      for (const auto &[key, value] : jset.items()) {
        const double p = value.get<double>();
        if (key == kNullToken) {
          set.null_prob = p;
          continue;
        }
        auto sym = vocab.find(decode_symbol(key));
        if (!sym) throw ParseError("unknown symbol '" + key + "' in set");
        set.alternatives[*sym] = p;
      }
      file.cn.sets.push_back(std::move(set));
    }
    require_valid_cn(file.cn, vocab);
    return file;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("confusion network JSON: ") + e.what());
  }
}

std::string format_cn(const CnFile &file) {
  Json doc;
  doc["format"] = kCnFormat;
  doc["vocabulary"] = vocabulary_tokens(file.vocabulary);
  Json meta = Json::object();
  meta["normalized"] = file.cn.normalized;
  meta["mass"] = file.cn.mass;
  meta["strategy"] = file.metadata.strategy ? Json(*file.metadata.strategy)
                                            : Json(nullptr);
  meta["beam"] = file.metadata.beam ? Json(*file.metadata.beam) : Json(nullptr);
  if (!file.metadata.smoothing)
    meta["smoothing"] = nullptr;
  else if (std::isinf(*file.metadata.smoothing))
    meta["smoothing"] = "inf";
  else
    meta["smoothing"] = *file.metadata.smoothing;
  meta["cutoff"] =
      file.metadata.cutoff ? Json(*file.metadata.cutoff) : Json(nullptr);
  doc["metadata"] = meta;
  Json sets = Json::array();
  for (const auto &set : file.cn.sets) {
    Json jset = Json::object();
    for (const auto &[sym, p] : set.alternatives)
      jset[encode_symbol(file.vocabulary.symbol(sym))] = p;
    if (set.has_null()) jset[std::string(kNullToken)] = set.null_prob;
    sets.push_back(std::move(jset));
  }
  doc["sets"] = std::move(sets);
  return doc.dump(1) + "\n";
}

ConfusionNetwork remap_cn(const ConfusionNetwork &cn, const Vocabulary &from,
                          const Vocabulary &to) {
  if (from == to) return cn;
  ConfusionNetwork out = cn;
  for (auto &set : out.sets) {
    std::map<Symbol, double> mapped;
    for (const auto &[sym, p] : set.alternatives) {
      auto target = to.find(from.symbol(sym));
      if (!target || *target == to.blank())
        throw ValidationError(ValidationError::Kind::kInvalidConfusionNetwork,
                              "symbol '" + from.symbol(sym) +
                                  "' is not a letter of the posterior "
                                  "vocabulary");
      mapped[*target] = p;
    }
    set.alternatives = std::move(mapped);
  }
  return out;
}

NBestList parse_nbest(std::string_view text, const Vocabulary &v) {
  std::istringstream in{std::string(text)};
  std::string line;
  NBestList out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    const std::string where = "n-best line " + std::to_string(line_no);
    auto tab = line.find('\t');
    std::string_view weight_text =
        std::string_view(line).substr(0, tab == std::string::npos ? line.size() : tab);
    std::string transcript = tab == std::string::npos ? "" : line.substr(tab + 1);
    out.push_back({v.parse(transcript), parse_double(weight_text, where)});
  }
  require_valid_nbest(out, v);
  return out;
}

std::string format_nbest(const NBestList &nbest, const Vocabulary &v) {
  std::string out;
  for (const auto &e : nbest)
    out += format_double(e.weight) + "\t" + v.render(e.labeling) + "\n";
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

void write_file(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("cannot write '" + path + "'");
}

}  // namespace softctc::io
