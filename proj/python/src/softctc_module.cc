// python/src/softctc_module.cc

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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "softctc/ctc.h"
#include "softctc/decoder.h"
#include "softctc/io.h"
#include "softctc/soft_ctc.h"
#include "softctc/target_compiler.h"

namespace py = pybind11;
using namespace softctc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using PyNBest = std::vector<std::pair<Labeling, double>>;

PosteriorMatrix to_matrix(const Array &a) {
  if (a.ndim() != 2)
    throw ValidationError(ValidationError::Kind::kShapeMismatch,
                          "posteriors must be a 2-d array (frames x symbols)");
  const auto T = static_cast<int>(a.shape(0));
  const auto K = static_cast<int>(a.shape(1));
  std::vector<double> values(a.data(), a.data() + a.size());
  return PosteriorMatrix(T, K, std::move(values));
}

Array to_array(const std::vector<double> &values, int rows, int cols) {
  Array out({rows, cols});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

NBestList to_nbest(const PyNBest &in) {
  NBestList out;
  for (const auto &[l, w] : in) out.push_back({l, w});
  return out;
}

PyNBest from_nbest(const NBestList &in) {
  PyNBest out;
  for (const auto &e : in) out.emplace_back(e.labeling, e.weight);
  return out;
}

py::tuple loss_tuple(const LossResult &r) {
  return py::make_tuple(r.loss, to_array(r.grad, r.num_frames, r.num_symbols));
}

const char *kind_name(SegmentKind k) {
  return k == SegmentKind::kConfident ? "confident" : "unconfident";
}

}  // namespace

PYBIND11_MODULE(_softctc, m) {
  m.doc() = "SoftCTC loss, confusion networks and CTC decoding";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<DegenerateSetError>(m, "DegenerateSetError", base.ptr());
  py::register_exception<TooLargeError>(m, "TooLargeError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Vocabulary>(m, "Vocabulary")
      .def(py::init<std::vector<std::string>, Symbol>(), py::arg("symbols"),
           py::arg("blank"))
      .def_property_readonly("size", &Vocabulary::size)
      .def_property_readonly("blank", &Vocabulary::blank)
      .def_property_readonly("symbols", &Vocabulary::symbols)
      .def("parse", &Vocabulary::parse, py::arg("text"))
      .def("render", &Vocabulary::render, py::arg("labeling"))
      .def("__len__", &Vocabulary::size);

  py::class_<ConfusionSet>(m, "ConfusionSet")
      .def(py::init([](std::map<Symbol, double> alternatives, double null_prob) {
             ConfusionSet s;
             s.alternatives = std::move(alternatives);
             s.null_prob = null_prob;
             return s;
           }),
           py::arg("alternatives"), py::arg("null_prob") = 0.0)
      .def_readwrite("alternatives", &ConfusionSet::alternatives)
      .def_readwrite("null_prob", &ConfusionSet::null_prob)
      .def("__len__", &ConfusionSet::size)
      .def("__repr__", [](const ConfusionSet &s) {
        std::string r = "ConfusionSet({";
        bool first = true;
        for (const auto &[k, p] : s.alternatives) {
          r += (first ? "" : ", ") + std::to_string(k) + ": " + py::repr(py::float_(p)).cast<std::string>();
          first = false;
        }
        return r + "}, null_prob=" + py::repr(py::float_(s.null_prob)).cast<std::string>() + ")";
      });

  py::class_<ConfusionNetwork>(m, "ConfusionNetwork")
      .def(py::init([](std::vector<ConfusionSet> sets, bool normalized, double mass) {
             return ConfusionNetwork{std::move(sets), normalized, mass};
           }),
           py::arg("sets"), py::arg("normalized") = true, py::arg("mass") = 1.0)
      .def_readwrite("sets", &ConfusionNetwork::sets)
      .def_readwrite("normalized", &ConfusionNetwork::normalized)
      .def_readwrite("mass", &ConfusionNetwork::mass)
      .def("__len__", [](const ConfusionNetwork &cn) { return cn.sets.size(); })
      .def("__eq__", [](const ConfusionNetwork &a, const ConfusionNetwork &b) { return a == b; });

  py::class_<CompiledTarget>(m, "CompiledTarget")
      .def_property_readonly("num_states", &CompiledTarget::num_states)
      .def_readonly("state_symbols", &CompiledTarget::state_symbols)
      .def_readonly("alpha_hat", &CompiledTarget::alpha_hat)
      .def_readonly("beta_hat", &CompiledTarget::beta_hat)
      .def_property_readonly("transitions", [](const CompiledTarget &t) {
        std::vector<std::tuple<int, int, double>> out;
        for (const auto &e : t.transitions.entries()) out.emplace_back(e.from, e.to, e.weight);
        return out;
      })
      .def("dump", &dump_target, py::arg("vocabulary"));

  // Losses. Each returns (loss, gradient w.r.t. the posteriors).
  m.def("ctc_loss",
        [](const Array &y, const Labeling &l, const Vocabulary &v) {
          return loss_tuple(ctc_forward_backward(to_matrix(y), l, v));
        },
        py::arg("posteriors"), py::arg("labeling"), py::arg("vocabulary"));
  m.def("ctc_loss",
        [](const Array &y, const std::string &text, const Vocabulary &v) {
          return loss_tuple(ctc_forward_backward(to_matrix(y), v.parse(text), v));
        },
        py::arg("posteriors"), py::arg("transcript"), py::arg("vocabulary"));
  m.def("multi_ctc_loss",
        [](const Array &y, const PyNBest &nbest, const Vocabulary &v) {
          return loss_tuple(multi_ctc(to_matrix(y), to_nbest(nbest), v));
        },
        py::arg("posteriors"), py::arg("nbest"), py::arg("vocabulary"));
  m.def("soft_ctc_loss",
        [](const Array &y, const CompiledTarget &target) {
          PosteriorMatrix p = to_matrix(y);
          LossResult r;
          {
            py::gil_scoped_release release;
            r = soft_ctc(p, target);
          }
          return loss_tuple(r);
        },
        py::arg("posteriors"), py::arg("target"));
  m.def("soft_ctc_value_at",
        [](const Array &y, const CompiledTarget &target, int t) {
          return soft_ctc_value_at(to_matrix(y), target, t);
        },
        py::arg("posteriors"), py::arg("target"), py::arg("frame"));

  // Targets.
  m.def("compile_cn", &compile_cn, py::arg("cn"), py::arg("blank"));
  m.def("compile_nbest",
        [](const PyNBest &nbest, Symbol blank) { return compile_nbest(to_nbest(nbest), blank); },
        py::arg("nbest"), py::arg("blank"));

  // Confusion networks.
  m.def("build_cn", [](const PyNBest &nbest) { return build_cn(to_nbest(nbest)); },
        py::arg("nbest"));
  m.def("merge_cns", &merge_cns, py::arg("cns"));
  m.def("smooth", &smooth, py::arg("cn"), py::arg("root"));
  m.def("prune", &prune, py::arg("cn"), py::arg("cutoff") = kDefaultPruneCutoff);
  m.def("prepare_target", &prepare_target, py::arg("cn"),
        py::arg("cutoff") = kDefaultPruneCutoff, py::arg("root") = 1.0);
  m.def("best_path", &best_path, py::arg("cn"));
  m.def("outlier_metric", &outlier_metric, py::arg("cn"));
  m.def("count_variant_paths",
        [](const ConfusionNetwork &cn) {
          return py::int_(py::str(count_variant_paths(cn).str()));
        },
        py::arg("cn"));

  // Decoding.
  m.def("greedy_decode",
        [](const Array &y, Symbol blank) { return greedy_decode(to_matrix(y), blank); },
        py::arg("posteriors"), py::arg("blank"));
  m.def("prefix_beam_search",
        [](const Array &y, Symbol blank, int beam) {
          return from_nbest(prefix_beam_search(to_matrix(y), blank, beam));
        },
        py::arg("posteriors"), py::arg("blank"), py::arg("beam"));
  m.def("segment_line",
        [](const Array &y, Symbol blank, double threshold) {
          std::vector<std::tuple<int, int, std::string>> out;
          for (const auto &s : segment_line(to_matrix(y), blank, threshold))
            out.emplace_back(s.begin, s.end, kind_name(s.kind));
          return out;
        },
        py::arg("posteriors"), py::arg("blank"), py::arg("threshold") = 0.99);
  m.def("decode_to_cn",
        [](const Array &y, Symbol blank, int beam, double threshold,
           const std::string &strategy) {
          if (strategy != "full" && strategy != "partial")
            throw ValidationError(ValidationError::Kind::kInvalidConfig,
                                  "strategy must be 'full' or 'partial'");
          DecodeConfig cfg{beam, threshold,
                           strategy == "full" ? DecodeStrategy::kFullLine
                                              : DecodeStrategy::kPartialLine};
          return decode_to_cn(to_matrix(y), blank, cfg);
        },
        py::arg("posteriors"), py::arg("blank"), py::arg("beam") = 16,
        py::arg("threshold") = 0.99, py::arg("strategy") = "partial");

  // Serialization.
  m.def("parse_cn",
        [](const std::string &text) {
          io::CnFile f = io::parse_cn(text);
          return py::make_tuple(f.vocabulary, f.cn);
        },
        py::arg("text"));
  m.def("format_cn",
        [](const Vocabulary &v, const ConfusionNetwork &cn) {
          return io::format_cn({v, cn, {}});
        },
        py::arg("vocabulary"), py::arg("cn"));
}
