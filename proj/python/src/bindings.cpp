#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

#include <json.hpp>

#include "qca/decide.hpp"
#include "qca/format.hpp"
#include "qca/oracle.hpp"
#include "qca/plqca.hpp"
#include "qca/report.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

py::object json_to_py(const nlohmann::json& value) {
  return py::module_::import("json").attr("loads")(value.dump());
}

qca::Configuration config_arg(const qca::Lqca& a, const std::string& spec) {
  return qca::parse_config(spec, a.alphabet());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact well-formedness checking for linear quantum cellular automata";

  py::register_exception<qca::Error>(m, "QcaError", PyExc_ValueError);

  py::class_<qca::Lqca>(m, "Lqca")
      .def_property_readonly("states",
                             [](const qca::Lqca& a) { return a.alphabet().names(); })
      .def_property_readonly(
          "quiescent",
          [](const qca::Lqca& a) { return a.alphabet().name(a.alphabet().quiescent()); })
      .def_property_readonly("neighborhood",
                             [](const qca::Lqca& a) { return a.neighborhood().offsets(); })
      .def_property_readonly("r", [](const qca::Lqca& a) { return a.r(); })
      .def_property_readonly("span", [](const qca::Lqca& a) { return a.neighborhood().span(); })
      .def_property_readonly("n",
                             [](const qca::Lqca& a) { return qca::to_string(a.size_n()); })
      .def("__eq__", [](const qca::Lqca& a, const qca::Lqca& b) { return a == b; })
      .def("__repr__", [](const qca::Lqca& a) {
        return "<Lqca states=" + std::to_string(a.sigma()) + " r=" + std::to_string(a.r()) + ">";
      });

  py::class_<qca::Plqca>(m, "Plqca").def("__repr__", [](const qca::Plqca& p) {
    return "<Plqca factors=" + std::to_string(p.factors().count()) + ">";
  });

  m.def("parse_lqca", [](const std::string& text) { return qca::parse_lqca(text); }, "text"_a);
  m.def("render_lqca", &qca::render_lqca, "automaton"_a);

  m.def(
      "decide",
      [](const qca::Lqca& a, bool full_report, long long span_limit) {
        const auto start = std::chrono::steady_clock::now();
        const qca::Verdict verdict = qca::decide(a, {full_report, span_limit});
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return json_to_py(qca::report_json(a, verdict, elapsed, /*emit_witness=*/true));
      },
      "automaton"_a, "full_report"_a = false, "span_limit"_a = 12);

  m.def(
      "normalize_document",
      [](const qca::Lqca& a) {
        const qca::NormalizedLqca normalized = qca::normalize(a);
        py::dict scales;
        for (std::size_t w = 0; w < a.table_size(); ++w) {
          std::string word;
          for (qca::StateId s : a.word_letters(w)) {
            if (!word.empty()) word += ' ';
            word += a.alphabet().name(s);
          }
          scales[py::str(word)] = qca::to_string(normalized.sq_scale(w));
        }
        return py::make_tuple(qca::render_lqca(normalized.base()), scales);
      },
      "automaton"_a, "renormalized document and residual squared scales per word");

  m.def(
      "simplify_document",
      [](const qca::Lqca& a, long long span_limit) {
        auto [simple, report] = qca::simplify(a, span_limit);
        py::dict info;
        info["span"] = report.span;
        info["expansion_factor"] = qca::to_string(report.expansion_factor);
        info["n"] = qca::to_string(report.original_size);
        info["n_simple"] = qca::to_string(report.new_size);
        return py::make_tuple(qca::render_lqca(simple), info);
      },
      "automaton"_a, "span_limit"_a = 12);

  m.def(
      "transition_amplitude",
      [](const qca::Lqca& a, const std::string& d, const std::string& c) {
        return qca::to_string(qca::oracle::transition_amplitude(a, config_arg(a, d),
                                                                config_arg(a, c)));
      },
      "automaton"_a, "d"_a, "c"_a);

  m.def(
      "column_inner_product",
      [](const qca::Lqca& a, const std::string& c, const std::string& c2) {
        return qca::to_string(
            qca::oracle::column_inner_product(a, config_arg(a, c), config_arg(a, c2)));
      },
      "automaton"_a, "config"_a, "config2"_a);

  m.def(
      "column_inner_product_direct",
      [](const qca::Lqca& a, const std::string& c, const std::string& c2, long long lo,
         long long hi, std::uint64_t bound) {
        return qca::to_string(qca::oracle::column_inner_product_direct(
            a, config_arg(a, c), config_arg(a, c2), qca::Interval::of(lo, hi), bound));
      },
      "automaton"_a, "config"_a, "config2"_a, "lo"_a, "hi"_a,
      "bound"_a = qca::oracle::kDefaultEnumerationBound);

  m.def(
      "column_sq_norm",
      [](const qca::Lqca& a, const std::string& c) {
        return qca::to_string(qca::oracle::column_sq_norm(a, config_arg(a, c)));
      },
      "automaton"_a, "config"_a);

  m.def(
      "step",
      [](const qca::Lqca& a, const std::map<std::string, std::string>& terms,
         std::uint64_t bound) {
        std::map<qca::Configuration, qca::ExactComplex> amps;
        qca::Interval window = qca::Interval::empty();
        for (const auto& [spec, amp] : terms) {
          qca::Configuration c = config_arg(a, spec);
          window = qca::hull(window, c.idom());
          amps[c] = qca::parse_complex(amp);
        }
        const qca::oracle::WindowSuperposition result =
            qca::oracle::step(a, qca::oracle::WindowSuperposition(window, std::move(amps)), bound);
        py::dict out;
        for (const auto& [config, amp] : result.amps()) {
          out[py::str(qca::render_config(config, a.alphabet()))] = qca::to_string(amp);
        }
        return out;
      },
      "automaton"_a, "terms"_a, "bound"_a = qca::oracle::kDefaultEnumerationBound,
      "one evolution step; terms map config specs to amplitudes");

  m.def(
      "window_check",
      [](const qca::Lqca& a, long long radius, std::uint64_t bound) -> py::object {
        const auto violation = qca::oracle::window_check(a, radius, bound);
        if (!violation) return py::none();
        py::dict out;
        if (const auto* norm = std::get_if<qca::oracle::NormViolation>(&*violation)) {
          out["kind"] = "norm";
          out["config"] = qca::render_config(norm->config, a.alphabet());
          out["sq_norm"] = qca::to_string(norm->sq_norm);
        } else {
          const auto& ortho = std::get<qca::oracle::OrthogonalityViolation>(*violation);
          out["kind"] = "orthogonality";
          out["config"] = qca::render_config(ortho.config1, a.alphabet());
          out["config2"] = qca::render_config(ortho.config2, a.alphabet());
          out["inner_product"] = qca::to_string(ortho.inner_product);
        }
        return out;
      },
      "automaton"_a, "radius"_a, "bound"_a = qca::oracle::kDefaultEnumerationBound);

  m.def("parse_plqca", [](const std::string& text) { return qca::parse_plqca(text); }, "text"_a);
  m.def("render_plqca", &qca::render_plqca, "plqca"_a);
  m.def("compose", &qca::compose, "plqca"_a);
  m.def("is_unitary", [](const qca::Plqca& p) { return qca::is_unitary(p.qmatrix()); },
        "plqca"_a);
  m.def(
      "check_plqca",
      [](const qca::Plqca& p) {
        const qca::TheoremReport report = qca::check_theorem_equivalence(p);
        return py::dict("q_unitary"_a = report.q_unitary, "well_formed"_a = report.well_formed,
                        "consistent"_a = report.consistent);
      },
      "plqca"_a);
}
