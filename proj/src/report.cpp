#include "qca/report.hpp"

#include <sstream>

#include "qca/format.hpp"

namespace qca {

namespace {

std::string word_string(const Lqca& a, std::size_t label) {
  std::string out;
  const auto letters = a.word_letters(label);
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (j > 0) out += ' ';
    out += a.alphabet().name(letters[j]);
  }
  return out;
}

nlohmann::json witness_json(const Lqca& a, const Verdict& verdict) {
  if (verdict.norm_failure) {
    const NormFailure& failure = *verdict.norm_failure;
    nlohmann::json cycle = nlohmann::json::array();
    for (std::size_t label : failure.cycle.labels) cycle.push_back(word_string(a, label));
    return {{"kind", "norm"},
            {"config", render_config(failure.config, a.alphabet())},
            {"sq_norm", to_string(failure.column_sq_norm)},
            {"cycle", cycle}};
  }
  if (verdict.orthogonality_failure) {
    const OrthogonalityFailure& failure = *verdict.orthogonality_failure;
    nlohmann::json cycle = nlohmann::json::array();
    for (const PairWalkEdge& e : failure.cycle.labels) {
      cycle.push_back(nlohmann::json::array(
          {word_string(a, e.label1), word_string(a, e.label2)}));
    }
    return {{"kind", "orthogonality"},
            {"config", render_config(failure.config1, a.alphabet())},
            {"config2", render_config(failure.config2, a.alphabet())},
            {"inner_product", to_string(failure.inner_product)},
            {"cycle", cycle}};
  }
  return nullptr;
}

nlohmann::json int_json(const Int& value) {
  // Exact when it fits a 64-bit integer; decimal string beyond that.
  if (value >= std::numeric_limits<std::int64_t>::min() &&
      value <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(value);
  }
  return to_string(value);
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "unknown";
}

nlohmann::json report_json(const Lqca& a, const Verdict& verdict, double elapsed_ms,
                           bool emit_witness) {
  nlohmann::json report;
  report["well_formed"] = verdict.well_formed;
  report["n"] = int_json(a.size_n());
  report["r"] = a.r();
  report["span"] = a.neighborhood().span();
  report["expansion_factor"] = to_string(a.neighborhood().expansion_factor());
  report["norm_check"] = to_string(verdict.norm_check);
  report["orthogonality_check"] = to_string(verdict.orthogonality_check);
  report["witness"] = emit_witness ? witness_json(a, verdict) : nlohmann::json(nullptr);
  report["elapsed_ms"] = elapsed_ms;
  return report;
}

std::string report_text(const Lqca& a, const Verdict& verdict, double elapsed_ms,
                        bool emit_witness) {
  std::ostringstream out;
  out << "states: " << a.sigma() << "  r: " << a.r() << "  span: " << a.neighborhood().span()
      << "  n: " << to_string(a.size_n())
      << "  expansion: " << to_string(a.neighborhood().expansion_factor()) << '\n';
  out << "norm check: " << to_string(verdict.norm_check) << '\n';
  out << "orthogonality check: " << to_string(verdict.orthogonality_check) << '\n';
  if (emit_witness && verdict.norm_failure) {
    const NormFailure& failure = *verdict.norm_failure;
    out << "witness config: " << render_config(failure.config, a.alphabet()) << '\n';
    out << "column squared norm: " << to_string(failure.column_sq_norm) << '\n';
    out << "cycle:";
    for (std::size_t label : failure.cycle.labels) out << " [" << word_string(a, label) << "]";
    out << '\n';
  }
  if (emit_witness && verdict.orthogonality_failure) {
    const OrthogonalityFailure& failure = *verdict.orthogonality_failure;
    out << "witness configs: \"" << render_config(failure.config1, a.alphabet()) << "\" and \""
        << render_config(failure.config2, a.alphabet()) << "\"\n";
    out << "column inner product: " << to_string(failure.inner_product) << '\n';
    out << "pair cycle:";
    for (const PairWalkEdge& e : failure.cycle.labels) {
      out << " [" << word_string(a, e.label1) << " | " << word_string(a, e.label2) << "]";
    }
    out << '\n';
  }
  out << "verdict: " << (verdict.well_formed ? "well-formed" : "NOT well-formed") << '\n';
  out << "elapsed: " << elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace qca
