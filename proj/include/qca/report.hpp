#pragma once

#include <string>

#include <json.hpp>

#include "qca/automaton.hpp"
#include "qca/decide.hpp"

namespace qca {

/// Machine-readable verdict report. Top-level keys are stable:
/// {well_formed, n, r, span, expansion_factor, norm_check,
///  orthogonality_check, witness, elapsed_ms}.
nlohmann::json report_json(const Lqca& a, const Verdict& verdict, double elapsed_ms,
                           bool emit_witness);

/// Human-readable rendering of the same report.
std::string report_text(const Lqca& a, const Verdict& verdict, double elapsed_ms,
                        bool emit_witness);

const char* to_string(CheckStatus status);

}  // namespace qca
