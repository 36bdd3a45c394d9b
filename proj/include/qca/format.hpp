#pragma once

#include <string>
#include <string_view>

#include "qca/automaton.hpp"
#include "qca/plqca.hpp"

namespace qca {

// Text document formats. Line oriented, "#" starts a comment, field order is
// fixed for golden-file stability.
//
// .lqca:
//   states q p
//   quiescent q
//   neighborhood 0 1
//   rule q p -> q:1/2
//
// .plqca:
//   plqca v1
//   factor u d
//   neighborhood 0 1
//   Q u <- d : 3/5
//
// Amplitudes: RAT | RAT ("+"|"-") RAT "i" | RAT "i" with
// RAT := INT | INT "/" POSINT | DECIMAL; decimals convert exactly.

/// Throws ParseError with a line number on any defect: duplicate or missing
/// rule word, unknown state, non-increasing neighborhood, zero-norm rule,
/// quiescent rule not mapping to the quiescent state, syntax errors.
Lqca parse_lqca(std::string_view text);

std::string render_lqca(const Lqca& a);

/// Configuration syntax: comma-separated state names with "@offset" giving
/// the cell index of the first listed name, e.g. "p@0" or "q,p,p@-1".
/// The empty string is the quiescent configuration.
Configuration parse_config(std::string_view spec, const Alphabet& alphabet);

std::string render_config(const Configuration& c, const Alphabet& alphabet);

Plqca parse_plqca(std::string_view text);

std::string render_plqca(const Plqca& p);

}  // namespace qca
