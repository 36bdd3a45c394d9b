#pragma once

#include <optional>
#include <utility>

#include "qca/automaton.hpp"
#include "qca/debruijn.hpp"

namespace qca {

enum class CheckStatus { Pass, Fail, Skipped };

/// A q-cycle of the pair graph together with the exact product of its edge
/// inner products.
struct PairCycleWitness {
  PairWalk labels;
  ExactComplex inner_product;
};

struct NormFailure {
  CycleWitness cycle;
  Configuration config;
  Rational column_sq_norm;  // oracle-verified, != 1
};

struct OrthogonalityFailure {
  PairCycleWitness cycle;
  Configuration config1;
  Configuration config2;       // distinct from config1
  ExactComplex inner_product;  // oracle-verified, != 0
};

struct SimplificationReport {
  long long span = 0;
  Rational expansion_factor;  // (span+1)/(r+1)
  Int original_size;          // n  = |Sigma|^{r+1}
  Int new_size;               // n' = |Sigma|^{span+1}
};

struct Verdict {
  bool well_formed = false;
  CheckStatus norm_check = CheckStatus::Skipped;
  CheckStatus orthogonality_check = CheckStatus::Skipped;
  std::optional<NormFailure> norm_failure;
  std::optional<OrthogonalityFailure> orthogonality_failure;
  std::optional<SimplificationReport> simplification;
};

struct DecideOptions {
  bool full_report = false;   // run both checks even after the first failure
  long long span_limit = 12;  // simplify() resource guard
};

/// None iff every q-cycle of G_A has squared weight 1 (all columns of U_A
/// have unit norm). Otherwise a q-cycle witness plus the configuration it
/// maps back to, with its oracle-verified column squared norm.
/// Pre: a simple.
std::optional<NormFailure> check_unit_norms(const Lqca& a);

/// None iff the SCC of the pair-graph source contains only diagonal
/// vertices. Otherwise an off-diagonal q-cycle mapped to two distinct
/// configurations with oracle-verified nonzero column inner product.
/// Pre: a simple, r >= 2.
std::optional<OrthogonalityFailure> check_orthogonality(const Lqca& a);

/// Direct criteria for r = 1: all rules pairwise orthogonal and all of unit
/// norm, with single-cell configuration witnesses on failure.
Verdict check_trivial(const Lqca& a, const DecideOptions& opts = {});

/// The decision procedure: r = 1 -> check_trivial; non-simple -> simplify
/// and recurse; simple r >= 2 -> unit norms then orthogonality.
Verdict decide(const Lqca& a, const DecideOptions& opts = {});

/// Fills a sparse neighborhood and makes the table independent of the new
/// offsets; the evolution operator is unchanged. Simple inputs come back
/// untouched with expansion factor 1. Throws ResourceError when the span
/// exceeds span_limit.
std::pair<Lqca, SimplificationReport> simplify(const Lqca& a, long long span_limit = 12);

/// The conjugate-transpose local function of a well-formed trivial
/// automaton, on the mirrored offset. One step of the result undoes one step
/// of the input. Pre: r = 1 and check_trivial(a).well_formed.
Lqca trivial_inverse(const Lqca& a);

/// Inverts the cycle mapping: reads off the padded letter string of a
/// q-cycle, trims leading/trailing quiescent letters, and places the first
/// non-quiescent cell at index 0.
Configuration cycle_to_config(const WeightedDeBruijnGraph& g, const CycleWitness& w);

/// Same inversion for pair q-cycles; both configurations share the
/// placement so their alignment is preserved.
std::pair<Configuration, Configuration> pair_cycle_to_configs(const PairGraph& h,
                                                              const PairWalk& walk);

/// Renormalized automaton delta'(w) = delta(w) / ||delta(w)||. Scales whose
/// square roots are rational are folded into the amplitudes immediately; the
/// rest stay symbolic as squared scale factors, so every inner product and
/// squared norm the deciders consume remains exact.
class NormalizedLqca {
 public:
  const Lqca& base() const { return base_; }
  const Rational& sq_scale(std::size_t word_index) const { return sq_scales_[word_index]; }
  /// True when every residual scale is 1; base() is then the renormalized
  /// automaton itself, exactly.
  bool fully_rational() const;

  /// [delta'(w)](target).
  ScaledComplex rule_amplitude(std::size_t word_index, StateId target) const;
  /// <delta'(w1), delta'(w2)>.
  ScaledComplex rule_inner_product(std::size_t w1, std::size_t w2) const;
  /// ||delta'(w)||^2; always exactly 1.
  Rational rule_sq_norm(std::size_t word_index) const;
  /// U_{A'}(d, c) as an exact scaled complex.
  ScaledComplex transition_amplitude(const Configuration& d, const Configuration& c) const;

 private:
  friend NormalizedLqca normalize(const Lqca& a);
  NormalizedLqca(Lqca base, std::vector<Rational> sq_scales);

  Lqca base_;
  std::vector<Rational> sq_scales_;
};

NormalizedLqca normalize(const Lqca& a);

/// decide() for a renormalized automaton. Unit norms hold by construction;
/// orthogonality has the same zero pattern as the base table, so witnesses
/// are reported in terms of the base amplitudes.
Verdict decide(const NormalizedLqca& a, const DecideOptions& opts = {});

}  // namespace qca
