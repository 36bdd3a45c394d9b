#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "qca/automaton.hpp"

namespace qca::oracle {

// Ground truth at desk scale. Everything here is deliberately exponential
// where the definition is: it exists to check the polynomial engine.
inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

/// Finitely supported superposition of configurations inside a window.
/// Only nonzero amplitudes are stored.
class WindowSuperposition {
 public:
  WindowSuperposition(Interval window, std::map<Configuration, ExactComplex> amps);

  /// Amplitude-1 superposition of a single configuration.
  static WindowSuperposition single(Interval window, Configuration c);

  const Interval& window() const { return window_; }
  const std::map<Configuration, ExactComplex>& amps() const { return amps_; }
  ExactComplex amp(const Configuration& c) const;

  /// Sum of |amp|^2 (configurations form an orthonormal basis).
  Rational sq_norm() const;

 private:
  Interval window_;
  std::map<Configuration, ExactComplex> amps_;
};

/// U_A(d, c): the product over ext(idom(c)) of [delta(c_{i+N})](d_i);
/// exactly 0 when supp(d) is not inside ext(idom(c)).
ExactComplex transition_amplitude(const Lqca& a, const Configuration& d,
                                  const Configuration& c);

/// <U_A(., c), U_A(., c2)> via the product formula: the product over the hull
/// of both extensions of <delta(c_{i+N}), delta(c2_{i+N})>.
ExactComplex column_inner_product(const Lqca& a, const Configuration& c,
                                  const Configuration& c2);

/// The same inner product by direct exponential summation over Sigma^I.
/// Pre: I contains ext(idom(c)) and ext(idom(c2)) (ContractError) and
/// |Sigma|^|I| <= bound (ResourceError).
ExactComplex column_inner_product_direct(const Lqca& a, const Configuration& c,
                                         const Configuration& c2,
                                         const Interval& enumeration_interval,
                                         std::uint64_t bound = kDefaultEnumerationBound);

/// ||U_A(., c)||^2: the product over ext(idom(c)) of ||delta(c_{i+N})||^2.
Rational column_sq_norm(const Lqca& a, const Configuration& c);

/// One evolution step. The output window is ext(input window); the amplitude
/// of d is the sum over c of s(c) * U_A(d, c).
WindowSuperposition step(const Lqca& a, const WindowSuperposition& s,
                         std::uint64_t bound = kDefaultEnumerationBound);

struct NormViolation {
  Configuration config;
  Rational sq_norm;  // != 1
};
struct OrthogonalityViolation {
  Configuration config1;
  Configuration config2;
  ExactComplex inner_product;  // != 0
};
using WindowViolation = std::variant<NormViolation, OrthogonalityViolation>;

/// Exhaustive check over every configuration with support in
/// [-radius, radius]: all column squared norms must be 1 and all distinct
/// column pairs orthogonal. Returns the first violation in deterministic
/// lexicographic order (all norms first, then pairs).
std::optional<WindowViolation> window_check(const Lqca& a, long long radius,
                                            std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace qca::oracle
