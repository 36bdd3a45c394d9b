#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/decide.hpp"

namespace qca {

/// The r factor alphabets of a partitioned automaton. Composed states are
/// tuples, one component per factor, named by joining factor state names
/// with ".". Encoding is mixed-radix with the first factor most significant.
class FactorAlphabets {
 public:
  explicit FactorAlphabets(std::vector<std::vector<std::string>> factors);

  std::size_t count() const { return factors_.size(); }  // r
  const std::vector<std::string>& factor(std::size_t j) const { return factors_[j]; }
  std::size_t composed_size() const { return composed_size_; }

  std::vector<StateId> components(StateId composed) const;
  StateId compose_components(const std::vector<StateId>& components) const;
  std::string composed_name(StateId composed) const;

  /// The composed alphabet; quiescent is the tuple of per-factor first
  /// states.
  Alphabet composed_alphabet() const;

  bool operator==(const FactorAlphabets& other) const = default;

 private:
  std::vector<std::vector<std::string>> factors_;
  std::size_t composed_size_ = 1;
};

/// Local transition matrix indexed by composed states: Q(y, x) is the
/// amplitude of y in the image of x.
struct QMatrix {
  std::size_t dim = 0;
  std::vector<ExactComplex> entries;  // row-major, entries[y * dim + x]

  static QMatrix identity(std::size_t dim);
  const ExactComplex& at(std::size_t y, std::size_t x) const { return entries[y * dim + x]; }
  ExactComplex& at(std::size_t y, std::size_t x) { return entries[y * dim + x]; }
  bool operator==(const QMatrix& other) const = default;
};

/// Exact test that the columns of Q are orthonormal (Q*Q = I).
bool is_unitary(const QMatrix& q);

/// A partitioned LQCA: component-shuffling classical part followed by the
/// per-cell matrix Q. Construction checks |N| = factor count, that Q fixes
/// the composed quiescent state with amplitude 1, and that no column of Q
/// is zero.
class Plqca {
 public:
  Plqca(FactorAlphabets factors, Neighborhood nb, QMatrix qmatrix);

  const FactorAlphabets& factors() const { return factors_; }
  const Neighborhood& neighborhood() const { return nb_; }
  const QMatrix& qmatrix() const { return qmatrix_; }
  StateId quiescent() const { return 0; }  // tuple of per-factor first states

  bool operator==(const Plqca& other) const = default;

 private:
  FactorAlphabets factors_;
  Neighborhood nb_;
  QMatrix qmatrix_;
};

/// The permutation part: component j of the output comes from neighbor j.
StateId delta_p(const FactorAlphabets& factors, std::span<const StateId> word);

/// The composed automaton delta(w) = delta_Q(delta_p(w)) as a plain Lqca,
/// ready for decide().
Lqca compose(const Plqca& p);

struct TheoremReport {
  bool q_unitary = false;
  bool well_formed = false;
  bool consistent = false;  // q_unitary == well_formed
};

/// Runs both sides of the equivalence "Q unitary iff the composed automaton
/// is well-formed". A mismatch would falsify the equivalence or reveal a
/// bug, so it throws InternalError with a full dump.
TheoremReport check_theorem_equivalence(const Plqca& p, const DecideOptions& opts = {});

}  // namespace qca
