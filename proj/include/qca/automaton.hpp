#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qca/complex.hpp"
#include "qca/errors.hpp"

namespace qca {

/// Index into the owning alphabet.
using StateId = std::uint32_t;

/// Ordered set of distinct state names with a distinguished quiescent state.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> names, StateId quiescent);

  std::size_t size() const { return names_.size(); }
  const std::string& name(StateId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  StateId quiescent() const { return quiescent_; }
  std::optional<StateId> find(std::string_view name) const;

  bool operator==(const Alphabet& other) const = default;

 private:
  std::vector<std::string> names_;
  StateId quiescent_;
};

/// Strictly increasing relative neighbor offsets a_1 < ... < a_r, r >= 1.
class Neighborhood {
 public:
  explicit Neighborhood(std::vector<long long> offsets);

  std::size_t size() const { return offsets_.size(); }  // r
  long long offset(std::size_t j) const { return offsets_.at(j); }
  const std::vector<long long>& offsets() const { return offsets_; }

  long long span() const { return offsets_.back() - offsets_.front() + 1; }
  bool is_simple() const { return span() == static_cast<long long>(size()); }
  bool is_trivial() const { return size() == 1; }
  /// (span + 1) / (r + 1), exact.
  Rational expansion_factor() const;

  bool operator==(const Neighborhood& other) const = default;

 private:
  std::vector<long long> offsets_;
};

/// Interval of cells [lo, hi]; lo > hi encodes the empty interval.
struct Interval {
  long long lo = 0;
  long long hi = -1;

  static Interval empty() { return Interval{0, -1}; }
  static Interval of(long long lo, long long hi) { return Interval{lo, hi}; }

  bool is_empty() const { return lo > hi; }
  long long length() const { return is_empty() ? 0 : hi - lo + 1; }
  bool contains(long long cell) const { return !is_empty() && lo <= cell && cell <= hi; }
  bool contains(const Interval& other) const {
    return other.is_empty() || (!is_empty() && lo <= other.lo && other.hi <= hi);
  }
  bool operator==(const Interval& other) const {
    if (is_empty() && other.is_empty()) return true;
    return lo == other.lo && hi == other.hi;
  }
};

/// Smallest interval containing both (their hull, including any gap).
Interval hull(const Interval& a, const Interval& b);

/// [lo - a_r, hi - a_1]; the cells an interval can affect in one step.
/// The extension of the empty interval is empty.
Interval ext(const Interval& interval, const Neighborhood& nb);

/// Superposition over the alphabet: one exact amplitude per state.
struct LocalSuperposition {
  std::vector<ExactComplex> amps;

  static LocalSuperposition zero(std::size_t n) { return {std::vector<ExactComplex>(n)}; }
  static LocalSuperposition basis(std::size_t n, StateId e);

  bool operator==(const LocalSuperposition& other) const = default;
};

/// Sum over e of u(e) * conj(v(e)). Throws DimensionError on length mismatch.
ExactComplex inner_product(const LocalSuperposition& u, const LocalSuperposition& v);

/// Sum over e of |u(e)|^2; equals inner_product(u, u).re.
Rational squared_norm(const LocalSuperposition& u);

/// Finite configuration: only non-quiescent cells are stored.
class Configuration {
 public:
  Configuration() = default;

  /// Drops quiescent states; rejects duplicate cells.
  static Configuration from_cells(const std::vector<std::pair<long long, StateId>>& cells,
                                  StateId quiescent);

  bool empty() const { return cells_.empty(); }
  std::optional<StateId> at(long long cell) const;
  StateId at_or(long long cell, StateId quiescent) const;
  const std::map<long long, StateId>& cells() const { return cells_; }

  /// Smallest interval containing the support; empty for the quiescent
  /// configuration.
  Interval idom() const;

  bool operator==(const Configuration& other) const = default;
  bool operator<(const Configuration& other) const { return cells_ < other.cells_; }

 private:
  std::map<long long, StateId> cells_;
};

inline Interval idom(const Configuration& c) { return c.idom(); }

/// The configuration shifted by delta cells.
Configuration translate(const Configuration& c, long long delta);

/// The word (c_{i+a_1}, ..., c_{i+a_r}) with implicit quiescent fill.
std::vector<StateId> neighborhood_word(const Configuration& c, long long cell,
                                       const Neighborhood& nb, StateId quiescent);

/// A linear quantum cellular automaton: alphabet, neighborhood and the total
/// local transition table delta : Sigma^r -> C^Sigma.
///
/// Construction enforces: the table covers all |Sigma|^r words, every entry
/// has positive squared norm, and the all-quiescent word maps exactly to the
/// quiescent basis state. Instances are immutable.
class Lqca {
 public:
  Lqca(Alphabet alphabet, Neighborhood nb, std::vector<LocalSuperposition> table);

  const Alphabet& alphabet() const { return alphabet_; }
  const Neighborhood& neighborhood() const { return nb_; }
  std::size_t sigma() const { return alphabet_.size(); }
  std::size_t r() const { return nb_.size(); }
  std::size_t table_size() const { return table_.size(); }  // |Sigma|^r

  const LocalSuperposition& rule(std::size_t word_index) const { return table_[word_index]; }
  const Rational& rule_sq_norm(std::size_t word_index) const { return sq_norms_[word_index]; }
  const std::vector<LocalSuperposition>& table() const { return table_; }

  /// Word encoding: first letter most significant, base |Sigma|.
  std::size_t word_index(std::span<const StateId> word) const;
  std::vector<StateId> word_letters(std::size_t word_index) const;
  std::size_t quiescent_word() const { return quiescent_word_; }

  /// Index of the word c_{cell+N}.
  std::size_t word_at(const Configuration& c, long long cell) const;

  /// n = |Sigma|^{r+1}.
  Int size_n() const;

  bool operator==(const Lqca& other) const;

 private:
  Alphabet alphabet_;
  Neighborhood nb_;
  std::vector<LocalSuperposition> table_;
  std::vector<Rational> sq_norms_;
  std::size_t quiescent_word_ = 0;
};

/// sigma^length checked against a hard table cap; throws ResourceError.
std::size_t checked_table_size(std::size_t sigma, std::size_t length);

}  // namespace qca
