#include "qca/automaton.hpp"

#include <algorithm>
#include <unordered_set>

namespace qca {

namespace {
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 26;
}

Alphabet::Alphabet(std::vector<std::string> names, StateId quiescent)
    : names_(std::move(names)), quiescent_(quiescent) {
  if (names_.empty()) throw ConstructionError("alphabet must not be empty");
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ConstructionError("state names must be non-empty");
    if (!seen.insert(name).second) {
      throw ConstructionError("duplicate state name '" + name + "'");
    }
  }
  if (quiescent_ >= names_.size()) {
    throw ConstructionError("quiescent state index out of range");
  }
}

std::optional<StateId> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

Neighborhood::Neighborhood(std::vector<long long> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw ConstructionError("neighborhood must have at least one offset");
  for (std::size_t i = 1; i < offsets_.size(); ++i) {
    if (offsets_[i] <= offsets_[i - 1]) {
      throw ConstructionError("neighborhood offsets must be strictly increasing");
    }
  }
}

Rational Neighborhood::expansion_factor() const {
  return Rational(Int(span() + 1), Int(static_cast<long long>(size()) + 1));
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  return Interval::of(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval ext(const Interval& interval, const Neighborhood& nb) {
  if (interval.is_empty()) return Interval::empty();
  return Interval::of(interval.lo - nb.offsets().back(), interval.hi - nb.offsets().front());
}

LocalSuperposition LocalSuperposition::basis(std::size_t n, StateId e) {
  LocalSuperposition u = zero(n);
  u.amps.at(e) = ExactComplex(Rational(1));
  return u;
}

ExactComplex inner_product(const LocalSuperposition& u, const LocalSuperposition& v) {
  if (u.amps.size() != v.amps.size()) {
    throw DimensionError("inner product of superpositions of different lengths");
  }
  ExactComplex sum;
  for (std::size_t e = 0; e < u.amps.size(); ++e) {
    sum += u.amps[e] * conj(v.amps[e]);
  }
  return sum;
}

Rational squared_norm(const LocalSuperposition& u) {
  Rational sum(0);
  for (const auto& amp : u.amps) sum += sq_abs(amp);
  return sum;
}

Configuration Configuration::from_cells(
    const std::vector<std::pair<long long, StateId>>& cells, StateId quiescent) {
  Configuration c;
  for (const auto& [cell, state] : cells) {
    if (state == quiescent) continue;
    auto [it, inserted] = c.cells_.emplace(cell, state);
    if (!inserted) {
      throw ConstructionError("duplicate cell " + std::to_string(cell) + " in configuration");
    }
  }
  return c;
}

std::optional<StateId> Configuration::at(long long cell) const {
  auto it = cells_.find(cell);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

StateId Configuration::at_or(long long cell, StateId quiescent) const {
  auto it = cells_.find(cell);
  return it == cells_.end() ? quiescent : it->second;
}

Interval Configuration::idom() const {
  if (cells_.empty()) return Interval::empty();
  return Interval::of(cells_.begin()->first, cells_.rbegin()->first);
}

Configuration translate(const Configuration& c, long long delta) {
  std::vector<std::pair<long long, StateId>> cells;
  cells.reserve(c.cells().size());
  for (const auto& [cell, state] : c.cells()) cells.emplace_back(cell + delta, state);
  // quiescent id is irrelevant here; stored states are never quiescent
  return Configuration::from_cells(cells, static_cast<StateId>(-1));
}

std::vector<StateId> neighborhood_word(const Configuration& c, long long cell,
                                       const Neighborhood& nb, StateId quiescent) {
  std::vector<StateId> word;
  word.reserve(nb.size());
  for (long long offset : nb.offsets()) {
    word.push_back(c.at_or(cell + offset, quiescent));
  }
  return word;
}

std::size_t checked_table_size(std::size_t sigma, std::size_t length) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (total > kMaxTableEntries / sigma) {
      throw ResourceError("transition table of " + std::to_string(sigma) + "^" +
                          std::to_string(length) + " entries exceeds the supported size");
    }
    total *= sigma;
  }
  return total;
}

Lqca::Lqca(Alphabet alphabet, Neighborhood nb, std::vector<LocalSuperposition> table)
    : alphabet_(std::move(alphabet)), nb_(std::move(nb)), table_(std::move(table)) {
  const std::size_t expected = checked_table_size(alphabet_.size(), nb_.size());
  if (table_.size() != expected) {
    throw ConstructionError("transition table must have " + std::to_string(expected) +
                            " entries, got " + std::to_string(table_.size()));
  }
  sq_norms_.reserve(table_.size());
  for (std::size_t w = 0; w < table_.size(); ++w) {
    if (table_[w].amps.size() != alphabet_.size()) {
      throw ConstructionError("rule for word #" + std::to_string(w) +
                              " has the wrong number of amplitudes");
    }
    sq_norms_.push_back(squared_norm(table_[w]));
    if (sq_norms_.back() == 0) {
      throw ConstructionError("rule for word #" + std::to_string(w) + " has zero norm");
    }
  }
  std::size_t qw = 0;
  for (std::size_t j = 0; j < nb_.size(); ++j) qw = qw * alphabet_.size() + alphabet_.quiescent();
  quiescent_word_ = qw;
  if (table_[quiescent_word_] !=
      LocalSuperposition::basis(alphabet_.size(), alphabet_.quiescent())) {
    throw ConstructionError(
        "quiescent condition violated: the all-quiescent word must map to the quiescent state "
        "with amplitude 1");
  }
}

std::size_t Lqca::word_index(std::span<const StateId> word) const {
  if (word.size() != nb_.size()) {
    throw DimensionError("word length does not match the neighborhood size");
  }
  std::size_t index = 0;
  for (StateId s : word) {
    if (s >= alphabet_.size()) throw ContractError("state id out of range in word");
    index = index * alphabet_.size() + s;
  }
  return index;
}

std::vector<StateId> Lqca::word_letters(std::size_t word_index) const {
  std::vector<StateId> letters(nb_.size());
  for (std::size_t j = nb_.size(); j-- > 0;) {
    letters[j] = static_cast<StateId>(word_index % alphabet_.size());
    word_index /= alphabet_.size();
  }
  return letters;
}

std::size_t Lqca::word_at(const Configuration& c, long long cell) const {
  std::size_t index = 0;
  for (long long offset : nb_.offsets()) {
    index = index * alphabet_.size() + c.at_or(cell + offset, alphabet_.quiescent());
  }
  return index;
}

Int Lqca::size_n() const { return pow_int(Int(alphabet_.size()), nb_.size() + 1); }

bool Lqca::operator==(const Lqca& other) const {
  return alphabet_ == other.alphabet_ && nb_ == other.nb_ && table_ == other.table_;
}

}  // namespace qca
