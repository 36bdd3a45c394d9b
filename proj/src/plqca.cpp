#include "qca/plqca.hpp"

#include <sstream>
#include <utility>

namespace qca {

FactorAlphabets::FactorAlphabets(std::vector<std::vector<std::string>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw ConstructionError("a partitioned automaton needs at least one factor");
  for (const auto& factor : factors_) {
    if (factor.empty()) throw ConstructionError("factor alphabets must be non-empty");
    composed_size_ *= factor.size();
  }
}

std::vector<StateId> FactorAlphabets::components(StateId composed) const {
  std::vector<StateId> parts(factors_.size());
  std::size_t rest = composed;
  for (std::size_t j = factors_.size(); j-- > 0;) {
    parts[j] = static_cast<StateId>(rest % factors_[j].size());
    rest /= factors_[j].size();
  }
  return parts;
}

StateId FactorAlphabets::compose_components(const std::vector<StateId>& components) const {
  if (components.size() != factors_.size()) {
    throw DimensionError("component count does not match the factor count");
  }
  std::size_t composed = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    if (components[j] >= factors_[j].size()) {
      throw ContractError("factor component out of range");
    }
    composed = composed * factors_[j].size() + components[j];
  }
  return static_cast<StateId>(composed);
}

std::string FactorAlphabets::composed_name(StateId composed) const {
  const std::vector<StateId> parts = components(composed);
  std::string name;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (j > 0) name += '.';
    name += factors_[j][parts[j]];
  }
  return name;
}

Alphabet FactorAlphabets::composed_alphabet() const {
  std::vector<std::string> names;
  names.reserve(composed_size_);
  for (std::size_t s = 0; s < composed_size_; ++s) {
    names.push_back(composed_name(static_cast<StateId>(s)));
  }
  return Alphabet(std::move(names), /*quiescent=*/0);
}

QMatrix QMatrix::identity(std::size_t dim) {
  QMatrix q{dim, std::vector<ExactComplex>(dim * dim)};
  for (std::size_t i = 0; i < dim; ++i) q.at(i, i) = ExactComplex(Rational(1));
  return q;
}

bool is_unitary(const QMatrix& q) {
  for (std::size_t x1 = 0; x1 < q.dim; ++x1) {
    for (std::size_t x2 = x1; x2 < q.dim; ++x2) {
      ExactComplex sum;
      for (std::size_t y = 0; y < q.dim; ++y) {
        sum += conj(q.at(y, x1)) * q.at(y, x2);
      }
      const bool diagonal = x1 == x2;
      if (diagonal ? sum != ExactComplex(Rational(1)) : !sum.is_zero()) return false;
    }
  }
  return true;
}

Plqca::Plqca(FactorAlphabets factors, Neighborhood nb, QMatrix qmatrix)
    : factors_(std::move(factors)), nb_(std::move(nb)), qmatrix_(std::move(qmatrix)) {
  if (nb_.size() != factors_.count()) {
    throw ConstructionError("neighborhood size must equal the number of factors");
  }
  if (qmatrix_.dim != factors_.composed_size()) {
    throw ConstructionError("Q must be indexed by the composed state set");
  }
  for (std::size_t x = 0; x < qmatrix_.dim; ++x) {
    bool nonzero = false;
    for (std::size_t y = 0; y < qmatrix_.dim && !nonzero; ++y) {
      nonzero = !qmatrix_.at(y, x).is_zero();
    }
    if (!nonzero) {
      throw ConstructionError("Q has a zero column at state '" +
                              factors_.composed_name(static_cast<StateId>(x)) + "'");
    }
  }
  const StateId q = quiescent();
  for (std::size_t y = 0; y < qmatrix_.dim; ++y) {
    const ExactComplex& amp = qmatrix_.at(y, q);
    const bool expected_one = y == q;
    if (expected_one ? amp != ExactComplex(Rational(1)) : !amp.is_zero()) {
      throw ConstructionError(
          "Q must fix the quiescent state '" + factors_.composed_name(q) +
          "' with amplitude 1 so the composed automaton satisfies the quiescent condition");
    }
  }
}

StateId delta_p(const FactorAlphabets& factors, std::span<const StateId> word) {
  if (word.size() != factors.count()) {
    throw DimensionError("delta_p takes one composed state per neighbor");
  }
  std::vector<StateId> out(factors.count());
  for (std::size_t j = 0; j < factors.count(); ++j) {
    out[j] = factors.components(word[j])[j];
  }
  return factors.compose_components(out);
}

Lqca compose(const Plqca& p) {
  const std::size_t sigma = p.factors().composed_size();
  const std::size_t r = p.neighborhood().size();
  const std::size_t table_size = checked_table_size(sigma, r);

  std::vector<LocalSuperposition> table;
  table.reserve(table_size);
  std::vector<StateId> word(r);
  for (std::size_t widx = 0; widx < table_size; ++widx) {
    std::size_t rest = widx;
    for (std::size_t j = r; j-- > 0;) {
      word[j] = static_cast<StateId>(rest % sigma);
      rest /= sigma;
    }
    const StateId target = delta_p(p.factors(), word);
    LocalSuperposition image = LocalSuperposition::zero(sigma);
    for (std::size_t y = 0; y < sigma; ++y) {
      image.amps[y] = p.qmatrix().at(y, target);
    }
    table.push_back(std::move(image));
  }
  return Lqca(p.factors().composed_alphabet(), p.neighborhood(), std::move(table));
}

TheoremReport check_theorem_equivalence(const Plqca& p, const DecideOptions& opts) {
  TheoremReport report;
  report.q_unitary = is_unitary(p.qmatrix());
  report.well_formed = decide(compose(p), opts).well_formed;
  report.consistent = report.q_unitary == report.well_formed;
  if (!report.consistent) {
    std::ostringstream dump;
    dump << "local transition matrix unitarity (" << (report.q_unitary ? "true" : "false")
         << ") disagrees with the composed automaton's well-formedness ("
         << (report.well_formed ? "true" : "false") << "); Q =";
    for (std::size_t y = 0; y < p.qmatrix().dim; ++y) {
      dump << " [";
      for (std::size_t x = 0; x < p.qmatrix().dim; ++x) {
        if (x > 0) dump << ", ";
        dump << to_string(p.qmatrix().at(y, x));
      }
      dump << "]";
    }
    throw InternalError(dump.str());
  }
  return report;
}

}  // namespace qca
