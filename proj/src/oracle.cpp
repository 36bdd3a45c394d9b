#include "qca/oracle.hpp"

#include <utility>

namespace qca::oracle {

namespace {

/// sigma^length if it stays within bound, else nullopt.
std::optional<std::uint64_t> counted_pow(std::size_t sigma, long long length,
                                         std::uint64_t bound) {
  std::uint64_t total = 1;
  for (long long i = 0; i < length; ++i) {
    if (total > bound / sigma) return std::nullopt;
    total *= sigma;
  }
  return total;
}

/// Enumerates all state assignments of an interval in lexicographic order
/// (leftmost cell most significant, state ids ascending).
class WindowEnumerator {
 public:
  WindowEnumerator(std::size_t sigma, Interval window)
      : sigma_(sigma), window_(window), states_(window.length(), 0) {}

  bool done() const { return done_; }

  Configuration configuration(StateId quiescent) const {
    std::vector<std::pair<long long, StateId>> cells;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      cells.emplace_back(window_.lo + static_cast<long long>(i), states_[i]);
    }
    return Configuration::from_cells(cells, quiescent);
  }

  const std::vector<StateId>& states() const { return states_; }

  void advance() {
    for (std::size_t i = states_.size(); i-- > 0;) {
      if (++states_[i] < sigma_) return;
      states_[i] = 0;
    }
    done_ = true;  // odometer wrapped; the empty window wraps immediately
  }

 private:
  std::size_t sigma_;
  Interval window_;
  std::vector<StateId> states_;
  bool done_ = false;
};

}  // namespace

WindowSuperposition::WindowSuperposition(Interval window,
                                         std::map<Configuration, ExactComplex> amps)
    : window_(window) {
  for (auto& [config, amp] : amps) {
    if (!window_.contains(config.idom())) {
      throw ContractError("configuration support lies outside the superposition window");
    }
    if (!amp.is_zero()) amps_.emplace(config, std::move(amp));
  }
}

WindowSuperposition WindowSuperposition::single(Interval window, Configuration c) {
  std::map<Configuration, ExactComplex> amps;
  amps.emplace(std::move(c), ExactComplex(Rational(1)));
  return WindowSuperposition(window, std::move(amps));
}

ExactComplex WindowSuperposition::amp(const Configuration& c) const {
  auto it = amps_.find(c);
  return it == amps_.end() ? ExactComplex() : it->second;
}

Rational WindowSuperposition::sq_norm() const {
  Rational total(0);
  for (const auto& [config, amp] : amps_) total += sq_abs(amp);
  return total;
}

ExactComplex transition_amplitude(const Lqca& a, const Configuration& d,
                                  const Configuration& c) {
  const Interval window = ext(c.idom(), a.neighborhood());
  if (!window.contains(d.idom())) return ExactComplex();
  ExactComplex product(Rational(1));
  const StateId quiescent = a.alphabet().quiescent();
  for (long long i = window.lo; i <= window.hi; ++i) {
    product *= a.rule(a.word_at(c, i)).amps[d.at_or(i, quiescent)];
    if (product.is_zero()) return product;
  }
  return product;
}

ExactComplex column_inner_product(const Lqca& a, const Configuration& c,
                                  const Configuration& c2) {
  const Interval window = hull(ext(c.idom(), a.neighborhood()), ext(c2.idom(), a.neighborhood()));
  ExactComplex product(Rational(1));
  for (long long i = window.lo; i <= window.hi; ++i) {
    product *= inner_product(a.rule(a.word_at(c, i)), a.rule(a.word_at(c2, i)));
    if (product.is_zero()) return product;
  }
  return product;
}

ExactComplex column_inner_product_direct(const Lqca& a, const Configuration& c,
                                         const Configuration& c2,
                                         const Interval& enumeration_interval,
                                         std::uint64_t bound) {
  const Interval required =
      hull(ext(c.idom(), a.neighborhood()), ext(c2.idom(), a.neighborhood()));
  if (!enumeration_interval.contains(required)) {
    throw ContractError("enumeration interval does not cover both column extensions");
  }
  if (!counted_pow(a.sigma(), enumeration_interval.length(), bound)) {
    throw ResourceError("direct summation over the interval exceeds the enumeration bound");
  }

  // Tensor factors per interval cell, fixed by c and c2 respectively.
  std::vector<const LocalSuperposition*> factors1;
  std::vector<const LocalSuperposition*> factors2;
  for (long long i = enumeration_interval.lo; i <= enumeration_interval.hi; ++i) {
    factors1.push_back(&a.rule(a.word_at(c, i)));
    factors2.push_back(&a.rule(a.word_at(c2, i)));
  }

  ExactComplex sum;
  for (WindowEnumerator words(a.sigma(), enumeration_interval); !words.done();
       words.advance()) {
    ExactComplex term1(Rational(1));
    ExactComplex term2(Rational(1));
    const auto& states = words.states();
    for (std::size_t i = 0; i < states.size() && !term1.is_zero(); ++i) {
      term1 *= factors1[i]->amps[states[i]];
    }
    if (term1.is_zero()) continue;
    for (std::size_t i = 0; i < states.size() && !term2.is_zero(); ++i) {
      term2 *= factors2[i]->amps[states[i]];
    }
    sum += term1 * conj(term2);
  }
  return sum;
}

Rational column_sq_norm(const Lqca& a, const Configuration& c) {
  const Interval window = ext(c.idom(), a.neighborhood());
  Rational product(1);
  for (long long i = window.lo; i <= window.hi; ++i) {
    product *= a.rule_sq_norm(a.word_at(c, i));
  }
  return product;
}

WindowSuperposition step(const Lqca& a, const WindowSuperposition& s, std::uint64_t bound) {
  const Interval out_window = ext(s.window(), a.neighborhood());
  if (!counted_pow(a.sigma(), out_window.length(), bound)) {
    throw ResourceError("stepping the window exceeds the enumeration bound");
  }
  const StateId quiescent = a.alphabet().quiescent();
  std::map<Configuration, ExactComplex> out;
  for (WindowEnumerator successors(a.sigma(), out_window); !successors.done();
       successors.advance()) {
    Configuration d = successors.configuration(quiescent);
    ExactComplex amp;
    for (const auto& [c, c_amp] : s.amps()) {
      amp += c_amp * transition_amplitude(a, d, c);
    }
    if (!amp.is_zero()) out.emplace(std::move(d), std::move(amp));
  }
  return WindowSuperposition(out_window, std::move(out));
}

std::optional<WindowViolation> window_check(const Lqca& a, long long radius,
                                            std::uint64_t bound) {
  const Interval window = Interval::of(-radius, radius);
  const auto count = counted_pow(a.sigma(), window.length(), bound);
  if (!count) throw ResourceError("window enumeration exceeds the bound");
  if (*count > 1) {
    const auto pairs =
        static_cast<unsigned __int128>(*count) * (*count - 1) / 2;
    if (pairs > bound) throw ResourceError("window pair enumeration exceeds the bound");
  }
  std::vector<Configuration> configs;
  configs.reserve(*count);
  const StateId quiescent = a.alphabet().quiescent();
  for (WindowEnumerator e(a.sigma(), window); !e.done(); e.advance()) {
    configs.push_back(e.configuration(quiescent));
  }

  // Reports are canonicalized by translation (first support cell at index 0,
  // jointly for pairs); norms and inner products are translation invariant.
  for (const auto& c : configs) {
    Rational sq = column_sq_norm(a, c);
    if (sq != 1) {
      return WindowViolation(NormViolation{translate(c, -c.idom().lo), std::move(sq)});
    }
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t j = i + 1; j < configs.size(); ++j) {
      ExactComplex inner = column_inner_product(a, configs[i], configs[j]);
      if (!inner.is_zero()) {
        const Interval support = hull(configs[i].idom(), configs[j].idom());
        const long long shift = -support.lo;  // at least one config is nonempty
        return WindowViolation(OrthogonalityViolation{translate(configs[i], shift),
                                                      translate(configs[j], shift),
                                                      std::move(inner)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace qca::oracle
