#include "qca/debruijn.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace qca {

namespace {

std::vector<StateId> decode_word(std::size_t index, std::size_t sigma, std::size_t length) {
  std::vector<StateId> letters(length);
  for (std::size_t j = length; j-- > 0;) {
    letters[j] = static_cast<StateId>(index % sigma);
    index /= sigma;
  }
  return letters;
}

std::size_t all_quiescent_index(std::size_t sigma, std::size_t length, StateId quiescent) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < length; ++j) index = index * sigma + quiescent;
  return index;
}

/// Shortest path a -> b over the implicit out-edges, label-ascending BFS.
/// Returns edge labels; empty when a == b.
std::vector<std::size_t> bfs_path(const WeightedDeBruijnGraph& g, std::size_t a, std::size_t b) {
  if (a == b) return {};
  std::vector<std::optional<std::size_t>> via(g.num_vertices);
  std::deque<std::size_t> queue{a};
  std::vector<bool> seen(g.num_vertices, false);
  seen[a] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t label = v * g.sigma; label < v * g.sigma + g.sigma; ++label) {
      std::size_t to = g.edges[label].to;
      if (seen[to]) continue;
      seen[to] = true;
      via[to] = label;
      if (to == b) {
        std::vector<std::size_t> labels;
        for (std::size_t cur = b; cur != a;) {
          labels.push_back(*via[cur]);
          cur = g.edges[*via[cur]].from;
        }
        std::reverse(labels.begin(), labels.end());
        return labels;
      }
      queue.push_back(to);
    }
  }
  throw InternalError("de Bruijn graph is complete; a path must exist");
}

enum class Relax { Min, Max };

/// Multiplicative Bellman-Ford from the source with product relaxation.
/// Min detects reachable cycles with squared-weight product < 1, Max > 1.
std::optional<CycleWitness> detect_cycle(const WeightedDeBruijnGraph& g, Relax mode) {
  const std::size_t n = g.num_vertices;
  std::vector<std::optional<Rational>> estimate(n);
  std::vector<std::optional<std::size_t>> pred(n);  // edge label into each vertex
  estimate[g.source] = Rational(1);

  auto improves = [&](const Rational& candidate, std::size_t to) {
    if (!estimate[to]) return true;
    return mode == Relax::Min ? candidate < *estimate[to] : candidate > *estimate[to];
  };

  bool changed = true;
  for (std::size_t pass = 1; pass + 1 <= n && changed; ++pass) {
    changed = false;
    for (const DbEdge& e : g.edges) {
      if (!estimate[e.from]) continue;
      Rational candidate = *estimate[e.from] * e.sq_weight;
      if (improves(candidate, e.to)) {
        estimate[e.to] = std::move(candidate);
        pred[e.to] = e.label;
        changed = true;
      }
    }
  }
  if (!changed) return std::nullopt;  // converged: no further improvement is possible

  // Check pass: any remaining improvement proves a cycle through the
  // improvement's predecessor chain.
  std::optional<std::size_t> improved;
  for (const DbEdge& e : g.edges) {
    if (!estimate[e.from]) continue;
    Rational candidate = *estimate[e.from] * e.sq_weight;
    if (improves(candidate, e.to)) {
      estimate[e.to] = std::move(candidate);
      pred[e.to] = e.label;
      improved = e.to;
      break;
    }
  }
  if (!improved) return std::nullopt;

  // Walk the predecessor chain |V| steps to land inside the cycle, then
  // collect it. The chain cannot terminate: a chain ending at the source
  // would certify a simple-path estimate, contradicting the improvement.
  std::size_t inside = *improved;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pred[inside]) throw InternalError("predecessor chain ended without a cycle");
    inside = g.edges[*pred[inside]].from;
  }
  std::vector<std::size_t> cycle;
  std::size_t cursor = inside;
  do {
    cycle.push_back(*pred[cursor]);
    cursor = g.edges[*pred[cursor]].from;
  } while (cursor != inside);
  std::reverse(cycle.begin(), cycle.end());

  // A cycle that already passes through the source becomes the q-cycle
  // itself; rotate it there so the witness needs no pre/post paths.
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (g.edges[cycle[i]].from == g.source) {
      std::rotate(cycle.begin(), cycle.begin() + i, cycle.end());
      inside = g.source;
      break;
    }
  }

  Rational ratio(1);
  for (std::size_t label : cycle) ratio *= g.edges[label].sq_weight;
  if (mode == Relax::Min ? !(ratio < 1) : !(ratio > 1)) {
    throw InternalError("recovered predecessor cycle has the wrong weight");
  }

  // q-cycle witness: pre-path + loop^k + post-path with k in {1,2}; a fixed
  // prefix/suffix product can cancel a ratio != 1 for at most one exponent.
  const std::vector<std::size_t> pre = bfs_path(g, g.source, inside);
  const std::vector<std::size_t> post = bfs_path(g, inside, g.source);
  for (int k = 1; k <= 2; ++k) {
    CycleWitness witness;
    witness.labels = pre;
    for (int copy = 0; copy < k; ++copy) {
      witness.labels.insert(witness.labels.end(), cycle.begin(), cycle.end());
    }
    witness.labels.insert(witness.labels.end(), post.begin(), post.end());
    witness.sq_product = Rational(1);
    for (std::size_t label : witness.labels) {
      witness.sq_product *= g.edges[label].sq_weight;
    }
    if (witness.sq_product != 1) return witness;
  }
  throw InternalError("no loop exponent produced a q-cycle of weight != 1");
}

}  // namespace

std::vector<StateId> WeightedDeBruijnGraph::vertex_word(std::size_t v) const {
  return decode_word(v, sigma, r - 1);
}

std::vector<StateId> WeightedDeBruijnGraph::label_word(std::size_t label) const {
  return decode_word(label, sigma, r);
}

WeightedDeBruijnGraph build_debruijn(const Lqca& a) {
  if (!a.neighborhood().is_simple()) {
    throw ContractError("the de Bruijn graph is defined for simple automata; simplify first");
  }
  WeightedDeBruijnGraph g;
  g.sigma = a.sigma();
  g.r = a.r();
  g.quiescent = a.alphabet().quiescent();
  g.num_vertices = checked_table_size(g.sigma, g.r - 1);
  g.source = all_quiescent_index(g.sigma, g.r - 1, g.quiescent);
  g.edges.reserve(a.table_size());
  const std::size_t suffix_mod = g.num_vertices;
  for (std::size_t label = 0; label < a.table_size(); ++label) {
    g.edges.push_back(DbEdge{label / g.sigma, label % suffix_mod, label, a.rule_sq_norm(label)});
  }
  return g;
}

std::optional<CycleWitness> detect_small_cycle(const WeightedDeBruijnGraph& g) {
  return detect_cycle(g, Relax::Min);
}

std::optional<CycleWitness> detect_large_cycle(const WeightedDeBruijnGraph& g) {
  return detect_cycle(g, Relax::Max);
}

PairGraph build_pair_graph(const Lqca& a) {
  if (!a.neighborhood().is_simple()) {
    throw ContractError("the pair graph is defined for simple automata; simplify first");
  }
  if (a.r() < 2) {
    throw ContractError("the pair graph is defined for r >= 2; the trivial case is decided directly");
  }
  PairGraph h;
  h.sigma = a.sigma();
  h.r = a.r();
  h.quiescent = a.alphabet().quiescent();
  h.num_component_vertices = checked_table_size(h.sigma, h.r - 1);
  h.num_vertices = h.num_component_vertices * h.num_component_vertices;
  const std::size_t q_vertex = all_quiescent_index(h.sigma, h.r - 1, h.quiescent);
  h.source = h.pair_index(q_vertex, q_vertex);
  h.out.resize(h.num_vertices);

  const std::size_t words = a.table_size();
  const std::size_t suffix_mod = h.num_component_vertices;
  for (std::size_t w1 = 0; w1 < words; ++w1) {
    for (std::size_t w2 = 0; w2 < words; ++w2) {
      if (inner_product(a.rule(w1), a.rule(w2)).is_zero()) continue;
      const std::size_t from = h.pair_index(w1 / h.sigma, w2 / h.sigma);
      const std::size_t to = h.pair_index(w1 % suffix_mod, w2 % suffix_mod);
      h.out[from].push_back(PairEdge{to, w1, w2});
    }
  }
  return h;
}

std::vector<std::size_t> scc_of_source(const PairGraph& h) {
  // Iterative Tarjan, exploring only what the source reaches.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(h.num_vertices, kUnvisited);
  std::vector<std::size_t> lowlink(h.num_vertices, 0);
  std::vector<bool> on_stack(h.num_vertices, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t edge = 0;
  };
  std::vector<Frame> frames{{h.source}};
  index[h.source] = lowlink[h.source] = next_index++;
  stack.push_back(h.source);
  on_stack[h.source] = true;

  std::vector<std::size_t> source_component;
  while (!frames.empty()) {
    Frame& frame = frames.back();
    const std::size_t v = frame.vertex;
    if (frame.edge < h.out[v].size()) {
      const std::size_t to = h.out[v][frame.edge++].to;
      if (index[to] == kUnvisited) {
        index[to] = lowlink[to] = next_index++;
        stack.push_back(to);
        on_stack[to] = true;
        frames.push_back(Frame{to});
      } else if (on_stack[to]) {
        lowlink[v] = std::min(lowlink[v], index[to]);
      }
      continue;
    }
    if (lowlink[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t member;
      do {
        member = stack.back();
        stack.pop_back();
        on_stack[member] = false;
        component.push_back(member);
      } while (member != v);
      if (v == h.source ||
          std::find(component.begin(), component.end(), h.source) != component.end()) {
        source_component = std::move(component);
      }
    }
    frames.pop_back();
    if (!frames.empty()) {
      lowlink[frames.back().vertex] = std::min(lowlink[frames.back().vertex], lowlink[v]);
    }
  }
  std::sort(source_component.begin(), source_component.end());
  return source_component;
}

namespace {

/// Shortest pair-graph path a -> b restricted to masked vertices; edges are
/// explored in stored (label1, label2) order. require_edge forces at least
/// one edge so a == b yields a closed walk.
std::optional<PairWalk> bfs_pair_path(const PairGraph& h, std::size_t a, std::size_t b,
                                      const std::vector<bool>& mask, bool require_edge) {
  if (a == b && !require_edge) return PairWalk{};
  struct Via {
    std::size_t from;
    PairEdge edge;
  };
  std::vector<std::optional<Via>> via(h.num_vertices);
  std::vector<bool> seen(h.num_vertices, false);
  std::deque<std::size_t> queue;

  // The start vertex is seeded through its out-edges, not marked seen, so a
  // closed walk can rediscover it.
  auto expand = [&](std::size_t v) -> bool {
    for (const PairEdge& e : h.out[v]) {
      if (!mask[e.to] || seen[e.to]) continue;
      seen[e.to] = true;
      via[e.to] = Via{v, e};
      if (e.to == b) return true;
      queue.push_back(e.to);
    }
    return false;
  };

  bool found = expand(a);
  while (!found && !queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    found = expand(v);
  }
  if (!found) return std::nullopt;

  PairWalk walk;
  std::size_t cur = b;
  do {
    const Via& step = *via[cur];
    walk.push_back(PairWalkEdge{step.edge.label1, step.edge.label2});
    cur = step.from;
  } while (cur != a);
  std::reverse(walk.begin(), walk.end());
  return walk;
}

}  // namespace

PairWalk closed_walk_through(const PairGraph& h, std::size_t pair_vertex) {
  const std::vector<std::size_t> component = scc_of_source(h);
  std::vector<bool> mask(h.num_vertices, false);
  for (std::size_t v : component) mask[v] = true;
  if (pair_vertex >= h.num_vertices || !mask[pair_vertex]) {
    throw ContractError("vertex does not lie in the strongly connected component of the source");
  }
  auto pre = bfs_pair_path(h, h.source, pair_vertex, mask, /*require_edge=*/false);
  auto post = bfs_pair_path(h, pair_vertex, h.source, mask, /*require_edge=*/true);
  if (!pre || !post) {
    throw InternalError("paths inside a strongly connected component must exist");
  }
  PairWalk walk = std::move(*pre);
  walk.insert(walk.end(), post->begin(), post->end());
  return walk;
}

}  // namespace qca
