#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qca/automaton.hpp"

namespace qca {

/// Edge of G_A: (xz, zy) labeled by the word xzy with weight ||delta(xzy)||^2.
/// Weights are stored squared so every comparison stays rational.
struct DbEdge {
  std::size_t from;
  std::size_t to;
  std::size_t label;  // word index in Sigma^r; equals the edge's position
  Rational sq_weight;
};

/// The complete edge-weighted de Bruijn graph of a simple automaton.
/// Vertices are Sigma^{r-1} encoded like words (one vertex, the empty word,
/// when r = 1). The out-edges of vertex v are exactly the labels
/// [v*sigma, v*sigma + sigma), so no adjacency lists are needed.
struct WeightedDeBruijnGraph {
  std::size_t sigma = 0;
  std::size_t r = 0;
  StateId quiescent = 0;
  std::size_t num_vertices = 0;  // sigma^{r-1}
  std::size_t source = 0;        // q^{r-1}
  std::vector<DbEdge> edges;     // indexed by label; sigma^r total

  std::vector<StateId> vertex_word(std::size_t v) const;
  std::vector<StateId> label_word(std::size_t label) const;
};

/// Pre: a is simple. Throws ContractError otherwise.
WeightedDeBruijnGraph build_debruijn(const Lqca& a);

/// A closed walk from the source back to itself, as edge labels in walk
/// order, with the exact product of its squared edge weights.
struct CycleWitness {
  std::vector<std::size_t> labels;
  Rational sq_product;
};

/// Multiplicative Bellman-Ford, min variant: detects a cycle reachable from
/// the source with squared-weight product < 1 and returns a q-cycle witness
/// with sq_product != 1 (pre-path + loop^k + post-path, k in {1,2}).
std::optional<CycleWitness> detect_small_cycle(const WeightedDeBruijnGraph& g);

/// Max variant: detects product > 1. Symmetric to detect_small_cycle.
std::optional<CycleWitness> detect_large_cycle(const WeightedDeBruijnGraph& g);

/// Edge of H_A: a pair of de Bruijn transitions whose rules are not
/// orthogonal.
struct PairEdge {
  std::size_t to;
  std::size_t label1;
  std::size_t label2;
};

/// The pair graph over Sigma^{r-1} x Sigma^{r-1}. Edge
/// ((x1z1,x2z2),(z1y1,z2y2)) is present iff <delta(x1z1y1), delta(x2z2y2)>
/// is nonzero (exact test).
struct PairGraph {
  std::size_t sigma = 0;
  std::size_t r = 0;
  StateId quiescent = 0;
  std::size_t num_component_vertices = 0;  // sigma^{r-1}
  std::size_t num_vertices = 0;            // sigma^{2(r-1)}
  std::size_t source = 0;                  // (q^{r-1}, q^{r-1})
  std::vector<std::vector<PairEdge>> out;

  std::size_t pair_index(std::size_t v1, std::size_t v2) const {
    return v1 * num_component_vertices + v2;
  }
  std::pair<std::size_t, std::size_t> components(std::size_t pair_vertex) const {
    return {pair_vertex / num_component_vertices, pair_vertex % num_component_vertices};
  }
};

/// Pre: a simple, r >= 2. Throws ContractError otherwise.
PairGraph build_pair_graph(const Lqca& a);

/// The strongly connected component containing the source, sorted ascending.
/// Iterative Tarjan; no recursion-depth limit.
std::vector<std::size_t> scc_of_source(const PairGraph& h);

struct PairWalkEdge {
  std::size_t label1;
  std::size_t label2;
};
using PairWalk = std::vector<PairWalkEdge>;

/// A q-cycle of H_A visiting v: source->v path plus v->source path, both
/// inside the source's SCC. Pre: v lies in scc_of_source(h).
PairWalk closed_walk_through(const PairGraph& h, std::size_t pair_vertex);

}  // namespace qca
