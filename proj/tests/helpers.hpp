#pragma once

#include <random>
#include <string>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/debruijn.hpp"
#include "qca/plqca.hpp"

namespace qca::testutil {

using Rng = std::mt19937_64;

// Fixed fixtures -------------------------------------------------------------

/// Two-state automaton whose qp/pq rules have norms 1/2 and 2 that cancel
/// along every q-cycle; its evolution operator is the identity.
Lqca make_balanced();

/// make_balanced with rule (p,q) -> |p>, breaking the cancellation downward.
Lqca make_unbalanced_low();

/// make_balanced with rule (q,p) -> |q>, breaking the cancellation upward.
Lqca make_unbalanced_high();

/// delta(x, y) = f(x) with f(p) = (3/5)|q> + (4/5)|p>: unit norms everywhere
/// but non-orthogonal columns.
Lqca make_nonorthogonal();

/// delta(x, y) = |y>: the left shift, a reversible classical rule.
Lqca make_shift();

/// Fails the norm check (via 1/2 * 1) and the orthogonality check at once.
Lqca make_both_failures();

/// r = 1, delta = identity on basis states.
Lqca make_identity_trivial();

/// r = 1 with delta(p) = 2|p>.
Lqca make_scale_trivial();

/// r = 1 with delta(p) = (3/5)|q> + (4/5)|p>: unit norm, not orthogonal.
Lqca make_blend_trivial();

/// r = 1 with delta(p) = (4/5)|q> + (3/5)|p>.
Lqca make_damp_trivial();

/// Three states with a separate quiescent state z; the rational rotation
/// (3/5, 4/5) acts on the {q, p} block.
Lqca make_rotation3();

/// Three states, quiescent z, delta swaps q and p.
Lqca make_swap3();

/// r = 1 with delta(p) = i|p>.
Lqca make_phase_trivial();

// Random generation ----------------------------------------------------------

/// The amplitude pool {0, +-1, +-1/2, +-2, 3/5, 4/5}.
const std::vector<Rational>& amplitude_pool();

/// Random automaton with the given shape; every rule is resampled from the
/// pool until its norm is positive, and the all-quiescent rule is pinned.
Lqca random_lqca(Rng& rng, std::size_t sigma, const std::vector<long long>& offsets);

/// Complete de Bruijn graph with random positive squared weights from a
/// fixed pool; the all-quiescent label keeps weight 1.
WeightedDeBruijnGraph random_weighted_graph(Rng& rng, std::size_t sigma, std::size_t r);

/// Exact-unitary Q of the given dimension fixing state 0: a product of
/// Pythagorean rotations, signed permutations, and i-phases on non-quiescent
/// coordinates.
QMatrix random_rational_unitary(Rng& rng, std::size_t dim, int operations = 8);

/// Breaks unitarity by perturbing one non-quiescent entry; keeps the
/// quiescent column and nonzero columns intact.
QMatrix perturb_matrix(Rng& rng, QMatrix q);

// Brute-force oracles --------------------------------------------------------

/// Enumerates every closed walk through the source of length <= max_len and
/// reports whether all of their squared-weight products are exactly 1.
bool all_short_qcycles_unit(const WeightedDeBruijnGraph& g, std::size_t max_len);

/// O(V^3) reachability-based strongly connected component of the source.
std::vector<std::size_t> scc_of_source_quadratic(const PairGraph& h);

/// True iff the witness is a genuine closed walk source -> source whose
/// re-multiplied squared weight equals sq_product.
bool valid_cycle_witness(const WeightedDeBruijnGraph& g, const CycleWitness& w);

// Process helpers ------------------------------------------------------------

struct CommandResult {
  int exit_code;
  std::string out;
  std::string err;
};

/// Runs a shell command capturing stdout/stderr. Used for CLI end-to-end
/// tests; the binary path comes from the QCA_BIN environment variable.
CommandResult run_command(const std::string& command);

/// $QCA_BIN or throws.
std::string qca_binary();

/// $QCA_DATA or throws.
std::string data_dir();

/// Unique scratch directory under the system temp dir.
std::string make_scratch_dir();

}  // namespace qca::testutil
