#include "helpers.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qca::testutil {

namespace {

ExactComplex rat(int num, int den = 1) { return ExactComplex(Rational(num, den)); }

LocalSuperposition sup2(ExactComplex q_amp, ExactComplex p_amp) {
  LocalSuperposition u = LocalSuperposition::zero(2);
  u.amps[0] = std::move(q_amp);
  u.amps[1] = std::move(p_amp);
  return u;
}

Lqca two_state(std::vector<LocalSuperposition> table, std::vector<long long> offsets = {0, 1}) {
  return Lqca(Alphabet({"q", "p"}, 0), Neighborhood(std::move(offsets)), std::move(table));
}

}  // namespace

Lqca make_balanced() {
  // words in order: qq, qp, pq, pp
  return two_state({sup2(rat(1), rat(0)), sup2(rat(1, 2), rat(0)), sup2(rat(0), rat(2)),
                    sup2(rat(0), rat(1))});
}

Lqca make_unbalanced_low() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(1, 2), rat(0)), sup2(rat(0), rat(1)),
                    sup2(rat(0), rat(1))});
}

Lqca make_unbalanced_high() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(1), rat(0)), sup2(rat(0), rat(2)),
                    sup2(rat(0), rat(1))});
}

Lqca make_nonorthogonal() {
  const LocalSuperposition f_q = sup2(rat(1), rat(0));
  const LocalSuperposition f_p = sup2(rat(3, 5), rat(4, 5));
  return two_state({f_q, f_q, f_p, f_p});
}

Lqca make_shift() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(0), rat(1)), sup2(rat(1), rat(0)),
                    sup2(rat(0), rat(1))});
}

Lqca make_both_failures() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(1, 2), rat(0)), sup2(rat(3, 5), rat(4, 5)),
                    sup2(rat(0), rat(1))});
}

Lqca make_identity_trivial() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(0), rat(1))}, {0});
}

Lqca make_scale_trivial() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(0), rat(2))}, {0});
}

Lqca make_blend_trivial() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(3, 5), rat(4, 5))}, {0});
}

Lqca make_damp_trivial() {
  return two_state({sup2(rat(1), rat(0)), sup2(rat(4, 5), rat(3, 5))}, {0});
}

namespace {

Lqca three_state(std::vector<std::array<ExactComplex, 3>> columns) {
  std::vector<LocalSuperposition> table;
  for (auto& column : columns) {
    LocalSuperposition u = LocalSuperposition::zero(3);
    for (std::size_t i = 0; i < 3; ++i) u.amps[i] = std::move(column[i]);
    table.push_back(std::move(u));
  }
  return Lqca(Alphabet({"z", "q", "p"}, 0), Neighborhood({0}), std::move(table));
}

}  // namespace

Lqca make_rotation3() {
  return three_state({{rat(1), rat(0), rat(0)},
                      {rat(0), rat(3, 5), rat(-4, 5)},
                      {rat(0), rat(4, 5), rat(3, 5)}});
}

Lqca make_swap3() {
  return three_state({{rat(1), rat(0), rat(0)},
                      {rat(0), rat(0), rat(1)},
                      {rat(0), rat(1), rat(0)}});
}

Lqca make_phase_trivial() {
  LocalSuperposition phase = LocalSuperposition::zero(2);
  phase.amps[1] = ExactComplex(Rational(0), Rational(1));
  return two_state({sup2(rat(1), rat(0)), std::move(phase)}, {0});
}

const std::vector<Rational>& amplitude_pool() {
  static const std::vector<Rational> pool = {
      Rational(0),     Rational(1),     Rational(-1),   Rational(1, 2), Rational(-1, 2),
      Rational(2),     Rational(-2),    Rational(3, 5), Rational(4, 5)};
  return pool;
}

Lqca random_lqca(Rng& rng, std::size_t sigma, const std::vector<long long>& offsets) {
  const auto& pool = amplitude_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Neighborhood nb(offsets);
  const std::size_t table_size = checked_table_size(sigma, nb.size());
  std::size_t quiescent_word = 0;  // quiescent state id 0 everywhere

  std::vector<LocalSuperposition> table;
  table.reserve(table_size);
  for (std::size_t w = 0; w < table_size; ++w) {
    if (w == quiescent_word) {
      table.push_back(LocalSuperposition::basis(sigma, 0));
      continue;
    }
    LocalSuperposition u = LocalSuperposition::zero(sigma);
    do {
      for (auto& amp : u.amps) amp = ExactComplex(pool[pick(rng)]);
    } while (squared_norm(u) == 0);
    table.push_back(std::move(u));
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < sigma; ++i) {
    names.push_back(i == 0 ? "q" : "s" + std::to_string(i));
  }
  return Lqca(Alphabet(std::move(names), 0), std::move(nb), std::move(table));
}

WeightedDeBruijnGraph random_weighted_graph(Rng& rng, std::size_t sigma, std::size_t r) {
  static const std::vector<Rational> weight_pool = {
      Rational(1),    Rational(1, 2), Rational(2),     Rational(1, 4),
      Rational(4),    Rational(3, 5), Rational(5, 3),  Rational(9, 25)};
  std::uniform_int_distribution<std::size_t> pick(0, weight_pool.size() - 1);

  WeightedDeBruijnGraph g;
  g.sigma = sigma;
  g.r = r;
  g.quiescent = 0;
  g.num_vertices = checked_table_size(sigma, r - 1);
  g.source = 0;  // q^{r-1} with quiescent id 0
  const std::size_t labels = checked_table_size(sigma, r);
  for (std::size_t label = 0; label < labels; ++label) {
    Rational weight = label == 0 ? Rational(1) : weight_pool[pick(rng)];
    g.edges.push_back(DbEdge{label / sigma, label % g.num_vertices, label, std::move(weight)});
  }
  return g;
}

QMatrix random_rational_unitary(Rng& rng, std::size_t dim, int operations) {
  if (dim < 2) throw std::invalid_argument("need dim >= 2 to vary the non-quiescent block");
  QMatrix q = QMatrix::identity(dim);
  std::uniform_int_distribution<std::size_t> coord(1, dim - 1);  // never touch state 0
  std::uniform_int_distribution<int> op_kind(0, 2);
  static const std::vector<std::pair<Rational, Rational>> triples = {
      {Rational(3, 5), Rational(4, 5)},
      {Rational(5, 13), Rational(12, 13)},
      {Rational(8, 17), Rational(15, 17)}};
  std::uniform_int_distribution<std::size_t> triple(0, triples.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);

  auto left_multiply_rotation = [&](std::size_t i, std::size_t j, const Rational& c,
                                    const Rational& s) {
    for (std::size_t x = 0; x < dim; ++x) {
      ExactComplex row_i = q.at(i, x);
      ExactComplex row_j = q.at(j, x);
      q.at(i, x) = ExactComplex(c) * row_i + ExactComplex(-s) * row_j;
      q.at(j, x) = ExactComplex(s) * row_i + ExactComplex(c) * row_j;
    }
  };

  for (int k = 0; k < operations; ++k) {
    switch (op_kind(rng)) {
      case 0: {  // rotation on a non-quiescent coordinate pair
        std::size_t i = coord(rng);
        std::size_t j = coord(rng);
        if (i == j) j = (j == dim - 1) ? 1 : j + 1;
        if (dim == 2 || i == j) break;
        auto [c, s] = triples[triple(rng)];
        if (coin(rng)) s = -s;
        left_multiply_rotation(i, j, c, s);
        break;
      }
      case 1: {  // swap two non-quiescent rows, optionally negating one
        std::size_t i = coord(rng);
        std::size_t j = coord(rng);
        if (i == j) break;
        for (std::size_t x = 0; x < dim; ++x) std::swap(q.at(i, x), q.at(j, x));
        if (coin(rng)) {
          for (std::size_t x = 0; x < dim; ++x) q.at(i, x) = -q.at(i, x);
        }
        break;
      }
      default: {  // multiply a non-quiescent row by i
        std::size_t i = coord(rng);
        const ExactComplex phase(Rational(0), Rational(1));
        for (std::size_t x = 0; x < dim; ++x) q.at(i, x) = phase * q.at(i, x);
        break;
      }
    }
  }
  return q;
}

QMatrix perturb_matrix(Rng& rng, QMatrix q) {
  std::uniform_int_distribution<std::size_t> coord(1, q.dim - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    QMatrix candidate = q;
    std::size_t y = coord(rng);
    std::size_t x = coord(rng);
    candidate.at(y, x) = candidate.at(y, x) + ExactComplex(Rational(1, 10));
    bool column_ok = false;
    for (std::size_t row = 0; row < candidate.dim && !column_ok; ++row) {
      column_ok = !candidate.at(row, x).is_zero();
    }
    if (column_ok && !is_unitary(candidate)) return candidate;
  }
  throw std::runtime_error("could not perturb the matrix into a non-unitary one");
}

namespace {

bool dfs_qcycles(const WeightedDeBruijnGraph& g, std::size_t vertex, const Rational& product,
                 std::size_t remaining) {
  if (remaining == 0) return true;
  for (std::size_t label = vertex * g.sigma; label < vertex * g.sigma + g.sigma; ++label) {
    const DbEdge& e = g.edges[label];
    Rational next = product * e.sq_weight;
    if (e.to == g.source && next != 1) return false;
    if (!dfs_qcycles(g, e.to, next, remaining - 1)) return false;
  }
  return true;
}

}  // namespace

bool all_short_qcycles_unit(const WeightedDeBruijnGraph& g, std::size_t max_len) {
  return dfs_qcycles(g, g.source, Rational(1), max_len);
}

std::vector<std::size_t> scc_of_source_quadratic(const PairGraph& h) {
  const std::size_t n = h.num_vertices;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    reach[v][v] = true;
    for (const PairEdge& e : h.out[v]) reach[v][e.to] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<std::size_t> component;
  for (std::size_t v = 0; v < n; ++v) {
    if (reach[h.source][v] && reach[v][h.source]) component.push_back(v);
  }
  return component;
}

bool valid_cycle_witness(const WeightedDeBruijnGraph& g, const CycleWitness& w) {
  if (w.labels.empty()) return false;
  if (g.edges[w.labels.front()].from != g.source) return false;
  if (g.edges[w.labels.back()].to != g.source) return false;
  Rational product(1);
  for (std::size_t i = 0; i < w.labels.size(); ++i) {
    const DbEdge& e = g.edges[w.labels[i]];
    if (i > 0 && g.edges[w.labels[i - 1]].to != e.from) return false;
    product *= e.sq_weight;
  }
  return product == w.sq_product;
}

CommandResult run_command(const std::string& command) {
  namespace fs = std::filesystem;
  const std::string scratch = make_scratch_dir();
  const std::string out_path = scratch + "/out.txt";
  const std::string err_path = scratch + "/err.txt";
  const std::string full = command + " >" + out_path + " 2>" + err_path;
  int status = std::system(full.c_str());

  auto read_all = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  CommandResult result;
  result.out = read_all(out_path);
  result.err = read_all(err_path);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  fs::remove_all(scratch);
  return result;
}

namespace {

std::string require_env(const char* name) {
  const char* value = std::getenv(name);
  if (!value || !*value) {
    throw std::runtime_error(std::string(name) + " must be set (ctest sets it)");
  }
  return value;
}

}  // namespace

std::string qca_binary() { return require_env("QCA_BIN"); }

std::string data_dir() { return require_env("QCA_DATA"); }

std::string make_scratch_dir() {
  std::string tmpl = std::filesystem::temp_directory_path() / "qca_test_XXXXXX";
  std::vector<char> buffer(tmpl.begin(), tmpl.end());
  buffer.push_back('\0');
  if (!mkdtemp(buffer.data())) throw std::runtime_error("mkdtemp failed");
  return std::string(buffer.data());
}

}  // namespace qca::testutil
