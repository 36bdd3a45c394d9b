#include "qca/format.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qca {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      std::size_t token_start = pos;
      while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos > token_start) tokens.emplace_back(raw.substr(token_start, pos - token_start));
    }
    if (!tokens.empty()) lines.push_back(Line{number, std::move(tokens)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool valid_state_name(std::string_view name, bool allow_dot) {
  if (name.empty() || name == "->") return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '#' || c == ':' || c == ',' || c == '@') return false;
    if (c == '.' && !allow_dot) return false;
  }
  return true;
}

long long parse_offset(const std::string& token, std::size_t line) {
  try {
    std::size_t consumed = 0;
    long long value = std::stoll(token, &consumed);
    if (consumed != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "invalid offset '" + token + "'");
  }
}

StateId require_state(const Alphabet& alphabet, const std::string& name, std::size_t line) {
  if (auto id = alphabet.find(name)) return *id;
  throw ParseError(line, "unknown state '" + name + "'");
}

ExactComplex parse_amplitude(const std::string& token, std::size_t line) {
  try {
    return parse_complex(token);
  } catch (const Error& e) {
    throw ParseError(line, std::string(e.what()));
  }
}

}  // namespace

Lqca parse_lqca(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  const std::size_t eof_line = lines.empty() ? 1 : lines.back().number + 1;
  std::size_t cursor = 0;

  auto expect_line = [&](std::string_view directive) -> const Line& {
    if (cursor >= lines.size()) {
      throw ParseError(eof_line, "missing '" + std::string(directive) + "' line");
    }
    const Line& line = lines[cursor];
    if (line.tokens.front() != directive) {
      throw ParseError(line.number, "expected '" + std::string(directive) + "', got '" +
                                        line.tokens.front() + "'");
    }
    ++cursor;
    return line;
  };

  const Line& states_line = expect_line("states");
  if (states_line.tokens.size() < 2) {
    throw ParseError(states_line.number, "'states' needs at least one state name");
  }
  std::vector<std::string> names(states_line.tokens.begin() + 1, states_line.tokens.end());
  for (const auto& name : names) {
    if (!valid_state_name(name, /*allow_dot=*/true)) {
      throw ParseError(states_line.number, "invalid state name '" + name + "'");
    }
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& name : names) {
      if (!seen.insert(name).second) {
        throw ParseError(states_line.number, "duplicate state name '" + name + "'");
      }
    }
  }

  const Line& quiescent_line = expect_line("quiescent");
  if (quiescent_line.tokens.size() != 2) {
    throw ParseError(quiescent_line.number, "'quiescent' needs exactly one state name");
  }
  auto quiescent_it = std::find(names.begin(), names.end(), quiescent_line.tokens[1]);
  if (quiescent_it == names.end()) {
    throw ParseError(quiescent_line.number,
                     "unknown state '" + quiescent_line.tokens[1] + "'");
  }
  Alphabet alphabet(names, static_cast<StateId>(quiescent_it - names.begin()));

  const Line& nb_line = expect_line("neighborhood");
  if (nb_line.tokens.size() < 2) {
    throw ParseError(nb_line.number, "'neighborhood' needs at least one offset");
  }
  std::vector<long long> offsets;
  for (std::size_t i = 1; i < nb_line.tokens.size(); ++i) {
    offsets.push_back(parse_offset(nb_line.tokens[i], nb_line.number));
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] <= offsets[i - 1]) {
      throw ParseError(nb_line.number, "neighborhood offsets must be strictly increasing");
    }
  }
  Neighborhood nb(std::move(offsets));
  const std::size_t r = nb.size();
  const std::size_t table_size = checked_table_size(alphabet.size(), r);

  std::vector<std::optional<LocalSuperposition>> table(table_size);
  std::vector<std::size_t> rule_line(table_size, 0);
  std::vector<StateId> word(r);
  for (; cursor < lines.size(); ++cursor) {
    const Line& line = lines[cursor];
    if (line.tokens.front() != "rule") {
      throw ParseError(line.number, "expected 'rule', got '" + line.tokens.front() + "'");
    }
    if (line.tokens.size() < r + 3 || line.tokens[r + 1] != "->") {
      throw ParseError(line.number, "rule must look like: rule <" + std::to_string(r) +
                                        " states> -> state:amplitude ...");
    }
    std::size_t index = 0;
    for (std::size_t j = 0; j < r; ++j) {
      word[j] = require_state(alphabet, line.tokens[1 + j], line.number);
      index = index * alphabet.size() + word[j];
    }
    if (table[index]) {
      throw ParseError(line.number, "duplicate rule for word '" +
                                        [&] {
                                          std::string w;
                                          for (std::size_t j = 0; j < r; ++j) {
                                            if (j > 0) w += ' ';
                                            w += alphabet.name(word[j]);
                                          }
                                          return w;
                                        }() +
                                        "' (first at line " + std::to_string(rule_line[index]) +
                                        ")");
    }

    LocalSuperposition image = LocalSuperposition::zero(alphabet.size());
    std::vector<bool> listed(alphabet.size(), false);
    for (std::size_t t = r + 2; t < line.tokens.size(); ++t) {
      const std::string& entry = line.tokens[t];
      auto colon = entry.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= entry.size()) {
        throw ParseError(line.number, "rule target must look like state:amplitude, got '" +
                                          entry + "'");
      }
      StateId target = require_state(alphabet, entry.substr(0, colon), line.number);
      if (listed[target]) {
        throw ParseError(line.number, "duplicate target '" + alphabet.name(target) +
                                          "' in one rule");
      }
      listed[target] = true;
      ExactComplex amp = parse_amplitude(entry.substr(colon + 1), line.number);
      if (amp.is_zero()) {
        throw ParseError(line.number,
                         "explicit zero amplitude for target '" + alphabet.name(target) + "'");
      }
      image.amps[target] = std::move(amp);
    }
    if (squared_norm(image) == 0) {
      throw ParseError(line.number, "rule has zero norm");
    }
    if (index == [&] {
          std::size_t qw = 0;
          for (std::size_t j = 0; j < r; ++j) qw = qw * alphabet.size() + alphabet.quiescent();
          return qw;
        }()) {
      if (image != LocalSuperposition::basis(alphabet.size(), alphabet.quiescent())) {
        throw ParseError(line.number,
                         "quiescent condition: the all-quiescent word must map to the "
                         "quiescent state with amplitude 1");
      }
    }
    table[index] = std::move(image);
    rule_line[index] = line.number;
  }

  std::vector<LocalSuperposition> complete;
  complete.reserve(table_size);
  for (std::size_t index = 0; index < table_size; ++index) {
    if (!table[index]) {
      std::string w;
      std::size_t rest = index;
      std::vector<StateId> letters(r);
      for (std::size_t j = r; j-- > 0;) {
        letters[j] = static_cast<StateId>(rest % alphabet.size());
        rest /= alphabet.size();
      }
      for (std::size_t j = 0; j < r; ++j) {
        if (j > 0) w += ' ';
        w += alphabet.name(letters[j]);
      }
      throw ParseError(eof_line, "missing rule for word '" + w + "'");
    }
    complete.push_back(std::move(*table[index]));
  }
  return Lqca(std::move(alphabet), std::move(nb), std::move(complete));
}

std::string render_lqca(const Lqca& a) {
  std::ostringstream out;
  out << "states";
  for (const auto& name : a.alphabet().names()) out << ' ' << name;
  out << "\nquiescent " << a.alphabet().name(a.alphabet().quiescent());
  out << "\nneighborhood";
  for (long long offset : a.neighborhood().offsets()) out << ' ' << offset;
  out << '\n';
  for (std::size_t w = 0; w < a.table_size(); ++w) {
    out << "rule";
    for (StateId s : a.word_letters(w)) out << ' ' << a.alphabet().name(s);
    out << " ->";
    for (std::size_t target = 0; target < a.sigma(); ++target) {
      const ExactComplex& amp = a.rule(w).amps[target];
      if (amp.is_zero()) continue;
      out << ' ' << a.alphabet().name(static_cast<StateId>(target)) << ':' << to_string(amp);
    }
    out << '\n';
  }
  return out.str();
}

Configuration parse_config(std::string_view spec, const Alphabet& alphabet) {
  std::string_view s = spec;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return Configuration{};

  auto at = s.rfind('@');
  if (at == std::string_view::npos) {
    throw Error("configuration '" + std::string(spec) + "' is missing '@offset'");
  }
  std::string offset_text(s.substr(at + 1));
  long long offset;
  try {
    std::size_t consumed = 0;
    offset = std::stoll(offset_text, &consumed);
    if (consumed != offset_text.size()) throw std::invalid_argument(offset_text);
  } catch (const std::exception&) {
    throw Error("invalid offset '" + offset_text + "' in configuration");
  }

  std::vector<std::pair<long long, StateId>> cells;
  std::string_view rest = s.substr(0, at);
  long long cell = offset;
  while (true) {
    auto comma = rest.find(',');
    std::string_view name = comma == std::string_view::npos ? rest : rest.substr(0, comma);
    auto id = alphabet.find(name);
    if (!id) throw Error("unknown state '" + std::string(name) + "' in configuration");
    cells.emplace_back(cell++, *id);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return Configuration::from_cells(cells, alphabet.quiescent());
}

std::string render_config(const Configuration& c, const Alphabet& alphabet) {
  if (c.empty()) return "";
  const Interval dom = c.idom();
  std::string out;
  for (long long cell = dom.lo; cell <= dom.hi; ++cell) {
    if (cell > dom.lo) out += ',';
    out += alphabet.name(c.at_or(cell, alphabet.quiescent()));
  }
  out += '@';
  out += std::to_string(dom.lo);
  return out;
}

Plqca parse_plqca(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  const std::size_t eof_line = lines.empty() ? 1 : lines.back().number + 1;
  std::size_t cursor = 0;

  if (cursor >= lines.size() || lines[cursor].tokens != std::vector<std::string>{"plqca", "v1"}) {
    throw ParseError(cursor < lines.size() ? lines[cursor].number : eof_line,
                     "expected header 'plqca v1'");
  }
  ++cursor;

  std::vector<std::vector<std::string>> factors;
  while (cursor < lines.size() && lines[cursor].tokens.front() == "factor") {
    const Line& line = lines[cursor];
    if (line.tokens.size() < 2) {
      throw ParseError(line.number, "'factor' needs at least one state name");
    }
    std::vector<std::string> factor(line.tokens.begin() + 1, line.tokens.end());
    std::unordered_set<std::string_view> seen;
    for (const auto& name : factor) {
      if (!valid_state_name(name, /*allow_dot=*/false)) {
        throw ParseError(line.number, "invalid factor state name '" + name + "'");
      }
      if (!seen.insert(name).second) {
        throw ParseError(line.number, "duplicate factor state name '" + name + "'");
      }
    }
    factors.push_back(std::move(factor));
    ++cursor;
  }
  if (factors.empty()) {
    throw ParseError(cursor < lines.size() ? lines[cursor].number : eof_line,
                     "expected at least one 'factor' line");
  }
  FactorAlphabets factor_alphabets(std::move(factors));
  const Alphabet composed = factor_alphabets.composed_alphabet();

  if (cursor >= lines.size() || lines[cursor].tokens.front() != "neighborhood") {
    throw ParseError(cursor < lines.size() ? lines[cursor].number : eof_line,
                     "expected 'neighborhood' line");
  }
  const Line& nb_line = lines[cursor];
  ++cursor;
  std::vector<long long> offsets;
  for (std::size_t i = 1; i < nb_line.tokens.size(); ++i) {
    offsets.push_back(parse_offset(nb_line.tokens[i], nb_line.number));
  }
  if (offsets.empty()) {
    throw ParseError(nb_line.number, "'neighborhood' needs at least one offset");
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] <= offsets[i - 1]) {
      throw ParseError(nb_line.number, "neighborhood offsets must be strictly increasing");
    }
  }

  const std::size_t dim = factor_alphabets.composed_size();
  QMatrix q{dim, std::vector<ExactComplex>(dim * dim)};
  std::vector<bool> given(dim * dim, false);
  for (; cursor < lines.size(); ++cursor) {
    const Line& line = lines[cursor];
    if (line.tokens.front() != "Q") {
      throw ParseError(line.number, "expected 'Q', got '" + line.tokens.front() + "'");
    }
    if (line.tokens.size() != 6 || line.tokens[2] != "<-" || line.tokens[4] != ":") {
      throw ParseError(line.number, "entry must look like: Q target <- source : amplitude");
    }
    StateId target = require_state(composed, line.tokens[1], line.number);
    StateId source = require_state(composed, line.tokens[3], line.number);
    const std::size_t slot = target * dim + source;
    if (given[slot]) {
      throw ParseError(line.number, "duplicate entry Q " + line.tokens[1] + " <- " +
                                        line.tokens[3]);
    }
    given[slot] = true;
    q.entries[slot] = parse_amplitude(line.tokens[5], line.number);
  }

  try {
    return Plqca(std::move(factor_alphabets), Neighborhood(std::move(offsets)), std::move(q));
  } catch (const ConstructionError& e) {
    throw ParseError(eof_line, e.what());
  }
}

std::string render_plqca(const Plqca& p) {
  std::ostringstream out;
  out << "plqca v1\n";
  for (std::size_t j = 0; j < p.factors().count(); ++j) {
    out << "factor";
    for (const auto& name : p.factors().factor(j)) out << ' ' << name;
    out << '\n';
  }
  out << "neighborhood";
  for (long long offset : p.neighborhood().offsets()) out << ' ' << offset;
  out << '\n';
  const std::size_t dim = p.qmatrix().dim;
  for (std::size_t y = 0; y < dim; ++y) {
    for (std::size_t x = 0; x < dim; ++x) {
      const ExactComplex& amp = p.qmatrix().at(y, x);
      if (amp.is_zero()) continue;
      out << "Q " << p.factors().composed_name(static_cast<StateId>(y)) << " <- "
          << p.factors().composed_name(static_cast<StateId>(x)) << " : " << to_string(amp)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace qca
