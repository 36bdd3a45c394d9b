#include "qca/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qca/decide.hpp"
#include "qca/format.hpp"
#include "qca/oracle.hpp"
#include "qca/plqca.hpp"
#include "qca/report.hpp"

namespace qca::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

Lqca load_lqca(const std::string& path) { return parse_lqca(slurp(path)); }

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct CheckSettings {
  std::string path;
  std::string format = "text";
  bool emit_witness = false;
  bool full_report = false;
  long long span_limit = 12;
};

int check_single(const CheckSettings& settings) {
  const Lqca a = load_lqca(settings.path);
  const auto start = std::chrono::steady_clock::now();
  const Verdict verdict = decide(a, DecideOptions{settings.full_report, settings.span_limit});
  const double elapsed = ms_since(start);
  if (settings.format == "json") {
    std::cout << report_json(a, verdict, elapsed, settings.emit_witness).dump(2) << '\n';
  } else {
    std::cout << "file: " << settings.path << '\n'
              << report_text(a, verdict, elapsed, settings.emit_witness);
  }
  return verdict.well_formed ? kExitOk : kExitReject;
}

int check_batch(const CheckSettings& settings) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(settings.path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".lqca") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  json results = json::array();
  std::size_t well_formed = 0;
  std::size_t rejected = 0;
  std::size_t errors = 0;
  for (const auto& file : files) {
    try {
      const Lqca a = load_lqca(file.string());
      const auto start = std::chrono::steady_clock::now();
      const Verdict verdict =
          decide(a, DecideOptions{settings.full_report, settings.span_limit});
      const double elapsed = ms_since(start);
      (verdict.well_formed ? well_formed : rejected) += 1;
      if (settings.format == "json") {
        json entry;
        entry["file"] = file.filename().string();
        entry["report"] = report_json(a, verdict, elapsed, settings.emit_witness);
        results.push_back(std::move(entry));
      } else {
        std::cout << file.filename().string() << ": "
                  << (verdict.well_formed ? "well-formed" : "NOT well-formed") << '\n';
      }
    } catch (const Error& e) {
      ++errors;
      if (settings.format == "json") {
        results.push_back(json{{"file", file.filename().string()}, {"error", e.what()}});
      } else {
        std::cout << file.filename().string() << ": error: " << e.what() << '\n';
      }
    }
  }
  if (settings.format == "json") {
    json summary;
    summary["files"] = std::move(results);
    summary["checked"] = files.size();
    summary["well_formed_count"] = well_formed;
    summary["error_count"] = errors;
    std::cout << summary.dump(2) << '\n';
  } else {
    std::cout << well_formed << "/" << files.size() << " well-formed";
    if (errors > 0) std::cout << ", " << errors << " errors";
    std::cout << '\n';
  }
  if (errors > 0) return kExitError;
  return rejected > 0 ? kExitReject : kExitOk;
}

json theorem_report_json(const TheoremReport& report) {
  return {{"q_unitary", report.q_unitary},
          {"well_formed", report.well_formed},
          {"consistent", report.consistent}};
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"well-formedness checker for linear quantum cellular automata"};
  app.require_subcommand(1);

  // check
  CheckSettings check;
  CLI::App* check_cmd = app.add_subcommand("check", "decide whether an automaton is well-formed");
  check_cmd->add_option("file", check.path, "input .lqca file or a directory of them")
      ->required();
  check_cmd->add_option("--format", check.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_flag("--emit-witness", check.emit_witness,
                      "include the rejection witness in the report");
  check_cmd->add_flag("--full-report", check.full_report,
                      "run the orthogonality check even after a norm failure");
  check_cmd->add_option("--span-limit", check.span_limit,
                        "largest neighborhood span simplify() may fill");

  // normalize
  std::string normalize_in, normalize_out, normalize_scales;
  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "renormalize every rule to unit norm");
  normalize_cmd->add_option("file", normalize_in, "input .lqca file")->required();
  normalize_cmd->add_option("-o,--output", normalize_out, "output .lqca path");
  normalize_cmd->add_option("--scales", normalize_scales,
                            "sidecar path for the residual squared scales");

  // simplify
  std::string simplify_in, simplify_out, simplify_format = "text";
  long long simplify_limit = 12;
  CLI::App* simplify_cmd =
      app.add_subcommand("simplify", "fill a sparse neighborhood without changing the evolution");
  simplify_cmd->add_option("file", simplify_in, "input .lqca file")->required();
  simplify_cmd->add_option("-o,--output", simplify_out, "output .lqca path");
  simplify_cmd->add_option("--format", simplify_format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  simplify_cmd->add_option("--span-limit", simplify_limit, "largest span to fill");

  // oracle
  std::uint64_t bound = oracle::kDefaultEnumerationBound;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth at desk scale");
  oracle_cmd->require_subcommand(1);
  oracle_cmd
      ->add_option("--bound", bound, "enumeration bound for the exponential computations")
      ->envname("QCA_RESOURCE_BOUND");

  std::string norm_file, norm_config;
  CLI::App* norm_cmd = oracle_cmd->add_subcommand("norm", "exact column squared norm");
  norm_cmd->add_option("file", norm_file)->required();
  norm_cmd->add_option("--config", norm_config, "configuration, e.g. \"p@0\"");

  std::string inner_file, inner_config, inner_config2;
  bool inner_direct = false;
  long long inner_lo = 0, inner_hi = -1;
  CLI::App* inner_cmd = oracle_cmd->add_subcommand("inner", "exact column inner product");
  inner_cmd->add_option("file", inner_file)->required();
  inner_cmd->add_option("--config", inner_config);
  inner_cmd->add_option("--config2", inner_config2);
  inner_cmd->add_flag("--direct", inner_direct,
                      "use the exponential direct sum instead of the product formula");
  inner_cmd->add_option("--lo", inner_lo, "direct-sum interval lower end");
  inner_cmd->add_option("--hi", inner_hi, "direct-sum interval upper end");

  std::string step_file;
  std::vector<std::string> step_terms;
  std::string step_config;
  CLI::App* step_cmd = oracle_cmd->add_subcommand("step", "one evolution step of a window");
  step_cmd->add_option("file", step_file)->required();
  step_cmd->add_option("--config", step_config, "single configuration with amplitude 1");
  step_cmd->add_option("--term", step_terms, "repeated CONFIG:AMP terms");

  std::string window_file;
  long long window_radius = 1;
  CLI::App* window_cmd =
      oracle_cmd->add_subcommand("window", "exhaustive norm/orthogonality check in a window");
  window_cmd->add_option("file", window_file)->required();
  window_cmd->add_option("--radius", window_radius)->required();

  // plqca
  CLI::App* plqca_cmd = app.add_subcommand("plqca", "partitioned automata");
  plqca_cmd->require_subcommand(1);
  std::string compose_in, compose_out;
  CLI::App* compose_cmd =
      plqca_cmd->add_subcommand("compose", "compose the classical and quantum parts");
  compose_cmd->add_option("file", compose_in, "input .plqca file")->required();
  compose_cmd->add_option("-o,--output", compose_out, "output .lqca path");
  std::string plqca_check_in, plqca_check_format = "text";
  CLI::App* plqca_check_cmd = plqca_cmd->add_subcommand(
      "check", "check that Q's unitarity matches the composed automaton's verdict");
  plqca_check_cmd->add_option("file", plqca_check_in, "input .plqca file")->required();
  plqca_check_cmd->add_option("--format", plqca_check_format)
      ->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*check_cmd) {
      if (fs::is_directory(check.path)) return check_batch(check);
      return check_single(check);
    }

    if (*normalize_cmd) {
      const Lqca a = load_lqca(normalize_in);
      const NormalizedLqca normalized = normalize(a);
      const std::string doc = render_lqca(normalized.base());
      json scales;
      for (std::size_t w = 0; w < a.table_size(); ++w) {
        std::string word;
        for (StateId s : a.word_letters(w)) {
          if (!word.empty()) word += ' ';
          word += a.alphabet().name(s);
        }
        scales[word] = to_string(normalized.sq_scale(w));
      }
      if (normalize_out.empty()) {
        std::cout << doc;
      } else {
        write_file(normalize_out, doc);
        if (normalize_scales.empty()) normalize_scales = normalize_out + ".scales.json";
      }
      if (!normalize_scales.empty()) {
        write_file(normalize_scales, json{{"sq_scales", scales}}.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (*simplify_cmd) {
      const Lqca a = load_lqca(simplify_in);
      auto [simple, report] = simplify(a, simplify_limit);
      const std::string doc = render_lqca(simple);
      json report_obj{{"span", report.span},
                      {"expansion_factor", to_string(report.expansion_factor)},
                      {"n", to_string(report.original_size)},
                      {"n_simple", to_string(report.new_size)}};
      std::ostringstream text;
      text << "span: " << report.span
           << "  expansion factor: " << to_string(report.expansion_factor)
           << "  n: " << to_string(report.original_size)
           << "  n': " << to_string(report.new_size) << '\n';
      if (simplify_out.empty()) {
        std::cout << doc;
        std::cerr << (simplify_format == "json" ? report_obj.dump(2) + "\n" : text.str());
      } else {
        write_file(simplify_out, doc);
        std::cout << (simplify_format == "json" ? report_obj.dump(2) + "\n" : text.str());
      }
      return kExitOk;
    }

    if (*norm_cmd) {
      const Lqca a = load_lqca(norm_file);
      const Configuration c = parse_config(norm_config, a.alphabet());
      std::cout << to_string(oracle::column_sq_norm(a, c)) << '\n';
      return kExitOk;
    }

    if (*inner_cmd) {
      const Lqca a = load_lqca(inner_file);
      const Configuration c = parse_config(inner_config, a.alphabet());
      const Configuration c2 = parse_config(inner_config2, a.alphabet());
      ExactComplex value;
      if (inner_direct) {
        value = oracle::column_inner_product_direct(a, c, c2, Interval::of(inner_lo, inner_hi),
                                                    bound);
      } else {
        value = oracle::column_inner_product(a, c, c2);
      }
      std::cout << to_string(value) << '\n';
      return kExitOk;
    }

    if (*step_cmd) {
      const Lqca a = load_lqca(step_file);
      std::map<Configuration, ExactComplex> amps;
      Interval window = Interval::empty();
      auto add_term = [&](const Configuration& c, const ExactComplex& amp) {
        window = hull(window, c.idom());
        amps[c] += amp;
      };
      if (step_cmd->count("--config") > 0) {
        add_term(parse_config(step_config, a.alphabet()), ExactComplex(Rational(1)));
      }
      for (const std::string& term : step_terms) {
        auto colon = term.rfind(':');
        if (colon == std::string::npos) {
          throw Error("term must look like CONFIG:AMP, got '" + term + "'");
        }
        add_term(parse_config(term.substr(0, colon), a.alphabet()),
                 parse_complex(term.substr(colon + 1)));
      }
      if (amps.empty()) throw Error("step needs --config or at least one --term");
      const oracle::WindowSuperposition result =
          oracle::step(a, oracle::WindowSuperposition(window, std::move(amps)), bound);
      if (result.window().is_empty()) {
        std::cout << "window: empty\n";
      } else {
        std::cout << "window: [" << result.window().lo << "," << result.window().hi << "]\n";
      }
      for (const auto& [config, amp] : result.amps()) {
        std::cout << '"' << render_config(config, a.alphabet()) << "\" : " << to_string(amp)
                  << '\n';
      }
      return kExitOk;
    }

    if (*window_cmd) {
      const Lqca a = load_lqca(window_file);
      const auto violation = oracle::window_check(a, window_radius, bound);
      if (!violation) {
        std::cout << "no violation\n";
        return kExitOk;
      }
      if (const auto* norm = std::get_if<oracle::NormViolation>(&*violation)) {
        std::cout << "norm violation at \"" << render_config(norm->config, a.alphabet())
                  << "\": column squared norm " << to_string(norm->sq_norm) << '\n';
      } else {
        const auto& ortho = std::get<oracle::OrthogonalityViolation>(*violation);
        std::cout << "orthogonality violation at \"" << render_config(ortho.config1, a.alphabet())
                  << "\" and \"" << render_config(ortho.config2, a.alphabet())
                  << "\": inner product " << to_string(ortho.inner_product) << '\n';
      }
      return kExitReject;
    }

    if (*compose_cmd) {
      const Plqca p = parse_plqca(slurp(compose_in));
      const std::string doc = render_lqca(compose(p));
      if (compose_out.empty()) {
        std::cout << doc;
      } else {
        write_file(compose_out, doc);
      }
      return kExitOk;
    }

    if (*plqca_check_cmd) {
      const Plqca p = parse_plqca(slurp(plqca_check_in));
      const TheoremReport report = check_theorem_equivalence(p);
      if (plqca_check_format == "json") {
        std::cout << theorem_report_json(report).dump(2) << '\n';
      } else {
        std::cout << "Q unitary: " << (report.q_unitary ? "yes" : "no") << '\n'
                  << "well-formed: " << (report.well_formed ? "yes" : "no") << '\n'
                  << "consistent: " << (report.consistent ? "yes" : "no") << '\n';
      }
      return report.well_formed ? kExitOk : kExitReject;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitError;
}

}  // namespace qca::cli
