#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "helpers.hpp"

using namespace qca::testutil;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string data_file(const std::string& name) { return data_dir() + "/" + name; }

CommandResult run_qca(const std::string& args) {
  return run_command(qca_binary() + " " + args);
}

void copy_to(const std::string& src, const fs::path& dst) {
  fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
}

}  // namespace

TEST_CASE("check accepts the balanced automaton") {
  const CommandResult r = run_qca("check " + data_file("balanced.lqca"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("well-formed") != std::string::npos);
  CHECK(r.out.find("NOT") == std::string::npos);
}

TEST_CASE("check rejects with a machine-readable witness") {
  const CommandResult r =
      run_qca("check " + data_file("unbalanced.lqca") + " --format json --emit-witness");
  CHECK(r.exit_code == 1);
  const json report = json::parse(r.out);
  CHECK(report["well_formed"] == false);
  CHECK(report["norm_check"] == "fail");
  CHECK(report["orthogonality_check"] == "skipped");
  CHECK(report["witness"]["kind"] == "norm");
  CHECK(report["witness"]["config"] == "p@0");
  CHECK(report["witness"]["sq_norm"] == "1/4");
}

TEST_CASE("the json report schema is stable") {
  const CommandResult r = run_qca("check " + data_file("balanced.lqca") + " --format json");
  const json report = json::parse(r.out);
  std::set<std::string> keys;
  for (const auto& [key, value] : report.items()) keys.insert(key);
  CHECK(keys == std::set<std::string>{"well_formed", "n", "r", "span", "expansion_factor",
                                      "norm_check", "orthogonality_check", "witness",
                                      "elapsed_ms"});
  CHECK(report["n"] == 8);
  CHECK(report["r"] == 2);
  CHECK(report["span"] == 2);
  CHECK(report["expansion_factor"] == "1");
  CHECK(report["witness"].is_null());
}

TEST_CASE("orthogonality failures carry the pair witness") {
  const CommandResult r =
      run_qca("check " + data_file("nonortho.lqca") + " --format json --emit-witness");
  CHECK(r.exit_code == 1);
  const json report = json::parse(r.out);
  CHECK(report["norm_check"] == "pass");
  CHECK(report["orthogonality_check"] == "fail");
  CHECK(report["witness"]["kind"] == "orthogonality");
  CHECK(report["witness"]["config"] == "");
  CHECK(report["witness"]["config2"] == "p@0");
  CHECK(report["witness"]["inner_product"] == "3/5");
}

TEST_CASE("parse and usage errors exit with 2") {
  CHECK(run_qca("check /nonexistent/path.lqca").exit_code == 2);
  CHECK(run_qca("frobnicate x").exit_code == 2);
  CHECK(run_qca("check").exit_code == 2);

  const CommandResult missing = run_qca("check " + data_file("bad_missing.lqca"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("missing rule") != std::string::npos);

  const CommandResult quiescent = run_qca("check " + data_file("bad_quiescent.lqca"));
  CHECK(quiescent.exit_code == 2);
  CHECK(quiescent.err.find("line 4") != std::string::npos);
}

TEST_CASE("batch mode sorts, summarizes and propagates failure") {
  const std::string scratch = make_scratch_dir();
  copy_to(data_file("balanced.lqca"), scratch + "/a_balanced.lqca");
  copy_to(data_file("unbalanced.lqca"), scratch + "/b_unbalanced.lqca");
  copy_to(data_file("shift.lqca"), scratch + "/c_shift.lqca");

  const CommandResult r = run_qca("check " + scratch + " --format json");
  CHECK(r.exit_code == 1);
  const json report = json::parse(r.out);
  CHECK(report["checked"] == 3);
  CHECK(report["well_formed_count"] == 2);
  CHECK(report["files"].size() == 3);
  CHECK(report["files"][0]["file"] == "a_balanced.lqca");
  CHECK(report["files"][1]["file"] == "b_unbalanced.lqca");
  CHECK(report["files"][1]["report"]["well_formed"] == false);

  SUBCASE("all-accepting directories exit 0") {
    fs::remove(scratch + "/b_unbalanced.lqca");
    CHECK(run_qca("check " + scratch).exit_code == 0);
  }
  SUBCASE("parse errors dominate the exit code") {
    copy_to(data_file("bad_missing.lqca"), scratch + "/d_bad.lqca");
    CHECK(run_qca("check " + scratch).exit_code == 2);
  }
  fs::remove_all(scratch);
}

TEST_CASE("oracle subcommands print exact values") {
  CHECK(run_qca("oracle inner " + data_file("nonortho.lqca") + " --config \"\" --config2 p@0").out ==
        "3/5\n");
  CHECK(run_qca("oracle inner " + data_file("nonortho.lqca") +
            " --config \"\" --config2 p@0 --direct --lo -1 --hi 0")
            .out == "3/5\n");
  CHECK(run_qca("oracle norm " + data_file("unbalanced.lqca") + " --config p@0").out == "1/4\n");
  CHECK(run_qca("oracle norm " + data_file("balanced.lqca") + " --config \"\"").out == "1\n");

  const CommandResult step =
      run_qca("oracle step " + data_file("balanced.lqca") + " --config p@0");
  CHECK(step.exit_code == 0);
  CHECK(step.out.find("window: [-1,0]") != std::string::npos);
  CHECK(step.out.find("\"p@0\" : 1") != std::string::npos);

  const CommandResult window =
      run_qca("oracle window " + data_file("unbalanced.lqca") + " --radius 1");
  CHECK(window.exit_code == 1);
  CHECK(window.out.find("p@0") != std::string::npos);
  CHECK(window.out.find("1/4") != std::string::npos);
  CHECK(run_qca("oracle window " + data_file("balanced.lqca") + " --radius 2").exit_code == 0);
}

TEST_CASE("the resource bound environment variable is honored") {
  const CommandResult r =
      run_command("QCA_RESOURCE_BOUND=4 " + qca_binary() + " oracle window " +
                  data_file("balanced.lqca") + " --radius 2");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("bound") != std::string::npos);
}

TEST_CASE("simplify writes an equivalent simple document") {
  const std::string scratch = make_scratch_dir();
  const std::string out_path = scratch + "/simple.lqca";
  const CommandResult r =
      run_qca("simplify " + data_file("gap.lqca") + " -o " + out_path + " --format json");
  CHECK(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["span"] == 3);
  CHECK(report["expansion_factor"] == "4/3");
  CHECK(report["n"] == "8");
  CHECK(report["n_simple"] == "16");
  CHECK(run_qca("check " + out_path).exit_code == 0);
  fs::remove_all(scratch);
}

TEST_CASE("normalize writes unit-norm rules plus a scales sidecar") {
  const std::string scratch = make_scratch_dir();
  const std::string out_path = scratch + "/normalized.lqca";
  CHECK(run_qca("normalize " + data_file("balanced.lqca") + " -o " + out_path).exit_code == 0);

  std::ifstream sidecar(out_path + ".scales.json");
  REQUIRE(sidecar.good());
  const json scales = json::parse(sidecar);
  for (const auto& [word, scale] : scales["sq_scales"].items()) {
    CHECK(scale == "1");
  }
  CHECK(run_qca("check " + out_path).exit_code == 0);

  // every rule of the written document has unit norm
  const CommandResult normalized_norm = run_qca("oracle norm " + out_path + " --config p@0");
  CHECK(normalized_norm.out == "1\n");
  fs::remove_all(scratch);
}

TEST_CASE("plqca subcommands") {
  CHECK(run_qca("plqca check " + data_file("rotation.plqca")).exit_code == 0);
  CHECK(run_qca("plqca check " + data_file("identity.plqca")).exit_code == 0);

  const CommandResult broken =
      run_qca("plqca check " + data_file("perturbed.plqca") + " --format json");
  CHECK(broken.exit_code == 1);
  const json report = json::parse(broken.out);
  CHECK(report["q_unitary"] == false);
  CHECK(report["well_formed"] == false);
  CHECK(report["consistent"] == true);

  const std::string scratch = make_scratch_dir();
  const std::string out_path = scratch + "/composed.lqca";
  CHECK(run_qca("plqca compose " + data_file("rotation.plqca") + " -o " + out_path).exit_code == 0);
  CHECK(run_qca("check " + out_path).exit_code == 0);
  fs::remove_all(scratch);
}

TEST_CASE("full-report mode surfaces both failing checks") {
  const CommandResult quick = run_qca("check " + data_file("bothfail.lqca") + " --format json");
  CHECK(json::parse(quick.out)["orthogonality_check"] == "skipped");

  const CommandResult full =
      run_qca("check " + data_file("bothfail.lqca") + " --format json --full-report");
  CHECK(full.exit_code == 1);
  const json report = json::parse(full.out);
  CHECK(report["norm_check"] == "fail");
  CHECK(report["orthogonality_check"] == "fail");
}

TEST_CASE("trivial automata check through the CLI") {
  CHECK(run_qca("check " + data_file("rotation3.lqca")).exit_code == 0);
}

TEST_CASE("span limits are adjustable from the command line") {
  const std::string scratch = make_scratch_dir();
  const std::string path = scratch + "/wide.lqca";
  std::ofstream out(path);
  out << "states q p\nquiescent q\nneighborhood 0 3\nrule q q -> q:1\n"
         "rule q p -> q:1\nrule p q -> p:1\nrule p p -> p:1\n";
  out.close();
  CHECK(run_qca("check " + path).exit_code == 0);  // span 4 within the default 12
  const CommandResult tightened = run_qca("check " + path + " --span-limit 3");
  CHECK(tightened.exit_code == 2);
  CHECK(tightened.err.find("span") != std::string::npos);
  fs::remove_all(scratch);
}
