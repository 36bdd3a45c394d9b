#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <string>

#include "helpers.hpp"
#include "qca/format.hpp"

using namespace qca;
using namespace qca::testutil;

namespace {

const char* kBalancedDoc = R"(# comments and blank lines are ignored
states q p
quiescent q

neighborhood 0 1
rule q q -> q:1
rule q p -> q:1/2   # norm 1/2
rule p q -> p:2
rule p p -> p:1
)";

std::size_t error_line(const std::function<void()>& parse) {
  try {
    parse();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parsing the balanced document") {
  const Lqca a = parse_lqca(kBalancedDoc);
  CHECK(a == make_balanced());
}

TEST_CASE("decimal amplitudes convert exactly") {
  const Lqca a = parse_lqca(
      "states q p\nquiescent q\nneighborhood 0 1\n"
      "rule q q -> q:1\nrule q p -> q:0.5\nrule p q -> p:2\nrule p p -> p:1\n");
  CHECK(a == make_balanced());
  CHECK(render_lqca(a).find("q:1/2") != std::string::npos);
}

TEST_CASE("distinct parser diagnostics carry line numbers") {
  SUBCASE("missing rule names the word") {
    try {
      parse_lqca("states q p\nquiescent q\nneighborhood 0 1\nrule q q -> q:1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("missing rule for word 'q p'") != std::string::npos);
    }
  }
  SUBCASE("quiescent condition") {
    const std::string doc =
        "states q p\nquiescent q\nneighborhood 0 1\n"
        "rule q q -> p:1\nrule q p -> q:1\nrule p q -> q:1\nrule p p -> q:1\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("duplicate rule") {
    const std::string doc =
        "states q p\nquiescent q\nneighborhood 0 1\n"
        "rule q q -> q:1\nrule q q -> q:1\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 5);
  }
  SUBCASE("unknown state in a rule word") {
    const std::string doc = "states q p\nquiescent q\nneighborhood 0 1\nrule q x -> q:1\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("unknown quiescent state") {
    CHECK(error_line([&] { parse_lqca("states q p\nquiescent x\n"); }) == 2);
  }
  SUBCASE("non-increasing neighborhood") {
    CHECK(error_line([&] { parse_lqca("states q p\nquiescent q\nneighborhood 1 0\n"); }) == 3);
  }
  SUBCASE("zero-norm rule") {
    const std::string doc = "states q p\nquiescent q\nneighborhood 0 1\nrule q p ->\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("explicit zero amplitude") {
    const std::string doc = "states q p\nquiescent q\nneighborhood 0 1\nrule q p -> q:0 p:1\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("duplicate target in one rule") {
    const std::string doc =
        "states q p\nquiescent q\nneighborhood 0 1\nrule q p -> q:1/2 q:1/2\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("malformed amplitude") {
    const std::string doc = "states q p\nquiescent q\nneighborhood 0 1\nrule q p -> q:zz\n";
    CHECK(error_line([&] { parse_lqca(doc); }) == 4);
  }
  SUBCASE("duplicate state names") {
    CHECK(error_line([&] { parse_lqca("states q q\n"); }) == 1);
  }
  SUBCASE("sections out of order") {
    CHECK(error_line([&] { parse_lqca("quiescent q\nstates q p\n"); }) == 1);
  }
  SUBCASE("missing sections report the end of the file") {
    CHECK(error_line([&] { parse_lqca("states q p\n"); }) == 2);
  }
}

TEST_CASE("documents round-trip exactly") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Lqca a = random_lqca(rng, 2 + trial % 2, {0, 1});
    CHECK(parse_lqca(render_lqca(a)) == a);
  }
  // complex amplitudes and a sparse neighborhood
  LocalSuperposition mixed = LocalSuperposition::zero(2);
  mixed.amps[0] = ExactComplex(Rational(1, 2), Rational(-1, 2));
  mixed.amps[1] = ExactComplex(Rational(0), Rational(1));
  const Lqca complex_a(Alphabet({"q", "p"}, 0), Neighborhood({-2, 1}),
                       {LocalSuperposition::basis(2, 0), mixed,
                        LocalSuperposition::basis(2, 1), LocalSuperposition::basis(2, 0)});
  CHECK(parse_lqca(render_lqca(complex_a)) == complex_a);
}

TEST_CASE("configuration specs") {
  const Alphabet ab({"q", "p"}, 0);
  CHECK(parse_config("", ab).empty());
  CHECK(parse_config("  ", ab).empty());

  const Configuration p0 = parse_config("p@0", ab);
  CHECK(p0.idom() == Interval::of(0, 0));
  CHECK(p0.at_or(0, 0) == 1);

  const Configuration multi = parse_config("q,p,p@-1", ab);
  CHECK(multi == Configuration::from_cells({{0, 1}, {1, 1}}, 0));

  CHECK(render_config(multi, ab) == "p,p@0");
  CHECK(render_config(Configuration{}, ab) == "");
  const Configuration gap = Configuration::from_cells({{-2, 1}, {0, 1}}, 0);
  CHECK(render_config(gap, ab) == "p,q,p@-2");
  CHECK(parse_config(render_config(gap, ab), ab) == gap);

  CHECK_THROWS_AS(parse_config("x@0", ab), Error);
  CHECK_THROWS_AS(parse_config("p@", ab), Error);
  CHECK_THROWS_AS(parse_config("p", ab), Error);
  CHECK_THROWS_AS(parse_config("p@1x", ab), Error);
}

TEST_CASE("partitioned documents round-trip") {
  const char* doc = R"(plqca v1
factor z a b
neighborhood 0
Q z <- z : 1
Q a <- a : 3/5
Q a <- b : 4/5
Q b <- a : -4/5
Q b <- b : 3/5
)";
  const Plqca p = parse_plqca(doc);
  CHECK(p.factors().count() == 1);
  CHECK(p.qmatrix().at(1, 1) == ExactComplex(Rational(3, 5)));
  CHECK(p.qmatrix().at(0, 1).is_zero());
  CHECK(parse_plqca(render_plqca(p)) == p);
  CHECK(is_unitary(p.qmatrix()));
}

TEST_CASE("partitioned document diagnostics") {
  SUBCASE("header") {
    CHECK(error_line([&] { parse_plqca("plqca v2\nfactor a b\n"); }) == 1);
  }
  SUBCASE("factor names may not contain dots") {
    CHECK(error_line([&] { parse_plqca("plqca v1\nfactor a.b c\nneighborhood 0\n"); }) == 2);
  }
  SUBCASE("entry shape") {
    const std::string doc = "plqca v1\nfactor a b\nneighborhood 0\nQ a b : 1\n";
    CHECK(error_line([&] { parse_plqca(doc); }) == 4);
  }
  SUBCASE("duplicate entries") {
    const std::string doc =
        "plqca v1\nfactor a b\nneighborhood 0\nQ a <- a : 1\nQ a <- a : 1\n";
    CHECK(error_line([&] { parse_plqca(doc); }) == 5);
  }
  SUBCASE("unknown composed state") {
    const std::string doc = "plqca v1\nfactor a b\nneighborhood 0\nQ c <- a : 1\n";
    CHECK(error_line([&] { parse_plqca(doc); }) == 4);
  }
  SUBCASE("quiescent column enforced at the end") {
    const std::string doc = "plqca v1\nfactor a b\nneighborhood 0\nQ b <- a : 1\nQ a <- b : 1\n";
    CHECK(error_line([&] { parse_plqca(doc); }) == 6);
  }
  SUBCASE("factor count must match the neighborhood") {
    const std::string doc =
        "plqca v1\nfactor a b\nneighborhood 0 1\nQ a <- a : 1\nQ b <- b : 1\n";
    CHECK(error_line([&] { parse_plqca(doc); }) == 6);
  }
}

TEST_CASE("composed automata render with dotted names and parse back") {
  const Plqca p = parse_plqca(
      "plqca v1\nfactor 0 1\nfactor 0 1\nneighborhood 0 1\n"
      "Q 0.0 <- 0.0 : 1\nQ 0.1 <- 0.1 : 1\nQ 1.0 <- 1.0 : 1\nQ 1.1 <- 1.1 : 1\n");
  const Lqca composed = compose(p);
  const std::string doc = render_lqca(composed);
  CHECK(parse_lqca(doc) == composed);
  CHECK(doc.find("0.1") != std::string::npos);
}
