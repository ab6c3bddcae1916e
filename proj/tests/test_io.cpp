#include <gtest/gtest.h>

#include <functional>

#include "nkoszul/cli.hpp"
#include "nkoszul/random.hpp"

using namespace nkoszul;

namespace {

const Rationals Q;

std::string fixture(const std::string& name) { return std::string(NKOSZUL_ALGEBRA_DIR) + "/" + name; }

/// Line and column of the ParseError thrown by `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string& text) {
  try {
    parse_definition(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return {0, 0};
}

bool all_numbers_exact(const Report& r) {
  if (r.is_number_float()) return false;
  if (r.is_object() || r.is_array())
    for (const auto& v : r) if (!all_numbers_exact(v)) return false;
  return true;
}

}  // namespace

TEST(Parse, NilpotentGenerator) {
  const auto def = parse_definition("field rational\ngenerators d\ndegree 3\nrelation 1*d.d.d\n");
  EXPECT_EQ(def.generators, (std::vector<std::string>{"d"}));
  EXPECT_EQ(def.degree, 3u);
  EXPECT_EQ(to_algebra(def, Q), nilpotent_unit(Q, 3));
}

TEST(Parse, Commutator) {
  const auto def = parse_definition("generators x y\ndegree 2\nrelation 1*x.y - 1*y.x\n");
  EXPECT_EQ(def.field, "rational");
  ASSERT_EQ(def.relations.size(), 1u);
  EXPECT_EQ(def.relations[0][1].coefficient, -1);
  EXPECT_EQ(to_algebra(def, Q), commutative_polynomials(Q, 2));
}

TEST(Parse, CommentsFractionsAndImplicitCoefficients) {
  const auto def = parse_definition(
      "# a comment\n"
      "generators x y   # trailing\n"
      "\n"
      "degree 2\n"
      "relation x.x - 3/6*y.y + 2*x.y\r\n");
  ASSERT_EQ(def.relations.size(), 1u);
  const auto& rel = def.relations[0];
  EXPECT_EQ(rel[0].coefficient, 1);
  EXPECT_EQ(rel[1].coefficient, mpq_class(-1, 2));
  EXPECT_EQ(rel[2].word, (std::vector<std::size_t>{0, 1}));
}

TEST(Parse, PrimeField) {
  const auto def = parse_definition("field gf:7\ngenerators a b\ndegree 2\nrelation 1/3*a.b + b.a\n");
  EXPECT_EQ(def.field, "gf:7");
  const PrimeField f(7);
  const auto a = to_algebra(def, f);
  // 1/3 = 5 mod 7, normalised to a.b + 3 b.a
  EXPECT_EQ(a.relations().basis()(0, 1), 1u);
  EXPECT_EQ(a.relations().basis()(0, 2), 3u);
}

TEST(ParseErrors, WrongWordLength) {
  EXPECT_EQ(error_at("generators x y\ndegree 2\nrelation 1*x.y.x\n"), std::make_pair(std::size_t{3}, std::size_t{12}));
}

TEST(ParseErrors, UnknownGenerator) {
  EXPECT_EQ(error_at("generators x y\ndegree 2\nrelation x.z\n"), std::make_pair(std::size_t{3}, std::size_t{12}));
}

TEST(ParseErrors, BadCoefficient) {
  EXPECT_EQ(error_at("generators x\ndegree 2\nrelation 1/0*x.x\n").first, 3u);
  EXPECT_EQ(error_at("generators x\ndegree 2\nrelation 2.5*x.x\n").first, 3u);
  EXPECT_EQ(error_at("generators x\ndegree 2\nrelation 1/*x.x\n").first, 3u);
  EXPECT_EQ(error_at("field gf:5\ngenerators x\ndegree 2\nrelation 1/5*x.x\n").first, 4u);
}

TEST(ParseErrors, NonPrimeModulus) {
  EXPECT_EQ(error_at("field gf:9\ngenerators x\ndegree 2\n"), std::make_pair(std::size_t{1}, std::size_t{7}));
  EXPECT_EQ(error_at("field real\ngenerators x\ndegree 2\n").first, 1u);
}

TEST(ParseErrors, Structure) {
  EXPECT_EQ(error_at("degree 2\nrelation x.x\n").first, 2u);
  EXPECT_EQ(error_at("generators x\n").first, 2u);
  EXPECT_EQ(error_at("generators x x\ndegree 2\n"), std::make_pair(std::size_t{1}, std::size_t{14}));
  EXPECT_EQ(error_at("generators x\ndegree 1\n").first, 2u);
  EXPECT_EQ(error_at("generators x\ndegree 2\nbogus\n"), std::make_pair(std::size_t{3}, std::size_t{1}));
  EXPECT_EQ(error_at("generators x\ndegree 2\nrelation x.x x.x\n").first, 3u);
  EXPECT_EQ(error_at("generators x\ndegree 2 3\n").first, 2u);
}

TEST(Serialize, RoundTrip) {
  const std::string text = "field rational\ngenerators x y\ndegree 2\nrelation 1*x.y - 1/2*y.x\nrelation -3*y.y\n";
  const auto def = parse_definition(text);
  EXPECT_EQ(serialize(def), text);
  EXPECT_EQ(parse_definition(serialize(def)), def);
}

TEST(Serialize, RandomRoundTrip) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = random_index(rng, 1, 3), N = random_index(rng, 2, 3);
    // rational coefficients with denominators
    const auto a = random_algebra(Q, d, N, rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("g" + std::to_string(i));
    const auto def = from_algebra(a, names);
    const auto back = parse_definition(serialize(def));
    EXPECT_EQ(back, def);
    EXPECT_EQ(to_algebra(back, Q), a);
  }
}

TEST(Serialize, PrimeFieldRoundTrip) {
  Rng rng(2);
  const PrimeField f(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_algebra(f, 2, 2, rng);
    const auto def = from_algebra(a, {"x", "y"});
    EXPECT_EQ(def.field, "gf:101");
    EXPECT_EQ(to_algebra(parse_definition(serialize(def)), f), a);
  }
}

TEST(Cli, HilbertOfNilpotentGenerator) {
  Options opt;
  opt.nmax = 5;
  const auto r = run("hilbert", {fixture("lambda3.alg")}, opt);
  EXPECT_EQ(r["results"]["dims"], Report({1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(r["parameters"]["nmax"], 5);
  EXPECT_EQ(r["parameters"]["seed"], 0);
}

TEST(Cli, DualOfPolynomialUnit) {
  const auto r = run("dual", {fixture("kt3.alg")}, {});
  std::string text;
  for (const auto& line : r["results"]["definition"]) text += line.get<std::string>() + "\n";
  EXPECT_EQ(to_algebra(parse_definition(text), Q), nilpotent_unit(Q, 3));
}

TEST(Cli, KoszulityOfCommutativePolynomials) {
  Options opt;
  opt.nmax = 6;
  const auto r = run("koszulity", {fixture("kxy.alg")}, opt);
  EXPECT_EQ(r["results"]["verdict"], "KoszulUpTo(6)");
  EXPECT_EQ(r["results"]["window"]["nmax"], 6);
}

TEST(Cli, EveryCommandRuns) {
  for (const auto& c : command_names()) {
    const bool two = c == "circ" || c == "bullet";
    std::vector<std::string> files{fixture("kxy.alg")};
    if (two) files.push_back(fixture("monomial.alg"));
    Options opt;
    opt.nmax = 4;
    opt.imax = 3;
    const auto r = run(c, files, opt);
    EXPECT_EQ(r["command"], c);
    EXPECT_TRUE(r.contains("results")) << c;
    EXPECT_FALSE(r.contains("timing_ms"));
    EXPECT_TRUE(all_numbers_exact(r)) << c;
  }
}

TEST(Cli, CircReportsProductLaw) {
  const auto r = run("circ", {fixture("kxy.alg"), fixture("kxy.alg")}, {});
  EXPECT_EQ(r["results"]["dims_match_products"], true);
  EXPECT_EQ(r["results"]["dims"][3], 16);
}

TEST(Cli, ContractedDefaults) {
  const auto r = run("contracted", {fixture("lambda3.alg")}, {});
  EXPECT_EQ(r["results"]["p"], 2);
  EXPECT_EQ(r["results"]["r"], 0);
}

TEST(Cli, PaddedRelationsAndReduce) {
  const auto l = run("lemma3", {fixture("monomial.alg")}, {});
  EXPECT_EQ(l["results"]["conclusion"], "NotEqual");
  const auto r = run("reduce", {fixture("kxy.alg")}, {});
  EXPECT_EQ(r["results"]["rewrites"], Report({"y.x -> 1*x.y"}));
  EXPECT_EQ(r["results"]["properties_hold"], true);
}

TEST(Cli, RejectsBadInput) {
  Options opt;
  opt.nmax = 0;
  EXPECT_THROW(run("hilbert", {fixture("kxy.alg")}, opt), std::invalid_argument);
  EXPECT_THROW(run("circ", {fixture("kxy.alg"), fixture("lambda3.alg")}, {}), DimensionError);
  EXPECT_THROW(run("circ", {fixture("kxy.alg")}, {}), std::invalid_argument);
  EXPECT_THROW(run("frobnicate", {fixture("kxy.alg")}, {}), std::invalid_argument);
  EXPECT_THROW(run("hilbert", {fixture("missing.alg")}, {}), std::invalid_argument);
  Options neg;
  neg.imax = -1;
  EXPECT_THROW(run("tor", {fixture("kxy.alg")}, neg), std::invalid_argument);
}

TEST(Cli, FieldOverride) {
  Options opt;
  opt.field = "gf:5";
  const auto r = run("hilbert", {fixture("heisenberg.alg")}, opt);
  EXPECT_EQ(r["field"], "gf:5");
  Options bad;
  bad.field = "gf:6";
  EXPECT_THROW(run("hilbert", {fixture("kxy.alg")}, bad), std::invalid_argument);
}

TEST(Cli, DeterministicRendering) {
  Options opt;
  opt.seed = 42;
  const auto a = run("tor", {fixture("heisenberg.alg")}, opt), b = run("tor", {fixture("heisenberg.alg")}, opt);
  EXPECT_EQ(render_text(a), render_text(b));
  EXPECT_EQ(render_json(a), render_json(b));
}

TEST(Cli, TextLayout) {
  Report r;
  r["command"] = "x";
  r["list"] = {1, 2, 3};
  r["empty"] = Report::array();
  r["table"] = {{1, 0}, {0, 1}};
  r["words"] = {"a", "b"};
  r["nested"] = {{"k", true}};
  EXPECT_EQ(render_text(r),
            "command: x\n"
            "list: 1,2,3\n"
            "empty: []\n"
            "table:\n"
            "  - 1,0\n"
            "  - 0,1\n"
            "words:\n"
            "  - a\n"
            "  - b\n"
            "nested:\n"
            "  k: true\n");
}
