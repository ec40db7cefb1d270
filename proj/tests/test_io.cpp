#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stringtop/coderivation.hpp"
#include "stringtop/io.hpp"
#include "structures.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const std::filesystem::path kFixtures = STRINGTOP_FIXTURE_DIR;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

StructureTable parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in, "t.struct");
}

}  // namespace

TEST(ModelFile, Sphere) {
  const auto m = parse_model_file(kFixtures / "s2.min");
  const auto& alg = *m.algebra();
  ASSERT_EQ(alg.size(), 2u);
  EXPECT_EQ(to_string(m.differential().apply(parse_element(m.algebra(), "y"))), "x^2");
}

TEST(ModelFile, EmptyFileIsThePoint) {
  const auto m = parse_model_file(kFixtures / "point.min");
  EXPECT_EQ(m.algebra()->size(), 0u);
  EXPECT_EQ(betti_table(m.differential(), 3).values, (std::vector<std::size_t>{1, 0, 0, 0}));
}

TEST(ModelFile, DegreeOneIsRejected) {
  const auto e = error_of([] { parse_model_file(kFixtures / "degree_one.min"); });
  EXPECT_NE(e.find("degree_one.min:1:"), std::string::npos) << e;
  EXPECT_NE(e.find("simply connected"), std::string::npos) << e;
}

TEST(ModelFile, SyntaxErrorCarriesLineNumber) {
  const auto e = error_of([] { parse_model_file(kFixtures / "syntax_error.min"); });
  EXPECT_NE(e.find("syntax_error.min:3:"), std::string::npos) << e;
}

TEST(ModelFile, ValidationErrorNamesGenerator) {
  try {
    parse_model_file(kFixtures / "square_nonzero.min");
    FAIL() << "expected a model error";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.violation().generator, "z");
  }
}

TEST(ModelFile, OtherErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return error_of([&] { parse_model(in, "m"); });
  };
  EXPECT_NE(parse("gen x 2\ngen x 4\n").find("m:2: duplicate generator"), std::string::npos);
  EXPECT_NE(parse("gen x 2\nd y = x\n").find("m:2: unknown generator 'y'"), std::string::npos);
  EXPECT_NE(parse("gen x 2\nd x = 0\nd x = 0\n").find("m:3:"), std::string::npos);
  EXPECT_NE(parse("gen x two\n").find("m:1: expected an integer"), std::string::npos);
  EXPECT_NE(parse("generator x 2\n").find("unknown keyword"), std::string::npos);
  EXPECT_EQ(parse("# comment only\n\ngen x 2  # trailing\n"), "");
}

TEST(FatGraphFile, Surfaces) {
  const auto torus = parse_fatgraph_file(kFixtures / "torus.fat");
  EXPECT_EQ(torus.genus(), 1);
  EXPECT_EQ(torus.boundary_components(), 1);
  const auto g2 = parse_fatgraph_file(kFixtures / "genus2.fat");
  EXPECT_EQ(g2.genus(), 2);
  const auto pants = parse_fatgraph_file(kFixtures / "pants.fat");
  EXPECT_EQ(pants.genus(), 0);
  EXPECT_EQ(pants.boundary_components(), 3);
}

TEST(FatGraphFile, AnnulusBracketsVanish) {
  const auto g = parse_fatgraph_file(kFixtures / "annulus.fat");
  EXPECT_EQ(g.genus(), 0);
  EXPECT_EQ(g.boundary_components(), 2);
  for (const char* u : {"a", "a a", "a^-", "a^- a^- a^-"})
    for (const char* v : {"a", "a a a", "a^-"})
      EXPECT_TRUE(goldman_bracket(g, cyclic_reduce(parse_word(g, u)), cyclic_reduce(parse_word(g, v))).empty());
}

TEST(FatGraphFile, HalfEdgeErrorsAreNamed) {
  auto e = error_of([] { parse_fatgraph_file(kFixtures / "missing_half_edge.fat"); });
  EXPECT_NE(e.find("'b^-' missing"), std::string::npos) << e;
  EXPECT_NE(e.find("missing_half_edge.fat:2:"), std::string::npos) << e;
  e = error_of([] { parse_fatgraph_file(kFixtures / "duplicate_half_edge.fat"); });
  EXPECT_NE(e.find("'a' repeats"), std::string::npos) << e;
}

TEST(StructureFile, CircleMatchesCodeFixture) {
  const auto t = parse_structure_file(kFixtures / "circle.struct");
  EXPECT_EQ(format_structure(t), format_structure(circle_table()));
  EXPECT_EQ(t.dimension, std::optional<int>(1));
  const auto b = parse_structure_file(kFixtures / "circle_bracket.struct");
  EXPECT_EQ(b.bracket, circle_hand_bracket());
}

TEST(StructureFile, TorusMatchesKernelQuotient) {
  const auto t = parse_structure_file(kFixtures / "torus.struct");
  EXPECT_EQ(format_structure(t), format_structure(with_kernel_quotient_string_space(torus_table(2))));
}

TEST(StructureFile, RoundTrip) {
  auto t = circle_table();
  t.bracket = circle_hand_bracket();
  t.delta[4] = Vec{{0, q(-1, 2)}};
  const auto again = parse_text(format_structure(t));
  EXPECT_EQ(format_structure(again), format_structure(t));
  EXPECT_EQ(again.delta.at(4).at(0), q(-1, 2));
}

TEST(StructureFile, Errors) {
  auto err = [](const std::string& text) { return error_of([&] { parse_text(text); }); };
  EXPECT_NE(err("basis a 0\nbasis a 1\n").find("t.struct:2: duplicate basis element"), std::string::npos);
  EXPECT_NE(err("basis a 0\nproduct a b = a\n").find("t.struct:2: unknown basis element 'b'"), std::string::npos);
  EXPECT_NE(err("basis a 0\nproduct a a = a\nproduct a a = 0\n").find("t.struct:3:"), std::string::npos);
  EXPECT_NE(err("basis a 0\ndelta a = 1\n").find("constant term"), std::string::npos);
  EXPECT_NE(err("basis a 0\ndelta a = a*a\n").find("products of basis"), std::string::npos);
  EXPECT_NE(err("basis a 0\nE a = a\n").find("unknown basis element 'a'"), std::string::npos);
  EXPECT_EQ(err("basis a 0\nproduct a a = 0\n"), "");
  EXPECT_TRUE(parse_text("basis a 0\nproduct a a = a - a\n").product.empty());
}

TEST(Reports, Formats) {
  EXPECT_EQ(betti_tsv(BettiTable{2, {1, 0, 3}}), "0\t1\n1\t0\n2\t3\n");
  CohomologyMapReport r;
  r.degree = 4;
  r.source_betti = 2;
  r.target_betti = 1;
  r.rank = 1;
  EXPECT_EQ(map_tsv({r}), "4\t2\t1\t1\n");
  const auto g = parse_fatgraph_file(kFixtures / "torus.fat");
  BracketResult b;
  add_term(b, cyclic_reduce(parse_word(g, "b a")), q(-1, 1));
  EXPECT_EQ(bracket_tsv(g, b), "-1\ta b\n");
}

TEST(Reports, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "stringtop_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.tsv";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
}
