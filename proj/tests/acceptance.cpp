// Acceptance suite: one line per criterion, exit status 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "stringtop/bv.hpp"
#include "stringtop/coderivation.hpp"
#include "stringtop/goldman.hpp"
#include "stringtop/io.hpp"
#include "stringtop/loop_models.hpp"

using namespace testsupport;

namespace {

const std::string kFixtures = STRINGTOP_FIXTURE_DIR;

struct Invocation {
  std::vector<std::string> args;
  int code;
  std::string out;
};

std::vector<Invocation> g_invocations;

/// Failed expectations of the criterion being run.
std::vector<std::string> g_failures;

void expect(bool ok, const std::string& what) {
  if (!ok) g_failures.push_back(what);
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

Invocation cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = stringtop::cli::run(args, out, err);
  g_invocations.push_back({args, code, out.str()});
  return g_invocations.back();
}

/// Rows of a TSV report, skipping comment lines.
std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(tsv);
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with("#")) continue;
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, '\t');) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

// ---------------------------------------------------------------- criteria

void sphere_loop_betti() {
  const auto r = cli({"betti", "--model", fixture("s2.min"), "--space", "loop", "--cutoff", "15"});
  expect(r.code == 0, "exit status");
  const auto t = rows(r.out);
  expect(t.size() == 16, "sixteen rows");
  for (std::size_t i = 0; i < t.size(); ++i)
    expect(t[i] == std::vector<std::string>{std::to_string(i), "1"}, "row " + std::to_string(i));
}

void sphere_delta_parity() {
  const auto r = cli({"loop-model", "--model", fixture("s2.min"), "--cutoff", "15"});
  expect(r.code == 0, "exit status");
  const auto t = rows(r.out);
  expect(t.size() == 16, "sixteen rows");
  for (const auto& row : t) {
    const int m = std::stoi(row.at(0));
    if (m == 0) continue;
    const std::string want = m % 2 == 0 ? "1" : "0";
    expect(row.at(3) == want, "rank of Delta on H^" + row[0] + " is " + row[3]);
  }
}

void sphere_gysin() {
  const auto r = cli({"gysin", "--model", fixture("s2.min"), "--cutoff", "12"});
  expect(r.code == 0, "exit status");
  const auto t = rows(r.out);
  expect(t.size() == 13, "thirteen rows");
  for (const auto& row : t) {
    const int i = std::stoi(row.at(0));
    expect(row.at(6) == "1", "exactness at degree " + row[0]);
    const bool even = i % 2 == 0;
    expect(row.at(4) == (even && i > 0 ? "0" : "1"), "restriction rank at degree " + row[0]);
    expect(row.at(5) == (even && i > 0 ? "1" : "0"), "connecting rank at degree " + row[0]);
  }
  const auto report =
      gysin_report(build_equivariant_model(build_loop_model(parse_model_file(fixture("s2.min"))).loop), 12);
  expect(report.exact(), "rank identities");
  expect(report.factorization(), "restriction after connecting equals Delta; connecting after restriction vanishes");
  for (const auto& f : report.failures) expect(false, f.check + " at degree " + std::to_string(f.degree));
}

void three_sphere() {
  auto r = cli({"betti", "--model", fixture("s3.min"), "--space", "based", "--cutoff", "14"});
  expect(r.code == 0, "exit status (based)");
  auto t = rows(r.out);
  expect(t.size() == 15, "fifteen rows (based)");
  for (const auto& row : t)
    expect(row.at(1) == (std::stoi(row.at(0)) % 2 == 0 ? "1" : "0"), "based Betti in degree " + row[0]);

  r = cli({"betti", "--model", fixture("s3.min"), "--space", "loop", "--cutoff", "12"});
  expect(r.code == 0, "exit status (loop)");
  t = rows(r.out);
  expect(t.size() == 13, "thirteen rows (loop)");
  for (const auto& row : t) expect(row.at(1) == (row.at(0) == "1" ? "0" : "1"), "loop Betti in degree " + row[0]);
}

void model_validators() {
  for (const char* name : {"s2.min", "s3.min", "s2xs3.min", "cp2.min"}) {
    const std::string n = name;
    const auto m = parse_model_file(fixture(name));
    const auto lm = build_loop_model(m);
    const int top = lm.loop.max_generator_degree() + 2;
    const auto loop = validate_model(lm.loop.d, &lm.loop.delta, top);
    expect(loop.ok(), n + ": loop model " + (loop.ok() ? "" : loop.first()->generator));
    const auto e = build_equivariant_model(lm.loop);
    const auto eq = validate_model(e.d, nullptr, top + 2);
    expect(eq.ok(), n + ": equivariant model " + (eq.ok() ? "" : eq.first()->generator));
    expect(cli({"loop-model", "--model", fixture(name), "--cutoff", "6"}).code == 0, n + ": loop-model command");
    expect(cli({"string-model", "--model", fixture(name), "--cutoff", "6"}).code == 0, n + ": string-model command");
  }
}

void goldman_suite() {
  for (const char* name : {"torus.fat", "genus2.fat"}) {
    const std::string n = name;
    const auto g = parse_fatgraph_file(fixture(name));
    std::mt19937_64 rng(20240601);
    auto word = [&] { return random_cyclic_word(g, rng, 6); };

    for (int k = 0; k < 500; ++k) {
      const auto u = word(), v = word();
      BracketResult neg;
      for (const auto& [w, c] : goldman_bracket(g, v, u)) add_term(neg, w, -c);
      expect(goldman_bracket(g, u, v) == neg, n + ": antisymmetry " + to_string(g, u) + " , " + to_string(g, v));
    }
    for (int k = 0; k < 200; ++k) {
      const auto u = word(), v = word();
      const auto base = goldman_bracket(g, u, v);
      const auto& lu = u.letters();
      const auto& lv = v.letters();
      for (std::size_t i = 0; i < lu.size(); ++i) {
        const auto ru = rotate(lu, i), rv = rotate(lv, (i * 7 + k) % lv.size());
        expect(goldman_bracket(g, std::span<const Letter>(ru), std::span<const Letter>(rv)) == base,
               n + ": rotation " + to_string(g, u));
      }
      expect(goldman_bracket(g, u, CyclicWord{}).empty(), n + ": bracket with the trivial word");
      expect(goldman_bracket(g, u, u).empty(), n + ": self bracket");
    }
    const auto fuzz = cli({"jacobi-fuzz", "--surface", fixture(name), "--trials", "200", "--max-len", "6", "--seed", "1"});
    expect(fuzz.code == 0 && fuzz.out == "pass\n", n + ": Jacobi on 200 triples");
  }
  const auto r = cli({"goldman", "--surface", fixture("torus.fat"), "--a", "a", "--b", "b"});
  expect(r.out == "1\ta b\n", "torus [a,b] = a b, got '" + r.out + "'");
}

void bv_suite() {
  auto r = cli({"verify", "bv", "--structure", fixture("circle.struct")});
  expect(r.code == 0, "circle passes the BV checks");
  r = cli({"verify", "gerstenhaber", "--structure", fixture("circle.struct")});
  expect(r.code == 0 && r.out.starts_with("bracket\tderived from delta"), "derived bracket is Gerstenhaber");

  const auto circle = parse_structure_file(fixture("circle.struct"));
  const auto hand = parse_structure_file(fixture("circle_bracket.struct"));
  expect(derived_bracket(circle) == hand.bracket, "derived bracket matches the hand bracket");
  expect(check_gerstenhaber(hand).ok(), "hand bracket is Gerstenhaber");

  for (const char* name : {"circle.struct", "torus.struct", "ext_odd.struct", "third_order.struct"}) {
    const auto rep = check_bv(parse_structure_file(fixture(name)));
    expect(rep.derivation_form.has_value() && rep.formulations_agree(),
           std::string(name) + ": both formulations evaluated and agree");
  }

  struct Case {
    const char* kind;
    const char* file;
    const char* line;
  };
  for (const Case& c : {Case{"bv", "delta_square.struct", "violation\tDelta^2 = 0\tone\ty\t0"},
                        Case{"gerstenhaber", "ext_odd_bad_bracket.struct", "violation\tdegree\tbracket e e\t"},
                        Case{"bv", "third_order.struct", "violation\tdeviation is a derivation (second slot)\tx,x,x\t"}}) {
    r = cli({"verify", c.kind, "--structure", fixture(c.file)});
    expect(r.code == 1 && r.out.find(c.line) != std::string::npos, std::string(c.file) + " witness");
  }
}

void coderivation_suite() {
  auto r = cli({"verify", "string-brackets", "--structure", fixture("circle.struct")});
  expect(r.code == 0 && r.out.find("ok\tantisymmetry\nok\tJacobi\n") != std::string::npos,
         "circle string bracket antisymmetry and Jacobi");

  std::mt19937_64 rng(3);
  const auto basis = three_letters();
  for (std::size_t k : {2u, 3u}) {
    const auto m = random_rep(rng, basis, k);
    for (const auto& w : canonical_words(basis, 4))
      expect(extend_coderivation(m, w) == extension_oracle(m, w), "extension oracle on " + to_string(basis, w));
  }

  for (const char* name : {"circle.struct", "torus.struct"}) {
    r = cli({"verify", "coderivations", "--structure", fixture(name), "--arities", "2,3", "--word-len", "4"});
    expect(r.code == 0, std::string(name) + ": relations through word length 4");
    for (const char* rel : {"m_2 o m_2 = 0", "m_3 o m_3 = 0", "m_2 o m_3 + m_3 o m_2 = 0", "delta_{2}^2 = 0",
                            "delta_{3}^2 = 0", "delta_{2,3}^2 = 0"})
      expect(r.out.find(std::string("ok\t") + rel) != std::string::npos, std::string(name) + ": " + rel);
  }

  const auto bad = jacobi_coderivation_equiv(sl2(3), 4);
  expect(!bad.square_zero() && bad.square.violation->witnesses.size() == 3 && bad.agree(),
         "perturbed bracket gives a length-3 witness");
}

void determinism() {
  const auto recorded = g_invocations;
  for (const auto& inv : recorded) {
    std::ostringstream out, err;
    const int code = stringtop::cli::run(inv.args, out, err);
    expect(code == inv.code && out.str() == inv.out, "repeat differs: " + join(inv.args));
  }
  expect(!recorded.empty(), "invocations recorded");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "S2 loop-space Betti numbers", 5, sphere_loop_betti},
      {2, "S2 Delta parity", 5, sphere_delta_parity},
      {3, "S2 exact sequence", 10, sphere_gysin},
      {4, "S3 based and free loop Betti numbers", 5, three_sphere},
      {5, "model validators", 5, model_validators},
      {6, "Goldman bracket suite", 60, goldman_suite},
      {7, "BV and Gerstenhaber suite", 10, bv_suite},
      {8, "coderivation suite", 30, coderivation_suite},
      {9, "determinism", 60, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    g_failures.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run();
    } catch (const std::exception& e) {
      g_failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) g_failures.push_back("took longer than " + std::to_string(int(c.limit_s)) + " s");
    const bool ok = g_failures.empty();
    failed += !ok;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << timing << ")\n";
    for (std::size_t k = 0; k < g_failures.size() && k < 5; ++k) std::cout << "      " << g_failures[k] << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
