#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <sstream>

#include "stringtop/bv.hpp"
#include "stringtop/coderivation.hpp"
#include "stringtop/goldman.hpp"
#include "stringtop/homology.hpp"
#include "stringtop/io.hpp"
#include "stringtop/loop_models.hpp"

namespace stringtop::cli {

namespace {

struct Config {
  std::string model, space = "loop", surface, a, b, structure, out, kind;
  std::string arities = "2,3";
  int cutoff = 10;
  std::size_t trials = 200, max_len = 6, word_len = 3;
  std::uint64_t seed = 1;
};

/// Report text plus verdict.
struct Result {
  std::string text;
  int code = kPass;
};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string violation_line(const Violation& v) {
  return "violation\t" + v.identity + "\t" + join(v.witnesses, ",") + "\t" + v.lhs + "\t" + v.rhs + "\n";
}

std::string check_lines(const CheckReport& r) {
  std::string s;
  for (const auto& name : r.checked) s += "ok\t" + name + "\n";
  if (r.violation) s += violation_line(*r.violation);
  return s;
}

std::string model_violation_line(const ModelViolation& v) {
  return "violation\t" + to_string(v.kind) + "\t" + v.generator + "\t" + v.detail + "\n";
}

std::vector<std::size_t> parse_arities(const std::string& text) {
  std::vector<std::size_t> ks;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    unsigned long k = 0;
    try {
      k = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || k < 2) throw InputError("arities must be integers >= 2, got '" + text + "'");
    ks.push_back(k);
  }
  if (ks.empty()) throw InputError("no arities given");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

/// Parse failures of the model file are input errors.
MinimalModel load_model(const std::string& path) {
  try {
    return parse_model_file(path);
  } catch (const ModelError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Result betti(const Config& c) {
  const auto m = load_model(c.model);
  if (c.space == "loop") return {betti_tsv(betti_table(build_loop_model(m).loop.d, c.cutoff))};
  if (c.space == "based") return {betti_tsv(betti_table(build_loop_model(m).based, c.cutoff))};
  const auto e = build_equivariant_model(build_loop_model(m).loop);
  return {betti_tsv(betti_table(e.d, c.cutoff))};
}

Result loop_model(const Config& c) {
  const auto m = load_model(c.model);
  const auto lm = build_loop_model(m);
  const Cohomology h(lm.loop.d, c.cutoff);
  const auto delta = CochainMap::derivation(lm.loop.delta);
  std::vector<CohomologyMapReport> rows;
  for (int i = 0; i <= c.cutoff; ++i) rows.push_back(induced_map(delta, h, h, i));
  return {map_tsv(rows)};
}

Result string_model(const Config& c) {
  const auto m = load_model(c.model);
  const auto e = build_equivariant_model(build_loop_model(m).loop);
  const Cohomology hs(e.d, c.cutoff);
  const Cohomology hl(e.loop.d, c.cutoff);
  const auto r = CochainMap::algebra_map(e.restriction);
  std::vector<CohomologyMapReport> rows;
  for (int i = 0; i <= c.cutoff; ++i) rows.push_back(induced_map(r, hs, hl, i));
  return {map_tsv(rows)};
}

Result gysin(const Config& c) {
  const auto m = load_model(c.model);
  const auto report = gysin_report(build_equivariant_model(build_loop_model(m).loop), c.cutoff);
  return {gysin_tsv(report), report.ok() ? kPass : kViolation};
}

Result goldman(const Config& c) {
  const auto g = parse_fatgraph_file(c.surface);
  return {bracket_tsv(g, goldman_bracket(g, cyclic_reduce(parse_word(g, c.a)), cyclic_reduce(parse_word(g, c.b))))};
}

Result jacobi(const Config& c) {
  const auto g = parse_fatgraph_file(c.surface);
  if (c.max_len == 0) throw InputError("--max-len must be at least 1");
  const auto r = jacobi_fuzz(g, c.trials, c.max_len, c.seed);
  if (r.pass) return {"pass\n"};
  std::string s = "fail\n";
  const auto& ws = *r.counterexample;
  for (std::size_t k = 0; k < ws.size(); ++k) s += "word" + std::to_string(k + 1) + "\t" + to_string(g, ws[k]) + "\n";
  s += "# lhs\n" + bracket_tsv(g, r.lhs) + "# rhs\n" + bracket_tsv(g, r.rhs);
  return {s, kViolation};
}

Result verify(const Config& c) {
  const auto table = parse_structure_file(c.structure);
  if (c.kind == "gerstenhaber") {
    // A table with Δ but no bracket is checked with its derived bracket.
    if (table.bracket.empty() && !table.delta.empty()) {
      const auto r = check_gerstenhaber(with_derived_bracket(table));
      return {"bracket\tderived from delta\n" + check_lines(r), r.ok() ? kPass : kViolation};
    }
    const auto r = check_gerstenhaber(table);
    return {check_lines(r), r.ok() ? kPass : kViolation};
  }
  if (c.kind == "bv") {
    const auto r = check_bv(table);
    std::string s = check_lines(r);
    auto verdict = [](bool holds) { return holds ? "pass" : "fail"; };
    if (r.derivation_form && r.seven_term_form)
      s += std::string("formulations\t") + (r.formulations_agree() ? "agree" : "disagree") + "\tderivation=" +
           verdict(*r.derivation_form) + "\tseven-term=" + verdict(*r.seven_term_form) + "\n";
    return {s, r.ok() && r.formulations_agree() ? kPass : kViolation};
  }

  const auto ks = parse_arities(c.arities);
  const auto sb = string_brackets(table, ks.back());
  if (sb.precondition) return {violation_line(*sb.precondition), kViolation};
  if (c.kind == "string-brackets") {
    std::string s;
    for (const auto& [ij, v] : sb.table.bracket)
      s += "bracket\t" + sb.table.basis.name(ij.first) + "\t" + sb.table.basis.name(ij.second) + "\t" +
           to_string(sb.table.basis, v) + "\n";
    s += check_lines(sb.report);
    return {s, sb.ok() ? kPass : kViolation};
  }

  // coderivations
  if (c.word_len < ks.back()) throw InputError("--word-len must be at least the largest arity");
  std::vector<CoderivationRep> reps;
  for (const auto& m : sb.mbar)
    if (std::find(ks.begin(), ks.end(), m.arity) != ks.end()) reps.push_back(m);
  std::vector<std::vector<std::size_t>> lambdas;
  for (auto k : ks) lambdas.push_back({k});
  if (ks.size() > 1) lambdas.push_back(ks);
  const auto rel = coderivation_relations(reps, c.word_len, lambdas);
  std::string s;
  for (const auto& r : rel.relations)
    s += r.violation ? violation_line(*r.violation) : "ok\t" + r.name + "\t" + std::to_string(r.words_checked) + "\n";
  const auto eq = jacobi_coderivation_equiv(sb.table, std::max<std::size_t>(c.word_len, 3));
  s += std::string("jacobi-equivalence\t") + (eq.agree() ? "agree" : "disagree") + "\n";
  return {s, rel.ok() && eq.agree() ? kPass : kViolation};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop and string homology computations"};
  app.require_subcommand(1);
  Config c;

  auto add_model = [&](CLI::App* s) { s->add_option("--model", c.model, "minimal model file")->required(); };
  auto add_cutoff = [&](CLI::App* s) {
    s->add_option("--cutoff", c.cutoff, "highest degree")->check(CLI::NonNegativeNumber);
  };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "write the report to this file"); };

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of a loop, string or based-loop model");
  add_model(betti_cmd);
  betti_cmd->add_option("--space", c.space)->check(CLI::IsMember({"loop", "string", "based"}));
  add_cutoff(betti_cmd);
  add_out(betti_cmd);

  auto* loop_cmd = app.add_subcommand("loop-model", "rank of Delta on loop-model cohomology");
  add_model(loop_cmd);
  add_cutoff(loop_cmd);
  add_out(loop_cmd);

  auto* string_cmd = app.add_subcommand("string-model", "restriction from string to loop cohomology");
  add_model(string_cmd);
  add_cutoff(string_cmd);
  add_out(string_cmd);

  auto* gysin_cmd = app.add_subcommand("gysin", "exact sequence between string and loop cohomology");
  add_model(gysin_cmd);
  add_cutoff(gysin_cmd);
  add_out(gysin_cmd);

  auto* goldman_cmd = app.add_subcommand("goldman", "Goldman bracket of two cyclic words");
  goldman_cmd->add_option("--surface", c.surface, "fat graph file")->required();
  goldman_cmd->add_option("--a", c.a)->required();
  goldman_cmd->add_option("--b", c.b)->required();
  add_out(goldman_cmd);

  auto* fuzz_cmd = app.add_subcommand("jacobi-fuzz", "random Jacobi checks for the Goldman bracket");
  fuzz_cmd->add_option("--surface", c.surface, "fat graph file")->required();
  fuzz_cmd->add_option("--trials", c.trials);
  fuzz_cmd->add_option("--max-len", c.max_len);
  fuzz_cmd->add_option("--seed", c.seed);
  add_out(fuzz_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "identity checks on a structure table");
  verify_cmd->add_option("kind", c.kind)
      ->required()
      ->check(CLI::IsMember({"gerstenhaber", "bv", "string-brackets", "coderivations"}));
  verify_cmd->add_option("--structure", c.structure, "structure file")->required();
  verify_cmd->add_option("--arities", c.arities, "comma-separated arities, e.g. 2,3");
  verify_cmd->add_option("--word-len", c.word_len, "longest wedge word checked");
  add_out(verify_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Result result;
  try {
    if (betti_cmd->parsed()) result = betti(c);
    else if (loop_cmd->parsed()) result = loop_model(c);
    else if (string_cmd->parsed()) result = string_model(c);
    else if (gysin_cmd->parsed()) result = gysin(c);
    else if (goldman_cmd->parsed()) result = goldman(c);
    else if (fuzz_cmd->parsed()) result = jacobi(c);
    else result = verify(c);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ModelError& e) {
    result = {model_violation_line(e.violation()), kViolation};
  }

  if (c.out.empty()) {
    out << result.text;
  } else {
    try {
      write_file_atomic(c.out, result.text);
    } catch (const InputError& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return result.code;
}

}  // namespace stringtop::cli
