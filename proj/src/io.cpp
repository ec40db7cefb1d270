#include "stringtop/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include "term_parser.hpp"

namespace stringtop {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;  // before '='
  std::string rhs;                 // after '=' (trimmed); empty when absent
  bool has_rhs = false;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    Line l{number, {}, {}, false};
    std::string head = raw;
    if (auto eq = raw.find('='); eq != std::string::npos) {
      head = raw.substr(0, eq);
      l.rhs = trim(raw.substr(eq + 1));
      l.has_rhs = true;
    }
    std::istringstream words(head);
    for (std::string w; words >> w;) l.words.push_back(w);
    out.push_back(std::move(l));
  }
  return out;
}

class Located {
 public:
  explicit Located(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const Line& l, const std::string& what) const {
    throw InputError(source_ + ":" + std::to_string(l.number) + ": " + what);
  }

  /// Runs `f`, prefixing any InputError with the line's location.
  template <class F>
  auto at(const Line& l, F&& f) const {
    try {
      return f();
    } catch (const InputError& e) {
      fail(l, e.what());
    }
  }

  int integer(const Line& l, const std::string& word) const {
    try {
      std::size_t used = 0;
      const int v = std::stoi(word, &used);
      if (used == word.size()) return v;
    } catch (const std::exception&) {
    }
    fail(l, "expected an integer, got '" + word + "'");
  }

  void expect(const Line& l, std::size_t words, bool rhs, const char* shape) const {
    if (l.words.size() != words || l.has_rhs != rhs) fail(l, std::string("expected '") + shape + "'");
    if (rhs && l.rhs.empty()) fail(l, "missing right-hand side");
  }

 private:
  std::string source_;
};

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

/// Rational combination of basis names.
Vec parse_vec(const GradedBasis& basis, const std::string& text) {
  Vec v;
  for (const auto& t : detail::parse_terms(text)) {
    if (t.factors.empty()) {
      if (t.coefficient != 0) throw InputError("constant term in '" + text + "'");
      continue;
    }
    if (t.factors.size() != 1 || t.factors[0].second != 1)
      throw InputError("products of basis elements are not allowed in '" + text + "'");
    const auto i = basis.find(t.factors[0].first);
    if (!i) throw InputError("unknown basis element '" + t.factors[0].first + "'");
    add_to(v, unit_vec(*i), t.coefficient);
  }
  return v;
}

}  // namespace

MinimalModel parse_model(std::istream& in, const std::string& source) {
  const Located loc(source);
  const auto lines = read_lines(in);
  std::vector<GeneratorSpec> gens;
  std::set<std::string> seen;
  for (const auto& l : lines) {
    if (l.words.empty()) loc.fail(l, "missing keyword");
    if (l.words[0] == "gen") {
      loc.expect(l, 3, false, "gen <name> <degree>");
      const int degree = loc.integer(l, l.words[2]);
      if (degree < 2)
        loc.fail(l, "generator '" + l.words[1] + "' has degree " + std::to_string(degree) +
                        "; simply connected models need degree >= 2");
      if (!seen.insert(l.words[1]).second) loc.fail(l, "duplicate generator '" + l.words[1] + "'");
      gens.push_back({l.words[1], degree});
    } else if (l.words[0] != "d") {
      loc.fail(l, "unknown keyword '" + l.words[0] + "'");
    }
  }
  const auto alg = Algebra::make(gens);
  DerivationTable d(alg, 1);
  std::set<std::string> defined;
  for (const auto& l : lines) {
    if (l.words[0] != "d") continue;
    loc.expect(l, 2, true, "d <name> = <element>");
    const std::string& name = l.words[1];
    if (!seen.count(name)) loc.fail(l, "unknown generator '" + name + "'");
    if (!defined.insert(name).second) loc.fail(l, "differential of '" + name + "' given twice");
    loc.at(l, [&] {
      d.set(name, parse_element(alg, l.rhs));
      return 0;
    });
  }
  return MinimalModel(std::move(d));
}

MinimalModel parse_model_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_model(in, path.filename().string());
}

FatGraph parse_fatgraph(std::istream& in, const std::string& source) {
  const Located loc(source);
  std::optional<std::vector<std::string>> generators, order;
  const Line* order_line = nullptr;
  const auto lines = read_lines(in);
  for (const auto& l : lines) {
    if (l.has_rhs || l.words.empty()) loc.fail(l, "unexpected '='");
    const bool is_order = l.words[0] == "cyclic-order";
    if (!is_order && l.words[0] != "generators") loc.fail(l, "unknown keyword '" + l.words[0] + "'");
    auto& slot = is_order ? order : generators;
    if (slot) loc.fail(l, "'" + l.words[0] + "' given twice");
    slot.emplace(l.words.begin() + 1, l.words.end());
    if (l.words[0] == "cyclic-order") order_line = &l;
  }
  if (!generators) throw InputError(source + ": missing 'generators' line");
  if (!order) throw InputError(source + ": missing 'cyclic-order' line");
  return loc.at(*order_line, [&] { return FatGraph(*generators, *order); });
}

FatGraph parse_fatgraph_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_fatgraph(in, path.filename().string());
}

StructureTable parse_structure(std::istream& in, const std::string& source) {
  const Located loc(source);
  const auto lines = read_lines(in);
  StructureTable t;
  for (const auto& l : lines) {
    if (l.words.empty()) loc.fail(l, "missing keyword");
    const auto& k = l.words[0];
    if (k == "basis" || k == "string") {
      loc.expect(l, 3, false, (k + " <name> <degree>").c_str());
      const int degree = loc.integer(l, l.words[2]);
      loc.at(l, [&] { return (k == "basis" ? t.loop : t.string).add(l.words[1], degree); });
    } else if (k == "dimension") {
      loc.expect(l, 2, false, "dimension <d>");
      if (t.dimension) loc.fail(l, "dimension given twice");
      t.dimension = loc.integer(l, l.words[1]);
    } else if (k != "product" && k != "bracket" && k != "delta" && k != "E" && k != "M") {
      loc.fail(l, "unknown keyword '" + k + "'");
    }
  }

  auto index = [&](const Line& l, const GradedBasis& b, const std::string& name) {
    const auto i = b.find(name);
    if (!i) loc.fail(l, "unknown basis element '" + name + "'");
    return *i;
  };
  for (const auto& l : lines) {
    const auto& k = l.words[0];
    if (k == "product" || k == "bracket") {
      loc.expect(l, 3, true, (k + " <a> <b> = <element>").c_str());
      auto& table = k == "product" ? t.product : t.bracket;
      const std::pair key{index(l, t.loop, l.words[1]), index(l, t.loop, l.words[2])};
      if (table.count(key)) loc.fail(l, k + " " + l.words[1] + " " + l.words[2] + " given twice");
      table.emplace(key, loc.at(l, [&] { return parse_vec(t.loop, l.rhs); }));
    } else if (k == "delta" || k == "E" || k == "M") {
      loc.expect(l, 2, true, (k + " <a> = <element>").c_str());
      auto& table = k == "delta" ? t.delta : k == "E" ? t.E : t.M;
      const GradedBasis& from = k == "M" ? t.string : t.loop;
      const GradedBasis& to = k == "E" ? t.string : t.loop;
      const auto key = index(l, from, l.words[1]);
      if (table.count(key)) loc.fail(l, k + " " + l.words[1] + " given twice");
      table.emplace(key, loc.at(l, [&] { return parse_vec(to, l.rhs); }));
    }
  }
  // Explicit zeros only served duplicate detection.
  auto empty = [](const auto& kv) { return kv.second.empty(); };
  for (auto* table : {&t.product, &t.bracket}) std::erase_if(*table, empty);
  for (auto* table : {&t.delta, &t.E, &t.M}) std::erase_if(*table, empty);
  return t;
}

StructureTable parse_structure_file(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_structure(in, path.filename().string());
}

std::string format_structure(const StructureTable& t) {
  std::string s;
  if (t.dimension) s += "dimension " + std::to_string(*t.dimension) + "\n";
  for (std::size_t i = 0; i < t.loop.size(); ++i)
    s += "basis " + t.loop.name(i) + " " + std::to_string(t.loop.degree(i)) + "\n";
  for (std::size_t i = 0; i < t.string.size(); ++i)
    s += "string " + t.string.name(i) + " " + std::to_string(t.string.degree(i)) + "\n";
  auto bilinear = [&](const char* op, const BilinearTable& table) {
    for (const auto& [ij, v] : table)
      s += std::string(op) + " " + t.loop.name(ij.first) + " " + t.loop.name(ij.second) + " = " +
           to_string(t.loop, v) + "\n";
  };
  auto linear = [&](const char* op, const LinearTable& table, const GradedBasis& from, const GradedBasis& to) {
    for (const auto& [i, v] : table) s += std::string(op) + " " + from.name(i) + " = " + to_string(to, v) + "\n";
  };
  bilinear("product", t.product);
  bilinear("bracket", t.bracket);
  linear("delta", t.delta, t.loop, t.loop);
  linear("E", t.E, t.loop, t.string);
  linear("M", t.M, t.string, t.loop);
  return s;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot replace '" + path.string() + "': " + ec.message());
  }
}

std::string betti_tsv(const BettiTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.values.size(); ++i) s += std::to_string(i) + "\t" + std::to_string(t.values[i]) + "\n";
  return s;
}

std::string map_tsv(const std::vector<CohomologyMapReport>& rows) {
  std::string s;
  for (const auto& r : rows)
    s += std::to_string(r.degree) + "\t" + std::to_string(r.source_betti) + "\t" + std::to_string(r.target_betti) +
         "\t" + std::to_string(r.rank) + "\n";
  return s;
}

std::string gysin_tsv(const GysinReport& r) {
  std::string s =
      "# ranks are taken on cohomology; over Q each equals the rank of the dual map on homology:\n"
      "# rank_u(i): H^{i-2}(string) -> H^i(string), dual to capping with the Euler class\n"
      "# rank_restr(i): H^i(string) -> H^i(loop), dual to E on H_i\n"
      "# rank_conn(i): H^i(loop) -> H^{i-1}(string), dual to M: H_{i-1}(string) -> H_i(loop)\n"
      "# degree\thString\thLoop\trank_u\trank_restr\trank_conn\texact\n";
  for (const auto& row : r.rows)
    s += std::to_string(row.degree) + "\t" + std::to_string(row.h_string) + "\t" + std::to_string(row.h_loop) + "\t" +
         std::to_string(row.rank_u) + "\t" + std::to_string(row.rank_restr) + "\t" + std::to_string(row.rank_conn) +
         "\t" + (row.exact ? "1" : "0") + "\n";
  for (const auto& f : r.failures)
    s += "# failure at degree " + std::to_string(f.degree) + ": " + f.check + " (" + f.witness + ")\n";
  return s;
}

std::string bracket_tsv(const FatGraph& g, const BracketResult& r) {
  std::string s;
  for (const auto& [w, c] : r) s += to_string(c) + "\t" + to_string(g, w) + "\n";
  return s;
}

}  // namespace stringtop
