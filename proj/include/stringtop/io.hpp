#pragma once

// Input files and report formatting. Parse errors are InputError with a
// "<source>:<line>: " prefix.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "stringtop/goldman.hpp"
#include "stringtop/homology.hpp"
#include "stringtop/loop_models.hpp"
#include "stringtop/structure.hpp"

namespace stringtop {

/// `gen <name> <degree>` and `d <name> = <element>` lines; `#` starts a
/// comment. Validation failures surface as InputError or ModelError.
MinimalModel parse_model(std::istream& in, const std::string& source = "<input>");
MinimalModel parse_model_file(const std::filesystem::path& path);

/// `generators a b ...` and `cyclic-order a b a^- b^- ...`.
FatGraph parse_fatgraph(std::istream& in, const std::string& source = "<input>");
FatGraph parse_fatgraph_file(const std::filesystem::path& path);

/// Loop space: `basis <name> <degree>`; string space: `string <name> <degree>`;
/// optional `dimension <d>`; operations `product a b = x`, `bracket a b = x`,
/// `delta a = x`, `E a = x` (x over the string basis), `M s = x`. Omitted
/// entries are zero; repeated entries are an error.
StructureTable parse_structure(std::istream& in, const std::string& source = "<input>");
StructureTable parse_structure_file(const std::filesystem::path& path);

/// Inverse of parse_structure (nonzero entries only, basis order).
std::string format_structure(const StructureTable& t);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string betti_tsv(const BettiTable& t);
std::string map_tsv(const std::vector<CohomologyMapReport>& rows);
std::string gysin_tsv(const GysinReport& r);
std::string bracket_tsv(const FatGraph& g, const BracketResult& r);

}  // namespace stringtop
