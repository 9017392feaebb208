#pragma once

#include <string>

#include "lueq/constructors.hpp"
#include "lueq/state.hpp"

namespace lueq {

/// State files are JSON: {"dims": [...], "kind": "pure"|"mixed",
/// "data": ...} with complex entries as [re, im] pairs (a flat list for
/// pure states, a list of rows for mixed ones) and an optional "name".
/// Doubles round-trip bit-exactly.
MultiState read_state(const std::string& path);
void write_state(const MultiState& s, const std::string& path,
                 const std::string& name = "");

/// Unitary files: {"cut": [[...],[...]], "u_x": rows, "u_y": rows} with
/// 1-based party indices in the cut.
LocalUnitary read_unitary(const std::string& path, int n_parties);
void write_unitary(const LocalUnitary& lu, const std::string& path);

/// Parses "1|2,3" (1-based, X|Y) into a bipartition; the Y list, when
/// present, must be the complement.
Bipartition parse_cut(const std::string& text, int n_parties);

}  // namespace lueq
