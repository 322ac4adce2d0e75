#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mdse/graph.hpp"

namespace mdse {

inline constexpr int kDocumentVersion = 1;

/// Parses a graph document:
///
///   {"version": 1,
///    "groups": [{"role": "star"|"prime", "priors": [...]}, ...],
///    "events": [{"kind": "star"|"prime", "label": "optional"}, ...],
///    "edges":  [{"src": id, "dst": id, "weight": w}, ...]}
///
/// Ids are implicit: hypotheses first in group/member order, then events.
/// Errors carry the JSON path of the offending element. With
/// ConstructionChecks::Deferred structural problems (loops, duplicate edges,
/// illegal directions) are kept in the graph for validate() to report.
MdseGraph parse_graph(std::string_view document,
                      ConstructionChecks checks = ConstructionChecks::Enforced);

/// Canonical text form: fixed key order, hypotheses renumbered first, edges
/// sorted by (src, dst), shortest round-trip number formatting. Identical
/// graphs serialize to identical bytes.
std::string serialize_graph(const MdseGraph& graph);

MdseGraph load_graph_file(const std::filesystem::path& path,
                          ConstructionChecks checks = ConstructionChecks::Enforced);
void save_graph_file(const std::filesystem::path& path, const MdseGraph& graph);

}  // namespace mdse
