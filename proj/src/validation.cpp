#include "mdse/validation.hpp"

#include <unordered_set>

#include "mdse/error.hpp"

namespace mdse {

std::vector<std::string> ValidationReport::rule_ids() const {
  std::vector<std::string> ids;
  ids.reserve(violations.size());
  for (const auto& v : violations) ids.push_back(v.rule);
  return ids;
}

namespace {

// Kahn's algorithm with the ready set drained in ascending id order. Returns
// the residual indegree of every vertex; non-zero entries lie on or behind a
// directed cycle. Self-loops are skipped.
std::vector<std::size_t> kahn(const MdseGraph& graph, std::vector<NodeId>& order) {
  const std::size_t count = graph.vertex_count();
  const auto edges = graph.edges();
  std::vector<std::size_t> pending(count, 0);
  for (const Edge& e : edges) {
    if (e.src != e.dst) ++pending[e.dst.value];
  }
  order.clear();
  order.reserve(count);
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = static_cast<std::uint32_t>(count); v-- > 0;) {
    if (pending[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    const std::uint32_t v = ready.back();
    ready.pop_back();
    order.push_back(NodeId{v});
    for (std::uint32_t ei : graph.out_edges(NodeId{v})) {
      const Edge& e = edges[ei];
      if (e.src == e.dst) continue;
      if (--pending[e.dst.value] == 0) ready.push_back(e.dst.value);
    }
  }
  return pending;
}

}  // namespace

std::optional<std::vector<NodeId>> topological_order(const MdseGraph& graph) {
  std::vector<NodeId> order;
  kahn(graph, order);
  if (order.size() != graph.vertex_count()) return std::nullopt;
  return order;
}

namespace {

void add(ValidationReport& report, std::string_view rule, std::optional<NodeId> vertex,
         std::optional<std::size_t> edge, std::string message) {
  report.violations.push_back({std::string(rule), vertex, edge, std::move(message)});
}

std::string edge_text(const Edge& e) {
  return std::to_string(e.src.value) + " -> " + std::to_string(e.dst.value);
}

void check_edges(const MdseGraph& graph, ValidationReport& report) {
  std::unordered_set<std::uint64_t> seen;
  const auto edges = graph.edges();
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    const auto key = (static_cast<std::uint64_t>(e.src.value) << 32) | e.dst.value;
    if (!seen.insert(key).second) {
      add(report, rules::kMultiEdge, e.src, ei, "repeated edge " + edge_text(e));
      continue;
    }
    const VertexClass from = graph.vertex_class(e.src);
    const VertexClass to = graph.vertex_class(e.dst);
    if (e.src == e.dst) {
      add(report, rules::kLoop, e.src, ei, "self-loop on " + describe(graph, e.src));
    } else if (to == VertexClass::Hypothesis) {
      add(report, rules::kHypothesisIndegree, e.dst, ei,
          "edge " + edge_text(e) + " enters " + describe(graph, e.dst));
    } else if (from == VertexClass::PrimeEvent) {
      add(report, rules::kPrimeOutdegree, e.src, ei,
          "edge " + edge_text(e) + " leaves " + describe(graph, e.src));
    } else if (from == VertexClass::StarEvent && to == VertexClass::StarEvent) {
      add(report, rules::kEdgeDirection, e.src, ei,
          "edge " + edge_text(e) + " joins two Star events");
    }
  }
}

void check_isolated(const MdseGraph& graph, ValidationReport& report) {
  for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
    const NodeId id{v};
    if (graph.indegree(id) + graph.outdegree(id) == 0) {
      add(report, rules::kIsolatedVertex, id, std::nullopt, describe(graph, id) + " has no edges");
    }
  }
}

void check_cycle(const MdseGraph& graph, ValidationReport& report) {
  std::vector<NodeId> order;
  const auto pending = kahn(graph, order);
  if (order.size() == graph.vertex_count()) return;
  for (std::uint32_t v = 0; v < pending.size(); ++v) {
    if (pending[v] != 0) {
      add(report, rules::kCycle, NodeId{v}, std::nullopt,
          "directed cycle reaches " + describe(graph, NodeId{v}));
      return;
    }
  }
}

std::string range_text(std::size_t actual, std::size_t lo, std::size_t hi) {
  return std::to_string(actual) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

void check_strict(const MdseGraph& graph, ValidationReport& report) {
  const GraphShape& s = graph.shape();
  for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
    const NodeId id{v};
    const std::size_t in = graph.indegree(id);
    const std::size_t out = graph.outdegree(id);
    switch (graph.vertex_class(id)) {
      case VertexClass::Hypothesis: {
        const std::size_t hi = graph.group_of(id).role == GroupRole::Star ? s.star_hypotheses
                                                                          : s.prime_hypotheses;
        if (out < 1 || out > hi) {
          add(report, rules::kHypothesisOutdegree, id, std::nullopt,
              describe(graph, id) + " outdegree " + range_text(out, 1, hi));
        }
        break;
      }
      case VertexClass::StarEvent:
        if (in < 1 || in > s.star_hypotheses) {
          add(report, rules::kStarIndegree, id, std::nullopt,
              describe(graph, id) + " indegree " + range_text(in, 1, s.star_hypotheses));
        }
        if (out < 1 || out > s.k) {
          add(report, rules::kStarOutdegree, id, std::nullopt,
              describe(graph, id) + " outdegree " + range_text(out, 1, s.k));
        }
        break;
      case VertexClass::PrimeEvent: {
        const std::size_t hi = s.i + s.prime_hypotheses;
        if (in < 2 || in > hi) {
          add(report, rules::kPrimeIndegree, id, std::nullopt,
              describe(graph, id) + " indegree " + range_text(in, 2, hi));
        }
        break;
      }
    }
  }
  if (s.v < kMinStrictVertices) {
    add(report, rules::kVertexCount, std::nullopt, std::nullopt,
        "graph has " + std::to_string(s.v) + " vertices, needs at least 4");
  }
  if (s.e < kMinStrictEdges) {
    add(report, rules::kEdgeCount, std::nullopt, std::nullopt,
        "graph has " + std::to_string(s.e) + " edges, needs at least 3");
  }
}

}  // namespace

ValidationReport validate(const MdseGraph& graph, ValidationMode mode) {
  ValidationReport report;
  report.mode = mode;
  check_edges(graph, report);
  check_isolated(graph, report);
  check_cycle(graph, report);
  if (mode == ValidationMode::Strict) {
    check_strict(graph, report);
  }
  report.passed = report.violations.empty();
  return report;
}

DegreeBounds degree_bounds(const MdseGraph& graph, NodeId id) {
  const GraphShape& s = graph.shape();
  DegreeBounds b;
  b.indegree = graph.indegree(id);
  b.outdegree = graph.outdegree(id);
  switch (graph.vertex_class(id)) {
    case VertexClass::Hypothesis:
      b.min_allowed = 1;
      b.max_allowed = graph.group_of(id).role == GroupRole::Star ? s.star_hypotheses
                                                                 : s.prime_hypotheses;
      break;
    case VertexClass::StarEvent:
      b.min_allowed = 2;
      b.max_allowed = s.k + s.star_hypotheses;
      break;
    case VertexClass::PrimeEvent:
      b.min_allowed = 2;
      b.max_allowed = s.i + s.prime_hypotheses;
      break;
  }
  return b;
}

HandshakeReport handshake_report(const MdseGraph& graph) {
  HandshakeReport r;
  for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
    r.sum_indegree += graph.indegree(NodeId{v});
    r.sum_outdegree += graph.outdegree(NodeId{v});
  }
  r.edge_count = graph.edges().size();
  const std::uint64_t n = graph.shape().n;
  const std::uint64_t m = graph.shape().m;
  r.paper_lhs = n + 2 * m;
  r.paper_rhs = (n + m) == 0 ? 0 : (n + m) * (n + m - 1);
  return r;
}

std::uint64_t max_edge_bound(std::uint64_t n, std::uint64_t m) noexcept {
  return (n + m) * (n + m + 1) / 2;
}

std::string_view to_string(ValidationMode mode) noexcept {
  return mode == ValidationMode::Strict ? "strict" : "relaxed";
}

}  // namespace mdse
