#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdse/graph.hpp"

namespace mdse {

/// Relaxed: structural sanity only. Strict: adds the minimum/maximum degree
/// bounds and the V >= 4, E >= 3 floor of the MDSE definition.
enum class ValidationMode { Relaxed, Strict };

namespace rules {
inline constexpr std::string_view kLoop = "loop";
inline constexpr std::string_view kMultiEdge = "multi-edge";
inline constexpr std::string_view kHypothesisIndegree = "hypothesis-indegree";
inline constexpr std::string_view kPrimeOutdegree = "prime-outdegree";
inline constexpr std::string_view kEdgeDirection = "edge-direction";
inline constexpr std::string_view kIsolatedVertex = "isolated-vertex";
inline constexpr std::string_view kCycle = "cycle";
// Strict only.
inline constexpr std::string_view kHypothesisOutdegree = "hypothesis-outdegree";
inline constexpr std::string_view kStarIndegree = "star-indegree";
inline constexpr std::string_view kStarOutdegree = "star-outdegree";
inline constexpr std::string_view kPrimeIndegree = "prime-indegree";
inline constexpr std::string_view kVertexCount = "vertex-count";
inline constexpr std::string_view kEdgeCount = "edge-count";
}  // namespace rules

inline constexpr std::size_t kMinStrictVertices = 4;
inline constexpr std::size_t kMinStrictEdges = 3;

struct Violation {
  std::string rule;
  std::optional<NodeId> vertex;
  std::optional<std::size_t> edge;
  std::string message;
};

struct ValidationReport {
  ValidationMode mode = ValidationMode::Relaxed;
  std::vector<Violation> violations;
  bool passed = true;

  std::vector<std::string> rule_ids() const;
};

ValidationReport validate(const MdseGraph& graph, ValidationMode mode);

/// Vertices in topological order, or nullopt when a directed cycle exists.
/// Self-loops are ignored here; validate() reports them separately.
std::optional<std::vector<NodeId>> topological_order(const MdseGraph& graph);

/// Actual degrees of a vertex plus the total-degree interval allowed for its
/// class under Strict validation.
struct DegreeBounds {
  std::size_t indegree = 0;
  std::size_t outdegree = 0;
  std::size_t min_allowed = 0;
  std::size_t max_allowed = 0;

  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

DegreeBounds degree_bounds(const MdseGraph& graph, NodeId id);

/// The true digraph handshake sums next to the two quantities the MDSE
/// handshake argument compares (n + 2m against (n + m)(n + m - 1)).
struct HandshakeReport {
  std::uint64_t sum_indegree = 0;
  std::uint64_t sum_outdegree = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t paper_lhs = 0;
  std::uint64_t paper_rhs = 0;

  bool identity_holds() const noexcept {
    return sum_indegree == edge_count && sum_outdegree == edge_count;
  }
  friend bool operator==(const HandshakeReport&, const HandshakeReport&) = default;
};

HandshakeReport handshake_report(const MdseGraph& graph);

/// (n + m)(n + m + 1) / 2. Reference value only; validate() never enforces it.
std::uint64_t max_edge_bound(std::uint64_t n, std::uint64_t m) noexcept;

std::string_view to_string(ValidationMode mode) noexcept;

}  // namespace mdse
