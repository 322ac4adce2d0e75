#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace mdse {

/// Dense vertex identifier, assigned in insertion order starting at zero.
struct NodeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Index of a hypothesis group in insertion order.
struct GroupId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(GroupId, GroupId) = default;
};

/// Absolute tolerance used for every "sums to one" check.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Star groups feed Star events; Prime groups feed Prime events.
enum class GroupRole { Star, Prime };

/// Star events depend only on hypotheses. Prime events depend on hypotheses
/// and/or Star events and never have children.
enum class EventKind { Star, Prime };

enum class VertexClass { Hypothesis, StarEvent, PrimeEvent };

struct Hypothesis {
  NodeId id;
  double prior = 0.0;
};

/// Complete group of mutually exclusive hypotheses.
struct HypothesisGroup {
  GroupId id;
  GroupRole role = GroupRole::Star;
  std::vector<Hypothesis> members;
};

struct EventNode {
  NodeId id;
  EventKind kind = EventKind::Star;
  std::optional<std::string> label;
};

/// weight = P(dst occurs | src holds).
struct Edge {
  NodeId src;
  NodeId dst;
  double weight = 0.0;
};

struct GraphShape {
  std::size_t n = 0;  // events
  std::size_t m = 0;  // hypotheses
  std::size_t i = 0;  // Star events
  std::size_t k = 0;  // Prime events
  std::size_t e = 0;  // edges
  std::size_t v = 0;  // n + m
  std::size_t star_hypotheses = 0;   // members of Star groups
  std::size_t prime_hypotheses = 0;  // members of Prime groups

  friend bool operator==(const GraphShape&, const GraphShape&) = default;
};

struct VertexRecord {
  VertexClass cls = VertexClass::Hypothesis;
  std::uint32_t index = 0;   // group index for hypotheses, event index otherwise
  std::uint32_t member = 0;  // position inside the group (hypotheses only)
};

/// Frozen, immutable hypothesis/event graph. Copies share storage.
class MdseGraph {
 public:
  MdseGraph();

  const GraphShape& shape() const noexcept;
  std::span<const HypothesisGroup> groups() const noexcept;
  std::span<const EventNode> events() const noexcept;
  std::span<const Edge> edges() const noexcept;

  std::size_t vertex_count() const noexcept;
  bool contains(NodeId id) const noexcept;
  /// Throws UnknownId.
  const VertexRecord& vertex(NodeId id) const;
  VertexClass vertex_class(NodeId id) const { return vertex(id).cls; }
  bool is_event(NodeId id) const;

  const HypothesisGroup& group(GroupId id) const;
  const HypothesisGroup& group_of(NodeId hypothesis) const;
  double prior(NodeId hypothesis) const;

  /// Edge indices entering / leaving a vertex, ordered by the opposite
  /// endpoint's id (ties keep insertion order).
  std::span<const std::uint32_t> in_edges(NodeId id) const;
  std::span<const std::uint32_t> out_edges(NodeId id) const;
  std::size_t indegree(NodeId id) const { return in_edges(id).size(); }
  std::size_t outdegree(NodeId id) const { return out_edges(id).size(); }

  /// Result of Relaxed validation, computed once at freeze time.
  bool relaxed_valid() const noexcept;

  /// A frozen graph is already frozen.
  MdseGraph freeze() const { return *this; }

  /// New graph with one group's priors replaced; structure is shared.
  MdseGraph with_group_priors(GroupId group, std::span<const double> priors) const;

  bool same_instance(const MdseGraph& other) const noexcept { return data_ == other.data_; }

  struct Data;

 private:
  explicit MdseGraph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;

  friend class GraphBuilder;
};

/// Enforced rejects structural mistakes at add_edge time. Deferred accepts
/// any edge between existing vertices so validate() can report it.
enum class ConstructionChecks { Enforced, Deferred };

/// Single-writer builder. After freeze() further mutation throws Frozen.
class GraphBuilder {
 public:
  explicit GraphBuilder(ConstructionChecks checks = ConstructionChecks::Enforced);

  std::vector<NodeId> add_hypothesis_group(std::span<const double> priors, GroupRole role);
  NodeId add_event(EventKind kind, std::optional<std::string> label = std::nullopt);
  void add_edge(NodeId src, NodeId dst, double weight);

  /// Idempotent: repeated calls return the same graph instance.
  MdseGraph freeze();

  bool frozen() const noexcept { return frozen_.has_value(); }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

 private:
  void ensure_mutable() const;

  ConstructionChecks checks_;
  std::vector<HypothesisGroup> groups_;
  std::vector<EventNode> events_;
  std::vector<Edge> edges_;
  std::vector<VertexRecord> vertices_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::optional<MdseGraph> frozen_;
};

std::string_view to_string(GroupRole role) noexcept;
std::string_view to_string(EventKind kind) noexcept;
std::string describe(const MdseGraph& graph, NodeId id);

}  // namespace mdse
