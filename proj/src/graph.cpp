#include "mdse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mdse/error.hpp"
#include "mdse/validation.hpp"

namespace mdse {

struct MdseGraph::Data {
  std::vector<HypothesisGroup> groups;
  std::vector<EventNode> events;
  std::vector<Edge> edges;
  std::vector<VertexRecord> vertices;
  // CSR adjacency over edge indices.
  std::vector<std::uint32_t> in_offsets{0};
  std::vector<std::uint32_t> in_index;
  std::vector<std::uint32_t> out_offsets{0};
  std::vector<std::uint32_t> out_index;
  GraphShape shape;
  bool relaxed_valid = true;
};

namespace {

std::uint64_t edge_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src.value) << 32) | dst.value;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << " " << p << " is outside [0, 1]";
    fail(ErrorCode::OutOfRange, msg.str());
  }
}

// Bucket edge indices by one endpoint, then order each bucket by the other
// endpoint with a stable sort so ties keep insertion order.
void build_csr(const std::vector<Edge>& edges, std::size_t vertex_count, bool incoming,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& index) {
  offsets.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    ++offsets[(incoming ? e.dst : e.src).value + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  index.assign(edges.size(), 0);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    index[cursor[(incoming ? e.dst : e.src).value]++] = ei;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto first = index.begin() + offsets[v];
    auto last = index.begin() + offsets[v + 1];
    std::stable_sort(first, last, [&](std::uint32_t a, std::uint32_t b) {
      return incoming ? edges[a].src < edges[b].src : edges[a].dst < edges[b].dst;
    });
  }
}

GraphShape compute_shape(const MdseGraph::Data& d) {
  GraphShape s;
  for (const auto& g : d.groups) {
    s.m += g.members.size();
    (g.role == GroupRole::Star ? s.star_hypotheses : s.prime_hypotheses) += g.members.size();
  }
  for (const auto& ev : d.events) {
    ++(ev.kind == EventKind::Star ? s.i : s.k);
  }
  s.n = s.i + s.k;
  s.v = s.n + s.m;
  s.e = d.edges.size();
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// MdseGraph

MdseGraph::MdseGraph() : data_(std::make_shared<const Data>()) {}

const GraphShape& MdseGraph::shape() const noexcept { return data_->shape; }
std::span<const HypothesisGroup> MdseGraph::groups() const noexcept { return data_->groups; }
std::span<const EventNode> MdseGraph::events() const noexcept { return data_->events; }
std::span<const Edge> MdseGraph::edges() const noexcept { return data_->edges; }
std::size_t MdseGraph::vertex_count() const noexcept { return data_->vertices.size(); }
bool MdseGraph::relaxed_valid() const noexcept { return data_->relaxed_valid; }

bool MdseGraph::contains(NodeId id) const noexcept {
  return id.value < data_->vertices.size();
}

const VertexRecord& MdseGraph::vertex(NodeId id) const {
  if (!contains(id)) {
    fail(ErrorCode::UnknownId, "unknown vertex id " + std::to_string(id.value));
  }
  return data_->vertices[id.value];
}

bool MdseGraph::is_event(NodeId id) const {
  return vertex(id).cls != VertexClass::Hypothesis;
}

const HypothesisGroup& MdseGraph::group(GroupId id) const {
  if (id.value >= data_->groups.size()) {
    fail(ErrorCode::UnknownId, "unknown group id " + std::to_string(id.value));
  }
  return data_->groups[id.value];
}

const HypothesisGroup& MdseGraph::group_of(NodeId hypothesis) const {
  const VertexRecord& rec = vertex(hypothesis);
  if (rec.cls != VertexClass::Hypothesis) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(hypothesis.value) + " is not a hypothesis");
  }
  return data_->groups[rec.index];
}

double MdseGraph::prior(NodeId hypothesis) const {
  const VertexRecord& rec = vertex(hypothesis);
  if (rec.cls != VertexClass::Hypothesis) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(hypothesis.value) + " is not a hypothesis");
  }
  return data_->groups[rec.index].members[rec.member].prior;
}

std::span<const std::uint32_t> MdseGraph::in_edges(NodeId id) const {
  vertex(id);
  const auto& d = *data_;
  return {d.in_index.data() + d.in_offsets[id.value],
          d.in_index.data() + d.in_offsets[id.value + 1]};
}

std::span<const std::uint32_t> MdseGraph::out_edges(NodeId id) const {
  vertex(id);
  const auto& d = *data_;
  return {d.out_index.data() + d.out_offsets[id.value],
          d.out_index.data() + d.out_offsets[id.value + 1]};
}

MdseGraph MdseGraph::with_group_priors(GroupId group_id, std::span<const double> priors) const {
  const HypothesisGroup& old = group(group_id);
  if (priors.size() != old.members.size()) {
    fail(ErrorCode::LengthMismatch, "group " + std::to_string(group_id.value) + " has " +
                                        std::to_string(old.members.size()) + " members, got " +
                                        std::to_string(priors.size()) + " priors");
  }
  auto copy = std::make_shared<Data>(*data_);
  auto& members = copy->groups[group_id.value].members;
  for (std::size_t j = 0; j < members.size(); ++j) {
    check_probability(priors[j], "prior");
    members[j].prior = priors[j];
  }
  return MdseGraph(std::move(copy));
}

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder::GraphBuilder(ConstructionChecks checks) : checks_(checks) {}

void GraphBuilder::ensure_mutable() const {
  if (frozen_) {
    fail(ErrorCode::Frozen, "graph builder is frozen");
  }
}

std::vector<NodeId> GraphBuilder::add_hypothesis_group(std::span<const double> priors,
                                                       GroupRole role) {
  ensure_mutable();
  if (priors.empty()) {
    fail(ErrorCode::NotNormalized, "hypothesis group must have at least one member");
  }
  double total = 0.0;
  for (double p : priors) {
    check_probability(p, "prior");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "group priors sum to " << total << ", expected 1";
    fail(ErrorCode::NotNormalized, msg.str());
  }

  HypothesisGroup group;
  group.id = GroupId{static_cast<std::uint32_t>(groups_.size())};
  group.role = role;
  std::vector<NodeId> ids;
  ids.reserve(priors.size());
  for (std::size_t j = 0; j < priors.size(); ++j) {
    NodeId id{static_cast<std::uint32_t>(vertices_.size())};
    vertices_.push_back({VertexClass::Hypothesis, group.id.value, static_cast<std::uint32_t>(j)});
    group.members.push_back({id, priors[j]});
    ids.push_back(id);
  }
  groups_.push_back(std::move(group));
  return ids;
}

NodeId GraphBuilder::add_event(EventKind kind, std::optional<std::string> label) {
  ensure_mutable();
  NodeId id{static_cast<std::uint32_t>(vertices_.size())};
  vertices_.push_back({kind == EventKind::Star ? VertexClass::StarEvent : VertexClass::PrimeEvent,
                       static_cast<std::uint32_t>(events_.size()), 0});
  events_.push_back({id, kind, std::move(label)});
  return id;
}

void GraphBuilder::add_edge(NodeId src, NodeId dst, double weight) {
  ensure_mutable();
  for (NodeId id : {src, dst}) {
    if (id.value >= vertices_.size()) {
      fail(ErrorCode::UnknownId, "unknown vertex id " + std::to_string(id.value));
    }
  }
  check_probability(weight, "edge weight");
  const auto edge_name = [&] {
    return std::to_string(src.value) + " -> " + std::to_string(dst.value);
  };

  if (checks_ == ConstructionChecks::Enforced) {
    if (src == dst) {
      fail(ErrorCode::LoopDetected, "self-loop " + edge_name());
    }
    const VertexClass from = vertices_[src.value].cls;
    const VertexClass to = vertices_[dst.value].cls;
    if (to == VertexClass::Hypothesis) {
      fail(ErrorCode::BadDirection, "edge " + edge_name() + " targets a hypothesis");
    }
    if (from == VertexClass::PrimeEvent) {
      fail(ErrorCode::BadDirection, "edge " + edge_name() + " leaves a Prime event");
    }
    if (from == VertexClass::StarEvent && to == VertexClass::StarEvent) {
      fail(ErrorCode::BadDirection, "edge " + edge_name() + " joins two Star events");
    }
    if (!edge_keys_.insert(edge_key(src, dst)).second) {
      fail(ErrorCode::DuplicateEdge, "duplicate edge " + edge_name());
    }
  }
  edges_.push_back({src, dst, weight});
}

MdseGraph GraphBuilder::freeze() {
  if (frozen_) {
    return *frozen_;
  }
  auto data = std::make_shared<MdseGraph::Data>();
  data->groups = std::move(groups_);
  data->events = std::move(events_);
  data->edges = std::move(edges_);
  data->vertices = std::move(vertices_);
  build_csr(data->edges, data->vertices.size(), true, data->in_offsets, data->in_index);
  build_csr(data->edges, data->vertices.size(), false, data->out_offsets, data->out_index);
  data->shape = compute_shape(*data);
  edge_keys_.clear();

  MdseGraph graph{std::shared_ptr<const MdseGraph::Data>(data)};
  data->relaxed_valid = validate(graph, ValidationMode::Relaxed).passed;
  frozen_ = graph;
  return graph;
}

// ---------------------------------------------------------------------------

std::string_view to_string(GroupRole role) noexcept {
  return role == GroupRole::Star ? "star" : "prime";
}

std::string_view to_string(EventKind kind) noexcept {
  return kind == EventKind::Star ? "star" : "prime";
}

std::string describe(const MdseGraph& graph, NodeId id) {
  if (!graph.contains(id)) {
    return "#" + std::to_string(id.value);
  }
  const VertexRecord& rec = graph.vertex(id);
  std::string kind;
  switch (rec.cls) {
    case VertexClass::Hypothesis: kind = "hypothesis"; break;
    case VertexClass::StarEvent: kind = "star-event"; break;
    case VertexClass::PrimeEvent: kind = "prime-event"; break;
  }
  return kind + " " + std::to_string(id.value);
}

}  // namespace mdse
