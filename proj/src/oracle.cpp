#include "mdse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mdse/error.hpp"

namespace mdse::oracle {

namespace {

void check_list(std::span<const double> priors, std::span<const double> likelihoods) {
  if (priors.empty() || priors.size() != likelihoods.size()) {
    fail(ErrorCode::LengthMismatch, "oracle needs equal non-empty lists");
  }
  if (priors.size() > kMaxListLength) {
    fail(ErrorCode::TooLarge, "oracle enumeration is capped at " +
                                  std::to_string(kMaxListLength) + " hypotheses");
  }
  double mass = 0.0;
  for (std::size_t j = priors.size(); j-- > 0;) {
    if (!(priors[j] >= 0.0 && priors[j] <= 1.0) || !(likelihoods[j] >= 0.0 && likelihoods[j] <= 1.0)) {
      fail(ErrorCode::OutOfRange, "oracle input " + std::to_string(j) + " is outside [0, 1]");
    }
    mass += priors[j];
  }
  if (std::abs(mass - 1.0) > kNormalizationTolerance) {
    fail(ErrorCode::NotNormalized, "oracle priors do not form a complete group");
  }
}

void check_graph(const MdseGraph& graph) {
  if (graph.vertex_count() > kMaxGraphVertices) {
    fail(ErrorCode::TooLarge, "oracle graph checks are capped at " +
                                  std::to_string(kMaxGraphVertices) + " vertices");
  }
  if (!graph.relaxed_valid()) {
    fail(ErrorCode::NotValid, "graph fails relaxed validation");
  }
}

double edge_weight(const MdseGraph& graph, NodeId src, NodeId dst) {
  for (const Edge& e : graph.edges()) {
    if (e.src == src && e.dst == dst) return e.weight;
  }
  return 0.0;
}

// Direct scan of the edge list; the adjacency index is not used here.
std::vector<Edge> parents_of(const MdseGraph& graph, NodeId target) {
  std::vector<Edge> out;
  for (const Edge& e : graph.edges()) {
    if (e.dst == target) out.push_back(e);
  }
  return out;
}

}  // namespace

double enumerate_full_probability(std::span<const double> priors, std::span<const double> likelihoods) {
  check_list(priors, likelihoods);
  double evidence = 0.0;
  for (std::size_t world = priors.size(); world-- > 0;) {
    evidence += priors[world] * likelihoods[world];
  }
  return evidence;
}

std::vector<double> enumerate_posterior(std::span<const double> priors,
                                        std::span<const double> likelihoods) {
  check_list(priors, likelihoods);
  std::vector<double> joint(priors.size());
  double evidence = 0.0;
  for (std::size_t world = priors.size(); world-- > 0;) {
    joint[world] = priors[world] * likelihoods[world];
    evidence += joint[world];
  }
  if (!(evidence > 0.0)) {
    fail(ErrorCode::ZeroEvidence, "conditioning event has zero probability");
  }
  for (double& w : joint) w /= evidence;
  return joint;
}

std::vector<World> enumerate_worlds(const MdseGraph& graph) {
  check_graph(graph);
  const auto groups = graph.groups();
  std::vector<World> worlds;
  std::vector<std::size_t> digit(groups.size(), 0);
  while (true) {
    World w;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Hypothesis& h = groups[g].members[digit[g]];
      w.selection.push_back(h.id);
      w.weight *= h.prior;
    }
    worlds.push_back(std::move(w));
    std::size_t g = groups.size();
    while (g > 0) {
      --g;
      if (++digit[g] < groups[g].members.size()) break;
      digit[g] = 0;
      if (g == 0) return worlds;
    }
    if (groups.empty()) return worlds;
  }
}

double world_event_probability(const MdseGraph& graph, NodeId event) {
  if (!graph.is_event(event)) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(event.value) + " is not an event");
  }
  const auto worlds = enumerate_worlds(graph);
  double total = 0.0;
  for (const World& w : worlds) {
    // Value of a vertex inside one world: 1 for a chosen hypothesis, 0 for the
    // others, weighted parent sum for events.
    std::function<double(NodeId)> value = [&](NodeId v) -> double {
      if (!graph.is_event(v)) {
        return std::find(w.selection.begin(), w.selection.end(), v) != w.selection.end() ? 1.0 : 0.0;
      }
      double sum = 0.0;
      for (const Edge& e : parents_of(graph, v)) sum += e.weight * value(e.src);
      return sum;
    };
    total += w.weight * value(event);
  }
  return total;
}

std::vector<double> world_posterior(const MdseGraph& graph, GroupId group, NodeId event) {
  const HypothesisGroup& g = graph.group(group);
  const auto worlds = enumerate_worlds(graph);
  std::vector<double> mass(g.members.size(), 0.0);
  double evidence = 0.0;
  for (const World& w : worlds) {
    const NodeId chosen = w.selection[group.value];
    const double joint = w.weight * edge_weight(graph, chosen, event);
    for (std::size_t j = 0; j < g.members.size(); ++j) {
      if (g.members[j].id == chosen) mass[j] += joint;
    }
    evidence += joint;
  }
  if (!(evidence > 0.0)) {
    fail(ErrorCode::ZeroEvidence, "conditioning event has zero probability");
  }
  for (double& p : mass) p /= evidence;
  return mass;
}

MixtureCheck check_mixture_expansion(const MdseGraph& graph, NodeId target) {
  check_graph(graph);
  if (graph.vertex_class(target) == VertexClass::Hypothesis) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(target.value) + " is not an event");
  }
  const auto parents = parents_of(graph, target);

  // Nested: hypothesis block, then each Star parent evaluated as a whole.
  double hypothesis_block = 0.0;
  double event_block = 0.0;
  for (const Edge& p : parents) {
    if (graph.vertex_class(p.src) == VertexClass::Hypothesis) {
      hypothesis_block += graph.prior(p.src) * p.weight;
    } else {
      double star = 0.0;
      for (const Edge& q : parents_of(graph, p.src)) star += graph.prior(q.src) * q.weight;
      event_block += star * p.weight;
    }
  }

  // Expanded: one flat sum over every (hypothesis) and (Star, hypothesis) path.
  double flat = 0.0;
  for (std::size_t a = parents.size(); a-- > 0;) {
    const Edge& p = parents[a];
    if (graph.vertex_class(p.src) == VertexClass::Hypothesis) {
      flat += graph.prior(p.src) * p.weight;
      continue;
    }
    const auto grand = parents_of(graph, p.src);
    for (std::size_t b = grand.size(); b-- > 0;) {
      flat += graph.prior(grand[b].src) * grand[b].weight * p.weight;
    }
  }

  MixtureCheck c;
  c.lhs = hypothesis_block + event_block;
  c.rhs = flat;
  c.delta = std::abs(c.lhs - c.rhs);
  return c;
}

}  // namespace mdse::oracle
