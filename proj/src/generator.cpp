#include "mdse/generator.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "mdse/error.hpp"
#include "mdse/validation.hpp"

namespace mdse {

std::uint64_t RandomStream::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

namespace {

[[noreturn]] void infeasible(const std::string& why) {
  fail(ErrorCode::Infeasible, "generator: " + why);
}

class EdgePlanner {
 public:
  EdgePlanner(std::size_t vertex_count, RandomStream& rng)
      : in_(vertex_count, 0), out_(vertex_count, 0), rng_(rng) {}

  bool has(NodeId src, NodeId dst) const { return keys_.contains(key(src, dst)); }

  void add(NodeId src, NodeId dst) {
    if (!keys_.insert(key(src, dst)).second) return;
    edges_.push_back({src, dst, rng_.uniform01()});
    ++out_[src.value];
    ++in_[dst.value];
  }

  std::size_t in(NodeId v) const { return in_[v.value]; }
  std::size_t out(NodeId v) const { return out_[v.value]; }
  std::vector<Edge>& edges() { return edges_; }

 private:
  static std::uint64_t key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(a.value) << 32) | b.value;
  }

  std::unordered_set<std::uint64_t> keys_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> in_;
  std::vector<std::size_t> out_;
  RandomStream& rng_;
};

// Round-robin cover of two shuffled sides so every vertex on both sides gets
// at least one edge and per-vertex counts differ by at most one.
void cover(std::vector<NodeId> parents, std::vector<NodeId> children, EdgePlanner& plan,
           RandomStream& rng) {
  if (parents.empty() || children.empty()) return;
  rng.shuffle(parents);
  rng.shuffle(children);
  const std::size_t total = std::max(parents.size(), children.size());
  for (std::size_t t = 0; t < total; ++t) {
    plan.add(parents[t % parents.size()], children[t % children.size()]);
  }
}

// One child per parent, spread round-robin; children's minimums are topped
// up separately.
void cover_parents(std::vector<NodeId> parents, std::vector<NodeId> children, EdgePlanner& plan,
                   RandomStream& rng) {
  if (parents.empty() || children.empty()) return;
  rng.shuffle(parents);
  rng.shuffle(children);
  for (std::size_t t = 0; t < parents.size(); ++t) {
    plan.add(parents[t], children[t % children.size()]);
  }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

MdseGraph generate_graph(const GeneratorConfig& config) {
  if (!(config.edge_density > 0.0 && config.edge_density <= 1.0)) {
    fail(ErrorCode::OutOfRange, "edge_density must lie in (0, 1]");
  }
  if (config.max_group_size == 0) {
    fail(ErrorCode::OutOfRange, "max_group_size must be at least 1");
  }

  RandomStream rng(config.seed);
  GraphBuilder builder;

  std::vector<NodeId> star_hyps;
  std::vector<NodeId> prime_hyps;
  const auto add_groups = [&](std::size_t count, GroupRole role, std::vector<NodeId>& sink) {
    for (std::size_t g = 0; g < count; ++g) {
      const std::size_t size =
          config.fixed_group_size ? config.max_group_size : 1 + rng.below(config.max_group_size);
      std::vector<double> raw(size);
      double total = 0.0;
      for (double& u : raw) {
        u = 1.0 - rng.uniform01();  // (0, 1]
        total += u;
      }
      for (double& u : raw) u /= total;
      const auto ids = builder.add_hypothesis_group(raw, role);
      sink.insert(sink.end(), ids.begin(), ids.end());
    }
  };
  add_groups(config.groups_star, GroupRole::Star, star_hyps);
  add_groups(config.groups_prime, GroupRole::Prime, prime_hyps);

  std::vector<NodeId> stars;
  std::vector<NodeId> primes;
  for (std::size_t j = 0; j < config.n_star_events; ++j) stars.push_back(builder.add_event(EventKind::Star));
  for (std::size_t j = 0; j < config.n_prime_events; ++j) primes.push_back(builder.add_event(EventKind::Prime));

  const std::size_t sm = star_hyps.size();
  const std::size_t sd = prime_hyps.size();
  const std::size_t ni = stars.size();
  const std::size_t nk = primes.size();

  if (sm > 0 && ni == 0) infeasible("Star hypotheses need at least one Star event");
  if (ni > 0 && sm == 0) infeasible("Star events need at least one Star group");
  if (sd > 0 && nk == 0) infeasible("Prime hypotheses need at least one Prime event");
  if (nk > 0 && ni + sd == 0) infeasible("Prime events have no available parents");

  const std::size_t prime_min_in = config.strict ? 2 : 1;
  // Outdegree caps from the degree bounds (Strict only).
  const std::size_t star_hyp_cap = config.strict ? std::min(ni, sm) : ni;
  const std::size_t prime_hyp_cap = config.strict ? std::min(nk, sd) : nk;

  if (config.strict) {
    if (ni > 0 && nk == 0) infeasible("Star events need a Prime child");
    if (sm > 0 && ceil_div(ni, sm) > star_hyp_cap) {
      infeasible("too many Star events for the Star hypotheses' outdegree bound");
    }
    if (nk > 0 && ni + sd < 2) infeasible("Prime events need two distinct parents");
    if (sm + sd + ni + nk < kMinStrictVertices) infeasible("fewer than 4 vertices");
  }

  EdgePlanner plan(builder.vertex_count(), rng);

  // Minimums first.
  cover(star_hyps, stars, plan, rng);
  cover_parents(prime_hyps, primes, plan, rng);
  cover_parents(stars, primes, plan, rng);

  std::vector<NodeId> prime_parents = stars;
  prime_parents.insert(prime_parents.end(), prime_hyps.begin(), prime_hyps.end());
  const auto remaining = [&](NodeId p) -> std::size_t {
    const bool is_star =
        !stars.empty() && p.value >= stars.front().value && p.value <= stars.back().value;
    const std::size_t cap = is_star ? nk : prime_hyp_cap;
    return plan.out(p) < cap ? cap - plan.out(p) : 0;
  };
  for (NodeId p : primes) {
    while (plan.in(p) < prime_min_in) {
      std::vector<NodeId> best;
      std::size_t best_room = 0;
      for (NodeId parent : prime_parents) {
        if (plan.has(parent, p)) continue;
        const std::size_t room = remaining(parent);
        if (room == 0) continue;
        if (room > best_room) {
          best_room = room;
          best.clear();
        }
        if (room == best_room) best.push_back(parent);
      }
      if (best.empty()) infeasible("cannot give every Prime event enough parents");
      plan.add(best[rng.below(best.size())], p);
    }
  }

  // Density pass over every admissible pair not placed yet.
  const auto fill = [&](const std::vector<NodeId>& parents, const std::vector<NodeId>& children,
                        std::size_t parent_cap) {
    for (NodeId a : parents) {
      for (NodeId b : children) {
        if (plan.has(a, b)) continue;
        if (rng.uniform01() >= config.edge_density) continue;
        if (plan.out(a) >= parent_cap) continue;
        plan.add(a, b);
      }
    }
  };
  fill(star_hyps, stars, star_hyp_cap);
  fill(prime_hyps, primes, prime_hyp_cap);
  fill(stars, primes, nk);

  auto& edges = plan.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  for (const Edge& e : edges) builder.add_edge(e.src, e.dst, e.weight);
  MdseGraph graph = builder.freeze();

  const ValidationMode mode = config.strict ? ValidationMode::Strict : ValidationMode::Relaxed;
  const ValidationReport report = validate(graph, mode);
  if (!report.passed) {
    infeasible("generated graph fails " + std::string(to_string(mode)) + " validation (" +
               report.violations.front().rule + ")");
  }
  return graph;
}

}  // namespace mdse
