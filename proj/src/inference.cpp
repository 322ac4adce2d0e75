#include "mdse/inference.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "mdse/error.hpp"

namespace mdse {

namespace {

void check_unit_interval(std::span<const double> values, const char* what) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] >= 0.0 && values[j] <= 1.0)) {
      std::ostringstream msg;
      msg << what << "[" << j << "] = " << values[j] << " is outside [0, 1]";
      fail(ErrorCode::OutOfRange, msg.str());
    }
  }
}

void check_group_inputs(std::span<const double> priors, std::span<const double> likelihoods) {
  if (priors.empty() || priors.size() != likelihoods.size()) {
    fail(ErrorCode::LengthMismatch, "expected equal non-empty lists, got " +
                                        std::to_string(priors.size()) + " priors and " +
                                        std::to_string(likelihoods.size()) + " likelihoods");
  }
  check_unit_interval(priors, "prior");
  check_unit_interval(likelihoods, "likelihood");
  double total = 0.0;
  for (double p : priors) total += p;
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "priors sum to " << total << ", expected 1";
    fail(ErrorCode::NotNormalized, msg.str());
  }
}

void require_event(const MdseGraph& graph, NodeId target) {
  if (!graph.relaxed_valid()) {
    fail(ErrorCode::NotValid, "graph fails relaxed validation");
  }
  if (!graph.is_event(target)) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(target.value) + " is not an event");
  }
}

void finish(QueryResult& result, Normalization normalization) {
  result.in_range = result.value <= 1.0 + kRangeTolerance;
  if (normalization == Normalization::Checked && !result.in_range) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "event probability evaluates to " << result.value << ", above 1";
    fail(ErrorCode::ValueExceedsOne, msg.str());
  }
}

// Recursive parent evaluation with a per-query memo. Acyclicity of a
// relaxed-valid graph guarantees termination.
class Evaluator {
 public:
  Evaluator(const MdseGraph& graph, CombineMode mode) : graph_(graph), mode_(mode) {}

  double parent_value(NodeId parent) {
    if (graph_.vertex_class(parent) == VertexClass::Hypothesis) {
      return graph_.prior(parent);
    }
    if (auto it = memo_.find(parent.value); it != memo_.end()) {
      return it->second;
    }
    const double value = combine(parent, nullptr);
    memo_.emplace(parent.value, value);
    return value;
  }

  double combine(NodeId target, std::vector<Term>* terms) {
    const auto edges = graph_.edges();
    double acc = mode_ == CombineMode::OrMixture ? 0.0 : 1.0;
    for (std::uint32_t ei : graph_.in_edges(target)) {
      const Edge& e = edges[ei];
      const double term = parent_value(e.src) * e.weight;
      if (terms) terms->push_back({e.src, std::nullopt, term});
      if (mode_ == CombineMode::OrMixture) {
        acc += term;
      } else {
        acc *= term;
      }
    }
    return acc;
  }

 private:
  const MdseGraph& graph_;
  CombineMode mode_;
  std::unordered_map<std::uint32_t, double> memo_;
};

}  // namespace

double full_probability(std::span<const double> priors, std::span<const double> likelihoods) {
  check_group_inputs(priors, likelihoods);
  double total = 0.0;
  for (std::size_t j = 0; j < priors.size(); ++j) {
    total += likelihoods[j] * priors[j];
  }
  return total;
}

std::vector<double> posterior(std::span<const double> priors, std::span<const double> likelihoods) {
  const double evidence = full_probability(priors, likelihoods);
  if (evidence <= 0.0) {
    fail(ErrorCode::ZeroEvidence, "observed event has probability zero under every hypothesis");
  }
  std::vector<double> out(priors.size());
  for (std::size_t j = 0; j < priors.size(); ++j) {
    out[j] = priors[j] * likelihoods[j] / evidence;
  }
  return out;
}

double prob_and_case(std::span<const double> priors, std::span<const double> likelihoods) {
  check_group_inputs(priors, likelihoods);
  double product = 1.0;
  for (std::size_t j = 0; j < priors.size(); ++j) {
    product *= priors[j] * likelihoods[j];
  }
  return product;
}

double joint_probability(std::span<const double> conditionals, double base) {
  check_unit_interval(conditionals, "conditional");
  check_unit_interval(std::span<const double>(&base, 1), "base");
  double product = 1.0;
  for (double c : conditionals) product *= c;
  return product * base;
}

HypothesisChoice map_hypothesis(std::span<const double> priors, std::span<const double> likelihoods) {
  const auto post = posterior(priors, likelihoods);
  HypothesisChoice best{0, post[0]};
  for (std::size_t j = 1; j < post.size(); ++j) {
    if (post[j] > best.posterior) best = {j, post[j]};
  }
  return best;
}

QueryResult prob_event(const MdseGraph& graph, const ProbQuery& query) {
  require_event(graph, query.target);
  QueryResult result;
  if (query.mode == CombineMode::AndProduct) {
    result.formula = Formula::EventProduct;
  } else {
    result.formula = graph.vertex_class(query.target) == VertexClass::StarEvent
                         ? Formula::FullProbability
                         : Formula::EventMixture;
  }
  Evaluator eval(graph, query.mode);
  result.value = eval.combine(query.target, &result.terms);
  finish(result, query.normalization);
  return result;
}

QueryResult prob_event_expanded(const MdseGraph& graph, NodeId target) {
  require_event(graph, target);
  QueryResult result;
  result.formula = Formula::EventMixtureExpanded;
  const auto edges = graph.edges();
  double total = 0.0;
  for (std::uint32_t ei : graph.in_edges(target)) {
    const Edge& outer = edges[ei];
    if (graph.vertex_class(outer.src) == VertexClass::Hypothesis) {
      const double term = graph.prior(outer.src) * outer.weight;
      result.terms.push_back({outer.src, std::nullopt, term});
      total += term;
      continue;
    }
    // Star parent: P(B) * P(A*|B) * P(A'|A*) for each of its hypotheses.
    for (std::uint32_t ej : graph.in_edges(outer.src)) {
      const Edge& inner = edges[ej];
      const double term = graph.prior(inner.src) * inner.weight * outer.weight;
      result.terms.push_back({inner.src, outer.src, term});
      total += term;
    }
  }
  result.value = total;
  finish(result, Normalization::Literal);
  return result;
}

QueryResult prob_event_and(const MdseGraph& graph, NodeId target) {
  return prob_event(graph, {target, CombineMode::AndProduct, Normalization::Literal});
}

std::vector<double> group_likelihoods(const MdseGraph& graph, GroupId group, NodeId event) {
  const HypothesisGroup& g = graph.group(group);
  if (!graph.is_event(event)) {
    fail(ErrorCode::UnknownId, "vertex " + std::to_string(event.value) + " is not an event");
  }
  const auto edges = graph.edges();
  std::vector<double> likelihoods(g.members.size(), 0.0);
  for (std::size_t j = 0; j < g.members.size(); ++j) {
    for (std::uint32_t ei : graph.out_edges(g.members[j].id)) {
      if (edges[ei].dst == event) {
        likelihoods[j] = edges[ei].weight;
        break;
      }
    }
  }
  return likelihoods;
}

PosteriorVector posterior_for_event(const MdseGraph& graph, GroupId group, NodeId event) {
  if (!graph.relaxed_valid()) {
    fail(ErrorCode::NotValid, "graph fails relaxed validation");
  }
  const HypothesisGroup& g = graph.group(group);
  const auto likelihoods = group_likelihoods(graph, group, event);
  std::vector<double> priors;
  priors.reserve(g.members.size());
  for (const auto& h : g.members) priors.push_back(h.prior);

  const auto post = posterior(priors, likelihoods);
  PosteriorVector out{group, {}};
  out.entries.reserve(post.size());
  for (std::size_t j = 0; j < post.size(); ++j) {
    out.entries.push_back({g.members[j].id, post[j]});
  }
  return out;
}

std::string_view to_string(Formula formula) noexcept {
  switch (formula) {
    case Formula::FullProbability: return "full-probability";
    case Formula::EventMixture: return "event-mixture";
    case Formula::EventMixtureExpanded: return "event-mixture-expanded";
    case Formula::EventProduct: return "event-product";
  }
  return "unknown";
}

std::string_view to_string(CombineMode mode) noexcept {
  return mode == CombineMode::OrMixture ? "or" : "and";
}

}  // namespace mdse
