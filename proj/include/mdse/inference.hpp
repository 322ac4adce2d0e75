#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mdse/graph.hpp"

namespace mdse {

/// Tolerance on value <= 1 before a query result is flagged out of range.
inline constexpr double kRangeTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Value-list formulas over a single complete group.

/// Total probability: sum of prior * likelihood in index order.
double full_probability(std::span<const double> priors, std::span<const double> likelihoods);

/// Bayes posterior over the group. Throws ZeroEvidence when the conditioning
/// event has probability zero under the model.
std::vector<double> posterior(std::span<const double> priors, std::span<const double> likelihoods);

/// Product of prior * likelihood terms in index order (incompatible-events case).
double prob_and_case(std::span<const double> priors, std::span<const double> likelihoods);

/// (product of conditionals) * base.
double joint_probability(std::span<const double> conditionals, double base);

struct HypothesisChoice {
  std::size_t index = 0;
  double posterior = 0.0;
};

/// Most probable hypothesis after observing the event; ties go to the lowest index.
HypothesisChoice map_hypothesis(std::span<const double> priors, std::span<const double> likelihoods);

// ---------------------------------------------------------------------------
// Graph queries.

/// OrMixture adds parent contributions; AndProduct multiplies them.
enum class CombineMode { OrMixture, AndProduct };

/// Literal returns the raw value even above one. Checked throws ValueExceedsOne.
enum class Normalization { Literal, Checked };

struct ProbQuery {
  NodeId target;
  CombineMode mode = CombineMode::OrMixture;
  Normalization normalization = Normalization::Literal;
};

enum class Formula {
  FullProbability,       // Star event: hypothesis parents only
  EventMixture,          // Prime event, Star parents evaluated recursively
  EventMixtureExpanded,  // Prime event, Star parents substituted inline
  EventProduct,          // AND case
};

/// One contribution to a query value. `via` is set when a hypothesis reaches
/// the target through a Star event in the expanded form.
struct Term {
  NodeId source;
  std::optional<NodeId> via;
  double contribution = 0.0;
};

struct QueryResult {
  double value = 0.0;
  Formula formula = Formula::FullProbability;
  std::vector<Term> terms;
  bool in_range = true;
};

/// Throws NotValid if the graph fails Relaxed validation and UnknownId if the
/// target is missing or not an event.
QueryResult prob_event(const MdseGraph& graph, const ProbQuery& query);

/// Fully expanded mixture: every Star parent's probability is written out as
/// its hypothesis sum and multiplied through, with no intermediate caching.
QueryResult prob_event_expanded(const MdseGraph& graph, NodeId target);

/// Product analogue of prob_event: every sum over parents becomes a product.
QueryResult prob_event_and(const MdseGraph& graph, NodeId target);

struct PosteriorEntry {
  NodeId hypothesis;
  double probability = 0.0;
};

struct PosteriorVector {
  GroupId group;
  std::vector<PosteriorEntry> entries;
};

/// Likelihood of `event` under each member of `group`: the edge weight, or 0
/// when the member has no edge to the event.
std::vector<double> group_likelihoods(const MdseGraph& graph, GroupId group, NodeId event);

PosteriorVector posterior_for_event(const MdseGraph& graph, GroupId group, NodeId event);

std::string_view to_string(Formula formula) noexcept;
std::string_view to_string(CombineMode mode) noexcept;

}  // namespace mdse
