#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mdse/graph.hpp"

/// Brute-force reference computations. Nothing in here calls the inference
/// module; agreement between the two is what the test suites check.
namespace mdse::oracle {

inline constexpr std::size_t kMaxListLength = 20;
inline constexpr std::size_t kMaxGraphVertices = 12;
inline constexpr double kAgreementTolerance = 1e-12;

/// One hypothesis chosen as true in every group; weight is the product of
/// the chosen priors.
struct World {
  std::vector<NodeId> selection;
  double weight = 1.0;
};

/// Enumerates "hypothesis j is the true one" worlds, last to first.
double enumerate_full_probability(std::span<const double> priors, std::span<const double> likelihoods);

/// Conditions each world's joint weight on the event. Throws ZeroEvidence.
std::vector<double> enumerate_posterior(std::span<const double> priors,
                                        std::span<const double> likelihoods);

/// Cartesian product of all groups, in mixed-radix order (last group fastest).
std::vector<World> enumerate_worlds(const MdseGraph& graph);

/// Sum over worlds of weight * (sum over groups of the selected member's edge
/// weight to `event`). For a Star event this is its total probability.
double world_event_probability(const MdseGraph& graph, NodeId event);

/// Posterior over one group's members given `event`, by conditioning the
/// world measure.
std::vector<double> world_posterior(const MdseGraph& graph, GroupId group, NodeId event);

struct MixtureCheck {
  double lhs = 0.0;    // nested evaluation, Star parents computed first
  double rhs = 0.0;    // double sum over (Star parent, hypothesis) pairs
  double delta = 0.0;  // |lhs - rhs|
};

MixtureCheck check_mixture_expansion(const MdseGraph& graph, NodeId target);

}  // namespace mdse::oracle
