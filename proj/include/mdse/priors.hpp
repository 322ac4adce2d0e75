#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mdse/graph.hpp"

namespace mdse {

/// Subjective or expert-assigned priors, accepted only if already normalized.
struct ExplicitPriors {
  std::vector<double> values;
};

/// Historical occurrence counts per hypothesis.
struct FrequencyCounts {
  std::vector<std::uint64_t> counts;
};

/// Non-informative prior over `hypotheses` members.
struct UniformPriors {
  std::size_t hypotheses = 1;
};

using PriorSpec = std::variant<ExplicitPriors, FrequencyCounts, UniformPriors>;

/// counts[j] / sum(counts). Throws EmptyInput or ZeroTotal.
std::vector<double> priors_from_counts(std::span<const std::uint64_t> counts);

/// m entries of exactly 1/m. Throws ZeroHypotheses for m == 0.
std::vector<double> priors_uniform(std::size_t m);

/// Returns the values unchanged if they form a complete group; never renormalizes.
std::vector<double> priors_explicit(std::span<const double> values);

std::vector<double> resolve_priors(const PriorSpec& spec);

/// Conditions one group on `observed_event` having occurred and returns a new
/// graph carrying the posterior as that group's priors. Members without an
/// edge to the event get likelihood 0. The input graph is untouched.
MdseGraph update_group(const MdseGraph& graph, GroupId group, NodeId observed_event);

}  // namespace mdse
