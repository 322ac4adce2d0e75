#include "mdse/priors.hpp"

#include <cmath>
#include <sstream>

#include "mdse/error.hpp"
#include "mdse/inference.hpp"

namespace mdse {

std::vector<double> priors_from_counts(std::span<const std::uint64_t> counts) {
  if (counts.empty()) {
    fail(ErrorCode::EmptyInput, "no counts given");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) {
    fail(ErrorCode::ZeroTotal, "counts sum to zero");
  }
  std::vector<double> out;
  out.reserve(counts.size());
  for (auto c : counts) {
    out.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return out;
}

std::vector<double> priors_uniform(std::size_t m) {
  if (m == 0) {
    fail(ErrorCode::ZeroHypotheses, "uniform prior needs at least one hypothesis");
  }
  return std::vector<double>(m, 1.0 / static_cast<double>(m));
}

std::vector<double> priors_explicit(std::span<const double> values) {
  if (values.empty()) {
    fail(ErrorCode::NotNormalized, "empty prior list");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] >= 0.0 && values[j] <= 1.0)) {
      std::ostringstream msg;
      msg << "prior[" << j << "] = " << values[j] << " is outside [0, 1]";
      fail(ErrorCode::OutOfRange, msg.str());
    }
    total += values[j];
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "priors sum to " << total << ", expected 1";
    fail(ErrorCode::NotNormalized, msg.str());
  }
  return {values.begin(), values.end()};
}

std::vector<double> resolve_priors(const PriorSpec& spec) {
  struct Visitor {
    std::vector<double> operator()(const ExplicitPriors& p) const { return priors_explicit(p.values); }
    std::vector<double> operator()(const FrequencyCounts& p) const { return priors_from_counts(p.counts); }
    std::vector<double> operator()(const UniformPriors& p) const { return priors_uniform(p.hypotheses); }
  };
  return std::visit(Visitor{}, spec);
}

MdseGraph update_group(const MdseGraph& graph, GroupId group, NodeId observed_event) {
  const PosteriorVector post = posterior_for_event(graph, group, observed_event);
  std::vector<double> priors;
  priors.reserve(post.entries.size());
  for (const auto& entry : post.entries) priors.push_back(entry.probability);
  return graph.with_group_priors(group, priors);
}

}  // namespace mdse
