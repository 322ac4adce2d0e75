#include <algorithm>
#include <cmath>

#include "mdse/cli.hpp"
#include "mdse/error.hpp"
#include "mdse/inference.hpp"
#include "mdse/oracle.hpp"

namespace mdse::cli {

namespace {

void push(OracleCheckReport& report, OracleComparison row) {
  report.max_delta = std::max(report.max_delta, row.delta);
  report.rows.push_back(std::move(row));
}

}  // namespace

OracleCheckReport run_oracle_check(const MdseGraph& graph, bool all) {
  OracleCheckReport report;

  for (const auto& ev : graph.events()) {
    if (ev.kind != EventKind::Prime) continue;
    const double recursive = prob_event(graph, {ev.id}).value;
    const double expanded = prob_event_expanded(graph, ev.id).value;
    const auto check = oracle::check_mixture_expansion(graph, ev.id);
    const double delta = std::max({std::abs(recursive - check.lhs), std::abs(recursive - check.rhs),
                                   std::abs(expanded - check.rhs), check.delta});
    push(report, {"mixture", ev.id, std::nullopt, recursive, check.lhs, delta});
  }

  if (all) {
    for (const auto& ev : graph.events()) {
      if (ev.kind != EventKind::Star) continue;
      const double value = prob_event(graph, {ev.id}).value;
      const double reference = oracle::world_event_probability(graph, ev.id);
      push(report, {"full-probability", ev.id, std::nullopt, value, reference,
                    std::abs(value - reference)});
    }
    for (const auto& g : graph.groups()) {
      std::vector<double> priors;
      for (const auto& h : g.members) priors.push_back(h.prior);
      for (const auto& ev : graph.events()) {
        const auto likelihoods = group_likelihoods(graph, g.id, ev.id);
        if (std::all_of(likelihoods.begin(), likelihoods.end(), [](double l) { return l == 0.0; })) {
          continue;
        }
        const double evidence = full_probability(priors, likelihoods);
        const double evidence_ref = oracle::enumerate_full_probability(priors, likelihoods);
        double delta = std::abs(evidence - evidence_ref);
        if (evidence <= 0.0) continue;
        const auto post = posterior_for_event(graph, g.id, ev.id);
        const auto by_list = oracle::enumerate_posterior(priors, likelihoods);
        const auto by_world = oracle::world_posterior(graph, g.id, ev.id);
        for (std::size_t j = 0; j < post.entries.size(); ++j) {
          delta = std::max({delta, std::abs(post.entries[j].probability - by_list[j]),
                            std::abs(post.entries[j].probability - by_world[j])});
        }
        push(report, {"posterior", ev.id, g.id, post.entries.front().probability, by_world.front(),
                      delta});
      }
    }
  }

  report.passed = report.max_delta <= oracle::kAgreementTolerance;
  return report;
}

}  // namespace mdse::cli
