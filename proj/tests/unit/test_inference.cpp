#include <doctest.h>

#include <cmath>
#include <random>

#include "mdse/inference.hpp"
#include "mdse/oracle.hpp"
#include "test_support.hpp"

using namespace mdse;
using mdse::testing::error_of;

namespace {

// Star group (0.4, 0.25, 0.35) -> A* with (0.7, 0.6, 0.4); Prime group (1.0) -> A' with 0.5;
// A* -> A' with 0.2.
MdseGraph layered_graph() {
  GraphBuilder b;
  const auto hs = b.add_hypothesis_group(std::vector<double>{0.4, 0.25, 0.35}, GroupRole::Star);
  const auto hp = b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Prime);
  const NodeId star = b.add_event(EventKind::Star);
  const NodeId prime = b.add_event(EventKind::Prime);
  b.add_edge(hs[0], star, 0.7);
  b.add_edge(hs[1], star, 0.6);
  b.add_edge(hs[2], star, 0.4);
  b.add_edge(hp[0], prime, 0.5);
  b.add_edge(star, prime, 0.2);
  return b.freeze();
}

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t size) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> v(size);
  double total = 0.0;
  for (auto& x : v) total += (x = u(rng));
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace

TEST_CASE("full_probability on the worked example") {
  const std::vector<double> priors{0.4, 0.25, 0.35};
  const std::vector<double> likelihoods{0.7, 0.6, 0.4};
  CHECK(full_probability(priors, likelihoods) == doctest::Approx(0.57).epsilon(1e-12));
  const std::vector<double> sure{1.0};
  const std::vector<double> zero{0.0};
  CHECK(full_probability(sure, zero) == 0.0);
}

TEST_CASE("full_probability input errors") {
  const std::vector<double> two{0.5, 0.5};
  const std::vector<double> three{0.2, 0.3, 0.5};
  const std::vector<double> empty;
  const std::vector<double> short_sum{0.5, 0.4};
  const std::vector<double> bad{0.5, 1.5};
  CHECK(error_of([&] { full_probability(two, three); }) == ErrorCode::LengthMismatch);
  CHECK(error_of([&] { full_probability(empty, empty); }) == ErrorCode::LengthMismatch);
  CHECK(error_of([&] { full_probability(short_sum, two); }) == ErrorCode::NotNormalized);
  CHECK(error_of([&] { full_probability(two, bad); }) == ErrorCode::OutOfRange);
}

TEST_CASE("posterior") {
  SUBCASE("reweighting example") {
    const std::vector<double> priors{0.6, 0.4};
    const std::vector<double> likelihoods{0.8, 0.2};
    const auto post = posterior(priors, likelihoods);
    CHECK(post[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(post[1] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("three hypotheses") {
    const std::vector<double> priors{0.4, 0.2, 0.4};
    const std::vector<double> likelihoods{0.9, 0.5, 0.2};
    const auto post = posterior(priors, likelihoods);
    CHECK(std::abs(post[0] - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(post[1] - 5.0 / 27.0) < 1e-12);
    CHECK(std::abs(post[2] - 4.0 / 27.0) < 1e-12);
  }
  SUBCASE("zero evidence") {
    const std::vector<double> priors{0.5, 0.5};
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(error_of([&] { posterior(priors, zeros); }) == ErrorCode::ZeroEvidence);
  }
  SUBCASE("random inputs sum to one and match the oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t size = 1 + rng() % 20;
      const auto priors = random_simplex(rng, size);
      std::vector<double> likelihoods(size);
      for (auto& l : likelihoods) l = u(rng);
      likelihoods[0] = std::max(likelihoods[0], 0.01);
      const auto post = posterior(priors, likelihoods);
      const auto expected = oracle::enumerate_posterior(priors, likelihoods);
      double total = 0.0;
      for (std::size_t j = 0; j < size; ++j) {
        total += post[j];
        CHECK(std::abs(post[j] - expected[j]) <= 1e-12);
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
      CHECK(std::abs(full_probability(priors, likelihoods) -
                     oracle::enumerate_full_probability(priors, likelihoods)) <= 1e-12);
    }
  }
}

TEST_CASE("sequential updates equal a single squared-likelihood update") {
  const std::vector<double> priors{0.6, 0.4};
  const std::vector<double> likelihoods{0.8, 0.2};
  const auto once = posterior(priors, likelihoods);
  const auto twice = posterior(once, likelihoods);
  const std::vector<double> squared{0.64, 0.04};
  const auto direct = posterior(priors, squared);
  CHECK(std::abs(twice[0] - direct[0]) < 1e-12);
  CHECK(std::abs(twice[1] - direct[1]) < 1e-12);
  CHECK(std::abs(twice[0] - 24.0 / 25.0) < 1e-12);
}

TEST_CASE("prob_and_case and joint_probability") {
  const std::vector<double> priors{0.5, 0.5};
  const std::vector<double> likelihoods{0.6, 1.0};
  CHECK(std::abs(prob_and_case(priors, likelihoods) - 0.15) < 1e-12);
  CHECK(std::abs(full_probability(priors, likelihoods) - 0.8) < 1e-12);

  const std::vector<double> conditionals{0.7, 0.6, 0.4};
  CHECK(std::abs(joint_probability(conditionals, 0.5) - 0.084) < 1e-12);
  CHECK(joint_probability(std::vector<double>{}, 0.3) == 0.3);
  CHECK(error_of([] { joint_probability(std::vector<double>{1.2}, 0.5); }) == ErrorCode::OutOfRange);
  CHECK(error_of([] { joint_probability(std::vector<double>{0.2}, -0.1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("map_hypothesis") {
  const std::vector<double> priors{0.4, 0.25, 0.35};
  const std::vector<double> likelihoods{0.7, 0.6, 0.4};
  const auto best = map_hypothesis(priors, likelihoods);
  CHECK(best.index == 0);
  CHECK(std::abs(best.posterior - 0.28 / 0.57) < 1e-12);

  const std::vector<double> even{0.5, 0.5};
  const std::vector<double> tie{0.3, 0.3};
  CHECK(map_hypothesis(even, tie).index == 0);
}

TEST_CASE("prob_event on a Star target") {
  const MdseGraph g = mdse::testing::financial_graph();
  const auto r = prob_event(g, {NodeId{3}});
  CHECK(std::abs(r.value - 0.57) < 1e-12);
  CHECK(r.formula == Formula::FullProbability);
  CHECK(r.in_range);
  REQUIRE(r.terms.size() == 3);
  CHECK(std::abs(r.terms[0].contribution - 0.28) < 1e-12);
  CHECK(r.terms[0].source == NodeId{0});
  CHECK_FALSE(r.terms[0].via.has_value());
}

TEST_CASE("prob_event on a Prime target") {
  const MdseGraph g = layered_graph();
  const NodeId prime{5};
  const auto mixture = prob_event(g, {prime});
  CHECK(mixture.formula == Formula::EventMixture);
  CHECK(std::abs(mixture.value - 0.614) < 1e-12);

  const auto expanded = prob_event_expanded(g, prime);
  CHECK(expanded.formula == Formula::EventMixtureExpanded);
  CHECK(std::abs(expanded.value - 0.614) < 1e-12);
  REQUIRE(expanded.terms.size() == 4);
  CHECK(expanded.terms[1].via == NodeId{4});

  CHECK(std::abs(oracle::world_event_probability(g, prime) - 0.614) < 1e-12);
  CHECK(oracle::check_mixture_expansion(g, prime).delta <= 1e-12);
}

TEST_CASE("AND combination") {
  GraphBuilder b;
  const auto h = b.add_hypothesis_group(std::vector<double>{0.5, 0.5}, GroupRole::Star);
  const NodeId a = b.add_event(EventKind::Star);
  b.add_edge(h[0], a, 0.6);
  b.add_edge(h[1], a, 1.0);
  const MdseGraph g = b.freeze();
  const auto product = prob_event_and(g, a);
  CHECK(product.formula == Formula::EventProduct);
  CHECK(std::abs(product.value - 0.15) < 1e-12);
  CHECK(std::abs(prob_event(g, {a}).value - 0.8) < 1e-12);

  // Star parents enter the product through their own product value.
  const MdseGraph layered = layered_graph();
  const double star_product = 0.4 * 0.7 * 0.25 * 0.6 * 0.35 * 0.4;
  CHECK(std::abs(prob_event_and(layered, NodeId{5}).value - 0.5 * star_product * 0.2) < 1e-15);
}

TEST_CASE("OR mixture can exceed one") {
  GraphBuilder b;
  const auto hs = b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Star);
  const auto hp = b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Prime);
  const NodeId s = b.add_event(EventKind::Star);
  const NodeId p = b.add_event(EventKind::Prime);
  b.add_edge(hs[0], s, 1.0);
  b.add_edge(hp[0], p, 0.9);
  b.add_edge(s, p, 0.9);
  const MdseGraph g = b.freeze();

  const auto literal = prob_event(g, {p});
  CHECK(std::abs(literal.value - 1.8) < 1e-12);
  CHECK_FALSE(literal.in_range);
  CHECK(error_of([&] { prob_event(g, {p, CombineMode::OrMixture, Normalization::Checked}); }) ==
        ErrorCode::ValueExceedsOne);
  CHECK(prob_event(g, {s, CombineMode::OrMixture, Normalization::Checked}).in_range);
}

TEST_CASE("prob_event error paths") {
  const MdseGraph g = mdse::testing::financial_graph();
  CHECK(error_of([&] { prob_event(g, {NodeId{0}}); }) == ErrorCode::UnknownId);
  CHECK(error_of([&] { prob_event(g, {NodeId{40}}); }) == ErrorCode::UnknownId);

  GraphBuilder b(ConstructionChecks::Deferred);
  b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Star);
  const NodeId a = b.add_event(EventKind::Star);
  b.add_edge(a, a, 0.5);
  const MdseGraph bad = b.freeze();
  CHECK(error_of([&] { prob_event(bad, {a}); }) == ErrorCode::NotValid);
  CHECK(error_of([&] { prob_event_expanded(bad, a); }) == ErrorCode::NotValid);
}

TEST_CASE("event with no parents has probability zero") {
  GraphBuilder b;
  const auto h = b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Prime);
  const NodeId s = b.add_event(EventKind::Star);
  const NodeId p = b.add_event(EventKind::Prime);
  b.add_edge(s, p, 0.5);
  b.add_edge(h[0], p, 0.5);
  const MdseGraph g = b.freeze();
  CHECK(prob_event(g, {s}).value == 0.0);
  CHECK(prob_event(g, {s}).terms.empty());
  CHECK(prob_event(g, {p}).value == 0.5);
}

TEST_CASE("posterior_for_event") {
  const MdseGraph g = mdse::testing::financial_graph();
  const auto post = posterior_for_event(g, GroupId{0}, NodeId{3});
  REQUIRE(post.entries.size() == 3);
  CHECK(std::abs(post.entries[0].probability - 0.28 / 0.57) < 1e-12);
  CHECK(std::abs(post.entries[1].probability - 0.15 / 0.57) < 1e-12);
  CHECK(std::abs(post.entries[2].probability - 0.14 / 0.57) < 1e-12);
  CHECK(post.entries[2].hypothesis == NodeId{2});

  // A hypothesis without an edge contributes likelihood 0.
  const MdseGraph layered = layered_graph();
  CHECK(error_of([&] { posterior_for_event(layered, GroupId{0}, NodeId{5}); }) ==
        ErrorCode::ZeroEvidence);
  CHECK(error_of([&] { posterior_for_event(g, GroupId{4}, NodeId{3}); }) == ErrorCode::UnknownId);
}

TEST_CASE("graph queries agree with the oracle on random graphs") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const MdseGraph g = mdse::testing::small_random_graph(seed, seed % 2 == 0);
    for (const EventNode& ev : g.events()) {
      const double direct = prob_event(g, {ev.id}).value;
      CHECK(std::abs(direct - oracle::world_event_probability(g, ev.id)) <= 1e-12);
      CHECK(std::abs(direct - prob_event_expanded(g, ev.id).value) <= 1e-12);
    }
  }
}
