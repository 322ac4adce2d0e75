#include <doctest.h>

#include "mdse/graph.hpp"
#include "mdse/validation.hpp"
#include "test_support.hpp"

using namespace mdse;
using mdse::testing::error_of;

TEST_CASE("add_hypothesis_group accepts complete groups") {
  GraphBuilder b;
  const auto ids = b.add_hypothesis_group(std::vector<double>{0.4, 0.25, 0.35}, GroupRole::Star);
  REQUIRE(ids.size() == 3);
  CHECK(ids[0] == NodeId{0});
  CHECK(ids[1] == NodeId{1});
  CHECK(ids[2] == NodeId{2});

  const auto single = b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Prime);
  CHECK(single == std::vector<NodeId>{NodeId{3}});
}

TEST_CASE("add_hypothesis_group rejects bad priors") {
  GraphBuilder b;
  CHECK(error_of([&] { b.add_hypothesis_group(std::vector<double>{0.5, 0.6}, GroupRole::Star); }) ==
        ErrorCode::NotNormalized);
  CHECK(error_of([&] { b.add_hypothesis_group(std::vector<double>{1.5, -0.5}, GroupRole::Star); }) ==
        ErrorCode::OutOfRange);
  CHECK(error_of([&] { b.add_hypothesis_group(std::vector<double>{}, GroupRole::Star); }) ==
        ErrorCode::NotNormalized);
  // Within the 1e-9 tolerance.
  CHECK_NOTHROW(b.add_hypothesis_group(std::vector<double>{0.5, 0.5 + 5e-10}, GroupRole::Star));
  CHECK(error_of([&] { b.add_hypothesis_group(std::vector<double>{0.5, 0.5 + 5e-9}, GroupRole::Star); }) ==
        ErrorCode::NotNormalized);
}

TEST_CASE("add_event assigns insertion-order ids") {
  GraphBuilder b;
  b.add_hypothesis_group(std::vector<double>{0.5, 0.5}, GroupRole::Star);
  const NodeId star = b.add_event(EventKind::Star);
  const NodeId prime = b.add_event(EventKind::Prime, "sink");
  CHECK(star == NodeId{2});
  CHECK(prime == NodeId{3});
  CHECK(star != prime);

  const MdseGraph g = b.freeze();
  CHECK(error_of([&] { b.add_event(EventKind::Star); }) == ErrorCode::Frozen);
  CHECK(error_of([&] { b.add_edge(NodeId{0}, NodeId{2}, 0.5); }) == ErrorCode::Frozen);
  CHECK(error_of([&] { b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Star); }) ==
        ErrorCode::Frozen);
  REQUIRE(g.events().size() == 2);
  CHECK(g.events()[1].label == "sink");
}

TEST_CASE("add_edge enforces structure") {
  GraphBuilder b;
  const auto h = b.add_hypothesis_group(std::vector<double>{0.5, 0.5}, GroupRole::Star);
  const NodeId a1 = b.add_event(EventKind::Star);
  const NodeId a2 = b.add_event(EventKind::Star);
  const NodeId p = b.add_event(EventKind::Prime);

  CHECK_NOTHROW(b.add_edge(h[0], a1, 0.8));
  CHECK(error_of([&] { b.add_edge(a1, a1, 0.5); }) == ErrorCode::LoopDetected);
  CHECK(error_of([&] { b.add_edge(h[0], a1, 0.3); }) == ErrorCode::DuplicateEdge);
  CHECK(error_of([&] { b.add_edge(p, a1, 0.3); }) == ErrorCode::BadDirection);
  CHECK(error_of([&] { b.add_edge(a1, a2, 0.3); }) == ErrorCode::BadDirection);
  CHECK(error_of([&] { b.add_edge(a1, h[1], 0.3); }) == ErrorCode::BadDirection);
  CHECK(error_of([&] { b.add_edge(h[0], h[1], 0.3); }) == ErrorCode::BadDirection);
  CHECK(error_of([&] { b.add_edge(h[1], a2, 1.2); }) == ErrorCode::OutOfRange);
  CHECK(error_of([&] { b.add_edge(h[1], NodeId{99}, 0.5); }) == ErrorCode::UnknownId);
  CHECK_NOTHROW(b.add_edge(a1, p, 0.2));
  CHECK_NOTHROW(b.add_edge(h[1], p, 0.0));
  CHECK_NOTHROW(b.add_edge(h[1], a2, 1.0));
}

TEST_CASE("deferred construction keeps structural faults for validation") {
  GraphBuilder b(ConstructionChecks::Deferred);
  b.add_hypothesis_group(std::vector<double>{1.0}, GroupRole::Star);
  const NodeId a = b.add_event(EventKind::Star);
  CHECK_NOTHROW(b.add_edge(a, a, 0.5));
  CHECK_NOTHROW(b.add_edge(a, a, 0.5));
  // Range and existence are still checked.
  CHECK(error_of([&] { b.add_edge(a, a, 2.0); }) == ErrorCode::OutOfRange);
  CHECK(error_of([&] { b.add_edge(a, NodeId{7}, 0.1); }) == ErrorCode::UnknownId);
  const MdseGraph g = b.freeze();
  CHECK_FALSE(g.relaxed_valid());
}

TEST_CASE("freeze computes shape and is idempotent") {
  SUBCASE("empty builder") {
    GraphBuilder b;
    const MdseGraph g = b.freeze();
    CHECK(g.shape() == GraphShape{});
    CHECK(g.vertex_count() == 0);
    CHECK(g.relaxed_valid());
  }
  SUBCASE("two groups, two events") {
    GraphBuilder b;
    b.add_hypothesis_group(std::vector<double>{0.3, 0.7}, GroupRole::Star);
    b.add_hypothesis_group(std::vector<double>{0.2, 0.3, 0.5}, GroupRole::Prime);
    b.add_event(EventKind::Star);
    b.add_event(EventKind::Prime);
    const MdseGraph g = b.freeze();
    CHECK(g.shape().n == 2);
    CHECK(g.shape().m == 5);
    CHECK(g.shape().i == 1);
    CHECK(g.shape().k == 1);
    CHECK(g.shape().v == 7);
    CHECK(g.shape().star_hypotheses == 2);
    CHECK(g.shape().prime_hypotheses == 3);
  }
  SUBCASE("double freeze") {
    GraphBuilder b;
    b.add_event(EventKind::Star);
    const MdseGraph first = b.freeze();
    const MdseGraph second = b.freeze();
    CHECK(first.same_instance(second));
    CHECK(first.freeze().same_instance(first));
  }
}

TEST_CASE("adjacency is ordered by neighbour id") {
  GraphBuilder b;
  const auto h = b.add_hypothesis_group(std::vector<double>{0.2, 0.3, 0.5}, GroupRole::Star);
  const NodeId a = b.add_event(EventKind::Star);
  b.add_edge(h[2], a, 0.1);
  b.add_edge(h[0], a, 0.2);
  b.add_edge(h[1], a, 0.3);
  const MdseGraph g = b.freeze();
  std::vector<std::uint32_t> sources;
  for (auto ei : g.in_edges(a)) sources.push_back(g.edges()[ei].src.value);
  CHECK(sources == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(g.outdegree(h[0]) == 1);
  CHECK(g.indegree(a) == 3);
  CHECK(error_of([&] { g.in_edges(NodeId{42}); }) == ErrorCode::UnknownId);
}

TEST_CASE("with_group_priors leaves the original untouched") {
  const MdseGraph g = mdse::testing::financial_graph();
  const MdseGraph h = g.with_group_priors(GroupId{0}, std::vector<double>{0.1, 0.2, 0.7});
  CHECK(g.prior(NodeId{0}) == 0.4);
  CHECK(h.prior(NodeId{0}) == 0.1);
  CHECK(h.edges().size() == g.edges().size());
  CHECK(error_of([&] { g.with_group_priors(GroupId{0}, std::vector<double>{1.0}); }) ==
        ErrorCode::LengthMismatch);
  CHECK(error_of([&] { g.with_group_priors(GroupId{3}, std::vector<double>{1.0}); }) ==
        ErrorCode::UnknownId);
}

TEST_CASE("shape counters hold on generated graphs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MdseGraph g = mdse::testing::small_random_graph(seed, seed % 2 == 0, 30);
    const GraphShape& s = g.shape();
    CHECK(s.n == s.i + s.k);
    CHECK(s.v == s.n + s.m);
    CHECK(s.e == g.edges().size());
    CHECK(s.m == s.star_hypotheses + s.prime_hypotheses);
  }
}
