#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdse/generator.hpp"

namespace mdse::bench {

enum class BenchOp { FullProbabilityAllEvents, Posterior, Mixture };

/// Requested size: event count, hypothesis count, edge density.
struct BenchSize {
  std::size_t n = 2;
  std::size_t m = 2;
  double density = 0.5;
};

struct BenchPoint {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t e = 0;
  std::int64_t median_ns = 0;
  std::size_t repetitions = 0;
  BenchOp op = BenchOp::Mixture;
};

enum class SizeAxis { Edges, NTimesM };

struct ScalingFit {
  double exponent = 0.0;
  double r_squared = 0.0;
  SizeAxis axis = SizeAxis::Edges;
};

inline constexpr std::size_t kDefaultRepetitions = 9;
inline constexpr std::size_t kBenchGroupSize = 4;

/// Relaxed generator config for one size: events split evenly between Star
/// and Prime, hypotheses split evenly between Star and Prime groups of
/// kBenchGroupSize members. Seed is seed + index.
GeneratorConfig config_for(const BenchSize& size, std::uint64_t seed, std::size_t index);

/// Runs `op` over every applicable target of each generated graph. One
/// discarded warmup, then the median of `repetitions` wall-clock timings.
/// Points come back in input order. Sequential by construction.
std::vector<BenchPoint> run_scaling_bench(std::span<const BenchSize> sizes, std::uint64_t seed,
                                          BenchOp op,
                                          std::size_t repetitions = kDefaultRepetitions);

/// Least-squares slope of log(median_ns) against log(size). Needs at least
/// five points with strictly increasing size.
ScalingFit fit_scaling_exponent(std::span<const BenchPoint> points, SizeAxis axis);

/// Parses "n:m:density[,n:m:density...]".
std::vector<BenchSize> parse_sizes(std::string_view spec);

BenchOp parse_op(std::string_view tag);
std::string_view to_string(BenchOp op) noexcept;
std::string_view to_string(SizeAxis axis) noexcept;

/// CSV with header n,m,e,median_ns,repetitions.
std::string to_csv(std::span<const BenchPoint> points);

}  // namespace mdse::bench
