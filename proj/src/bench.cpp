#include "mdse/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mdse/error.hpp"
#include "mdse/inference.hpp"

namespace mdse::bench {

namespace {

// Keeps results observable so the optimizer cannot drop the work.
volatile double g_sink = 0.0;

double run_op(const MdseGraph& graph, BenchOp op) {
  double acc = 0.0;
  switch (op) {
    case BenchOp::FullProbabilityAllEvents:
      for (const auto& ev : graph.events()) acc += prob_event(graph, {ev.id}).value;
      break;
    case BenchOp::Mixture:
      for (const auto& ev : graph.events()) {
        if (ev.kind == EventKind::Prime) acc += prob_event(graph, {ev.id}).value;
      }
      break;
    case BenchOp::Posterior:
      // Every (group, child event) pair reachable by an edge.
      for (const auto& g : graph.groups()) {
        for (const auto& h : g.members) {
          for (std::uint32_t ei : graph.out_edges(h.id)) {
            const NodeId event = graph.edges()[ei].dst;
            try {
              acc += posterior_for_event(graph, g.id, event).entries.front().probability;
            } catch (const Error& e) {
              if (e.code() != ErrorCode::ZeroEvidence) throw;
            }
          }
        }
      }
      break;
  }
  return acc;
}

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::SchemaError, "bad size spec \"" + std::string(spec) + "\"");
  }
  return value;
}

}  // namespace

GeneratorConfig config_for(const BenchSize& size, std::uint64_t seed, std::size_t index) {
  GeneratorConfig c;
  c.seed = seed + index;
  c.n_star_events = std::max<std::size_t>(1, size.n / 2);
  c.n_prime_events = std::max<std::size_t>(1, size.n - c.n_star_events);
  const std::size_t star_hyps = std::max<std::size_t>(1, size.m / 2);
  const std::size_t prime_hyps = std::max<std::size_t>(1, size.m - star_hyps);
  c.groups_star = std::max<std::size_t>(1, star_hyps / kBenchGroupSize);
  c.groups_prime = std::max<std::size_t>(1, prime_hyps / kBenchGroupSize);
  c.max_group_size = kBenchGroupSize;
  c.fixed_group_size = true;
  c.edge_density = size.density;
  c.strict = false;
  return c;
}

std::vector<BenchPoint> run_scaling_bench(std::span<const BenchSize> sizes, std::uint64_t seed,
                                          BenchOp op, std::size_t repetitions) {
  using Clock = std::chrono::steady_clock;
  repetitions = std::max<std::size_t>(1, repetitions);
  std::vector<BenchPoint> points;
  points.reserve(sizes.size());
  for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
    const MdseGraph graph = generate_graph(config_for(sizes[idx], seed, idx));
    g_sink = g_sink + run_op(graph, op);  // warmup, discarded

    std::vector<std::int64_t> samples;
    samples.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
      const auto start = Clock::now();
      g_sink = g_sink + run_op(graph, op);
      const auto stop = Clock::now();
      samples.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    }
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());

    BenchPoint p;
    p.n = graph.shape().n;
    p.m = graph.shape().m;
    p.e = graph.shape().e;
    p.median_ns = std::max<std::int64_t>(1, samples[samples.size() / 2]);
    p.repetitions = repetitions;
    p.op = op;
    points.push_back(p);
  }
  return points;
}

ScalingFit fit_scaling_exponent(std::span<const BenchPoint> points, SizeAxis axis) {
  if (points.size() < 5) {
    fail(ErrorCode::TooFewPoints, "scaling fit needs at least 5 points, got " +
                                      std::to_string(points.size()));
  }
  const auto size_of = [axis](const BenchPoint& p) {
    return axis == SizeAxis::Edges ? static_cast<double>(p.e)
                                   : static_cast<double>(p.n) * static_cast<double>(p.m);
  };
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double size = size_of(points[j]);
    if (size <= 0.0 || (j > 0 && !(size > size_of(points[j - 1])))) {
      fail(ErrorCode::NonMonotoneSizes, "sizes must be positive and strictly increasing");
    }
    if (points[j].median_ns <= 0) {
      fail(ErrorCode::OutOfRange, "wall times must be positive");
    }
    xs.push_back(std::log(size));
    ys.push_back(std::log(static_cast<double>(points[j].median_ns)));
  }

  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mean_x += xs[j];
    mean_y += ys[j];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxx += (xs[j] - mean_x) * (xs[j] - mean_x);
    sxy += (xs[j] - mean_x) * (ys[j] - mean_y);
    syy += (ys[j] - mean_y) * (ys[j] - mean_y);
  }

  ScalingFit fit;
  fit.axis = axis;
  fit.exponent = sxy / sxx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

std::vector<BenchSize> parse_sizes(std::string_view spec) {
  std::vector<BenchSize> sizes;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string_view item = spec.substr(pos, comma - pos);
    const std::size_t c1 = item.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      fail(ErrorCode::SchemaError, "size \"" + std::string(item) + "\" is not n:m:density");
    }
    BenchSize s;
    s.n = parse_count(item.substr(0, c1), item);
    s.m = parse_count(item.substr(c1 + 1, c2 - c1 - 1), item);
    const std::string density(item.substr(c2 + 1));
    std::istringstream in(density);
    in.imbue(std::locale::classic());
    if (!(in >> s.density) || !in.eof() || !(s.density > 0.0 && s.density <= 1.0)) {
      fail(ErrorCode::SchemaError, "bad density in \"" + std::string(item) + "\"");
    }
    sizes.push_back(s);
    pos = comma + 1;
  }
  return sizes;
}

BenchOp parse_op(std::string_view tag) {
  if (tag == "full-probability-all-events") return BenchOp::FullProbabilityAllEvents;
  if (tag == "posterior") return BenchOp::Posterior;
  if (tag == "mixture") return BenchOp::Mixture;
  fail(ErrorCode::SchemaError, "unknown bench op \"" + std::string(tag) + "\"");
}

std::string_view to_string(BenchOp op) noexcept {
  switch (op) {
    case BenchOp::FullProbabilityAllEvents: return "full-probability-all-events";
    case BenchOp::Posterior: return "posterior";
    case BenchOp::Mixture: return "mixture";
  }
  return "unknown";
}

std::string_view to_string(SizeAxis axis) noexcept {
  return axis == SizeAxis::Edges ? "edges" : "n_times_m";
}

std::string to_csv(std::span<const BenchPoint> points) {
  std::string out = "n,m,e,median_ns,repetitions\n";
  for (const auto& p : points) {
    out += std::to_string(p.n) + "," + std::to_string(p.m) + "," + std::to_string(p.e) + "," +
           std::to_string(p.median_ns) + "," + std::to_string(p.repetitions) + "\n";
  }
  return out;
}

}  // namespace mdse::bench
