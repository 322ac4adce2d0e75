#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mdse/graph.hpp"

namespace mdse {

/// Portable random stream. The engine is MT19937-64, whose output sequence
/// is fixed by the C++ standard; the conversions below are written out here
/// because standard distributions are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t j = items.size(); j > 1; --j) {
      std::swap(items[j - 1], items[below(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t n_star_events = 1;
  std::size_t n_prime_events = 1;
  std::size_t groups_star = 1;
  std::size_t groups_prime = 1;
  std::size_t max_group_size = 1;
  double edge_density = 0.5;  // in (0, 1]
  bool strict = true;
  /// Every group gets exactly max_group_size members instead of a random size.
  bool fixed_group_size = false;
};

/// Deterministic random graph. Always Relaxed-valid; Strict-valid when
/// config.strict. Edges that satisfy degree minimums are placed first, then
/// every remaining admissible pair is added with probability edge_density.
/// Throws Infeasible when the counts cannot satisfy the requested mode.
MdseGraph generate_graph(const GeneratorConfig& config);

}  // namespace mdse
