#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace irl {

/// Stable 64-bit seed for one work unit. FNV-1a over a fixed little-endian
/// encoding of the tuple, finished with the splitmix64 mixer. Coordinates
/// are hashed by their IEEE-754 bit patterns.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view experiment,
                          std::span<const double> cell, std::uint64_t agent);

/// Centered moving average; the window is truncated near both ends, so the
/// output has the input's length. Throws std::invalid_argument for an empty
/// series or window < 1.
std::vector<double> moving_average(std::span<const double> series, std::size_t window = 30);

double mean(std::span<const double> xs);

/// Population standard deviation.
double population_stddev(std::span<const double> xs);

/// Per-episode statistics across a pool of agents.
struct AggregateCurve {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> smoothed;
};

/// `rewards[agent][episode]`, truncated to the first `episodes` entries.
/// Throws std::invalid_argument when the pool is empty or an agent ran
/// fewer episodes.
AggregateCurve aggregate_curve(const std::vector<std::vector<double>>& rewards, std::size_t episodes,
                               std::size_t window = 30);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test. Needs two or more samples per side.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Percentile bootstrap interval for mean(a) - mean(b), resampling both
/// sides independently.
Interval bootstrap_mean_difference(std::span<const double> a, std::span<const double> b, double level,
                                   int resamples, std::uint64_t seed);

}  // namespace irl
