#include "irl/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "irl/random.hpp"

namespace irl {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void hash_u64(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double variance(std::span<const double> xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view experiment, std::span<const double> cell,
                          std::uint64_t agent) {
  std::uint64_t h = kFnvOffset;
  hash_u64(h, base_seed);
  hash_u64(h, experiment.size());
  for (char c : experiment) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  hash_u64(h, cell.size());
  for (double x : cell) hash_u64(h, std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x));
  hash_u64(h, agent);
  return splitmix64(h);
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
  if (series.empty()) throw std::invalid_argument("moving_average: empty series");
  if (window < 1) throw std::invalid_argument("moving_average: window must be at least 1");
  const std::size_t n = series.size();
  // Window covers [i - window/2, i + (window-1)/2], clipped to the series.
  const std::size_t before = window / 2;
  const std::size_t after = (window - 1) / 2;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= before ? i - before : 0;
    const std::size_t hi = std::min(n - 1, i + after);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_stddev(std::span<const double> xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

AggregateCurve aggregate_curve(const std::vector<std::vector<double>>& rewards, std::size_t episodes,
                               std::size_t window) {
  if (rewards.empty()) throw std::invalid_argument("aggregate_curve: empty pool");
  AggregateCurve curve;
  curve.mean.resize(episodes);
  curve.stddev.resize(episodes);
  std::vector<double> column(rewards.size());
  for (std::size_t e = 0; e < episodes; ++e) {
    for (std::size_t k = 0; k < rewards.size(); ++k) {
      if (rewards[k].size() < episodes) throw std::invalid_argument("aggregate_curve: agent ran too few episodes");
      column[k] = rewards[k][e];
    }
    curve.mean[e] = mean(column);
    curve.stddev[e] = population_stddev(column);
  }
  if (episodes > 0) curve.smoothed = moving_average(curve.mean, window);
  return curve;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: need two samples per side");
  const double va = variance(a) / static_cast<double>(a.size());
  const double vb = variance(b) / static_cast<double>(b.size());
  WelchResult r;
  const double diff = mean(a) - mean(b);
  if (va + vb == 0.0) {
    r.t = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    r.df = static_cast<double>(a.size() + b.size() - 2);
    r.p = diff == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) /
         (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  const boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

Interval bootstrap_mean_difference(std::span<const double> a, std::span<const double> b, double level,
                                   int resamples, std::uint64_t seed) {
  if (a.empty() || b.empty()) throw std::invalid_argument("bootstrap_mean_difference: empty sample");
  if (!(level > 0.0 && level < 1.0) || resamples < 1) {
    throw std::invalid_argument("bootstrap_mean_difference: bad level or resample count");
  }
  Rng rng(seed);
  std::vector<double> diffs(static_cast<std::size_t>(resamples));
  auto resample_mean = [&](std::span<const double> xs) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += xs[rng.uniform_int(xs.size())];
    return sum / static_cast<double>(xs.size());
  };
  for (double& d : diffs) {
    const double ma = resample_mean(a);
    d = ma - resample_mean(b);
  }
  std::sort(diffs.begin(), diffs.end());
  const double tail = (1.0 - level) / 2.0;
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(diffs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, diffs.size() - 1);
    return diffs[lo] + (pos - static_cast<double>(lo)) * (diffs[hi] - diffs[lo]);
  };
  return {quantile(tail), quantile(1.0 - tail)};
}

}  // namespace irl
