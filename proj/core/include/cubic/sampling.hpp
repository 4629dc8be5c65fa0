#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "cubic/poly.hpp"

namespace cubic {

/// SplitMix64 finalizer; derives independent per-instance seeds from one base seed.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// mt19937_64 with hand-rolled distributions, so streams are identical on
/// every standard library (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in the disk of the given radius.
  Complex in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  Complex in_box(Complex center, double half_extent) {
    return center + Complex{uniform(-half_extent, half_extent), uniform(-half_extent, half_extent)};
  }

 private:
  std::mt19937_64 engine_;
};

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Callers write results into per-index slots, so the outcome
/// does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

double min_separation(std::span<const Complex> roots) noexcept;

/// Three roots uniform in a disk of `radius` with pairwise separation above
/// `min_sep`, and a leading coefficient with modulus in [0.1, 10].
struct RandomCubic {
  std::array<Complex, 3> roots;
  Polynomial poly;
};
RandomCubic random_cubic(Rng& rng, double radius = 1.0, double min_sep = 1e-3);

}  // namespace cubic
