#include "cubic/sampling.hpp"

#include <limits>

namespace cubic {

double min_separation(std::span<const Complex> roots) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      best = std::min(best, std::abs(roots[i] - roots[j]));
    }
  }
  return best;
}

RandomCubic random_cubic(Rng& rng, double radius, double min_sep) {
  std::array<Complex, 3> roots;
  do {
    for (Complex& r : roots) r = rng.in_disk(radius);
  } while (min_separation(roots) <= min_sep);
  const double modulus = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const Complex leading = std::polar(modulus, rng.uniform(0.0, 2.0 * std::numbers::pi));
  return {roots, Polynomial::from_roots(roots, leading)};
}

}  // namespace cubic
