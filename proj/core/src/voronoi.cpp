#include "cubic/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cubic {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
/// a below this counts as a = 0 (same band as collinearity).
constexpr double kZeroA = 1e-12;

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(std::real((p - a) * std::conj(ab)) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool in_hull(Complex point, const std::array<Complex, 3>& r) {
  constexpr double kTol = 1e-10;
  double diameter = 0.0;
  std::array<int, 2> far{0, 1};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double d = std::abs(r[i] - r[j]);
      if (d > diameter) {
        diameter = d;
        far = {i, j};
      }
    }
  }
  if (diameter == 0.0) return std::abs(point - r[0]) <= kTol;
  const double area2 = cross(r[1] - r[0], r[2] - r[0]);
  if (std::abs(area2) < 1e-12 * diameter * diameter) {
    return distance_to_segment(point, r[far[0]], r[far[1]]) <= kTol * diameter;
  }
  const double l0 = cross(r[1] - point, r[2] - point) / area2;
  const double l1 = cross(r[2] - point, r[0] - point) / area2;
  const double l2 = 1.0 - l0 - l1;
  return l0 >= -kTol && l1 >= -kTol && l2 >= -kTol;
}

std::string cell_name(const std::optional<int>& cell) {
  if (!cell) return "boundary";
  switch (*cell) {
    case 0:
      return "-1";
    case 1:
      return "1";
    default:
      return "w";
  }
}

}  // namespace

Complex CanonicalTransform::apply(Complex z) const noexcept {
  const Complex u = scale * (z + shift);
  return reflect ? std::conj(u) : u;
}

Complex CanonicalTransform::invert(Complex u) const noexcept {
  const Complex v = reflect ? std::conj(u) : u;
  return v / scale - shift;
}

CanonicalCubic CanonicalCubic::from_w(Complex w) {
  const std::array<Complex, 3> roots{Complex{-1.0}, Complex{1.0}, w};
  return canonicalize(roots, {0, 1});
}

Polynomial CanonicalCubic::polynomial() const {
  const auto r = roots();
  return Polynomial::from_roots(r);
}

std::string to_string(Theorem2Case c) {
  switch (c) {
    case Theorem2Case::kAPositive:
      return "a-positive";
    case Theorem2Case::kAZeroBSmall:
      return "a-zero-b-small";
    case Theorem2Case::kAZeroBLarge:
      return "a-zero-b-large";
    case Theorem2Case::kExcludedBSqrt3:
      return "excluded-b-sqrt3";
    case Theorem2Case::kExcludedCollinear:
      return "excluded-collinear";
  }
  return "unknown";
}

std::optional<int> nearest_root(Complex point, std::span<const Complex> roots) {
  if (roots.size() < 2) throw Error(ErrorCode::kInvalidInput, "nearest_root needs two roots");
  int best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (std::abs(point - roots[i]) < std::abs(point - roots[best])) best = static_cast<int>(i);
  }
  const double d_best = std::abs(point - roots[best]);
  double d_second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (static_cast<int>(i) != best) d_second = std::min(d_second, std::abs(point - roots[i]));
  }
  if (d_second - d_best <= kBoundaryTolerance * d_second) return std::nullopt;
  return best;
}

CanonicalCubic canonicalize(std::span<const Complex> roots, std::array<int, 2> pairing) {
  if (roots.size() != 3) throw Error(ErrorCode::kInvalidInput, "canonicalize needs three roots");
  const int i0 = pairing[0], i1 = pairing[1];
  if (i0 == i1 || i0 < 0 || i1 < 0 || i0 > 2 || i1 > 2) {
    throw Error(ErrorCode::kInvalidInput, "pairing must name two distinct root indices");
  }
  const int k = 3 - i0 - i1;
  if (roots[i0] == roots[i1] || roots[i0] == roots[k] || roots[i1] == roots[k]) {
    throw Error(ErrorCode::kInvalidInput, "canonicalize needs distinct roots");
  }

  CanonicalCubic c;
  const Complex mid = (roots[i0] + roots[i1]) / 2.0;
  const Complex half = (roots[i1] - roots[i0]) / 2.0;
  c.transform.scale = 1.0 / half;
  c.transform.shift = -mid;
  c.original_index = {i0, i1, k};
  Complex w = c.transform.apply(roots[k]);
  if (w.imag() < 0.0) {
    c.transform.reflect = !c.transform.reflect;
    w = std::conj(w);
  }
  if (w.real() < 0.0) {
    // z -> -conj(z) keeps the upper half plane and swaps -1 with 1.
    c.transform.scale = -c.transform.scale;
    c.transform.reflect = !c.transform.reflect;
    w = -std::conj(w);
    std::swap(c.original_index[0], c.original_index[1]);
  }
  c.w = w;
  c.a = w.real();
  c.b = w.imag();
  c.collinear = c.b < kCollinearTolerance;

  const Complex radicand = w * w + 3.0;
  const auto [A, B] = complex_sqrt_decomposed(radicand.real(), std::max(0.0, radicand.imag()));
  c.c1 = Complex{c.a + A, c.b + B} / 3.0;
  c.c2 = Complex{c.a - A, c.b - B} / 3.0;
  return c;
}

std::array<int, 2> farthest_pair(std::span<const Complex> roots) {
  std::array<int, 2> best{0, 1};
  double d_best = -1.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double d = std::abs(roots[i] - roots[j]);
      if (d > d_best) {
        d_best = d;
        best = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return best;
}

VoronoiVerdict classify(const CanonicalCubic& c) {
  const auto roots = c.roots();
  VoronoiVerdict v;
  v.c1_cell = nearest_root(c.c1, roots);
  v.c2_cell = nearest_root(c.c2, roots);
  v.strong = v.c1_cell.has_value() && v.c2_cell.has_value();
  if (c.collinear) {
    v.theorem2_case = Theorem2Case::kExcludedCollinear;
  } else if (std::abs(c.b - kSqrt3) < kSqrt3Band) {
    v.theorem2_case = Theorem2Case::kExcludedBSqrt3;
  } else if (c.a > kZeroA) {
    v.theorem2_case = Theorem2Case::kAPositive;
  } else if (c.b < kSqrt3) {
    v.theorem2_case = Theorem2Case::kAZeroBSmall;
  } else {
    v.theorem2_case = Theorem2Case::kAZeroBLarge;
  }
  return v;
}

bool gauss_lucas_check(const Polynomial& p) {
  const auto roots = cardano_oracle(p);
  const CriticalPoints cp = critical_points(p);
  return in_hull(cp.c1, roots) && in_hull(cp.c2, roots);
}

DistanceGap theorem2_distance_gap(const CanonicalCubic& c) {
  if (std::abs(c.b - kSqrt3) < kSqrt3Band) {
    throw Error(ErrorCode::kBoundary, "distance gap is undefined at b = sqrt(3)");
  }
  const double a = c.a, b = c.b;
  const auto [A, B] = complex_sqrt_decomposed(a * a - b * b + 3.0, 2.0 * a * b);
  const double d1 = std::sqrt((2 * a + A) * (2 * a + A) + (2 * b + B) * (2 * b + B)) / 3.0;
  const double d2 = std::sqrt((a - A + 3) * (a - A + 3) + (B - b) * (B - b)) / 3.0;
  return {d1, d2};
}

double theorem2_inequality_margin(const CanonicalCubic& c) {
  const double a = c.a, b = c.b;
  const auto [A, B] = complex_sqrt_decomposed(a * a - b * b + 3.0, 2.0 * a * b);
  return a * a + b * b + 2 * a * A + 2 * b * B + 2 * A - (2 * a + 3);
}

std::string to_record(const VoronoiVerdict& v) {
  return "case=" + to_string(v.theorem2_case) + " c1->" + cell_name(v.c1_cell) + " c2->" +
         cell_name(v.c2_cell) + " strong=" + (v.strong ? "true" : "false");
}

}  // namespace cubic
