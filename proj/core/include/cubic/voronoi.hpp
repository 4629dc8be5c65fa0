#pragma once

#include <array>
#include <optional>
#include <string>

#include "cubic/poly.hpp"

namespace cubic {

/// Relative band inside which two root distances count as a tie.
constexpr double kBoundaryTolerance = 1e-12;
/// Band around b = sqrt(3) treated as excluded by classify.
constexpr double kSqrt3Band = 1e-9;
/// Below this imaginary part the canonical triangle is treated as collinear.
constexpr double kCollinearTolerance = 1e-12;

/// Similarity map to canonical coordinates:
/// z -> scale * (z + shift), followed by complex conjugation when `reflect`.
struct CanonicalTransform {
  Complex scale{1.0};
  Complex shift{};
  bool reflect = false;

  Complex apply(Complex z) const noexcept;
  Complex invert(Complex u) const noexcept;
};

/// Cubic whose roots have been mapped to {-1, 1, w = a + ib}, a >= 0, b >= 0.
struct CanonicalCubic {
  Complex w;
  double a = 0.0;
  double b = 0.0;
  Complex c1;  ///< (w + sqrt(w^2 + 3)) / 3
  Complex c2;  ///< (w - sqrt(w^2 + 3)) / 3
  CanonicalTransform transform;
  /// original_index[k] is the index, in the caller's root list, of canonical root k
  /// (canonical order: -1, 1, w).
  std::array<int, 3> original_index{0, 1, 2};
  bool collinear = false;

  /// Canonical cubic built directly from w (identity transform); reflects w into
  /// the closed first quadrant.
  static CanonicalCubic from_w(Complex w);

  std::array<Complex, 3> roots() const noexcept { return {Complex{-1.0}, Complex{1.0}, w}; }
  /// (z^2 - 1)(z - w)
  Polynomial polynomial() const;
};

enum class Theorem2Case {
  kAPositive,
  kAZeroBSmall,
  kAZeroBLarge,
  kExcludedBSqrt3,
  kExcludedCollinear,
};

std::string to_string(Theorem2Case c);

/// Cell assignment per critical point; nullopt marks a Voronoi boundary.
/// Root indices use the canonical order (-1, 1, w).
struct VoronoiVerdict {
  std::optional<int> c1_cell;
  std::optional<int> c2_cell;
  bool strong = false;
  Theorem2Case theorem2_case = Theorem2Case::kAPositive;
};

/// Index of the strictly nearest root, or nullopt when the two smallest
/// distances agree to kBoundaryTolerance relative.
std::optional<int> nearest_root(Complex point, std::span<const Complex> roots);

/// Sends roots[pairing[0]] -> -1 and roots[pairing[1]] -> 1, then reflects so
/// the third root lands in the closed first quadrant.
CanonicalCubic canonicalize(std::span<const Complex> roots, std::array<int, 2> pairing);

/// The two roots farthest apart.
std::array<int, 2> farthest_pair(std::span<const Complex> roots);

VoronoiVerdict classify(const CanonicalCubic& c);

/// True iff both critical points lie in the closed convex hull of the roots.
bool gauss_lucas_check(const Polynomial& p);

struct DistanceGap {
  double d1;  ///< |c2 - w|
  double d2;  ///< |c2 + 1|
};

/// The distances c2-to-w and c2-to-(-1), written in terms of a, b and the
/// components A, B of sqrt(w^2 + 3). Throws kBoundary inside the b = sqrt(3) band.
DistanceGap theorem2_distance_gap(const CanonicalCubic& c);

/// Left side minus right side of a^2 + b^2 + 2aA + 2bB + 2A > 2a + 3.
double theorem2_inequality_margin(const CanonicalCubic& c);

/// `case=<enum> c1-><root|boundary> c2-><root|boundary> strong=<bool>`
std::string to_record(const VoronoiVerdict& v);

}  // namespace cubic
