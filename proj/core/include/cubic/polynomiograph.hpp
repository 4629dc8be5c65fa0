#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubic/poly.hpp"

namespace cubic {

enum class RenderMethod { kNewton, kHalley, kBasicSequence };

std::string to_string(RenderMethod method);
/// Accepts "newton", "halley", "basic" and "basic-sequence".
std::optional<RenderMethod> parse_render_method(std::string_view name);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  std::array<Rgb, 3> roots{Rgb{220, 40, 40}, Rgb{40, 180, 60}, Rgb{40, 90, 220}};
  Rgb dark{0, 0, 0};
};

/// Iteration cap used when none is given: 100 for Newton/Halley, 300 for the
/// basic sequence (an m-cap).
int default_cap(RenderMethod method);

struct RenderConfig {
  Complex center{};
  double half_width = 2.5;  ///< half extent of the real axis; the imaginary extent follows the aspect ratio
  int pixels_x = 512;
  int pixels_y = 512;
  RenderMethod method = RenderMethod::kNewton;
  double tol = 1e-8;
  int cap = 100;
  Palette palette{};

  double half_height() const noexcept { return half_width * pixels_y / pixels_x; }
  /// Complex coordinate of the center of pixel (column x, row y); row 0 is the top.
  Complex seed(int x, int y) const noexcept;
  /// Pixel containing z, or nullopt outside the window.
  std::optional<std::array<int, 2>> pixel_of(Complex z) const noexcept;
};

struct PixelRecord {
  std::optional<int> root_index;  ///< empty iff diverged
  int steps = 0;
  bool diverged = false;
  friend bool operator==(const PixelRecord&, const PixelRecord&) = default;
};

struct Polynomiograph {
  RenderConfig config;
  std::array<Complex, 3> reference_roots;
  std::vector<PixelRecord> pixels;  ///< row-major, row 0 at the top

  const PixelRecord& at(int x, int y) const {
    return pixels.at(static_cast<std::size_t>(y) * config.pixels_x + x);
  }
};

/// Escape-time basin image of p under the configured method. Rows are
/// processed on up to `threads` workers (0 = hardware concurrency); each
/// pixel is a pure function of (p, cfg, pixel index).
Polynomiograph render(const Polynomial& p, const RenderConfig& cfg, unsigned threads = 0);

/// Record for a single seed, exactly as render() computes it for a pixel.
PixelRecord render_seed(const Polynomial& p, const RenderConfig& cfg,
                        const std::array<Complex, 3>& roots, Complex seed);

double measure_divergence_fraction(const Polynomiograph& g);

/// Binary PPM (P6). Brightness scales as 1 - steps / cap; diverged pixels are dark.
std::vector<std::uint8_t> encode_image(const Polynomiograph& g);

/// 64-bit FNV-1a, used for golden-image checks.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

}  // namespace cubic
