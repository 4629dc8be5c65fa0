#include "cubic/polynomiograph.hpp"

#include <algorithm>
#include <cmath>

#include "cubic/basic_family.hpp"
#include "cubic/sampling.hpp"

namespace cubic {

namespace {

int closest_index(const std::array<Complex, 3>& roots, Complex z) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(z - roots[i]) < std::abs(z - roots[best])) best = i;
  }
  return best;
}

std::optional<int> within(const std::array<Complex, 3>& roots, Complex z, double tol) {
  const int i = closest_index(roots, z);
  if (std::abs(z - roots[i]) < tol) return i;
  return std::nullopt;
}

std::array<Complex, 3> reference_roots(const Polynomial& p) {
  if (p.degree() != 3) throw Error(ErrorCode::kInvalidInput, "render expects a cubic");
  auto roots = cardano_oracle(p);
  for (Complex& r : roots) {
    for (int k = 0; k < 3; ++k) {
      const Complex step = member_correction(p, 2, r);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  double extent = 1.0;
  for (const Complex& r : roots) extent = std::max(extent, std::abs(r));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(roots[i] - roots[j]) < 1e-8 * extent) {
        throw Error(ErrorCode::kInvalidInput, "render requires distinct roots");
      }
    }
  }
  return roots;
}

}  // namespace

std::string to_string(RenderMethod method) {
  switch (method) {
    case RenderMethod::kNewton:
      return "newton";
    case RenderMethod::kHalley:
      return "halley";
    case RenderMethod::kBasicSequence:
      return "basic-sequence";
  }
  return "unknown";
}

std::optional<RenderMethod> parse_render_method(std::string_view name) {
  if (name == "newton") return RenderMethod::kNewton;
  if (name == "halley") return RenderMethod::kHalley;
  if (name == "basic" || name == "basic-sequence") return RenderMethod::kBasicSequence;
  return std::nullopt;
}

int default_cap(RenderMethod method) {
  return method == RenderMethod::kBasicSequence ? 300 : 100;
}

Complex RenderConfig::seed(int x, int y) const noexcept {
  const double dx = 2.0 * half_width / pixels_x;
  const double dy = 2.0 * half_height() / pixels_y;
  return {center.real() - half_width + (x + 0.5) * dx,
          center.imag() + half_height() - (y + 0.5) * dy};
}

std::optional<std::array<int, 2>> RenderConfig::pixel_of(Complex z) const noexcept {
  const double fx = (z.real() - (center.real() - half_width)) / (2.0 * half_width) * pixels_x;
  const double fy = ((center.imag() + half_height()) - z.imag()) / (2.0 * half_height()) * pixels_y;
  const int x = static_cast<int>(std::floor(fx));
  const int y = static_cast<int>(std::floor(fy));
  if (x < 0 || y < 0 || x >= pixels_x || y >= pixels_y) return std::nullopt;
  return std::array<int, 2>{x, y};
}

PixelRecord render_seed(const Polynomial& p, const RenderConfig& cfg,
                        const std::array<Complex, 3>& roots, Complex seed) {
  PixelRecord rec;
  if (auto hit = within(roots, seed, cfg.tol)) {
    rec.root_index = hit;
    return rec;
  }

  if (cfg.method == RenderMethod::kBasicSequence) {
    const ConvergenceReport r = basic_sequence(p, seed, cfg.tol, std::max(3, cfg.cap));
    rec.steps = std::min(r.terms_used, cfg.cap);
    if (r.converged) {
      rec.root_index = closest_index(roots, r.limit);
    } else {
      rec.diverged = true;
    }
    return rec;
  }

  const int member = cfg.method == RenderMethod::kNewton ? 2 : 3;
  Complex z = seed;
  for (int k = 1; k <= cfg.cap; ++k) {
    const Complex delta = member_correction(p, member, z);
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) {
      rec.steps = k - 1;
      rec.diverged = true;
      return rec;
    }
    z -= delta;
    if (auto hit = within(roots, z, cfg.tol)) {
      rec.root_index = hit;
      rec.steps = k;
      return rec;
    }
  }
  rec.steps = cfg.cap;
  rec.diverged = true;
  return rec;
}

Polynomiograph render(const Polynomial& p, const RenderConfig& cfg, unsigned threads) {
  if (cfg.pixels_x <= 0 || cfg.pixels_y <= 0 || !(cfg.half_width > 0.0) || !(cfg.tol > 0.0) ||
      cfg.cap <= 0) {
    throw Error(ErrorCode::kInvalidInput, "invalid render configuration");
  }
  Polynomiograph g;
  g.config = cfg;
  g.reference_roots = reference_roots(p);
  g.pixels.resize(static_cast<std::size_t>(cfg.pixels_x) * cfg.pixels_y);

  parallel_for(static_cast<std::size_t>(cfg.pixels_y), threads, [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < cfg.pixels_x; ++x) {
      g.pixels[row * cfg.pixels_x + x] = render_seed(p, cfg, g.reference_roots, cfg.seed(x, y));
    }
  });
  return g;
}

double measure_divergence_fraction(const Polynomiograph& g) {
  if (g.pixels.empty()) return 0.0;
  const auto diverged =
      std::count_if(g.pixels.begin(), g.pixels.end(), [](const PixelRecord& r) { return r.diverged; });
  return static_cast<double>(diverged) / static_cast<double>(g.pixels.size());
}

std::vector<std::uint8_t> encode_image(const Polynomiograph& g) {
  const std::string header = "P6\n" + std::to_string(g.config.pixels_x) + " " +
                             std::to_string(g.config.pixels_y) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 3 * g.pixels.size());
  const double cap = std::max(1, g.config.cap);
  for (const PixelRecord& rec : g.pixels) {
    Rgb c = g.config.palette.dark;
    if (!rec.diverged && rec.root_index) {
      const Rgb base = g.config.palette.roots.at(static_cast<std::size_t>(*rec.root_index));
      const double f = std::clamp(1.0 - rec.steps / cap, 0.0, 1.0);
      auto shade = [f](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::lround(v * f));
      };
      c = {shade(base.r), shade(base.g), shade(base.b)};
    }
    out.push_back(c.r);
    out.push_back(c.g);
    out.push_back(c.b);
  }
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace cubic
