#include "cubic/poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace cubic {

namespace {

void require_degree(const Polynomial& p, int degree, const char* op) {
  if (p.degree() != degree) {
    throw Error(ErrorCode::kInvalidInput, std::string(op) + ": expected degree " +
                                              std::to_string(degree) + ", got " +
                                              std::to_string(p.degree()));
  }
}

Complex cube_root(Complex z) {
  if (z == Complex{}) return {};
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

std::optional<double> parse_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<Complex> parse_complex(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.back() != 'i') {
    auto re = parse_real(token);
    if (!re) return std::nullopt;
    return Complex{*re, 0.0};
  }
  token.remove_suffix(1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  for (std::size_t pos = token.size(); pos-- > 1;) {
    char c = token[pos];
    if ((c == '+' || c == '-') && token[pos - 1] != 'e' && token[pos - 1] != 'E') {
      auto re = parse_real(token.substr(0, pos));
      std::string_view im_text = token.substr(pos);
      std::optional<double> im;
      if (im_text == "+" || im_text == "-") {
        im = im_text == "+" ? 1.0 : -1.0;
      } else {
        im = parse_real(im_text);
      }
      if (!re || !im) return std::nullopt;
      return Complex{*re, *im};
    }
  }
  return std::nullopt;
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) throw Error(ErrorCode::kInvalidInput, "zero polynomial");
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::kInvalidInput, "non-finite coefficient");
    }
  }
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) throw Error(ErrorCode::kInvalidInput, "derivative of a constant");
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const { return scaled(1.0 / leading()); }

Polynomial Polynomial::scaled(Complex factor) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& x : c) x *= factor;
  return Polynomial(std::move(c));
}

double Polynomial::scale() const noexcept {
  double s = 0.0;
  for (const Complex& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

bool Polynomial::has_real_coefficients() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c.imag() == 0.0; });
}

Complex evaluate(const Polynomial& p, Complex z) noexcept { return p(z); }

std::vector<Complex> derivatives_up_to(const Polynomial& p, Complex z, int k) {
  if (k < 0 || k > p.degree()) {
    throw Error(ErrorCode::kInvalidDerivativeOrder,
                "derivative order " + std::to_string(k) + " exceeds degree " +
                    std::to_string(p.degree()));
  }
  // Repeated synthetic division yields the Taylor coefficients at z.
  std::vector<Complex> work(p.coefficients().begin(), p.coefficients().end());
  const int n = p.degree();
  std::vector<Complex> out(static_cast<std::size_t>(k) + 1);
  double factorial = 1.0;
  for (int j = 0; j <= k; ++j) {
    for (int i = n - 1; i >= j; --i) work[i] += z * work[i + 1];
    if (j > 0) factorial *= j;
    out[j] = factorial * work[j];
  }
  return out;
}

QuadraticRoots solve_quadratic(const Polynomial& q) {
  require_degree(q, 2, "solve_quadratic");
  const Complex a = q[2], b = q[1], c = q[0];
  const Complex disc = b * b - 4.0 * a * c;
  const Complex root = principal_sqrt(disc);
  // Pick the sign for which b and the root add constructively.
  const Complex big = (std::real(std::conj(b) * root) >= 0.0) ? -(b + root) / 2.0
                                                               : -(b - root) / 2.0;
  if (big == Complex{}) return {Complex{}, Complex{}, disc};
  return {big / a, c / big, disc};
}

CriticalPoints critical_points(const Polynomial& p) {
  require_degree(p, 3, "critical_points");
  const Polynomial dp = p.derivative();
  const QuadraticRoots q = solve_quadratic(dp);
  CriticalPoints cp;
  cp.discriminant = q.discriminant;
  const double scale = dp.scale();
  cp.repeated = std::abs(q.discriminant) < 1e-14 * scale * scale;
  const bool first_is_c1 = q.r1.imag() > q.r2.imag() ||
                           (q.r1.imag() == q.r2.imag() && q.r1.real() >= q.r2.real());
  cp.c1 = first_is_c1 ? q.r1 : q.r2;
  cp.c2 = first_is_c1 ? q.r2 : q.r1;
  return cp;
}

SqrtParts complex_sqrt_decomposed(double s, double d) {
  if (!(d >= 0.0)) {
    throw Error(ErrorCode::kInvalidBranch, "complex_sqrt_decomposed requires d >= 0");
  }
  const double modulus = std::hypot(s, d);
  if (modulus == 0.0) return {0.0, 0.0};
  // Only the larger of A, B is taken from its radical; the other follows from
  // 2AB = d, which avoids the cancellation in modulus - |s|.
  if (s >= 0.0) {
    const double a = std::sqrt((modulus + s) / 2.0);
    return {a, d / (2.0 * a)};
  }
  const double b = std::sqrt((modulus - s) / 2.0);
  return {d / (2.0 * b), b};
}

Complex principal_sqrt(Complex z) {
  if (z.imag() >= 0.0) {
    auto [a, b] = complex_sqrt_decomposed(z.real(), z.imag());
    return {a, b};
  }
  auto [a, b] = complex_sqrt_decomposed(z.real(), -z.imag());
  return {a, -b};
}

Deflation deflate(const Polynomial& p, Complex r) {
  if (p.degree() < 1) throw Error(ErrorCode::kInvalidInput, "cannot deflate a constant");
  const auto c = p.coefficients();
  const std::size_t n = c.size() - 1;
  std::vector<Complex> q(n);
  q[n - 1] = c[n];
  for (std::size_t i = n - 1; i > 0; --i) q[i - 1] = c[i] + r * q[i];
  const Complex remainder = c[0] + r * q[0];
  return {Polynomial(std::move(q)), remainder};
}

std::array<Complex, 3> cardano_oracle(const Polynomial& p) {
  require_degree(p, 3, "cardano_oracle");
  const Polynomial m = p.monic();
  const Complex a2 = m[2], a1 = m[1], a0 = m[0];
  // Depressed form y^3 + P y + Q with z = y - a2/3.
  const Complex shift = -a2 / 3.0;
  const Complex P = a1 - a2 * a2 / 3.0;
  const Complex Q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

  if (m.has_real_coefficients()) {
    const double pr = P.real(), qr = Q.real();
    const double delta = (qr / 2.0) * (qr / 2.0) + (pr / 3.0) * (pr / 3.0) * (pr / 3.0);
    if (delta < 0.0) {
      // Three real roots: trigonometric form.
      const double rho = 2.0 * std::sqrt(-pr / 3.0);
      const double arg = std::clamp(3.0 * qr / (pr * rho), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      std::array<Complex, 3> out;
      for (int k = 0; k < 3; ++k) {
        out[k] = rho * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift.real();
      }
      return out;
    }
    // One real root: real radicals with the sign chosen against cancellation.
    const double sq = std::sqrt(delta);
    const double u3 = qr > 0.0 ? -qr / 2.0 - sq : -qr / 2.0 + sq;
    const double u = std::cbrt(u3);
    const double v = u == 0.0 ? 0.0 : -pr / (3.0 * u);
    const double real_root = u + v;
    const double re = -(u + v) / 2.0;
    const double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
    return {Complex{real_root + shift.real(), 0.0}, Complex{re + shift.real(), im},
            Complex{re + shift.real(), -im}};
  }

  const Complex sq = principal_sqrt(Q * Q / 4.0 + P * P * P / 27.0);
  const Complex plus = -Q / 2.0 + sq, minus = -Q / 2.0 - sq;
  const Complex u3 = std::abs(plus) >= std::abs(minus) ? plus : minus;
  const Complex u = cube_root(u3);
  const Complex v = u == Complex{} ? Complex{} : -P / (3.0 * u);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex omega2 = std::conj(omega);
  return {u + v + shift, u * omega + v * omega2 + shift, u * omega2 + v * omega + shift};
}

Polynomial parse_polynomial(std::string_view text) {
  std::vector<Complex> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(',', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? end : end - start);
    std::string token;
    for (char c : raw) {
      if (!std::isspace(static_cast<unsigned char>(c))) token.push_back(c);
    }
    auto value = parse_complex(token);
    if (!value) throw Error(ErrorCode::kInvalidInput, "bad coefficient token '" + token + "'");
    coeffs.push_back(*value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return Polynomial(std::move(coeffs));
}

std::string format_polynomial(const Polynomial& p) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const Complex& c : p.coefficients()) {
    if (!first) out << ',';
    first = false;
    out << c.real();
    if (c.imag() != 0.0) out << (c.imag() >= 0.0 ? "+" : "") << c.imag() << 'i';
  }
  return out.str();
}

}  // namespace cubic
