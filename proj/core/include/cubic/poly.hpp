#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubic/error.hpp"

namespace cubic {

using Complex = std::complex<double>;

/// Dense complex polynomial, constant term first.
///
/// Trailing zero coefficients are trimmed on construction so that degree()
/// is always honest; the zero polynomial is rejected.
class Polynomial {
 public:
  explicit Polynomial(std::vector<Complex> coefficients);
  Polynomial(std::initializer_list<Complex> coefficients)
      : Polynomial(std::vector<Complex>(coefficients)) {}

  /// Monic polynomial with the given roots, times `leading`.
  static Polynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  Complex operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  Complex leading() const noexcept { return coeffs_.back(); }

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept;

  Polynomial derivative() const;
  Polynomial monic() const;
  Polynomial scaled(Complex factor) const;

  /// max_i |a_i|; every relative tolerance in the library is taken against it.
  double scale() const noexcept;

  bool has_real_coefficients() const noexcept;

 private:
  std::vector<Complex> coeffs_;
};

struct QuadraticRoots {
  Complex r1;
  Complex r2;
  Complex discriminant;
};

struct CriticalPoints {
  Complex c1;  ///< larger imaginary part; ties broken by larger real part
  Complex c2;
  Complex discriminant;
  bool repeated = false;  ///< p' has a (numerically) double root
};

struct Deflation {
  Polynomial quotient;
  Complex remainder;
};

struct SqrtParts {
  double real_part;  ///< A >= 0
  double imag_part;  ///< B >= 0
};

Complex evaluate(const Polynomial& p, Complex z) noexcept;

/// Values p(z), p'(z), ..., p^(k)(z). Throws kInvalidDerivativeOrder if k > degree.
std::vector<Complex> derivatives_up_to(const Polynomial& p, Complex z, int k);

/// Cancellation-free quadratic formula: the larger root comes from the branch
/// where b and the square root add, the smaller from r1 * r2 = c / a.
QuadraticRoots solve_quadratic(const Polynomial& q);

/// Zeros of p' for a cubic p, ordered as documented on CriticalPoints.
CriticalPoints critical_points(const Polynomial& p);

/// sqrt(s + i d) = A + i B with A, B >= 0, valid on the branch d >= 0.
SqrtParts complex_sqrt_decomposed(double s, double d);

/// Principal square root built on complex_sqrt_decomposed (conjugating when Im z < 0).
Complex principal_sqrt(Complex z);

/// Synthetic division by (z - r).
Deflation deflate(const Polynomial& p, Complex r);

/// Closed-form radical solution of a cubic, used as an independent oracle.
std::array<Complex, 3> cardano_oracle(const Polynomial& p);

/// Parses "a0,a1,...,an" where each token is `re` or `re+imi` / `re-imi`.
Polynomial parse_polynomial(std::string_view text);
std::string format_polynomial(const Polynomial& p);

}  // namespace cubic
