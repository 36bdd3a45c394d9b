#pragma once

#include <string>
#include <string_view>

#include "qca/rational.hpp"

namespace qca {

/// Complex number with exact rational real and imaginary parts.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(Rational real, Rational imag = Rational(0))
      : re(std::move(real)), im(std::move(imag)) {}
  ExactComplex(int real) : re(real) {}  // NOLINT: implicit by design

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const ExactComplex& other) const = default;
};

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a);
ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
ExactComplex& operator+=(ExactComplex& a, const ExactComplex& b);
ExactComplex& operator*=(ExactComplex& a, const ExactComplex& b);

ExactComplex conj(const ExactComplex& z);

/// |z|^2, exact.
Rational sq_abs(const ExactComplex& z);

/// Renders within the amplitude grammar: "0", "3/5", "1/2-1/3i", "i", "-2i".
std::string to_string(const ExactComplex& z);

/// Parses RAT | RAT ("+"|"-") RAT "i" | RAT "i", plus the bare forms
/// "i" / "+i" / "-i". Throws Error on malformed input.
ExactComplex parse_complex(std::string_view text);

/// value / sqrt(sq_scale) with sq_scale > 0. Represents renormalized
/// amplitudes without materializing irrational square roots.
struct ScaledComplex {
  ExactComplex value;
  Rational sq_scale = Rational(1);
};

/// Exact equality of the represented values.
bool scaled_equal(const ScaledComplex& a, const ScaledComplex& b);
bool scaled_equal(const ScaledComplex& a, const ExactComplex& b);

/// |a|^2 = sq_abs(value) / sq_scale, exact rational.
Rational sq_abs(const ScaledComplex& a);

}  // namespace qca
