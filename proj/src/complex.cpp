#include "qca/complex.hpp"

#include <cctype>

#include "qca/errors.hpp"

namespace qca {

ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ExactComplex& operator+=(ExactComplex& a, const ExactComplex& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}

ExactComplex& operator*=(ExactComplex& a, const ExactComplex& b) {
  a = a * b;
  return a;
}

ExactComplex conj(const ExactComplex& z) { return {z.re, -z.im}; }

Rational sq_abs(const ExactComplex& z) { return z.re * z.re + z.im * z.im; }

std::string to_string(const ExactComplex& z) {
  if (z.im == 0) return to_string(z.re);
  std::string out;
  if (z.re != 0) out = to_string(z.re);
  if (z.im < 0) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  Rational mag = abs(z.im);
  if (mag != 1) out += to_string(mag);
  out += 'i';
  return out;
}

ExactComplex parse_complex(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error("empty amplitude literal");

  if (s.back() != 'i') return ExactComplex(parse_rational(s));

  s.remove_suffix(1);  // the imaginary tail always ends in 'i'
  // Split "RE±IM" at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t pos = s.size(); pos-- > 1;) {
    if (s[pos] == '+' || s[pos] == '-') {
      split = pos;
      break;
    }
  }
  auto parse_im = [&](std::string_view im_text) -> Rational {
    if (im_text.empty() || im_text == "+") return Rational(1);
    if (im_text == "-") return Rational(-1);
    return parse_rational(im_text);
  };
  if (split == std::string_view::npos) {
    return ExactComplex(Rational(0), parse_im(s));
  }
  std::string_view re_text = s.substr(0, split);
  std::string_view im_text = s.substr(split);  // keeps the sign
  return ExactComplex(parse_rational(re_text), parse_im(im_text));
}

bool scaled_equal(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.value.is_zero() || b.value.is_zero()) {
    return a.value.is_zero() && b.value.is_zero();
  }
  // a.value / sqrt(sa) == b.value / sqrt(sb) iff the values are positive real
  // multiples of each other and the squared moduli match across scales.
  ExactComplex cross = a.value * conj(b.value);
  if (cross.im != 0 || cross.re <= 0) return false;
  return sq_abs(a.value) * b.sq_scale == sq_abs(b.value) * a.sq_scale;
}

bool scaled_equal(const ScaledComplex& a, const ExactComplex& b) {
  return scaled_equal(a, ScaledComplex{b, Rational(1)});
}

Rational sq_abs(const ScaledComplex& a) { return sq_abs(a.value) / a.sq_scale; }

}  // namespace qca
