#include "qca/rational.hpp"

#include <cctype>

#include "qca/errors.hpp"

namespace qca {

Int pow_int(const Int& base, std::uint64_t exp) {
  Int result(1);
  Int acc = base;
  while (exp != 0) {
    if (exp & 1) result *= acc;
    exp >>= 1;
    if (exp != 0) acc *= acc;
  }
  return result;
}

Rational make_rational(Int num, Int den) {
  if (den == 0) throw Error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

std::string to_string(const Int& value) { return value.str(); }

std::string to_string(const Rational& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Int parse_unsigned_int(std::string_view s, std::string_view original) {
  if (!all_digits(s)) {
    throw Error("invalid rational literal '" + std::string(original) + "'");
  }
  return Int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw Error("invalid rational literal '" + std::string(text) + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Int num = parse_unsigned_int(s.substr(0, slash), text);
    Int den = parse_unsigned_int(s.substr(slash + 1), text);
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
      throw Error("invalid rational literal '" + std::string(text) + "'");
    }
    Int digits(0);
    if (!whole.empty()) digits = parse_unsigned_int(whole, text);
    Int den(1);
    if (!frac.empty()) {
      Int frac_digits = parse_unsigned_int(frac, text);
      den = pow_int(Int(10), frac.size());
      digits = digits * den + frac_digits;
    }
    value = Rational(digits, den);
  } else {
    value = Rational(parse_unsigned_int(s, text));
  }
  if (negative) value = -value;
  return value;
}

bool is_perfect_square(const Rational& value) {
  if (value < 0) return false;
  Int num = numerator(value);
  Int den = denominator(value);
  Int num_root = sqrt(num);
  if (num_root * num_root != num) return false;
  Int den_root = sqrt(den);
  return den_root * den_root == den;
}

Rational exact_sqrt(const Rational& value) {
  if (!is_perfect_square(value)) {
    throw Error("no exact rational square root of " + to_string(value));
  }
  return Rational(sqrt(numerator(value)), sqrt(denominator(value)));
}

}  // namespace qca
