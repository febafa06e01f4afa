#include "steering/rational.hpp"

#include <cctype>
#include <cmath>

#include "steering/errors.hpp"

namespace steering {
namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  return mpz_class(std::string(text), 10);
}

}  // namespace

bool is_rational_literal(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return is_integer_literal(text);
  const auto den = text.substr(slash + 1);
  return is_integer_literal(text.substr(0, slash)) && !den.empty() &&
         std::isdigit(static_cast<unsigned char>(den.front())) && is_integer_literal(den);
}

Rational parse_rational(std::string_view text) {
  if (!is_rational_literal(text)) {
    throw InvariantViolation("not a rational literal: '" + std::string(text) + "'");
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw InvariantViolation("zero denominator in '" + std::string(text) + "'");
  Rational value(parse_integer(text.substr(0, slash)), den);
  value.canonicalize();
  return value;
}

Rational parse_decimal_exact(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const auto exp_text = text.substr(e + 1);
    if (!is_integer_literal(exp_text)) {
      throw InvariantViolation("malformed decimal: '" + original + "'");
    }
    exponent = std::stol(std::string(exp_text));
    text = text.substr(0, e);
  }
  std::string digits;
  bool seen_point = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) --exponent;
    } else {
      throw InvariantViolation("malformed decimal: '" + original + "'");
    }
  }
  if (digits.empty()) throw InvariantViolation("malformed decimal: '" + original + "'");
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) {
  const double truncated = value.get_d();
  if (!std::isfinite(truncated)) return truncated;
  const double away = std::nextafter(truncated, sgn(value) >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return truncated;
  const Rational err_truncated = abs(Rational(truncated) - value);
  const Rational err_away = abs(Rational(away) - value);
  return err_away < err_truncated ? away : truncated;
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw InvariantViolation("non-finite value has no rational form");
  return Rational(value);
}

}  // namespace steering
