#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "rotorbit/errors.hpp"
#include "rotorbit/mq.hpp"
#include "rotorbit/rational.hpp"

namespace rotorbit {

// Text grammar for exact scalars:
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := 'rho' | 'sqrt' '(' rational ')' | rational | '(' expr ')'
//   rational := integer ['/' positive-integer]
//
// Angles are written as a bare rational p/q and mean (p/q)*pi.

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  MQ parse() {
    MQ v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  MQ expr() {
    skip_ws();
    bool neg = consume('-');
    MQ v = term();
    if (neg) v = -v;
    for (;;) {
      skip_ws();
      if (consume('+'))
        v += term();
      else if (consume('-'))
        v -= term();
      else
        return v;
    }
  }

  MQ term() {
    MQ v = factor();
    for (;;) {
      skip_ws();
      if (consume('*'))
        v *= factor();
      else
        return v;
    }
  }

  MQ factor() {
    skip_ws();
    if (consume_word("rho")) return MQ::golden_ratio();
    if (consume_word("sqrt")) {
      skip_ws();
      expect('(');
      Rational r = rational();
      skip_ws();
      expect(')');
      return mq_sqrt(MQ(r));
    }
    if (consume('(')) {
      MQ v = expr();
      skip_ws();
      expect(')');
      return v;
    }
    return MQ(rational());
  }

  Rational rational() {
    skip_ws();
    bool neg = consume('-');
    std::string digits = integer_digits();
    BigInt n(digits);
    BigInt d = 1;
    if (consume('/')) {
      d = BigInt(integer_digits());
      if (d == 0) fail("zero denominator");
    }
    Rational r(n, d);
    return neg ? -r : r;
  }

  std::string integer_digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume_word(std::string_view w) {
    if (text_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& why) {
    throw parse_error("bad scalar '" + std::string(text_) + "': " + why + " at offset " +
                      std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MQ parse_mq(std::string_view text) { return detail::ScalarParser(text).parse(); }

inline Rational parse_rational(std::string_view text) {
  MQ v = parse_mq(text);
  if (!v.is_rational()) throw parse_error("expected a rational, got '" + std::string(text) + "'");
  return v.rational_part();
}

/// Angle "p/q" meaning (p/q)*pi.
inline Angle parse_angle(std::string_view text) { return Angle(parse_rational(text)); }

/// Canonical form, e.g. "1/2 - sqrt(2)" or "-1/4 + 3/4*sqrt(5)".
/// Round-trips through parse_mq.
inline std::string mq_to_string(const MQ& x) {
  static constexpr std::array<int, 8> order = {1, 2, 3, 5, 6, 10, 15, 30};
  const auto coeffs = x.coefficients();
  std::string out;
  for (std::size_t i = 0; i < 8; ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string piece;
    if (order[i] == 1) {
      piece = rational_to_string(a);
    } else {
      std::string radical = "sqrt(" + std::to_string(order[i]) + ")";
      piece = (a == 1) ? radical : rational_to_string(a) + "*" + radical;
    }
    if (out.empty())
      out = neg ? "-" + piece : piece;
    else
      out += (neg ? " - " : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

inline std::string angle_to_string(const Angle& a) { return rational_to_string(a.q()); }

}  // namespace rotorbit
