#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "rotorbit/errors.hpp"
#include "rotorbit/rational.hpp"

namespace rotorbit {

/**
 * Exact element of the multi-quadratic real field Q(sqrt2, sqrt3, sqrt5).
 *
 * Coefficients are stored against the basis {1, s2, s3, s6, s5, s10, s15, s30}
 * indexed by a bitmask over the primes {2, 3, 5} (bit0 = 2, bit1 = 3,
 * bit2 = 5).  The basis is linearly independent over Q, so representation is
 * unique and equality is coefficient-wise.  Products of basis radicals reduce
 * to rational multiples of basis radicals, so the field is closed under all
 * four operations.
 */
class MQ {
 public:
  // radicand of basis element `mask`
  static constexpr std::array<int, 8> kRadicand = {1, 2, 3, 6, 5, 10, 15, 30};

  MQ() = default;
  MQ(Rational r) { c_[0] = std::move(r); }  // NOLINT: implicit by design of the scalar API
  MQ(long long n) : MQ(Rational(n)) {}      // NOLINT
  MQ(int n) : MQ(Rational(n)) {}            // NOLINT

  /// coefficient * sqrt(radicand), radicand in {1,2,3,5,6,10,15,30}
  static MQ term(Rational coefficient, int radicand) {
    MQ m;
    m.c_[mask_of_radicand(radicand)] = std::move(coefficient);
    return m;
  }

  static MQ sqrt2() { return term(1, 2); }
  static MQ sqrt3() { return term(1, 3); }
  static MQ sqrt5() { return term(1, 5); }

  /// (1 + sqrt5)/2, the golden ratio.
  static MQ golden_ratio() { return MQ(Rational(1, 2)) + term(Rational(1, 2), 5); }

  const Rational& coeff_mask(int mask) const { return c_[static_cast<std::size_t>(mask)]; }

  /// Coefficients in the canonical order {1, s2, s3, s5, s6, s10, s15, s30}.
  std::array<Rational, 8> coefficients() const {
    return {c_[0], c_[1], c_[2], c_[4], c_[3], c_[5], c_[6], c_[7]};
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (int m = 1; m < 8; ++m)
      if (c_[static_cast<std::size_t>(m)] != 0) return false;
    return true;
  }

  const Rational& rational_part() const { return c_[0]; }

  friend MQ operator+(const MQ& a, const MQ& b) {
    MQ r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }

  friend MQ operator-(const MQ& a, const MQ& b) {
    MQ r;
    for (int i = 0; i < 8; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }

  MQ operator-() const {
    MQ r;
    for (int i = 0; i < 8; ++i) r.c_[i] = -c_[i];
    return r;
  }

  friend MQ operator*(const MQ& a, const MQ& b) {
    MQ r;
    for (int i = 0; i < 8; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < 8; ++j) {
        if (b.c_[j] == 0) continue;
        // sqrt(r_i) * sqrt(r_j) = g * sqrt(r_{i^j}), g = product of shared primes
        int common = i & j;
        int g = 1;
        if (common & 1) g *= 2;
        if (common & 2) g *= 3;
        if (common & 4) g *= 5;
        r.c_[i ^ j] += a.c_[i] * b.c_[j] * g;
      }
    }
    return r;
  }

  MQ& operator+=(const MQ& o) { return *this = *this + o; }
  MQ& operator-=(const MQ& o) { return *this = *this - o; }
  MQ& operator*=(const MQ& o) { return *this = *this * o; }

  friend bool operator==(const MQ& a, const MQ& b) { return a.c_ == b.c_; }
  friend bool operator!=(const MQ& a, const MQ& b) { return !(a == b); }

  /// Field automorphism flipping the sign of sqrt(p) for each prime bit set
  /// in `sign_mask`.
  MQ conjugate(int sign_mask) const {
    MQ r;
    for (int m = 0; m < 8; ++m) {
      int shared = m & sign_mask;
      int parity = ((shared & 1) ? 1 : 0) ^ ((shared & 2) ? 1 : 0) ^ ((shared & 4) ? 1 : 0);
      r.c_[m] = parity ? -c_[m] : c_[m];
    }
    return r;
  }

  /// Exact multiplicative inverse via the product of Galois conjugates.
  MQ inverse() const {
    if (is_zero()) throw division_by_zero();
    MQ adj = MQ(Rational(1));
    for (int s = 1; s < 8; ++s) adj *= conjugate(s);
    MQ norm = *this * adj;  // rational by Galois invariance
    return adj * MQ(Rational(1) / norm.rational_part());
  }

  friend MQ operator/(const MQ& a, const MQ& b) { return a * b.inverse(); }

  double to_double() const {
    static const std::array<double, 8> roots = {
        1.0,           std::sqrt(2.0),  std::sqrt(3.0),  std::sqrt(6.0),
        std::sqrt(5.0), std::sqrt(10.0), std::sqrt(15.0), std::sqrt(30.0)};
    double v = 0.0;
    for (int m = 0; m < 8; ++m)
      if (c_[m] != 0) v += rotorbit::to_double(c_[m]) * roots[static_cast<std::size_t>(m)];
    return v;
  }

 private:
  static int mask_of_radicand(int radicand) {
    for (int m = 0; m < 8; ++m)
      if (kRadicand[static_cast<std::size_t>(m)] == radicand) return m;
    throw error("radicand must be a squarefree divisor of 30");
  }

  std::array<Rational, 8> c_{};
};

inline double to_double(const MQ& x) { return x.to_double(); }

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rational(0);
  BigInt n = num(r), d = den(r);
  BigInt sn = boost::multiprecision::sqrt(n);
  BigInt sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

// Square root inside the tower Q c Q(s2) c Q(s2,s3) c Q(s2,s3,s5).
//
// `level` is the number of adjoined radicals; the input must only use basis
// masks below (1 << level).  Writing x = u + v*sqrt(p) over the subfield,
// a root y = s + t*sqrt(p) forces (s^2 - p t^2)^2 = u^2 - p v^2, so the
// relative norm must itself have a square root m one level down, and then
// s^2 = (u +- m)/2 with t = v/(2s).  The v = 0 case splits into y in the
// subfield or y = t*sqrt(p).
inline std::optional<MQ> sqrt_rec(const MQ& x, int level) {
  static constexpr std::array<int, 3> primes = {2, 3, 5};
  if (level == 0) {
    auto r = rational_sqrt(x.rational_part());
    if (!r) return std::nullopt;
    return MQ(*r);
  }
  const int bit = level - 1;
  const int p = primes[static_cast<std::size_t>(bit)];
  const MQ sqrt_p = MQ::term(1, p);
  MQ u, v;
  for (int m = 0; m < (1 << level); ++m) {
    const Rational& coeff = x.coeff_mask(m);
    if (coeff == 0) continue;
    if (m & (1 << bit))
      v += MQ::term(coeff, MQ::kRadicand[static_cast<std::size_t>(m & ~(1 << bit))]);
    else
      u += MQ::term(coeff, MQ::kRadicand[static_cast<std::size_t>(m)]);
  }
  if (v.is_zero()) {
    if (auto s = sqrt_rec(u, level - 1)) return s;
    if (auto t = sqrt_rec(u * MQ(Rational(1, p)), level - 1)) return *t * sqrt_p;
    return std::nullopt;
  }
  MQ n = u * u - MQ(p) * v * v;
  auto m_root = sqrt_rec(n, level - 1);
  if (!m_root) return std::nullopt;
  for (int sgn : {+1, -1}) {
    MQ s_sq = (u + (sgn > 0 ? *m_root : -*m_root)) * MQ(Rational(1, 2));
    auto s = sqrt_rec(s_sq, level - 1);
    if (!s || s->is_zero()) continue;
    MQ t = v * (MQ(2) * *s).inverse();
    MQ y = *s + t * sqrt_p;
    if (y * y == x) return y;
  }
  return std::nullopt;
}

}  // namespace detail

/// Nonnegative y with y*y == x exactly, when one exists in the field.
inline std::optional<MQ> try_mq_sqrt(const MQ& x) {
  if (x.is_zero()) return MQ{};
  auto y = detail::sqrt_rec(x, 3);
  if (!y) return std::nullopt;
  if (y->to_double() < 0) *y = -*y;
  if (!(*y * *y == x)) return std::nullopt;
  return y;
}

/// Throwing variant of try_mq_sqrt.
inline MQ mq_sqrt(const MQ& x) {
  if (x.to_double() < -1e-15) throw not_in_field("negative value has no real square root");
  auto y = try_mq_sqrt(x);
  if (!y) throw not_in_field();
  return *y;
}

/**
 * Angle as an exact rational multiple of pi, normalized to [0, 2).
 * Two angles are equal iff their reduced multipliers are equal.
 */
class Angle {
 public:
  Angle() : q_(0) {}
  explicit Angle(Rational q) : q_(normalize(std::move(q))) {}
  static Angle of(long long n, long long d) { return Angle(Rational(n, d)); }
  static Angle pi() { return Angle(Rational(1)); }

  const Rational& q() const { return q_; }
  double radians() const { return to_double(q_) * kPi; }

  bool is_zero() const { return q_ == 0; }

  Angle halved() const { return Angle(q_ / 2); }

  /// Angle of the inverse rotation (2*pi - theta).
  Angle reversed() const { return Angle(2 - q_); }

  /// Representative in [0, pi] generating the same rotation subgroup.
  Angle folded() const { return q_ > 1 ? reversed() : *this; }

  friend bool operator==(const Angle& a, const Angle& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Angle& a, const Angle& b) { return !(a == b); }

  static constexpr double kPi = 3.14159265358979323846;

 private:
  static Rational normalize(Rational q) {
    BigInt full_turns = num(q) / (2 * den(q));
    q -= Rational(2 * full_turns);
    if (q < 0) q += 2;
    return q;
  }
  Rational q_;
};

/// Exact cos(theta) for the angle denominators representable in the field.
inline MQ exact_cos(const Angle& theta) {
  Rational q = theta.q();
  if (q > 1) q = 2 - q;
  bool negate = false;
  if (q > Rational(1, 2)) {
    q = 1 - q;
    negate = true;
  }
  // q in [0, 1/2]
  MQ value;
  const BigInt d = den(q), n = num(q);
  if (d == 1) {
    value = MQ(1);  // q == 0
  } else if (d == 2) {
    value = MQ(0);
  } else if (d == 3) {
    value = MQ(Rational(1, 2));
  } else if (d == 4) {
    value = MQ::term(Rational(1, 2), 2);
  } else if (d == 5) {
    value = (n == 1) ? MQ(Rational(1, 4)) + MQ::term(Rational(1, 4), 5)
                     : MQ(Rational(-1, 4)) + MQ::term(Rational(1, 4), 5);
  } else if (d == 6) {
    value = MQ::term(Rational(1, 2), 3);
  } else if (d == 12) {
    value = (n == 1) ? MQ::term(Rational(1, 4), 6) + MQ::term(Rational(1, 4), 2)
                     : MQ::term(Rational(1, 4), 6) - MQ::term(Rational(1, 4), 2);
  } else {
    throw unsupported_angle("cos(" + rational_to_string(theta.q()) +
                            "*pi) is outside Q(sqrt2,sqrt3,sqrt5)");
  }
  return negate ? -value : value;
}

/// Exact sin^2(theta) = 1 - cos^2(theta) on the same angle domain.
inline MQ exact_sin_sq(const Angle& theta) {
  MQ c = exact_cos(theta);
  return MQ(1) - c * c;
}

}  // namespace rotorbit
