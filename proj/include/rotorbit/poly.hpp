#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "rotorbit/errors.hpp"
#include "rotorbit/mq.hpp"
#include "rotorbit/rational.hpp"
#include "rotorbit/rotation.hpp"
#include "rotorbit/scalar_io.hpp"

namespace rotorbit {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial is the empty list.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }
  static RationalPoly x() { return RationalPoly({0, 1}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  const Rational& operator[](std::size_t i) const {
    static const Rational zero(0);
    return i < c_.size() ? c_[i] : zero;
  }

  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  bool is_palindromic() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != c_[c_.size() - 1 - i]) return false;
    return !c_.empty();
  }

  bool has_integer_coeffs() const {
    for (const auto& c : c_)
      if (!is_integer(c)) return false;
    return true;
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return RationalPoly(std::move(r));
  }

  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return RationalPoly(std::move(r));
  }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return RationalPoly(std::move(r));
  }

  friend RationalPoly operator*(const Rational& s, const RationalPoly& p) {
    std::vector<Rational> r = p.c_;
    for (auto& c : r) c *= s;
    return RationalPoly(std::move(r));
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RationalPoly& a, const RationalPoly& b) { return !(a == b); }

  /// Exact Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& d) const {
    if (d.is_zero()) throw division_by_zero();
    RationalPoly q, r = *this;
    std::vector<Rational> qc(c_.size(), Rational(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      Rational factor = r.leading() / d.leading();
      qc[shift] += factor;
      std::vector<Rational> sub(shift + d.c_.size(), Rational(0));
      for (std::size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = factor * d.c_[i];
      r = r - RationalPoly(std::move(sub));
    }
    return {RationalPoly(std::move(qc)), r};
  }

  /// Exact quotient; throws consistency_error on a nonzero remainder.
  RationalPoly operator/(const RationalPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw consistency_error("polynomial division left a remainder");
    return q;
  }

  RationalPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rational(i) * c_[i];
    return RationalPoly(std::move(r));
  }

  RationalPoly monic() const {
    if (is_zero()) throw division_by_zero();
    return (Rational(1) / leading()) * *this;
  }

  Rational eval(const Rational& x) const {
    Rational v(0);
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  MQ eval(const MQ& x) const {
    MQ v;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + MQ(c_[i]);
    return v;
  }

  std::complex<double> eval(std::complex<double> x) const {
    std::complex<double> v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + to_double(c_[i]);
    return v;
  }

  /// e.g. "x^4 + 5/2*x^3 + 13/4*x^2 + 5/2*x + 1"
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& c = c_[i];
      if (c == 0) continue;
      bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
      std::string piece;
      if (mono.empty())
        piece = rational_to_string(a);
      else
        piece = (a == 1) ? mono : rational_to_string(a) + "*" + mono;
      if (out.empty())
        out = neg ? "-" + piece : piece;
      else
        out += (neg ? " - " : " + ") + piece;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd via the Euclidean algorithm.
inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// Polynomial with coefficients in the field, used for the quadratic factor
/// of the characteristic polynomial.
class QuadExtPoly {
 public:
  QuadExtPoly() = default;
  explicit QuadExtPoly(std::vector<MQ> coeffs) : c_(std::move(coeffs)) {}
  const std::vector<MQ>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  MQ eval(const MQ& x) const {
    MQ v;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

 private:
  std::vector<MQ> c_;
};

/// Factored characteristic polynomial (x - 1)(x^2 + a x + 1) of a rotation
/// product with trace tr, where a = 1 - tr.
struct CharPoly {
  MQ quadratic_coeff;     // a
  QuadExtPoly quadratic;  // x^2 + a x + 1
};

inline CharPoly char_poly(const MQ& trace) {
  MQ a = MQ(1) - trace;
  return {a, QuadExtPoly({MQ(1), a, MQ(1)})};
}

struct RootOfUnityVerdict {
  bool is_root_of_unity = false;
  int order = 0;  // n with input == Phi_n when is_root_of_unity
};

inline long long euler_phi(long long n) {
  long long result = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

/// n-th cyclotomic polynomial by iterated exact division of x^n - 1.
inline const RationalPoly& cyclotomic(int n) {
  static std::map<int, RationalPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Rational> xn(static_cast<std::size_t>(n) + 1, Rational(0));
  xn[0] = -1;
  xn[static_cast<std::size_t>(n)] = 1;
  RationalPoly f(std::move(xn));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) f = f / cyclotomic(d);
  return cache.emplace(n, std::move(f)).first->second;
}

/**
 * Decides whether a monic rational polynomial is a cyclotomic polynomial.
 *
 * A monic minimal polynomial of a root of unity has integer coefficients, so
 * non-integer input is rejected immediately.  Otherwise all n with
 * phi(n) = deg are enumerated (phi(n) >= sqrt(n/2) gives the safe bound
 * n <= 2*deg^2 + 4) and compared against Phi_n.
 */
inline RootOfUnityVerdict is_cyclotomic(const RationalPoly& p) {
  if (!p.is_monic() || p.degree() < 1) throw not_monic();
  if (!p.has_integer_coeffs()) return {};
  const long long deg = p.degree();
  for (long long n = 1; n <= 2 * deg * deg + 4; ++n) {
    if (euler_phi(n) != deg) continue;
    if (cyclotomic(static_cast<int>(n)) == p) return {true, static_cast<int>(n)};
  }
  return {};
}

/// Chebyshev polynomial T_m with T_m(cos x) = cos(m x).
inline RationalPoly chebyshev(int m) {
  RationalPoly t0({1});
  if (m == 0) return t0;
  RationalPoly t1 = RationalPoly::x();
  RationalPoly two_x({0, 2});
  for (int k = 2; k <= m; ++k) {
    RationalPoly t2 = two_x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/**
 * Monic minimal polynomial of cos(2*pi/n) for an odd prime n; its degree is
 * delta = (n-1)/2.
 *
 * T_n(X) - 1 factors as 2^(n-1) (X - 1) * prod_j (X - cos(2j*pi/n))^2 over
 * j = 1..delta, so dividing out (X - 1) and taking the squarefree kernel
 * (gcd with the derivative) isolates exactly the wanted monic factor.
 */
inline RationalPoly cos_minpoly(long long n) {
  if (n == 2 || !is_prime(n)) throw not_prime();
  RationalPoly g = (chebyshev(static_cast<int>(n)) - RationalPoly({1})) / RationalPoly({-1, 1});
  return poly_gcd(g, g.derivative());
}

/// Checks the dyadic denominator pattern of cos_minpoly output:
/// b_delta = 1, b_k = b'_k / 2^(delta-k) with integer b'_k, and
/// b_0 = (2 b'_0 + 1) / 2^delta with odd numerator.
inline bool has_dyadic_structure(const RationalPoly& f) {
  const int delta = f.degree();
  if (delta < 1 || !f.is_monic()) return false;
  for (int k = 0; k < delta; ++k) {
    BigInt pow2 = BigInt(1) << static_cast<unsigned>(delta - k);
    Rational scaled = f[static_cast<std::size_t>(k)] * Rational(pow2);
    if (!is_integer(scaled)) return false;
    if (k == 0 && num(scaled) % 2 == 0) return false;
  }
  return true;
}

/**
 * lambda^delta * F(lambda + 1 + 1/lambda) expanded exactly; for F the minimal
 * polynomial of cos(2*pi/n) this is the degree-2*delta minimal polynomial of
 * the product eigenvalue.  The result is palindromic with unit ends.
 */
inline RationalPoly symmetric_substitute(const RationalPoly& f) {
  if (!f.is_monic()) throw not_monic();
  const int delta = f.degree();
  RationalPoly core({1, 1, 1});  // lambda^2 + lambda + 1 = lambda*(lambda + 1 + 1/lambda)
  RationalPoly result;
  RationalPoly core_pow({1});
  for (int j = 0; j <= delta; ++j) {
    // b_j * lambda^(delta-j) * core^j
    std::vector<Rational> shift(static_cast<std::size_t>(delta - j) + 1, Rational(0));
    shift.back() = f[static_cast<std::size_t>(j)];
    result = result + RationalPoly(std::move(shift)) * core_pow;
    core_pow = core_pow * core;
  }
  return result;
}

/**
 * Minimal polynomial over Q of the non-unit eigenvalue of the rotation
 * product with exact trace `trace`.
 *
 * With a = 1 - trace the eigenvalue solves x^2 + a x + 1 = 0.  Rational
 * a = +-2 collapses to a linear factor; rational |a| < 2 keeps the
 * irreducible quadratic; a single-radical a = p + q*sqrt(d) yields the
 * conjugate product, whose irreducibility over Q is re-checked
 * constructively (no rational roots, no rational quadratic split).
 */
inline RationalPoly minimal_poly_zeta(const MQ& trace);

namespace detail {

inline std::vector<BigInt> divisors_with_sign(const BigInt& v) {
  BigInt n = v < 0 ? BigInt(-v) : v;
  std::vector<BigInt> divs;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  std::vector<BigInt> all;
  for (const auto& d : divs) {
    all.push_back(d);
    all.push_back(-d);
  }
  return all;
}

inline bool has_rational_root(const RationalPoly& f) {
  // clear denominators to a primitive integer polynomial
  BigInt lcm_den = 1;
  for (const auto& c : f.coeffs()) lcm_den = boost::multiprecision::lcm(lcm_den, den(c));
  std::vector<BigInt> ic;
  for (const auto& c : f.coeffs()) ic.push_back(num(c) * (lcm_den / den(c)));
  if (!ic.empty() && ic.front() == 0) return true;  // x = 0 is a root
  for (const auto& p : divisors_with_sign(ic.front()))
    for (const auto& q : divisors_with_sign(ic.back())) {
      if (q <= 0) continue;
      if (f.eval(Rational(p, q)) == 0) return true;
    }
  return false;
}

// Does the monic rational quartic split into two rational quadratics?
// By Gauss it suffices to scan integer factorizations of the cleared form
// (b2 x^2 + b1 x + b0)(c2 x^2 + c1 x + c0).
inline bool quartic_splits_into_quadratics(const RationalPoly& f) {
  BigInt lcm_den = 1;
  for (const auto& c : f.coeffs()) lcm_den = boost::multiprecision::lcm(lcm_den, den(c));
  std::array<BigInt, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = num(f[i]) * (lcm_den / den(f[i]));
  if (a[0] == 0) return true;  // rational root at 0
  for (const auto& b2 : divisors_with_sign(a[4])) {
    if (b2 <= 0) continue;  // wlog positive leading factor
    if (a[4] % b2 != 0) continue;
    BigInt c2 = a[4] / b2;
    for (const auto& b0 : divisors_with_sign(a[0])) {
      if (a[0] % b0 != 0) continue;
      BigInt c0 = a[0] / b0;
      // c2*b1 + b2*c1 = a3 and c0*b1 + b0*c1 = a1: solve the 2x2 system
      BigInt det = c2 * b0 - b2 * c0;
      if (det != 0) {
        BigInt num_b1 = a[3] * b0 - b2 * a[1];
        BigInt num_c1 = c2 * a[1] - a[3] * c0;
        if (num_b1 % det != 0 || num_c1 % det != 0) continue;
        BigInt b1 = num_b1 / det, c1 = num_c1 / det;
        if (b1 * c1 + b2 * c0 + b0 * c2 == a[2]) return true;
      } else {
        // degenerate system: scan b1 via the middle coefficient
        // b1*c1 = a2 - b2*c0 - b0*c2 and b2*c1 + b1*c2 = a3
        BigInt rhs = a[2] - b2 * c0 - b0 * c2;
        if (rhs == 0) {
          // b1 = 0, c1 = a3 / b2 or c1 = 0, b1 = a3 / c2
          if (a[3] % b2 == 0 && (a[1] == b0 * (a[3] / b2))) return true;
          if (a[3] % c2 == 0 && (a[1] == (a[3] / c2) * c0)) return true;
          continue;
        }
        for (const auto& b1 : divisors_with_sign(rhs)) {
          if (rhs % b1 != 0) continue;
          BigInt c1 = rhs / b1;
          if (b2 * c1 + b1 * c2 == a[3] && b1 * c0 + b0 * c1 == a[1]) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace detail

inline RationalPoly minimal_poly_zeta(const MQ& trace) {
  const MQ a_field = MQ(1) - trace;

  int radical_mask = 0;
  int radical_count = 0;
  for (int m = 1; m < 8; ++m) {
    if (a_field.coeff_mask(m) != 0) {
      radical_mask = m;
      ++radical_count;
    }
  }
  if (radical_count > 1) throw mixed_radicals();

  if (radical_count == 0) {
    const Rational a = a_field.rational_part();
    if (a == 2) return RationalPoly({1, 1});
    if (a == -2) return RationalPoly({-1, 1});
    if (a > 2 || a < -2) throw not_on_unit_circle();
    return RationalPoly({1, a, 1});
  }

  const Rational p = a_field.rational_part();
  const Rational q = a_field.coeff_mask(radical_mask);
  const int d = MQ::kRadicand[static_cast<std::size_t>(radical_mask)];
  // (x^2 + a x + 1)(x^2 + abar x + 1) with a + abar = 2p, a*abar = p^2 - d q^2
  RationalPoly f({1, 2 * p, Rational(2) + p * p - Rational(d) * q * q, 2 * p, 1});
  if (detail::has_rational_root(f) || detail::quartic_splits_into_quadratics(f))
    throw consistency_error("conjugate quartic unexpectedly reducible over Q");
  return f;
}

/// Non-unit eigenvalue exp(i*theta) of a rotation with the given trace.
/// The imaginary part is snapped to zero at the boundary, where the
/// sqrt would otherwise amplify a 1-ulp trace error to ~1e-8.
inline std::complex<double> unit_eigenvalue_from_trace(double trace) {
  double c = std::clamp((trace - 1.0) / 2.0, -1.0, 1.0);
  double s2 = 1.0 - c * c;
  return {c, s2 < 1e-14 ? 0.0 : std::sqrt(s2)};
}

/// Classification of a triplet by the eigenvalue of its rotation product.
struct ComplexityVerdict {
  enum class Kind { InfiniteCertified, FiniteCandidate, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int root_order = 0;          // n for FiniteCandidate
  std::optional<MQ> trace;     // exact trace when available
  RationalPoly min_poly;       // f_zeta when available
  std::string note;            // why Inconclusive
};

/**
 * InfiniteCertified: the minimal polynomial of the product eigenvalue is not
 * cyclotomic, so the eigenvalue is exp(i*psi*pi) with psi irrational and the
 * product rotation has infinite order.  FiniteCandidate(n): the eigenvalue is
 * a primitive n-th root of unity; finiteness of the whole group is then a
 * closure question.  Exact-arithmetic failures fall back to Inconclusive.
 */
inline ComplexityVerdict complexity_verdict(const Triplet& t) {
  ComplexityVerdict v;
  if (!t.is_exact()) {
    v.note = "numeric-mode triplet";
    return v;
  }
  try {
    MQ tr = trace_product_exact(t);
    v.trace = tr;
    v.min_poly = minimal_poly_zeta(tr);
    RootOfUnityVerdict r = is_cyclotomic(v.min_poly);
    if (r.is_root_of_unity) {
      v.kind = ComplexityVerdict::Kind::FiniteCandidate;
      v.root_order = r.order;
    } else {
      v.kind = ComplexityVerdict::Kind::InfiniteCertified;
    }
  } catch (const domain_error& e) {
    v.kind = ComplexityVerdict::Kind::Inconclusive;
    v.note = e.what();
  }
  return v;
}

}  // namespace rotorbit
