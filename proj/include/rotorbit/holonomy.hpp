#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "rotorbit/poly.hpp"
#include "rotorbit/rotation.hpp"

namespace rotorbit {

namespace detail {

using MatrixKey = std::array<std::int64_t, 9>;
using PointKey = std::array<std::int64_t, 3>;

inline std::int64_t quantize_value(double v, double scale) {
  auto q = std::llround(v * scale);
  return q == 0 ? 0 : q;  // collapse -0
}

inline MatrixKey matrix_key(const Mat3& m, double scale) {
  MatrixKey k;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) k[3 * i + j] = quantize_value(m[i][j], scale);
  return k;
}

inline PointKey point_key(const Vec3& p, double scale) {
  return {quantize_value(p.x, scale), quantize_value(p.y, scale), quantize_value(p.z, scale)};
}

struct KeyHash {
  template <std::size_t N>
  std::size_t operator()(const std::array<std::int64_t, N>& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

inline double dedup_scale(double tol) { return std::pow(10.0, std::ceil(-std::log10(tol))); }

}  // namespace detail

/**
 * Breadth-first closure of the group generated by a list of rotations,
 * deduplicated on a quantized grid.  Complete means a full frontier
 * expansion produced nothing new; CapExceeded means the element cap or the
 * word-length cap stopped the search first (evidence of an infinite group,
 * not proof -- certification comes from the eigenvalue verdicts).
 */
struct GroupClosure {
  struct Element {
    Rotation3 rotation;
    std::string word;  // letters index the generator list: 'x', 'y', 'z', ...
  };
  enum class Status { Complete, CapExceeded };

  std::vector<Element> elements;  // BFS order; identity first with empty word
  Status status = Status::Complete;
  int cap = 0;
  double tol = 0;

  bool complete() const { return status == Status::Complete; }
  int order() const { return static_cast<int>(elements.size()); }
};

inline GroupClosure close_group(const std::vector<Rotation3>& generators, int cap = 10000,
                                double tol = 1e-9, int max_word_length = 30) {
  GroupClosure g;
  g.cap = cap;
  g.tol = tol;
  const double scale = detail::dedup_scale(tol);

  std::unordered_map<detail::MatrixKey, std::size_t, detail::KeyHash> seen;
  g.elements.push_back({Rotation3::identity(), ""});
  seen.emplace(detail::matrix_key(g.elements[0].rotation.matrix(), scale), 0);

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t idx = frontier.front();
    frontier.pop_front();
    const std::string word = g.elements[idx].word;
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      Rotation3 next = generators[gi] * g.elements[idx].rotation;
      auto key = detail::matrix_key(next.matrix(), scale);
      if (seen.count(key)) continue;
      // a genuinely new element: stop if either cap forbids keeping it
      if (static_cast<int>(word.size()) >= max_word_length ||
          static_cast<int>(g.elements.size()) >= cap) {
        g.status = GroupClosure::Status::CapExceeded;
        return g;
      }
      seen.emplace(key, g.elements.size());
      g.elements.push_back({next, std::string(1, static_cast<char>('x' + gi)) + word});
      frontier.push_back(g.elements.size() - 1);
    }
  }
  return g;
}

struct GroupLabel {
  enum class Kind { Trivial, Cyclic, Dihedral, A4, S4, A5 };
  Kind kind = Kind::Trivial;
  int n = 0;  // cyclic order / dihedral index

  std::string str() const {
    switch (kind) {
      case Kind::Trivial: return "1";
      case Kind::Cyclic: return "C" + std::to_string(n);
      case Kind::Dihedral: return "D" + std::to_string(n);
      case Kind::A4: return "A4";
      case Kind::S4: return "S4";
      case Kind::A5: return "A5";
    }
    return "?";
  }

  static GroupLabel parse(const std::string& tok) {
    if (tok == "1") return {Kind::Trivial, 0};
    if (tok == "A4") return {Kind::A4, 0};
    if (tok == "S4") return {Kind::S4, 0};
    if (tok == "A5") return {Kind::A5, 0};
    if ((tok[0] == 'C' || tok[0] == 'D') && tok.size() > 1)
      return {tok[0] == 'C' ? Kind::Cyclic : Kind::Dihedral, std::stoi(tok.substr(1))};
    throw parse_error("unknown group label '" + tok + "'");
  }

  friend bool operator==(const GroupLabel& a, const GroupLabel& b) {
    return a.kind == b.kind && a.n == b.n;
  }
};

namespace detail {

inline bool is_identity(const Mat3& m, double tol = 1e-7) {
  return max_abs_diff(m, matrix_identity<3>()) < tol;
}

inline Mat3 matrix_pow(const Mat3& m, int k) {
  Mat3 result = matrix_identity<3>();
  Mat3 base = m;
  for (; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    base = base * base;
  }
  return result;
}

/// Order of a rotation inside a finite group of order `group_order`
/// (element orders divide the group order).
inline int element_order(const Rotation3& r, int group_order) {
  for (int d = 1; d <= group_order; ++d) {
    if (group_order % d != 0) continue;
    if (is_identity(matrix_pow(r.matrix(), d))) return d;
  }
  throw unrecognized_group("element order does not divide the group order");
}

}  // namespace detail

/**
 * Identifies a completed closure against the classification of finite
 * rotation groups: cyclic, dihedral, or the three exceptional groups,
 * decided by order, shared axes, and the element-order multiset.
 */
inline GroupLabel classify_finite(const GroupClosure& g) {
  if (!g.complete()) throw unrecognized_group("closure is not complete");
  const int n_elems = g.order();
  if (n_elems == 1) return {GroupLabel::Kind::Trivial, 0};

  // bucket non-identity elements by (quantized) rotation axis
  std::map<detail::PointKey, int> axis_count;
  std::vector<int> orders;
  int max_axis = 0;
  for (const auto& e : g.elements) {
    if (detail::is_identity(e.rotation.matrix())) continue;
    auto aa = axis_angle(e.rotation);
    auto key = detail::point_key(aa.axis, 1e6);
    max_axis = std::max(max_axis, ++axis_count[key]);
    orders.push_back(detail::element_order(e.rotation, n_elems));
  }

  if (static_cast<int>(axis_count.size()) == 1) return {GroupLabel::Kind::Cyclic, n_elems};

  if (n_elems % 2 == 0) {
    const int half = n_elems / 2;
    if (max_axis == half - 1) {
      int half_turns = 0;
      for (int o : orders)
        if (o == 2) ++half_turns;
      // a dihedral group has `half` reflective half-turns, plus one more
      // in the principal axis when half is even
      int expected = half + (half % 2 == 0 ? 1 : 0);
      if (half_turns == expected) return {GroupLabel::Kind::Dihedral, half};
    }
  }

  std::map<int, int> order_multiset;
  for (int o : orders) ++order_multiset[o];
  if (n_elems == 12 && order_multiset == std::map<int, int>{{2, 3}, {3, 8}})
    return {GroupLabel::Kind::A4, 0};
  if (n_elems == 24 && order_multiset == std::map<int, int>{{2, 9}, {3, 8}, {4, 6}})
    return {GroupLabel::Kind::S4, 0};
  if (n_elems == 60 && order_multiset == std::map<int, int>{{2, 15}, {3, 20}, {5, 24}})
    return {GroupLabel::Kind::A5, 0};
  throw unrecognized_group("order " + std::to_string(n_elems) + " matches no known pattern");
}

/// Orbit of a point under a completed closure, on the same quantized grid.
struct OrbitSet {
  std::vector<Vec3> points;
  int size() const { return static_cast<int>(points.size()); }
};

inline OrbitSet orbit(const GroupClosure& g, const Vec3& p) {
  const double scale = detail::dedup_scale(g.tol);
  std::unordered_map<detail::PointKey, bool, detail::KeyHash> seen;
  OrbitSet o;
  for (const auto& e : g.elements) {
    Vec3 q = e.rotation * p;
    auto key = detail::point_key(q, scale);
    if (seen.emplace(key, true).second) o.points.push_back(q);
  }
  return o;
}

/**
 * The three conditions under which the generated subgroup is dense in the
 * rotation group, checked on C1 = Cx'Cy' and C2 = Cy'Cx':
 *   (A) neither square is the identity,
 *   (B) their unit-eigenvalue axes are linearly independent,
 *   (C) a product eigenvalue is exp(i*psi*pi) with psi irrational.
 */
inline bool dense_orbit_conditions(const Triplet& t) {
  auto pair = build_pair(t);
  Rotation3 c1 = pair.x * pair.y;
  Rotation3 c2 = pair.y * pair.x;
  if (detail::is_identity((c1 * c1).matrix(), 1e-9) ||
      detail::is_identity((c2 * c2).matrix(), 1e-9))
    return false;
  try {
    if (!product_axes_independent(pair)) return false;
  } catch (const excluded_case&) {
    return false;
  }
  return complexity_verdict(t).kind == ComplexityVerdict::Kind::InfiniteCertified;
}

}  // namespace rotorbit
