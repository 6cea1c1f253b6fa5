#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotorbit/errors.hpp"
#include "rotorbit/linalg.hpp"
#include "rotorbit/rotation.hpp"

namespace rotorbit {

using Vec4 = std::array<double, 4>;

inline double vec4_norm(const Vec4& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

/// Orthogonal 4x4 matrix with determinant +1.
class SO4Matrix {
 public:
  explicit SO4Matrix(const Mat4& m, double tol = 1e-9) : m_(m) {
    if (max_abs_diff(transposed(m) * m, matrix_identity<4>()) > tol ||
        std::fabs(det4(m) - 1.0) > tol)
      throw error("matrix is not in SO(4)");
  }

  static SO4Matrix identity() { return SO4Matrix(matrix_identity<4>()); }

  const Mat4& matrix() const { return m_; }

  friend SO4Matrix operator*(const SO4Matrix& a, const SO4Matrix& b) {
    return SO4Matrix(a.m_ * b.m_);
  }

  SO4Matrix transpose() const { return SO4Matrix(transposed(m_)); }

 private:
  Mat4 m_;
};

/// Antisymmetric 4x4 matrix (Lie-algebra element of SO(4)).
class Skew4 {
 public:
  Skew4() : m_(Mat4{}) {}
  explicit Skew4(const Mat4& m, double tol = 1e-12) : m_(m) {
    if (max_abs_diff(m, scaled(transposed(m), -1.0)) > tol)
      throw error("matrix is not antisymmetric");
  }

  const Mat4& matrix() const { return m_; }

  Skew4 scaled_by(double s) const { return Skew4(scaled(m_, s)); }

 private:
  Mat4 m_;
};

/// Block embedding of a 3x3 rotation with 1 in the top-left corner.
inline SO4Matrix lift_so3_to_so4(const Rotation3& c) {
  Mat4 m = matrix_identity<4>();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i + 1][j + 1] = c.matrix()[i][j];
  return SO4Matrix(m);
}

/// The twist matrix built from a unit 4-vector b:
/// right quaternion multiplication in the standard basis.
inline SO4Matrix b_tilde(const Vec4& b) {
  if (std::fabs(vec4_norm(b) - 1.0) > 1e-12) throw not_unit();
  const double b1 = b[0], b2 = b[1], b3 = b[2], b4 = b[3];
  Mat4 m = {{{b1, -b2, -b3, -b4},
             {b2, b1, b4, -b3},
             {b3, -b4, b1, b2},
             {b4, b3, -b2, b1}}};
  return SO4Matrix(m);
}

/// exp for 4x4 matrices by scaling-and-squaring with a Taylor kernel.
inline Mat4 mat4_exp(const Mat4& p) {
  double norm = inf_norm(p);
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  Mat4 t = scaled(p, scale);
  Mat4 result = matrix_identity<4>();
  Mat4 term = matrix_identity<4>();
  for (int k = 1; k <= 24; ++k) {
    term = scaled(term * t, 1.0 / k);
    result = result + term;
    if (inf_norm(term) < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// exp(P) of an antisymmetric generator lands in SO(4).
inline SO4Matrix so4_exp(const Skew4& p) { return SO4Matrix(mat4_exp(p.matrix()), 1e-8); }

namespace detail {

struct InvariantPlane {
  Vec4 u, w;      // orthonormal basis of the plane
  double angle;   // rotation angle of M restricted to the plane, in (-pi, pi]
};

inline Vec4 mat4_col(const Mat4& m, std::size_t j) {
  return {m[0][j], m[1][j], m[2][j], m[3][j]};
}

inline double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline Vec4 axpy4(double a, const Vec4& x, const Vec4& y) {
  return {a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2], a * x[3] + y[3]};
}

inline Vec4 normalized4(const Vec4& v) {
  double n = vec4_norm(v);
  return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

inline double plane_angle(const Mat4& m, const Vec4& u, const Vec4& w) {
  double c = dot4(u, m * u);
  double s = dot4(w, m * u);
  double angle = std::atan2(s, c);
  // principal branch with the half-turn tie broken to +pi
  if (std::fabs(angle + Angle::kPi) < 1e-9) angle = Angle::kPi;
  return angle;
}

}  // namespace detail

/**
 * Principal logarithm of M in SO(4), returned as the generator P with
 * exp(-2*pi*P) = M.
 *
 * M + M^T is symmetric and commutes with M, so its eigenspaces are the two
 * invariant rotation planes.  Each plane contributes a 2x2 rotation block
 * with angle in (-pi, pi] (eigenvalue -1 resolved to +pi).  The isoclinic
 * case (all eigenvalues of M + M^T equal) takes span{v, Mv} for an
 * arbitrary v and its orthogonal complement.
 */
inline Skew4 so4_log(const SO4Matrix& m_in) {
  const Mat4& m = m_in.matrix();
  std::vector<detail::InvariantPlane> planes;

  if (max_abs_diff(m, matrix_identity<4>()) < 1e-12) {
    return Skew4{};
  }

  Mat4 k = m + transposed(m);
  auto eig = jacobi_eigen(k);
  const bool isoclinic = (eig.values[3] - eig.values[0]) < 1e-8;

  if (!isoclinic) {
    if ((eig.values[1] - eig.values[0]) > 1e-8 || (eig.values[3] - eig.values[2]) > 1e-8)
      throw schur_failure("eigenvalues of M + M^T did not pair up");
    for (std::size_t base : {std::size_t{0}, std::size_t{2}}) {
      detail::InvariantPlane pl;
      pl.u = detail::mat4_col(eig.vectors, base);
      pl.w = detail::mat4_col(eig.vectors, base + 1);
      pl.angle = detail::plane_angle(m, pl.u, pl.w);
      planes.push_back(pl);
    }
  } else {
    // M^2 - 2*cos(alpha)*M + I = 0: span{v, Mv} is invariant for any v
    Vec4 v{1, 0, 0, 0};
    Vec4 mv = m * v;
    Vec4 w = detail::axpy4(-detail::dot4(v, mv), v, mv);
    if (vec4_norm(w) < 1e-9) {
      // M = -I (the +I case returned above): two quarter-block half-turns
      planes.push_back({{1, 0, 0, 0}, {0, 1, 0, 0}, Angle::kPi});
      planes.push_back({{0, 0, 1, 0}, {0, 0, 0, 1}, Angle::kPi});
    } else {
      detail::InvariantPlane p1;
      p1.u = v;
      p1.w = detail::normalized4(w);
      p1.angle = detail::plane_angle(m, p1.u, p1.w);
      planes.push_back(p1);
      // orthogonal complement via Gram-Schmidt over the standard basis
      std::vector<Vec4> comp;
      for (std::size_t j = 0; j < 4 && comp.size() < 2; ++j) {
        Vec4 e{};
        e[j] = 1;
        e = detail::axpy4(-detail::dot4(p1.u, e), p1.u, e);
        e = detail::axpy4(-detail::dot4(p1.w, e), p1.w, e);
        for (const auto& c : comp) e = detail::axpy4(-detail::dot4(c, e), c, e);
        if (vec4_norm(e) > 1e-6) comp.push_back(detail::normalized4(e));
      }
      if (comp.size() != 2) throw schur_failure("could not complete the invariant splitting");
      planes.push_back({comp[0], comp[1], detail::plane_angle(m, comp[0], comp[1])});
    }
  }

  Mat4 log_m{};
  for (const auto& pl : planes) {
    // angle * (w u^T - u w^T) generates the rotation in this plane
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        log_m[i][j] += pl.angle * (pl.w[i] * pl.u[j] - pl.u[i] * pl.w[j]);
  }
  Skew4 p(scaled(log_m, -1.0 / (2.0 * Angle::kPi)), 1e-9);
  if (max_abs_diff(mat4_exp(scaled(p.matrix(), -2.0 * Angle::kPi)), m) > 1e-10)
    throw schur_failure("log round trip failed");
  return p;
}

/**
 * Constant-coefficient flat connection data: generators P1, P2 with
 * exp(-2*pi*P1) and exp(-2*pi*P2) the lifted (optionally twisted) period
 * matrices.
 */
struct ConnectionSpec {
  Skew4 p1, p2;
};

inline ConnectionSpec build_connection(const Rotation3& cx, const Rotation3& cy,
                                       const std::optional<Vec4>& bx = std::nullopt,
                                       const std::optional<Vec4>& by = std::nullopt) {
  SO4Matrix mx = lift_so3_to_so4(cx);
  SO4Matrix my = lift_so3_to_so4(cy);
  if (bx) mx = b_tilde(*bx) * mx;
  if (by) my = b_tilde(*by) * my;
  return {so4_log(mx), so4_log(my)};
}

/// One axis-aligned segment of signed length 2*pi*steps.
struct CurveMove {
  char axis = 'x';  // 'x' or 'y'
  int steps = 0;    // nonzero
};

/// Polygonal curve on coordinate lines whose segment lengths are full
/// periods, so both endpoints of each segment project to the same torus
/// point.
struct NormalPolygonalCurve {
  std::vector<CurveMove> moves;

  /// Parses the move syntax "x+1,y-2,x+3".
  static NormalPolygonalCurve parse(std::string_view text) {
    NormalPolygonalCurve curve;
    if (text.empty()) return curve;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(pos, end - pos);
      if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'y'))
        throw parse_error("bad curve move '" + std::string(tok) + "'");
      int steps = 0;
      try {
        steps = std::stoi(std::string(tok.substr(1)));
      } catch (const std::exception&) {
        throw parse_error("bad curve move '" + std::string(tok) + "'");
      }
      if (steps == 0) throw parse_error("curve moves must have nonzero step count");
      curve.moves.push_back({tok[0], steps});
      pos = end + 1;
    }
    return curve;
  }

  std::string str() const {
    std::string out;
    for (const auto& mv : moves) {
      if (!out.empty()) out += ",";
      out += mv.axis;
      out += (mv.steps > 0 ? "+" : "") + std::to_string(mv.steps);
    }
    return out;
  }
};

/**
 * Frame transport along the curve: the product over moves, in curve order,
 * of exp(-2*pi*steps*P_axis).  Frames multiply on the right, so the first
 * move contributes the leftmost factor.
 */
inline SO4Matrix transport(const ConnectionSpec& conn, const NormalPolygonalCurve& curve) {
  Mat4 acc = matrix_identity<4>();
  for (const auto& mv : curve.moves) {
    const Skew4& gen = (mv.axis == 'x') ? conn.p1 : conn.p2;
    acc = acc * mat4_exp(scaled(gen.matrix(), -2.0 * Angle::kPi * mv.steps));
  }
  return SO4Matrix(acc, 1e-8);
}

/**
 * The rotation induced on the self-dual 2-vector frame by a frame change
 * M in SO(4): images of the three self-dual basis 2-vectors under the
 * wedge-square of M, expressed in the same basis.
 */
inline Rotation3 lambda_plus_action(const SO4Matrix& m_in) {
  const Mat4& m = m_in.matrix();
  // index pairs of the coordinate 2-vector basis e_i ^ e_j
  static constexpr std::array<std::array<std::size_t, 2>, 6> pairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  // wedge-square: 6x6 matrix of 2x2 minors
  std::array<std::array<double, 6>, 6> wedge{};
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      auto [i, j] = pairs[r];
      auto [k, l] = pairs[c];
      wedge[r][c] = m[i][k] * m[j][l] - m[i][l] * m[j][k];
    }
  // self-dual orthonormal basis in coordinates: (e12+e34, e13+e42, e14+e23),
  // each scaled by 1/sqrt2; the two 1/sqrt2 factors give the 1/2 below
  static constexpr std::array<std::array<double, 6>, 3> basis = {{
      {1, 0, 0, 0, 0, 1},    // e12 + e34
      {0, 1, 0, 0, -1, 0},   // e13 + e42
      {0, 0, 1, 1, 0, 0},    // e14 + e23
  }};
  Mat3 out{};
  for (std::size_t a = 0; a < 3; ++a)      // output component
    for (std::size_t b = 0; b < 3; ++b) {  // input basis vector
      double acc = 0;
      for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c)
          acc += basis[a][r] * wedge[r][c] * basis[b][c];
      out[a][b] = acc * 0.5;
    }
  return Rotation3(out, 1e-8);
}

/// Transport along the curve followed by the induced action on the
/// self-dual frame; equals the corresponding word in the 3x3 period
/// matrices.
inline Rotation3 holonomy_of_curve(const ConnectionSpec& conn,
                                   const NormalPolygonalCurve& curve) {
  return lambda_plus_action(transport(conn, curve));
}

}  // namespace rotorbit
