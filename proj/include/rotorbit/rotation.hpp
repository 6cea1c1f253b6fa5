#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "rotorbit/errors.hpp"
#include "rotorbit/linalg.hpp"
#include "rotorbit/mq.hpp"
#include "rotorbit/scalar_io.hpp"

namespace rotorbit {

struct invalid_triplet : error {
  using error::error;
};

enum class PhiTag { Zero, Rat, SqrtRat, Phi23, Phi25_1, Phi25_2, Phi33, Phi35_1, Phi35_2, Phi55, NumericCos };

/**
 * The tilt angle phi between the two rotation axes, carried through its
 * cosine.  cos^2(phi) is always exact for the vocabulary constants;
 * cos(phi) itself is exposed exactly only when it lies in the field
 * (e.g. sqrt((5+sqrt5)/10) does not).
 */
class CosPhi {
 public:
  static CosPhi zero() { return CosPhi(PhiTag::Zero, MQ(0), "0"); }

  /// cos(phi) = r for a rational 0 <= r < 1.
  static CosPhi rational(const Rational& r) {
    if (r == 0) return zero();
    check_range(to_double(r));
    return CosPhi(PhiTag::Rat, MQ(r) * MQ(r), rational_to_string(r));
  }

  /// cos(phi) = sqrt(r) for a rational 0 <= r < 1.
  static CosPhi sqrt_rational(const Rational& r) {
    if (r == 0) return zero();
    if (r < 0) throw invalid_triplet("cos(phi) must be a real value");
    check_range(std::sqrt(to_double(r)));
    return CosPhi(PhiTag::SqrtRat, MQ(r), "sqrt(" + rational_to_string(r) + ")");
  }

  static CosPhi named(PhiTag tag) {
    const MQ rho = MQ::golden_ratio();
    const MQ inv_sqrt5 = MQ::term(Rational(1, 5), 5);  // 1/sqrt5
    MQ cos_sq;
    std::string token;
    switch (tag) {
      case PhiTag::Phi23:
        cos_sq = rho * rho * MQ(Rational(1, 3));
        token = "phi23";
        break;
      case PhiTag::Phi25_1:
        cos_sq = rho * inv_sqrt5;
        token = "phi25_1";
        break;
      case PhiTag::Phi25_2:
        cos_sq = rho.inverse() * inv_sqrt5;
        token = "phi25_2";
        break;
      case PhiTag::Phi33:
        cos_sq = MQ(Rational(5, 9));
        token = "phi33";
        break;
      case PhiTag::Phi35_1:
        cos_sq = rho * rho * rho * inv_sqrt5 * MQ(Rational(1, 3));
        token = "phi35_1";
        break;
      case PhiTag::Phi35_2:
        cos_sq = (rho * rho * rho).inverse() * inv_sqrt5 * MQ(Rational(1, 3));
        token = "phi35_2";
        break;
      case PhiTag::Phi55:
        cos_sq = MQ(Rational(1, 5));
        token = "phi55";
        break;
      default:
        throw error("named CosPhi requires a phi** tag");
    }
    return CosPhi(tag, cos_sq, token);
  }

  /// Numeric-only cosine for exploratory mode; no exact data attached.
  static CosPhi numeric(double c) {
    check_range(c);
    CosPhi p;
    p.tag_ = PhiTag::NumericCos;
    p.cos_float_ = c;
    p.token_ = std::to_string(c);
    return p;
  }

  PhiTag tag() const { return tag_; }
  const std::string& token() const { return token_; }

  bool has_exact() const { return cos_sq_.has_value(); }

  /// Exact cos^2(phi).
  const MQ& cos_sq() const {
    if (!cos_sq_) throw unsupported_angle("phi carries no exact data in numeric mode");
    return *cos_sq_;
  }

  /// Exact cos(phi) when it lies in the field.
  const std::optional<MQ>& cos_exact() const { return cos_exact_; }

  double cos_float() const { return cos_float_; }
  double sin_float() const { return std::sqrt(std::max(0.0, 1.0 - cos_float_ * cos_float_)); }

 private:
  CosPhi() = default;
  CosPhi(PhiTag tag, MQ cos_sq, std::string token) : tag_(tag), token_(std::move(token)) {
    cos_exact_ = try_mq_sqrt(cos_sq);
    cos_float_ = cos_exact_ ? cos_exact_->to_double() : std::sqrt(cos_sq.to_double());
    cos_sq_ = std::move(cos_sq);
    check_range(cos_float_);
  }

  static void check_range(double c) {
    // 0 < phi <= pi/2, i.e. 0 <= cos(phi) < 1
    if (!(c >= 0.0 && c < 1.0)) throw invalid_triplet("cos(phi) must lie in [0, 1)");
  }

  PhiTag tag_ = PhiTag::Zero;
  std::optional<MQ> cos_sq_;
  std::optional<MQ> cos_exact_;
  double cos_float_ = 0.0;
  std::string token_ = "0";
};

/// "0", "p/q", "sqrt(p/q)" or one of the named constants phi23 ... phi55.
inline CosPhi cosphi_from_token(std::string_view tok) {
  if (tok == "0") return CosPhi::zero();
  if (tok == "phi23") return CosPhi::named(PhiTag::Phi23);
  if (tok == "phi25_1") return CosPhi::named(PhiTag::Phi25_1);
  if (tok == "phi25_2") return CosPhi::named(PhiTag::Phi25_2);
  if (tok == "phi33") return CosPhi::named(PhiTag::Phi33);
  if (tok == "phi35_1") return CosPhi::named(PhiTag::Phi35_1);
  if (tok == "phi35_2") return CosPhi::named(PhiTag::Phi35_2);
  if (tok.rfind("sqrt(", 0) == 0 && tok.back() == ')')
    return CosPhi::sqrt_rational(parse_rational(tok.substr(5, tok.size() - 6)));
  if (tok == "phi55") return CosPhi::named(PhiTag::Phi55);
  return CosPhi::rational(parse_rational(tok));
}

enum class TripletMode { Exact, Numeric };

/**
 * The universal input (theta_x, theta_y, phi): two rotation angles as
 * rational multiples of pi plus the axis tilt.  Exact mode restricts the
 * angles to [0, pi]; numeric mode allows arbitrary radians in [0, 2*pi).
 */
class Triplet {
 public:
  static Triplet exact(Angle tx, Angle ty, CosPhi phi) {
    if (tx.q() > 1 || ty.q() > 1)
      throw invalid_triplet("exact-mode angles must lie in [0, pi]; fold " +
                            angle_to_string(tx.q() > 1 ? tx : ty) + " with 2 - q first");
    Triplet t;
    t.mode_ = TripletMode::Exact;
    t.tx_ = tx;
    t.ty_ = ty;
    t.tx_rad_ = tx.radians();
    t.ty_rad_ = ty.radians();
    t.phi_ = std::move(phi);
    return t;
  }

  static Triplet numeric(double tx_rad, double ty_rad, CosPhi phi) {
    const double two_pi = 2.0 * Angle::kPi;
    if (!(tx_rad >= 0 && tx_rad < two_pi && ty_rad >= 0 && ty_rad < two_pi))
      throw invalid_triplet("numeric-mode angles must lie in [0, 2*pi)");
    Triplet t;
    t.mode_ = TripletMode::Numeric;
    t.tx_rad_ = tx_rad;
    t.ty_rad_ = ty_rad;
    t.phi_ = std::move(phi);
    return t;
  }

  TripletMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == TripletMode::Exact; }

  const Angle& theta_x() const {
    require_exact();
    return tx_;
  }
  const Angle& theta_y() const {
    require_exact();
    return ty_;
  }
  double theta_x_rad() const { return tx_rad_; }
  double theta_y_rad() const { return ty_rad_; }
  const CosPhi& phi() const { return phi_; }

  std::string describe() const {
    if (is_exact())
      return "(" + angle_to_string(tx_) + ", " + angle_to_string(ty_) + ", " + phi_.token() + ")";
    return "(" + std::to_string(tx_rad_) + ", " + std::to_string(ty_rad_) + ", " + phi_.token() +
           ")";
  }

 private:
  void require_exact() const {
    if (!is_exact()) throw error("operation requires an exact-mode triplet");
  }

  TripletMode mode_ = TripletMode::Exact;
  Angle tx_, ty_;
  double tx_rad_ = 0, ty_rad_ = 0;
  CosPhi phi_ = CosPhi::zero();
};

/// Orthogonal 3x3 matrix with determinant +1, validated on construction.
class Rotation3 {
 public:
  explicit Rotation3(const Mat3& m, double tol = 1e-9) : m_(m) {
    if (orthogonality_defect(m) > tol || std::fabs(det3(m) - 1.0) > tol)
      throw error("matrix is not a rotation");
  }

  static Rotation3 identity() { return Rotation3(matrix_identity<3>()); }

  const Mat3& matrix() const { return m_; }

  Rotation3 transpose() const { return Rotation3(transposed(m_)); }

  friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
    return Rotation3(a.m_ * b.m_);
  }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  double trace() const { return matrix_trace(m_); }

  static double orthogonality_defect(const Mat3& m) {
    return max_abs_diff(transposed(m) * m, matrix_identity<3>());
  }

 private:
  Mat3 m_;
};

inline const Vec3 kP1{1, 0, 0};
inline const Vec3 kP2{0, 1, 0};
inline const Vec3 kP3{0, 0, 1};

/// Rotation by theta fixing p1 = (1,0,0), acting in the (2,3)-plane.
inline Rotation3 c_of_theta(double theta_rad) {
  double c = std::cos(theta_rad), s = std::sin(theta_rad);
  return Rotation3(Mat3{{{1, 0, 0}, {0, c, -s}, {0, s, c}}});
}

inline Rotation3 c_of_theta(const Angle& theta) { return c_of_theta(theta.radians()); }

/// The tilt rotation in the (1,2)-plane; U*p1 makes angle phi with p1.
inline Rotation3 u_of_phi(const CosPhi& phi) {
  double c = phi.cos_float(), s = phi.sin_float();
  return Rotation3(Mat3{{{c, s, 0}, {-s, c, 0}, {0, 0, 1}}});
}

struct RotationPair {
  Rotation3 x = Rotation3::identity();
  Rotation3 y = Rotation3::identity();
};

/// (C(theta_x), U C(theta_y) U^T) for the triplet.
inline RotationPair build_pair(const Triplet& t) {
  Rotation3 u = u_of_phi(t.phi());
  return {c_of_theta(t.theta_x_rad()), u * c_of_theta(t.theta_y_rad()) * u.transpose()};
}

/**
 * Exact tr(Cx' Cy') for an exact-mode triplet:
 *
 *   cos tx cos ty - 2 sin tx sin ty cos phi
 *     + (1 + cos tx cos ty) cos^2 phi + (cos tx + cos ty) sin^2 phi.
 *
 * The only odd-degree radical term is the cross term; it is recovered as
 * -sqrt(4 sin^2 tx sin^2 ty cos^2 phi), with the sign fixed because
 * sin tx, sin ty, cos phi are all nonnegative on the exact-mode domain.
 */
inline MQ trace_product_exact(const Triplet& t) {
  const MQ cx = exact_cos(t.theta_x());
  const MQ cy = exact_cos(t.theta_y());
  const MQ sx2 = MQ(1) - cx * cx;
  const MQ sy2 = MQ(1) - cy * cy;
  const MQ c2 = t.phi().cos_sq();
  const MQ s2 = MQ(1) - c2;
  const MQ cross = mq_sqrt(MQ(4) * sx2 * sy2 * c2);
  return cx * cy - cross + (MQ(1) + cx * cy) * c2 + (cx + cy) * s2;
}

/// Same trace formula evaluated in doubles; valid for arbitrary angles.
inline double trace_product_numeric(const Triplet& t) {
  const double cx = std::cos(t.theta_x_rad()), sx = std::sin(t.theta_x_rad());
  const double cy = std::cos(t.theta_y_rad()), sy = std::sin(t.theta_y_rad());
  const double cp = t.phi().cos_float();
  const double c2 = cp * cp, s2 = 1.0 - c2;
  return cx * cy - 2.0 * sx * sy * cp + (1.0 + cx * cy) * c2 + (cx + cy) * s2;
}

struct AxisAngle {
  Vec3 axis;     // unit; first coordinate above threshold is positive
  double angle;  // in [0, pi]
};

/**
 * Axis and rotation angle of R.  The angle comes from the trace; the axis
 * from the skew part, or from R + I when the angle is near pi.  R = identity
 * has no well-defined axis and returns (p1, 0) by convention.
 */
inline AxisAngle axis_angle(const Rotation3& R) {
  const Mat3& m = R.matrix();
  double c = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  double angle = std::acos(c);
  if (angle < 1e-12) return {kP1, 0.0};

  Vec3 axis;
  if (Angle::kPi - angle > 1e-4) {
    axis = Vec3{m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]}.normalized();
  } else {
    // R + I ~= 2 a a^T near a half-turn; take the strongest column
    Mat3 s = m + matrix_identity<3>();
    int best = 0;
    for (int j = 1; j < 3; ++j)
      if (s[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] >
          s[static_cast<std::size_t>(best)][static_cast<std::size_t>(best)])
        best = j;
    axis = Vec3{s[0][static_cast<std::size_t>(best)], s[1][static_cast<std::size_t>(best)],
                s[2][static_cast<std::size_t>(best)]}
               .normalized();
  }
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(axis[i]) > 1e-9) {
      if (axis[i] < 0) axis = -axis;
      break;
    }
  }
  return {axis, angle};
}

/// The eigenvalue sets of Cx'Cy' and Cy'Cx' coincide; decided via the traces.
inline bool product_traces_agree(const RotationPair& pair, double tol = 1e-12) {
  double t1 = (pair.x * pair.y).trace();
  double t2 = (pair.y * pair.x).trace();
  return std::fabs(t1 - t2) < tol;
}

/**
 * The unit-eigenvalue axes of Cx'Cy' and Cy'Cx' are linearly independent.
 * The configuration where both generators are half-turns is excluded.
 */
inline bool product_axes_independent(const RotationPair& pair, double tol = 1e-8) {
  const double half_turn_tol = 1e-9;
  if (std::fabs(pair.x.trace() + 1.0) < half_turn_tol &&
      std::fabs(pair.y.trace() + 1.0) < half_turn_tol)
    throw excluded_case();
  Vec3 a1 = axis_angle(pair.x * pair.y).axis;
  Vec3 a2 = axis_angle(pair.y * pair.x).axis;
  return a1.cross(a2).norm() > tol;
}

}  // namespace rotorbit
