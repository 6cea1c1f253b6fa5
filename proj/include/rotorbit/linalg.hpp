#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace rotorbit {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    return {x / n, y / n, z / n};
  }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

template <std::size_t N>
using SquareMatrix = std::array<std::array<double, N>, N>;

template <std::size_t N>
SquareMatrix<N> matrix_identity() {
  SquareMatrix<N> m{};
  for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
  return m;
}

template <std::size_t N>
SquareMatrix<N> operator*(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  SquareMatrix<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      double aik = a[i][k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

template <std::size_t N>
SquareMatrix<N> operator+(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

template <std::size_t N>
SquareMatrix<N> operator-(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

template <std::size_t N>
SquareMatrix<N> scaled(const SquareMatrix<N>& a, double s) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = s * a[i][j];
  return r;
}

template <std::size_t N>
SquareMatrix<N> transposed(const SquareMatrix<N>& a) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = a[j][i];
  return r;
}

template <std::size_t N>
double matrix_trace(const SquareMatrix<N>& a) {
  double t = 0;
  for (std::size_t i = 0; i < N; ++i) t += a[i][i];
  return t;
}

/// Max-row-sum norm.
template <std::size_t N>
double inf_norm(const SquareMatrix<N>& a) {
  double best = 0;
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < N; ++j) row += std::fabs(a[i][j]);
    best = std::max(best, row);
  }
  return best;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double best = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) best = std::max(best, std::fabs(a[i][j] - b[i][j]));
  return best;
}

using Mat3 = SquareMatrix<3>;
using Mat4 = SquareMatrix<4>;

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

inline std::array<double, 4> operator*(const Mat4& m, const std::array<double, 4>& v) {
  std::array<double, 4> r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double det4(const Mat4& m) {
  double d = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    Mat3 minor{};
    for (std::size_t i = 1; i < 4; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j == c) continue;
        minor[i - 1][jj++] = m[i][j];
      }
    }
    d += ((c % 2 == 0) ? 1.0 : -1.0) * m[0][c] * det3(minor);
  }
  return d;
}

template <std::size_t N>
struct SymmetricEigen {
  std::array<double, N> values;        // ascending
  SquareMatrix<N> vectors;             // columns, matching values
};

/// Cyclic Jacobi for small symmetric matrices.
template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(SquareMatrix<N> a) {
  SquareMatrix<N> v = matrix_identity<N>();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  SymmetricEigen<N> out{};
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (a[order[j]][order[j]] < a[order[i]][order[i]]) std::swap(order[i], order[j]);
  for (std::size_t i = 0; i < N; ++i) {
    out.values[i] = a[order[i]][order[i]];
    for (std::size_t k = 0; k < N; ++k) out.vectors[k][i] = v[k][order[i]];
  }
  return out;
}

}  // namespace rotorbit
