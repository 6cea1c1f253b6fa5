#pragma once

#include <cstdint>
#include <random>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "rotorbit/holonomy.hpp"
#include "rotorbit/linalg.hpp"
#include "rotorbit/rotation.hpp"

namespace rotorbit {

/**
 * Equal-area latitude-band partition of the unit sphere.  Bands have equal
 * angular width; each band is split into cells in proportion to its
 * circumference, which keeps every cell within a few percent of the target
 * area resolution_deg^2 and near-square in aspect.
 */
class SphereGrid {
 public:
  explicit SphereGrid(double resolution_deg) : resolution_deg_(resolution_deg) {
    const double res_rad = resolution_deg * Angle::kPi / 180.0;
    band_count_ = std::max(1, static_cast<int>(std::lround(Angle::kPi / res_rad)));
    delta_ = Angle::kPi / band_count_;
    offsets_.reserve(static_cast<std::size_t>(band_count_) + 1);
    offsets_.push_back(0);
    for (int b = 0; b < band_count_; ++b) {
      double mid = (b + 0.5) * delta_;
      int cells = std::max(
          1, static_cast<int>(std::lround(2.0 * Angle::kPi * std::sin(mid) / delta_)));
      cells_per_band_.push_back(cells);
      offsets_.push_back(offsets_.back() + cells);
    }
  }

  double resolution_deg() const { return resolution_deg_; }
  int band_count() const { return band_count_; }
  int total_cells() const { return offsets_.back(); }
  const std::vector<int>& cells_per_band() const { return cells_per_band_; }

  /// Exact solid angle of each cell in band b.
  double cell_area(int b) const {
    double top = std::cos(b * delta_), bottom = std::cos((b + 1) * delta_);
    return 2.0 * Angle::kPi * (top - bottom) / cells_per_band_[static_cast<std::size_t>(b)];
  }

  int cell_of(const Vec3& unit) const {
    double colat = std::acos(std::clamp(unit.z, -1.0, 1.0));
    int band = std::min(band_count_ - 1, static_cast<int>(colat / delta_));
    double lon = std::atan2(unit.y, unit.x);
    if (lon < 0) lon += 2.0 * Angle::kPi;
    int cells = cells_per_band_[static_cast<std::size_t>(band)];
    int cell = std::min(cells - 1, static_cast<int>(lon / (2.0 * Angle::kPi) * cells));
    return offsets_[static_cast<std::size_t>(band)] + cell;
  }

 private:
  double resolution_deg_;
  int band_count_;
  double delta_;
  std::vector<int> cells_per_band_;
  std::vector<int> offsets_;
};

/// Point cloud produced by one of the two word-orbit generators.
struct WordOrbit {
  enum class Construction { SweepLevels, RandomWords };
  Construction construction = Construction::SweepLevels;
  int sweep_depth = 0;                  // k for SweepLevels
  std::vector<Vec3> points;             // levels concatenated in order
  std::vector<std::size_t> level_sizes; // sizes per level, for slicing

  std::vector<Vec3> level(std::size_t k) const {
    std::size_t begin = 0;
    for (std::size_t i = 0; i < k; ++i) begin += level_sizes[i];
    return {points.begin() + static_cast<std::ptrdiff_t>(begin),
            points.begin() + static_cast<std::ptrdiff_t>(begin + level_sizes[k])};
  }
};

/**
 * Alternating circle sweep: powers of Cx'Cy' applied to p0, then powers of
 * Cy'Cx' applied to every retained point, and so on for k_max rounds
 * (2*k_max levels).  Each level is deduplicated and subsampled uniformly by
 * index to at most samples_per_circle^2 points, since the raw level sizes
 * grow geometrically and coverage needs spread rather than completeness.
 */
inline WordOrbit alternating_sweep(const RotationPair& pair, const Vec3& p0, int k_max,
                                   int samples_per_circle) {
  const Mat3 forward = (pair.x * pair.y).matrix();
  const Mat3 backward = (pair.y * pair.x).matrix();
  const std::size_t level_cap =
      static_cast<std::size_t>(samples_per_circle) * static_cast<std::size_t>(samples_per_circle);

  WordOrbit orbit;
  orbit.construction = WordOrbit::Construction::SweepLevels;
  orbit.sweep_depth = k_max;

  std::vector<Mat3> powers(static_cast<std::size_t>(samples_per_circle));
  std::vector<Vec3> prev{p0.normalized()};
  for (int lvl = 0; lvl < 2 * k_max; ++lvl) {
    const Mat3& rot = (lvl % 2 == 0) ? forward : backward;
    powers[0] = matrix_identity<3>();
    for (std::size_t l = 1; l < powers.size(); ++l) powers[l] = rot * powers[l - 1];

    const std::size_t total = prev.size() * powers.size();
    std::size_t stride = std::max<std::size_t>(1, (total + level_cap - 1) / level_cap);
    // a stride sharing a factor with samples_per_circle would alias the
    // power index; bump to the next coprime so all powers keep appearing
    while (std::gcd(stride, powers.size()) != 1) ++stride;

    std::vector<Vec3> next;
    std::unordered_set<detail::PointKey, detail::KeyHash> seen;
    next.reserve(std::min(total / stride + 1, level_cap));
    for (std::size_t idx = 0; idx < total; idx += stride) {
      Vec3 p = powers[idx % powers.size()] * prev[idx / powers.size()];
      p = p.normalized();
      if (seen.insert(detail::point_key(p, 1e12)).second) next.push_back(p);
    }
    orbit.level_sizes.push_back(next.size());
    orbit.points.insert(orbit.points.end(), next.begin(), next.end());
    prev = std::move(next);
  }
  return orbit;
}

/**
 * Applies `count` uniformly random words over the two generators (lengths
 * uniform in [1, max_length]) to p1.  Bit-reproducible for a fixed seed:
 * the generator is std::mt19937_64, whose output sequence the standard
 * pins down exactly.
 */
inline WordOrbit random_word_orbit(const RotationPair& pair, int max_length, int count,
                                   std::uint64_t seed) {
  WordOrbit orbit;
  orbit.construction = WordOrbit::Construction::RandomWords;
  orbit.points.push_back(kP1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length_dist(1, std::max(1, max_length));
  std::uniform_int_distribution<int> letter_dist(0, 1);
  for (int i = 0; i < count; ++i) {
    int len = length_dist(rng);
    Vec3 p = kP1;
    for (int j = 0; j < len; ++j) p = (letter_dist(rng) == 0 ? pair.x : pair.y) * p;
    orbit.points.push_back(p);
  }
  orbit.level_sizes.push_back(orbit.points.size());
  return orbit;
}

struct CoverageReport {
  double resolution_deg = 0;
  int cells_total = 0;
  int cells_hit = 0;
  double fraction = 0;
  std::int64_t points_generated = 0;
  int max_word_length = 0;
  std::uint64_t seed = 0;
};

struct CoverageMeta {
  int max_word_length = 0;
  std::uint64_t seed = 0;
};

inline CoverageReport coverage(const std::vector<Vec3>& points, const SphereGrid& grid,
                               CoverageMeta meta = {}) {
  std::vector<bool> hit(static_cast<std::size_t>(grid.total_cells()), false);
  int cells_hit = 0;
  for (const auto& raw : points) {
    // snap to the dedup grid first so numerically equal copies of a point
    // sitting exactly on a cell boundary cannot land in two cells
    Vec3 p{std::llround(raw.x * 1e9) / 1e9, std::llround(raw.y * 1e9) / 1e9,
           std::llround(raw.z * 1e9) / 1e9};
    auto c = static_cast<std::size_t>(grid.cell_of(p));
    if (!hit[c]) {
      hit[c] = true;
      ++cells_hit;
    }
  }
  CoverageReport r;
  r.resolution_deg = grid.resolution_deg();
  r.cells_total = grid.total_cells();
  r.cells_hit = cells_hit;
  r.fraction = grid.total_cells() == 0 ? 0.0 : double(cells_hit) / grid.total_cells();
  r.points_generated = static_cast<std::int64_t>(points.size());
  r.max_word_length = meta.max_word_length;
  r.seed = meta.seed;
  return r;
}

struct CircleFit {
  bool is_circle = false;
  Vec3 normal;      // unit normal of the fitted plane (when is_circle)
  double residual = 0;  // max point-to-plane distance
};

/**
 * Least-squares plane fit through >= 10 points; Circle when every point is
 * within 1e-6 of the plane and the set is neither constant nor collinear.
 */
inline CircleFit circle_test(const std::vector<Vec3>& points) {
  if (points.size() < 10) throw too_few_points();
  Vec3 centroid{0, 0, 0};
  for (const auto& p : points) centroid = centroid + p;
  centroid = (1.0 / static_cast<double>(points.size())) * centroid;

  Mat3 cov{};
  for (const auto& p : points) {
    Vec3 d = p - centroid;
    const double dv[3] = {d.x, d.y, d.z};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) cov[i][j] += dv[i] * dv[j];
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) cov[i][j] /= static_cast<double>(points.size());

  auto eig = jacobi_eigen(cov);
  // eig.values ascending: values[0] = out-of-plane variance
  if (eig.values[2] < 1e-20 || eig.values[1] < 1e-14) return {};  // constant or collinear
  Vec3 normal{eig.vectors[0][0], eig.vectors[1][0], eig.vectors[2][0]};
  normal = normal.normalized();
  double residual = 0;
  for (const auto& p : points) residual = std::max(residual, std::fabs((p - centroid).dot(normal)));
  if (residual >= 1e-6) return {false, normal, residual};
  return {true, normal, residual};
}

}  // namespace rotorbit
