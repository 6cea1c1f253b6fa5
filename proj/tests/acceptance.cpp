// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Build and run via ctest (test name "acceptance") or directly.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rotorbit/catalog.hpp"
#include "rotorbit/density.hpp"
#include "rotorbit/holonomy.hpp"
#include "rotorbit/poly.hpp"
#include "rotorbit/tables.hpp"
#include "rotorbit/transport.hpp"

using namespace rotorbit;

namespace {

using Problems = std::vector<std::string>;

void check(Problems& problems, bool ok, const std::string& what) {
  if (!ok) problems.push_back(what);
}

// halved triplets from the non-cyclic catalog families (the cyclic series
// has a trivial x-generator and no halving analysis), deduplicated
std::vector<Triplet> all_halved_triplets() {
  auto entries = load_catalog(default_catalog_path());
  std::vector<Triplet> out;
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (e.tx == 0) continue;
    for (const auto& t : e.halved_triplets()) {
      if (seen.insert(t.describe()).second) out.push_back(t);
    }
  }
  return out;
}

Triplet make_triplet(long long xn, long long xd, long long yn, long long yd,
                     const std::string& phi) {
  return Triplet::exact(Angle::of(xn, xd), Angle::of(yn, yd), cosphi_from_token(phi));
}

// ------------------------------------------------------------ criteria

void criterion_1_case_table(Problems& p) {
  auto start = std::chrono::steady_clock::now();
  auto rows = compute_all_case_rows();
  auto golden = load_golden_table(default_case_table_path());
  auto diffs = diff_against_golden(rows, golden);
  for (const auto& d : diffs) check(p, false, "diff: " + d);
  check(p, rows.size() == 35, "expected 35 case rows");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  check(p, ms < 1000.0, "case-table regeneration took " + std::to_string(ms) + " ms (>= 1 s)");
}

void criterion_2_verdict_lists(Problems& p) {
  auto rows = compute_all_case_rows;
  auto all = rows();
  auto quad = quadratic_noncyclotomic_coeffs(all);
  std::vector<Rational> quad_expected = {Rational(1, 3), Rational(4, 3), Rational(3, 2),
                                         Rational(5, 3)};
  check(p, quad == quad_expected, "quadratic noncyclotomic list mismatch");

  auto quart = quartic_noncyclotomic_pairs(all);
  std::vector<std::pair<Rational, Rational>> quart_expected = {
      {Rational(1, 2), Rational(-3, 4)}, {Rational(1), Rational(1, 4)},
      {Rational(5, 3), Rational(13, 9)}, {Rational(2), Rational(11, 5)},
      {Rational(2), Rational(5, 2)},     {Rational(5, 2), Rational(13, 4)},
      {Rational(3), Rational(37, 9)},    {Rational(3), Rational(21, 5)}};
  check(p, quart == quart_expected, "quartic noncyclotomic pair list mismatch");

  const RationalPoly phi5({1, 1, 1, 1, 1});
  for (const auto& r : all) {
    if (r.degree == 4 && r.root_of_unity.is_root_of_unity) {
      check(p, r.min_poly == phi5 && r.root_of_unity.order == 5,
            r.id + ": quartic root of unity must be the order-5 cyclotomic");
    }
    if (r.degree == 2 && r.root_of_unity.is_root_of_unity) {
      bool ok = (r.min_poly == RationalPoly({1, 1, 1}) && r.root_of_unity.order == 3) ||
                (r.min_poly == RationalPoly({1, 0, 1}) && r.root_of_unity.order == 4);
      check(p, ok, r.id + ": quadratic root of unity must be order 3 or 4");
    }
  }
  check(p,
        std::find(quart.begin(), quart.end(),
                  std::pair<Rational, Rational>{Rational(1), Rational(1)}) == quart.end(),
        "the order-5 cyclotomic pair (1,1) must be absent from the quartic list");
}

void criterion_3_prime_pipeline(Problems& p) {
  auto start = std::chrono::steady_clock::now();
  for (long long n : {3LL, 5LL, 7LL, 11LL, 13LL}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    RationalPoly f = cos_minpoly(n);
    check(p, f.degree() == (n - 1) / 2, tag + "wrong degree");
    check(p, has_dyadic_structure(f), tag + "dyadic coefficient structure violated");
    RationalPoly fz = symmetric_substitute(f);
    check(p, fz.is_palindromic() && fz[0] == 1 && fz.leading() == 1,
          tag + "substituted polynomial must be palindromic with unit ends");
    // the product trace for this family is cos(2*pi/n) itself
    std::complex<double> zeta =
        unit_eigenvalue_from_trace(std::cos(2.0 * Angle::kPi / static_cast<double>(n)));
    check(p, std::abs(fz.eval(zeta)) < 1e-9, tag + "numeric eigenvalue not killed");
    check(p, !is_cyclotomic(fz).is_root_of_unity, tag + "must certify NotRootOfUnity");
  }
  check(p, symmetric_substitute(cos_minpoly(3)) == RationalPoly({1, Rational(3, 2), 1}),
        "n=3 output differs from the published quadratic");
  check(p,
        symmetric_substitute(cos_minpoly(5)) ==
            RationalPoly({1, Rational(5, 2), Rational(13, 4), Rational(5, 2), 1}),
        "n=5 output differs from the published quartic");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  check(p, ms < 1000.0, "prime pipeline took " + std::to_string(ms) + " ms (>= 1 s)");
}

void criterion_4_catalog(Problems& p) {
  auto start = std::chrono::steady_clock::now();
  auto entries = load_catalog(default_catalog_path());
  check(p, entries.size() == 108, "catalog must list 108 entries");
  CatalogReport report = catalog_verify(entries);
  for (const auto& line : report.lines) {
    check(p, line.pass,
          line.id + ": expected " + line.expected_label.str() + "/" +
              std::to_string(line.expected_order) + ", got " +
              (line.complete ? line.label.str() + "/" + std::to_string(line.order)
                             : "incomplete closure"));
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(p, s < 10.0, "catalog verification took " + std::to_string(s) + " s (>= 10 s)");
}

void criterion_5_halving_dichotomy(Problems& p) {
  for (const auto& t : all_halved_triplets()) {
    ComplexityVerdict v = complexity_verdict(t);
    if (v.kind == ComplexityVerdict::Kind::Inconclusive) {
      check(p, false, t.describe() + ": verdict inconclusive (" + v.note + ")");
      continue;
    }
    auto pair = build_pair(t);
    GroupClosure g = close_group({pair.x, pair.y}, 10000);
    bool finite_candidate = v.kind == ComplexityVerdict::Kind::FiniteCandidate;
    check(p, finite_candidate == g.complete(),
          t.describe() + ": verdict " +
              std::string(finite_candidate ? "FiniteCandidate" : "InfiniteCertified") +
              " but closure " + (g.complete() ? "Complete" : "CapExceeded"));
  }
}

void criterion_6_product_checks(Problems& p) {
  for (const auto& t : all_halved_triplets()) {
    if (t.theta_x() == Angle::pi() && t.theta_y() == Angle::pi()) continue;
    auto pair = build_pair(t);
    check(p, product_traces_agree(pair, 1e-12), t.describe() + ": product traces disagree");
    try {
      check(p, product_axes_independent(pair, 1e-8),
            t.describe() + ": product axes not independent");
    } catch (const excluded_case&) {
      check(p, false, t.describe() + ": unexpectedly hit the excluded configuration");
    }
  }
}

void criterion_7_density(Problems& p) {
  struct Run {
    Triplet t;
    const char* name;
  };
  const Run dense_runs[] = {
      {make_triplet(1, 2, 2, 3, "sqrt(2/3)"), "(1/2, 2/3, sqrt(2/3))"},
      {make_triplet(1, 2, 2, 5, "0"), "(1/2, 2/5, 0)"},
  };
  for (const auto& run : dense_runs) {
    auto start = std::chrono::steady_clock::now();
    WordOrbit orbit = alternating_sweep(build_pair(run.t), kP1, 4, 350);
    SphereGrid grid(5.0);
    CoverageReport cov = coverage(orbit.points, grid);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check(p, cov.points_generated <= 1000000,
          std::string(run.name) + ": generated more than 1e6 points");
    check(p, cov.fraction >= 0.99,
          std::string(run.name) + ": coverage " + std::to_string(cov.fraction) + " < 0.99");
    check(p, s < 60.0, std::string(run.name) + ": took " + std::to_string(s) + " s (>= 60 s)");
  }

  auto start = std::chrono::steady_clock::now();
  Triplet finite = make_triplet(1, 1, 2, 3, "sqrt(1/3)");
  WordOrbit orbit = alternating_sweep(build_pair(finite), kP1, 6, 300);
  CoverageReport cov = coverage(orbit.points, SphereGrid(5.0));
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(p, cov.cells_hit <= 12,
        "(1, 2/3, sqrt(1/3)): tetrahedral orbit hit " + std::to_string(cov.cells_hit) +
            " cells (> 12)");
  check(p, s < 60.0, "tetrahedral sweep took " + std::to_string(s) + " s (>= 60 s)");
}

void criterion_8_transport(Problems& p) {
  std::mt19937_64 rng(20250809);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  auto random_skew = [&]() {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        m[i][j] = u(rng);
        m[j][i] = -m[i][j];
      }
    return Skew4(m);
  };
  for (int i = 0; i < 100; ++i) {
    SO4Matrix m = so4_exp(random_skew());
    Skew4 log_m = so4_log(m);
    double err = max_abs_diff(so4_exp(log_m.scaled_by(-2.0 * Angle::kPi)).matrix(), m.matrix());
    check(p, err < 1e-10, "log/exp round trip " + std::to_string(i) + " error " +
                              std::to_string(err));
  }

  std::normal_distribution<double> gauss;
  auto random_twist = [&]() {
    Vec4 b{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    double n = vec4_norm(b);
    for (auto& x : b) x /= n;
    return b;
  };

  auto entries = load_catalog(default_catalog_path());
  const NormalPolygonalCurve x_loop = NormalPolygonalCurve::parse("x+1");
  const NormalPolygonalCurve y_loop = NormalPolygonalCurve::parse("y+1");
  int tested = 0;
  for (std::size_t i = 4; i < entries.size() && tested < 10; i += 11, ++tested) {
    auto pair = entries[i].pair();
    for (bool twisted : {false, true}) {
      ConnectionSpec conn =
          twisted ? build_connection(pair.x, pair.y, random_twist())
                  : build_connection(pair.x, pair.y);
      double ex = max_abs_diff(holonomy_of_curve(conn, x_loop).matrix(), pair.x.matrix());
      double ey = max_abs_diff(holonomy_of_curve(conn, y_loop).matrix(), pair.y.matrix());
      check(p, ex < 1e-9, entries[i].id + (twisted ? " twisted" : "") + ": x-loop error " +
                              std::to_string(ex));
      check(p, ey < 1e-9, entries[i].id + (twisted ? " twisted" : "") + ": y-loop error " +
                              std::to_string(ey));
    }
  }
  check(p, tested == 10, "expected 10 catalog transport pairs");

  for (int i = 0; i < 50; ++i) {
    SO4Matrix m = so4_exp(random_skew()), n = so4_exp(random_skew());
    double err = max_abs_diff(lambda_plus_action(m * n).matrix(),
                              (lambda_plus_action(m) * lambda_plus_action(n)).matrix());
    check(p, err < 1e-10, "induced-action functoriality error " + std::to_string(err));
  }
}

void criterion_9_antipodal_orbit(Problems& p) {
  auto pair = build_pair(make_triplet(1, 2, 1, 1, "0"));
  GroupClosure g = close_group({pair.x, pair.y});
  check(p, g.complete(), "closure of the quarter-turn/half-turn pair must be finite");
  OrbitSet o = orbit(g, kP1);
  check(p, o.size() == 2, "orbit of p1 must have exactly two points");
  std::set<detail::PointKey> keys;
  for (const auto& q : o.points) keys.insert(detail::point_key(q, 1e9));
  std::set<detail::PointKey> expected = {detail::point_key(kP1, 1e9),
                                         detail::point_key(-kP1, 1e9)};
  check(p, keys == expected, "orbit of p1 must be exactly {p1, -p1}");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Problems&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "case-table reproduction (exact, < 1 s)", criterion_1_case_table},
      {2, "noncyclotomic verdict lists", criterion_2_verdict_lists},
      {3, "prime-denominator pipeline (< 1 s)", criterion_3_prime_pipeline},
      {4, "finite-pair catalog closure (< 10 s)", criterion_4_catalog},
      {5, "halving dichotomy: verdict vs closure", criterion_5_halving_dichotomy},
      {6, "product trace/axis checks on halvings", criterion_6_product_checks},
      {7, "sphere coverage (>= 0.99 dense, <= 12 tetrahedral)", criterion_7_density},
      {8, "transport round trips and loop holonomy", criterion_8_transport},
      {9, "antipodal orbit of the tilted half-turn pair", criterion_9_antipodal_orbit},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Problems problems;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(problems);
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (problems.empty()) {
      std::printf("[PASS] criterion %d: %s (%.0f ms)\n", c.id, c.title, ms);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.0f ms)\n", c.id, c.title, ms);
      std::size_t shown = 0;
      for (const auto& msg : problems) {
        if (shown++ == 8) {
          std::printf("       ... and %zu more\n", problems.size() - shown + 1);
          break;
        }
        std::printf("       %s\n", msg.c_str());
      }
    }
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
