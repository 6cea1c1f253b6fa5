#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rotorbit/rotation.hpp"

using namespace rotorbit;
using Catch::Matchers::WithinAbs;

namespace {

const MQ rho = MQ::golden_ratio();

Triplet exact_triplet(long long xn, long long xd, long long yn, long long yd,
                      const std::string& phi) {
  return Triplet::exact(Angle::of(xn, xd), Angle::of(yn, yd), cosphi_from_token(phi));
}

}  // namespace

TEST_CASE("c_of_theta base cases") {
  CHECK(max_abs_diff(c_of_theta(Angle(Rational(0))).matrix(), matrix_identity<3>()) < 1e-15);
  CHECK(max_abs_diff(c_of_theta(Angle::pi()).matrix(), Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}) <
        1e-15);
  CHECK(max_abs_diff(c_of_theta(Angle::of(1, 2)).matrix(),
                     Mat3{{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}}) < 1e-15);
}

TEST_CASE("u_of_phi matches the displayed tilt matrix") {
  CHECK(max_abs_diff(u_of_phi(CosPhi::zero()).matrix(),
                     Mat3{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}}}) < 1e-15);
  const double r = std::sqrt(0.5);
  CHECK(max_abs_diff(u_of_phi(cosphi_from_token("sqrt(1/2)")).matrix(),
                     Mat3{{{r, r, 0}, {-r, r, 0}, {0, 0, 1}}}) < 1e-15);
}

TEST_CASE("angle between p1 and U p1 is phi") {
  for (const char* tok : {"sqrt(1/3)", "sqrt(2/3)", "phi23", "phi25_1", "phi55"}) {
    CosPhi phi = cosphi_from_token(tok);
    Vec3 up1 = u_of_phi(phi) * kP1;
    CHECK_THAT(up1.dot(kP1), WithinAbs(phi.cos_float(), 1e-14));
  }
}

TEST_CASE("build_pair on half-turn / quarter-tilt") {
  auto [cx, cy] = build_pair(exact_triplet(1, 1, 1, 1, "0"));
  CHECK(max_abs_diff(cx.matrix(), Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}) < 1e-14);
  CHECK(max_abs_diff(cy.matrix(), Mat3{{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}}) < 1e-14);
}

TEST_CASE("conjugation moves the axis and keeps the angle") {
  Triplet t = exact_triplet(1, 2, 2, 3, "sqrt(2/3)");
  auto pair = build_pair(t);
  auto aa = axis_angle(pair.y);
  Vec3 up1 = u_of_phi(t.phi()) * kP1;
  CHECK_THAT(aa.angle, WithinAbs(t.theta_y_rad(), 1e-12));
  CHECK_THAT(std::fabs(aa.axis.dot(up1)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("pair matrices satisfy the rotation invariants") {
  for (const auto& t :
       {exact_triplet(1, 2, 2, 3, "sqrt(2/3)"), exact_triplet(1, 1, 1, 5, "phi25_2"),
        exact_triplet(1, 3, 4, 5, "phi35_1"), exact_triplet(1, 2, 2, 5, "0")}) {
    auto [cx, cy] = build_pair(t);
    for (const auto& r : {cx, cy, cx * cy, cy * cx}) {
      CHECK(Rotation3::orthogonality_defect(r.matrix()) < 1e-12);
      CHECK_THAT(det3(r.matrix()), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("exact trace of the product") {
  CHECK(trace_product_exact(exact_triplet(0, 1, 0, 1, "sqrt(1/3)")) == MQ(3));
  CHECK(trace_product_exact(exact_triplet(1, 1, 1, 3, "sqrt(1/3)")) == MQ(Rational(-2, 3)));
  CHECK(trace_product_exact(exact_triplet(1, 2, 2, 3, "phi23")) == -(rho * MQ(Rational(1, 2))));
  CHECK(trace_product_exact(exact_triplet(1, 2, 2, 5, "0")) ==
        MQ(Rational(-1, 4)) + MQ::term(Rational(1, 4), 5));
  CHECK(trace_product_exact(exact_triplet(1, 2, 2, 3, "sqrt(2/3)")) ==
        MQ(Rational(1, 2)) - MQ::sqrt2());
}

TEST_CASE("numeric trace matches the matrix product and the exact value") {
  Triplet t = exact_triplet(1, 2, 2, 3, "sqrt(2/3)");
  auto pair = build_pair(t);
  double matrix_trace_value = (pair.x * pair.y).trace();
  CHECK_THAT(trace_product_numeric(t), WithinAbs(matrix_trace_value, 1e-12));
  CHECK_THAT(trace_product_numeric(t), WithinAbs(-0.914214, 5e-7));
  CHECK_THAT(trace_product_numeric(t), WithinAbs(trace_product_exact(t).to_double(), 1e-12));

  Triplet half_turns = exact_triplet(1, 1, 1, 1, "0");
  CHECK_THAT(trace_product_numeric(half_turns), WithinAbs(-1.0, 1e-14));

  Triplet wild = Triplet::numeric(1.0, 1.0, CosPhi::zero());
  CHECK(std::isfinite(trace_product_numeric(wild)));
  auto wild_pair = build_pair(wild);
  CHECK_THAT(trace_product_numeric(wild), WithinAbs((wild_pair.x * wild_pair.y).trace(), 1e-12));
}

TEST_CASE("axis_angle conventions") {
  for (auto [n, d] : {std::pair{1LL, 3LL}, {1LL, 2LL}, {4LL, 5LL}, {1LL, 1LL}}) {
    auto aa = axis_angle(c_of_theta(Angle::of(n, d)));
    CHECK_THAT(aa.axis.x, WithinAbs(1.0, 1e-12));
    CHECK_THAT(aa.angle, WithinAbs(Angle::of(n, d).radians(), 1e-12));
  }
  auto id = axis_angle(Rotation3::identity());
  CHECK_THAT(id.axis.x, WithinAbs(1.0, 1e-15));
  CHECK(id.angle == 0.0);
  // sign convention: first coordinate above threshold is positive
  Triplet t = exact_triplet(1, 2, 2, 3, "sqrt(1/3)");
  auto aa = axis_angle(build_pair(t).y);
  CHECK(aa.axis.x > 0);
}

TEST_CASE("product traces agree for any pair") {
  CHECK(product_traces_agree(build_pair(exact_triplet(1, 2, 2, 3, "phi23"))));
  CHECK(product_traces_agree(build_pair(exact_triplet(1, 1, 2, 3, "sqrt(1/3)"))));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.01, 2 * Angle::kPi - 0.01);
  std::uniform_real_distribution<double> cphi(0.0, 0.999);
  for (int i = 0; i < 20; ++i) {
    Triplet t = Triplet::numeric(ang(rng), ang(rng), CosPhi::numeric(cphi(rng)));
    CHECK(product_traces_agree(build_pair(t)));
  }
}

TEST_CASE("product axes are independent away from the excluded case") {
  CHECK(product_axes_independent(build_pair(exact_triplet(1, 2, 2, 3, "sqrt(2/3)"))));
  CHECK(product_axes_independent(build_pair(exact_triplet(1, 2, 2, 5, "0"))));
  CHECK_THROWS_AS(product_axes_independent(build_pair(exact_triplet(1, 1, 1, 1, "0"))),
                  excluded_case);
}

TEST_CASE("cos phi vocabulary is exact and consistent") {
  const MQ inv_sqrt5 = MQ::term(Rational(1, 5), 5);
  CHECK(CosPhi::named(PhiTag::Phi23).cos_sq() == MQ(Rational(1, 2)) + MQ::term(Rational(1, 6), 5));
  CHECK(CosPhi::named(PhiTag::Phi25_1).cos_sq() == rho * inv_sqrt5);
  CHECK(CosPhi::named(PhiTag::Phi25_2).cos_sq() ==
        MQ(Rational(1, 2)) - MQ::term(Rational(1, 10), 5));
  CHECK(CosPhi::named(PhiTag::Phi33).cos_sq() == MQ(Rational(5, 9)));
  CHECK(CosPhi::named(PhiTag::Phi35_1).cos_sq() ==
        MQ(Rational(1, 3)) + MQ::term(Rational(2, 15), 5));
  CHECK(CosPhi::named(PhiTag::Phi35_2).cos_sq() ==
        MQ(Rational(1, 3)) - MQ::term(Rational(2, 15), 5));
  CHECK(CosPhi::named(PhiTag::Phi55).cos_sq() == MQ(Rational(1, 5)));

  // all 12 vocabulary values: cos_sq equals cos_float^2 to double precision
  for (const char* tok : {"0", "1/3", "sqrt(1/3)", "sqrt(2/3)", "sqrt(1/2)", "phi23", "phi25_1",
                          "phi25_2", "phi33", "phi35_1", "phi35_2", "phi55"}) {
    CosPhi p = cosphi_from_token(tok);
    CHECK_THAT(p.cos_sq().to_double(), WithinAbs(p.cos_float() * p.cos_float(), 1e-14));
  }

  // cos(phi) itself lies in the field only for the non-nested constants
  CHECK(CosPhi::named(PhiTag::Phi23).cos_exact().has_value());
  CHECK(CosPhi::named(PhiTag::Phi33).cos_exact().has_value());
  CHECK(CosPhi::named(PhiTag::Phi55).cos_exact().has_value());
  CHECK_FALSE(CosPhi::named(PhiTag::Phi25_1).cos_exact().has_value());
  CHECK_FALSE(CosPhi::named(PhiTag::Phi25_2).cos_exact().has_value());
  CHECK_FALSE(CosPhi::named(PhiTag::Phi35_1).cos_exact().has_value());
  CHECK_FALSE(CosPhi::named(PhiTag::Phi35_2).cos_exact().has_value());
}

TEST_CASE("triplet validation") {
  CHECK_THROWS_AS(exact_triplet(3, 2, 1, 2, "0"), invalid_triplet);
  CHECK_THROWS_AS(Triplet::numeric(-0.5, 1.0, CosPhi::zero()), invalid_triplet);
  CHECK_THROWS_AS(CosPhi::rational(Rational(1)), invalid_triplet);
  CHECK_THROWS_AS(CosPhi::numeric(1.5), invalid_triplet);
  CHECK_THROWS_AS(trace_product_exact(exact_triplet(1, 7, 1, 2, "0")), unsupported_angle);
}
