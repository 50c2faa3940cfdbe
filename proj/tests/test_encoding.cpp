// Copyright 2026 The quadest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "quadest/encoding.hpp"
#include "quadest/rng.hpp"
#include "quadest/schemes.hpp"

namespace quadest {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

TEST_CASE("encoding matrix validates and exposes the two-mode constants") {
  CHECK_THROWS_AS(EncodingMatrix{Eigen::MatrixXcd::Zero(2, 3)},
                  std::invalid_argument);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = Complex(0.0, std::nan(""));
  CHECK_THROWS_AS(EncodingMatrix{bad}, std::invalid_argument);

  const TwoModeConstants c{0.1, -0.2, 0.3, 0.4, 0.5, -0.6, 0.7, 0.8};
  const TwoModeConstants back =
      EncodingMatrix::from_two_mode_constants(c).two_mode_constants();
  CHECK(back.eps_x1 == doctest::Approx(c.eps_x1).epsilon(1e-15));
  CHECK(back.eps_p2 == doctest::Approx(c.eps_p2).epsilon(1e-15));
  CHECK(back.eta_x1 == doctest::Approx(c.eta_x1).epsilon(1e-15));
  CHECK(back.eta_p2 == doctest::Approx(c.eta_p2).epsilon(1e-15));

  CHECK_THROWS_AS(EncodingMatrix::identity(3).two_mode_constants(),
                  std::invalid_argument);
}

TEST_CASE("optimal two-mode encoding at representative transmittances") {
  const Eigen::Vector2d ab(2.0, 1.0);
  const QuadratureVector half =
      encode(optimal_two_mode_encoding(0.5), ab);
  const Eigen::VectorXd expected_half =
      (Eigen::VectorXd(4) << 2.0, 1.0, 2.0, -1.0).finished();
  CHECK((half.values() - expected_half).cwiseAbs().maxCoeff() <= 1e-12);

  const QuadratureVector full =
      encode(optimal_two_mode_encoding(1.0), Eigen::Vector2d(1.3, 0.7));
  const Eigen::VectorXd expected_full =
      (Eigen::VectorXd(4) << kSqrt2 * 1.3, 0.0, 0.0, -kSqrt2 * 0.7)
          .finished();
  CHECK((full.values() - expected_full).cwiseAbs().maxCoeff() <= 1e-12);

  // At T = 0 the first parameter moves entirely to the second mode's x and
  // the second parameter to the first mode's p.
  const QuadratureVector none =
      encode(optimal_two_mode_encoding(0.0), Eigen::Vector2d(1.3, 0.7));
  const Eigen::VectorXd expected_none =
      (Eigen::VectorXd(4) << 0.0, kSqrt2 * 0.7, kSqrt2 * 1.3, 0.0).finished();
  CHECK((none.values() - expected_none).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK(encode(optimal_two_mode_encoding(0.42), Eigen::Vector2d(0.0, 0.0))
            .values()
            .isZero(0.0));
  CHECK_THROWS_AS(encode(optimal_two_mode_encoding(0.5), Eigen::Vector3d()),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimal_two_mode_encoding(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(optimal_two_mode_encoding(1.01), std::invalid_argument);
}

TEST_CASE("encode is linear") {
  CounterRng rng(41);
  const EncodingMatrix e = EncodingMatrix(random_unitary(3, rng));
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d u, v;
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
    }
    const double lam = rng.normal();
    const double mu = rng.normal();
    const Eigen::VectorXd lhs = encode(e, lam * u + mu * v).values();
    const Eigen::VectorXd rhs =
        lam * encode(e, u).values() + mu * encode(e, v).values();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constraint report matches unitarity") {
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0, 0.137}) {
    CHECK(check_constraints(optimal_two_mode_encoding(t), 1e-9).satisfied);
  }
  CHECK(check_constraints(EncodingMatrix::identity(4), 1e-9).satisfied);

  const ConstraintReport scaled = check_constraints(
      EncodingMatrix(2.0 * Eigen::MatrixXcd::Identity(2, 2)), 1e-9);
  CHECK(scaled.energy_residuals[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(scaled.energy_residuals[1] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(scaled.max_abs_residual == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_FALSE(scaled.satisfied);

  CHECK_THROWS_AS(check_constraints(EncodingMatrix::identity(2), 0.0),
                  std::invalid_argument);
}

TEST_CASE("satisfied is equivalent to a small unitarity defect") {
  CounterRng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::MatrixXcd m = random_unitary(3, rng);
    if (trial % 2 == 1) {
      m(trial % 3, (trial + 1) % 3) += Complex(1e-6, -1e-6);
    }
    const ConstraintReport report = check_constraints(EncodingMatrix(m), 1e-9);
    const double defect =
        (m.adjoint() * m - Eigen::MatrixXcd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff();
    CHECK(report.satisfied == (defect <= 1e-9));
    // The report tracks real and imaginary residuals separately, so its
    // worst entry sits within a factor sqrt(2) of the modulus defect.
    CHECK(report.max_abs_residual <= defect + 1e-15);
    CHECK(defect <= std::sqrt(2.0) * report.max_abs_residual + 1e-15);
  }
}

TEST_CASE("energy condition holds exactly for unitary encodings") {
  CounterRng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const EncodingMatrix e = EncodingMatrix(random_unitary(4, rng));
    Eigen::VectorXd params(4);
    for (int i = 0; i < 4; ++i) params[i] = rng.normal(0.0, 4.0);
    CHECK(energy_check(encode(e, params), params, 1e-9));
  }
}

TEST_CASE("general two-mode encoding reduces to the optimal family") {
  for (double t : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    const Eigen::MatrixXcd zero_angles =
        general_two_mode_encoding(t, 0.0, 0.0, 0.0).entries();
    CHECK(zero_angles == optimal_two_mode_encoding(t).entries());
  }

  const TwoModeConstants c =
      optimal_two_mode_encoding(0.3).two_mode_constants();
  CHECK(c.eps_x1 == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(c.eps_p1 == 0.0);
  CHECK(c.eps_x2 == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(c.eps_p2 == 0.0);
  CHECK(c.eta_x1 == 0.0);
  CHECK(c.eta_p1 == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(c.eta_x2 == 0.0);
  CHECK(c.eta_p2 == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
}

TEST_CASE("general two-mode encoding stays unitary at every angle") {
  CounterRng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = rng.uniform();
    const double theta = 6.0 * rng.uniform() - 3.0;
    const double phi = 6.0 * rng.uniform() - 3.0;
    const double psi = 6.0 * rng.uniform() - 3.0;
    const ConstraintReport report =
        check_constraints(general_two_mode_encoding(t, theta, phi, psi), 1e-12);
    CHECK(report.satisfied);
  }
}

TEST_CASE("literal published variant keeps the first-column energy row only") {
  const EncodingMatrix literal =
      general_two_mode_encoding_literal(0.3, 0.4, 1.1, 0.0);
  const ConstraintReport report = check_constraints(literal, 1e-9);
  CHECK(std::abs(report.energy_residuals[0]) <= 1e-12);

  // A generic third angle breaks unitarity in the published form; the
  // corrected variant is clean at the same angles.
  const ConstraintReport broken = check_constraints(
      general_two_mode_encoding_literal(0.3, 0.4, 1.1, 0.7), 1e-6);
  CHECK_FALSE(broken.satisfied);
  CHECK(check_constraints(general_two_mode_encoding(0.3, 0.4, 1.1, 0.7),
                          1e-12)
            .satisfied);
}

TEST_CASE("identical encodings never satisfy the constraint system") {
  const ConstraintReport a = identical_encoding_report(1, 0, 0, 1, 1e-9);
  REQUIRE(a.cross.size() == 1);
  CHECK(a.cross[0].re == 0.0);
  CHECK(a.cross[0].im == -1.0);
  CHECK_FALSE(a.satisfied);

  const ConstraintReport b = identical_encoding_report(1, 1, 1, -1, 1e-9);
  CHECK(b.cross[0].re == 0.0);
  CHECK(b.cross[0].im == 2.0);
  CHECK_FALSE(b.satisfied);

  CHECK_THROWS_AS(identical_encoding_report(0, 0, 1, 1, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(identical_encoding_report(1, 1, 0, 0, 1e-9),
                  std::invalid_argument);

  CounterRng rng(59);
  for (int trial = 0; trial < 1000; ++trial) {
    const double ex = rng.normal();
    const double ep = rng.normal();
    const double hx = rng.normal();
    const double hp = rng.normal();
    if ((ex == 0.0 && ep == 0.0) || (hx == 0.0 && hp == 0.0)) continue;
    CHECK_FALSE(identical_encoding_report(ex, ep, hx, hp, 1e-9).satisfied);
  }
}

TEST_CASE("energy check examples") {
  CHECK(energy_check(QuadratureVector{2, 1, 2, -1}, Eigen::Vector2d(2, 1),
                     1e-12));
  CHECK(energy_check(QuadratureVector::zero(2), Eigen::Vector2d(0, 0), 1e-12));
  CHECK_FALSE(energy_check(QuadratureVector{1, 0, 0, 0},
                           Eigen::Vector2d(1, 0), 1e-12));
}

TEST_CASE("optimal input family lies on the ellipse") {
  const std::vector<EllipsePoint> points =
      optimal_ellipse_points(2.0, 1.0, {0.5, 1.0});
  REQUIRE(points.size() == 2);
  CHECK(points[0].x1 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(points[0].p1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(points[0].x2 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(points[0].p2 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(points[1].x1 == doctest::Approx(2.0 * kSqrt2).epsilon(1e-15));
  CHECK(std::abs(points[1].p1) <= 1e-15);
  CHECK(std::abs(points[1].x2) <= 1e-15);
  CHECK(points[1].p2 == doctest::Approx(-kSqrt2).epsilon(1e-15));

  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  for (const EllipsePoint& pt : optimal_ellipse_points(1.7, -0.6, grid)) {
    const double r1 = pt.x1 * pt.x1 / (1.7 * 1.7) +
                      pt.p1 * pt.p1 / (0.6 * 0.6) - 2.0;
    const double r2 = pt.x2 * pt.x2 / (1.7 * 1.7) +
                      pt.p2 * pt.p2 / (0.6 * 0.6) - 2.0;
    CHECK(std::abs(r1) <= 1e-12);
    CHECK(std::abs(r2) <= 1e-12);
  }

  CHECK_THROWS_AS(optimal_ellipse_points(0.0, 0.0, {0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimal_ellipse_points(1.0, 1.0, {1.5}),
                  std::invalid_argument);
}

TEST_CASE("encoding json round trip") {
  CounterRng rng(61);
  const EncodingMatrix e = EncodingMatrix(random_unitary(3, rng));
  const EncodingMatrix back = encoding_from_json(encoding_to_json(e));
  CHECK(back.entries() == e.entries());

  nlohmann::json bad = encoding_to_json(e);
  bad["modes"] = 2;
  CHECK_THROWS_AS(encoding_from_json(bad), std::invalid_argument);

  const std::string path = "test_encoding_roundtrip.json";
  save_encoding(path, e);
  const EncodingMatrix loaded = load_encoding(path);
  CHECK(loaded.entries() == e.entries());
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_encoding("does_not_exist.json"), std::invalid_argument);
}

}  // namespace
}  // namespace quadest
