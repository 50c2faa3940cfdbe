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
#include <doctest.h>
#include <sstream>

#include "quadest/encoding.hpp"
#include "quadest/protocol.hpp"
#include "quadest/rng.hpp"
#include "quadest/schemes.hpp"

namespace quadest {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

QuadratureVector unequal_energy_states() {
  // Mode energies 8 and 2.
  return QuadratureVector{2.0 * kSqrt2, 0.0, 0.0, -kSqrt2};
}

TEST_CASE("feasible region from the mode energies") {
  const FeasibleRegion equal_case = feasible_parameter_region(
      QuadratureVector{2.0, 1.0, 1.0, 2.0});
  CHECK(equal_case.radius_sq == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(equal_case.min_abs_diff == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(equal_case.equal_energy);
  CHECK(equal_case.contains(1.0, 2.0, 1e-9));
  CHECK(equal_case.contains(std::sqrt(5.0), 0.0, 1e-9));

  const FeasibleRegion region =
      feasible_parameter_region(unequal_energy_states());
  CHECK(region.radius_sq == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(region.min_abs_diff == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_FALSE(region.equal_energy);
  CHECK(region.contains(2.0, 1.0, 1e-9));
  CHECK(region.contains(std::sqrt(5.0), 0.0, 1e-9));
  CHECK(region.contains(1.0, 2.0, 1e-9));
  CHECK_FALSE(region.contains(std::sqrt(2.5), std::sqrt(2.5), 1e-9));
  CHECK_FALSE(region.contains(3.0, 1.0, 1e-9));

  const FeasibleRegion zero =
      feasible_parameter_region(QuadratureVector::zero(2));
  CHECK(zero.radius_sq == 0.0);
  CHECK(zero.equal_energy);
  CHECK(zero.contains(0.0, 0.0, 1e-9));

  CHECK_THROWS_AS(feasible_parameter_region(QuadratureVector::zero(3)),
                  std::invalid_argument);
}

TEST_CASE("transmittance reconstruction from energies") {
  const QuadratureVector r = unequal_energy_states();
  CHECK(transmittance_for(r, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(transmittance_for(r, std::sqrt(5.0), 0.0) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(transmittance_for(r, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-12));

  const QuadratureVector equal{2.0, 1.0, 1.0, 2.0};
  CHECK(transmittance_for(equal, 1.0, 2.0) == 0.5);
  CHECK(transmittance_for(equal, std::sqrt(2.5), std::sqrt(2.5)) == 0.5);

  CHECK_THROWS_AS(transmittance_for(r, std::sqrt(2.5), std::sqrt(2.5)),
                  InfeasibleError);
  CHECK_THROWS_AS(transmittance_for(r, 1.8, 1.5), InfeasibleError);
}

TEST_CASE("rotation angles with the cross-product sign fix") {
  const QuadratureVector same{1.0, 0.0, 0.0, 1.0};
  const auto zero = rotation_angles(same, same);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);

  const auto quarter = rotation_angles(QuadratureVector{1.0, 0.0, 1.0, 0.0},
                                       QuadratureVector{0.0, 1.0, 1.0, 0.0});
  CHECK(quarter.first == doctest::Approx(2.0 * std::atan(1.0)).epsilon(1e-15));
  CHECK(quarter.second == 0.0);

  const auto vacuum = rotation_angles(QuadratureVector{0.0, 0.0, 1.0, 0.0},
                                      QuadratureVector{0.0, 0.0, 0.0, 1.0});
  CHECK(vacuum.first == 0.0);
  CHECK(vacuum.second == doctest::Approx(2.0 * std::atan(1.0)).epsilon(1e-15));

  CHECK_THROWS_AS(rotation_angles(QuadratureVector{1.0, 0.0, 0.0, 0.0},
                                  QuadratureVector{2.0, 0.0, 0.0, 0.0}),
                  std::invalid_argument);

  CounterRng rng(139);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = 0.5 + rng.uniform();
    const double b = 0.5 + rng.uniform();
    const double t = rng.uniform();
    const QuadratureVector optimal =
        encode(optimal_two_mode_encoding(t), Eigen::Vector2d(a, b));
    const double theta0 = 8.0 * rng.uniform() - 4.0;
    const double phi0 = 8.0 * rng.uniform() - 4.0;
    QuadratureVector given = apply_phase_rotation(optimal, 0, -theta0);
    given = apply_phase_rotation(given, 1, -phi0);

    const auto [theta, phi] = rotation_angles(given, optimal);
    QuadratureVector back = apply_phase_rotation(given, 0, theta);
    back = apply_phase_rotation(back, 1, phi);
    CHECK((back.values() - optimal.values()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("max enhancement choice spends the whole budget on one parameter") {
  const MaxEnhancementChoice best =
      max_enhancement_choice(unequal_energy_states());
  CHECK(best.a == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(best.b == 0.0);
  CHECK(best.transmittance == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(best.caveat);

  const MaxEnhancementChoice symmetric =
      max_enhancement_choice(QuadratureVector{2.0, 1.0, 1.0, 2.0});
  CHECK(symmetric.transmittance == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(max_enhancement_choice(QuadratureVector::zero(2)),
                  std::invalid_argument);
}

TEST_CASE("max enhancement dominates every feasible explicit choice") {
  CounterRng rng(149);
  for (int instance = 0; instance < 5; ++instance) {
    Eigen::VectorXd raw(4);
    for (int i = 0; i < 4; ++i) raw[i] = rng.normal(0.0, 2.0);
    if (raw.isZero(1e-6)) raw[0] = 1.0;
    const QuadratureVector given(raw);
    const FeasibleRegion region = feasible_parameter_region(given);
    const MaxEnhancementChoice best = max_enhancement_choice(given);
    const double best_ratio = enhancement_ratio(best.transmittance);

    for (int step = 0; step <= 50; ++step) {
      const double s = region.radius_sq * step / 50.0;  // s = a^2
      const double a = std::sqrt(s);
      const double b = std::sqrt(region.radius_sq - s);
      if (!region.contains(a, b, 1e-9)) continue;
      double t;
      try {
        t = transmittance_for(given, a, b);
      } catch (const InfeasibleError&) {
        continue;
      }
      CHECK(best_ratio >= enhancement_ratio(t) - 1e-9);
    }
  }
}

TEST_CASE("protocol worked instance with matched energies") {
  const ProtocolTranscript transcript =
      run_protocol(unequal_energy_states(), ParameterChoice::explicit_params(2.0, 1.0),
                   20000, 7);
  CHECK(transcript.settings.transmittance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(transcript.settings.theta) <= 1e-9);
  CHECK(std::abs(transcript.settings.phi) <= 1e-9);
  CHECK_FALSE(transcript.caveat);
  CHECK(transcript.shots == 20000);

  // Standard error of each estimate is sqrt(0.25/20000) = 0.0035; allow 5
  // sigma.
  CHECK(transcript.estimates.first == doctest::Approx(2.0).epsilon(0.01));
  CHECK(transcript.estimates.second == doctest::Approx(1.0).epsilon(0.02));
  REQUIRE(transcript.empirical_variances.has_value());
  CHECK(transcript.empirical_variances->first ==
        doctest::Approx(0.25).epsilon(0.1));
  CHECK(transcript.empirical_variances->second ==
        doctest::Approx(0.25).epsilon(0.1));

  // Energy bookkeeping across the transcript.
  for (int m = 0; m < 2; ++m) {
    CHECK(std::abs(transcript.optimal_input.mode_energy(m) -
                   transcript.given_states.mode_energy(m)) <= 1e-9);
  }
  const double circle = 2.0 * (transcript.chosen_params.first *
                                   transcript.chosen_params.first +
                               transcript.chosen_params.second *
                                   transcript.chosen_params.second);
  CHECK(circle == doctest::Approx(transcript.given_states.total_energy())
                      .epsilon(1e-9));

  REQUIRE(transcript.message_log.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(transcript.message_log[i].step == i + 1);
  }
  CHECK(transcript.message_log[0].role == "alice");
  CHECK(transcript.message_log[3].role == "bob");
}

TEST_CASE("equal-energy branch defaults to the symmetric split") {
  const QuadratureVector given{2.0, 1.0, 1.0, 2.0};
  const ProtocolTranscript transcript =
      run_protocol(given, ParameterChoice::equal_split(), 100, 11);
  CHECK(transcript.settings.transmittance == 0.5);
  CHECK(transcript.chosen_params.first ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK(transcript.chosen_params.second ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
  CHECK_FALSE(transcript.caveat);
}

TEST_CASE("max enhancement protocol flags the degenerate second parameter") {
  const ProtocolTranscript transcript = run_protocol(
      unequal_energy_states(), ParameterChoice::max_enhancement(), 100, 13);
  CHECK(transcript.chosen_params.first ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(transcript.chosen_params.second == 0.0);
  CHECK(transcript.settings.transmittance ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(transcript.caveat);
}

TEST_CASE("infeasible choices are rejected with the violated bound") {
  const QuadratureVector given = unequal_energy_states();
  CHECK_THROWS_AS(run_protocol(given,
                               ParameterChoice::explicit_params(
                                   std::sqrt(2.5), std::sqrt(2.5)),
                               10, 1),
                  InfeasibleError);
  CHECK_THROWS_AS(
      run_protocol(given, ParameterChoice::explicit_params(3.0, 1.0), 10, 1),
      InfeasibleError);
  // The symmetric default cannot match unequal energies.
  CHECK_THROWS_AS(run_protocol(given, ParameterChoice::equal_split(), 10, 1),
                  InfeasibleError);
  CHECK_THROWS_AS(run_protocol(given,
                               ParameterChoice::explicit_params(2.0, 1.0), 0,
                               1),
                  std::invalid_argument);
}

TEST_CASE("protocol round trip recovers rotated optimal inputs") {
  CounterRng rng(151);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = 1.0 + rng.uniform();
    const double b = 0.2 + 0.7 * rng.uniform();
    const double t = rng.uniform();
    const QuadratureVector optimal =
        encode(optimal_two_mode_encoding(t), Eigen::Vector2d(a, b));
    QuadratureVector given = apply_phase_rotation(optimal, 0, rng.normal());
    given = apply_phase_rotation(given, 1, rng.normal());

    const ProtocolTranscript transcript = run_protocol(
        given, ParameterChoice::explicit_params(a, b), 1, 1000 + trial);
    CHECK(transcript.settings.transmittance == doctest::Approx(t).epsilon(1e-9));

    QuadratureVector rotated =
        apply_phase_rotation(given, 0, transcript.settings.theta);
    rotated = apply_phase_rotation(rotated, 1, transcript.settings.phi);
    CHECK((rotated.values() - transcript.optimal_input.values())
              .cwiseAbs()
              .maxCoeff() <= 1e-9);
  }
}

TEST_CASE("transcripts export as line-delimited json") {
  const ProtocolTranscript transcript =
      run_protocol(unequal_energy_states(),
                   ParameterChoice::explicit_params(2.0, 1.0), 50, 3);
  std::ostringstream out;
  write_transcript(out, transcript);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const nlohmann::json record = nlohmann::json::parse(line);
    CHECK(record.contains("step"));
    CHECK(record.contains("role"));
    CHECK(record.contains("payload"));
    ++count;
  }
  CHECK(count == 4);

  const nlohmann::json doc = transcript_to_json(transcript);
  CHECK(doc.at("shots").get<long long>() == 50);
  CHECK(doc.contains("given_states"));
  CHECK(doc.contains("settings"));
  CHECK(doc.contains("estimates"));
  CHECK(doc.contains("message_log"));
}

}  // namespace
}  // namespace quadest
