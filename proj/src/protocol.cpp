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

#include "quadest/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "quadest/encoding.hpp"
#include "quadest/rng.hpp"
#include "quadest/schemes.hpp"
#include "quadest/stats.hpp"

namespace quadest {

namespace {

constexpr double kEnergyTol = 1e-9;
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

void check_two_modes(const QuadratureVector& r) {
  if (r.modes() != 2) {
    throw std::invalid_argument("protocol needs a two-mode state");
  }
}

double mode_angle(double x, double p, double x_opt, double p_opt) {
  if (x == 0.0 && p == 0.0) return 0.0;
  return std::atan2(x * p_opt - p * x_opt, x * x_opt + p * p_opt);
}

}  // namespace

bool FeasibleRegion::contains(double a, double b, double tol) const {
  const double circle = std::abs(a * a + b * b - radius_sq);
  const double diff = std::abs(a * a - b * b);
  return circle <= tol && diff >= min_abs_diff - tol;
}

FeasibleRegion feasible_parameter_region(const QuadratureVector& r) {
  check_two_modes(r);
  const double e1 = r.mode_energy(0);
  const double e2 = r.mode_energy(1);
  return FeasibleRegion{(e1 + e2) / 2.0, std::abs(e1 - e2) / 2.0,
                        std::abs(e1 - e2) <= kEnergyTol};
}

double transmittance_for(const QuadratureVector& r, double a, double b) {
  check_two_modes(r);
  const double e1 = r.mode_energy(0);
  const double e2 = r.mode_energy(1);
  const double diff = a * a - b * b;
  if (diff == 0.0) {
    if (std::abs(e1 - e2) <= kEnergyTol) return 0.5;
    throw InfeasibleError(
        "a^2 = b^2 cannot match unequal mode energies; need "
        "2|a^2 - b^2| >= |E1 - E2|");
  }
  const double t = ((e1 - e2) / (2.0 * diff) + 1.0) / 2.0;
  // Rounding in the mode energies can push an exact endpoint choice a few
  // ulps outside [0, 1]; clamp within the energy tolerance.
  if (!(t >= -kEnergyTol && t <= 1.0 + kEnergyTol)) {
    throw InfeasibleError("choice violates |2T - 1| <= 1; need "
                          "2|a^2 - b^2| >= |E1 - E2|");
  }
  return std::clamp(t, 0.0, 1.0);
}

std::pair<double, double> rotation_angles(const QuadratureVector& given,
                                          const QuadratureVector& optimal) {
  check_two_modes(given);
  check_two_modes(optimal);
  for (int mode = 0; mode < 2; ++mode) {
    if (std::abs(given.mode_energy(mode) - optimal.mode_energy(mode)) >
        kEnergyTol) {
      throw std::invalid_argument("per-mode energies must match");
    }
  }
  return {mode_angle(given.x(0), given.p(0), optimal.x(0), optimal.p(0)),
          mode_angle(given.x(1), given.p(1), optimal.x(1), optimal.p(1))};
}

MaxEnhancementChoice max_enhancement_choice(const QuadratureVector& r) {
  check_two_modes(r);
  const double total = r.total_energy();
  if (total == 0.0) {
    throw std::invalid_argument("zero-energy input has nothing to estimate");
  }
  return MaxEnhancementChoice{std::sqrt(total / 2.0), 0.0,
                              r.mode_energy(0) / total, true};
}

ProtocolTranscript run_protocol(const QuadratureVector& given,
                                const ParameterChoice& choice, long long shots,
                                std::uint64_t seed) {
  check_two_modes(given);
  if (shots < 1) throw std::invalid_argument("shot count must be at least 1");
  const FeasibleRegion region = feasible_parameter_region(given);
  if (region.radius_sq == 0.0) {
    throw std::invalid_argument("zero-energy input has nothing to estimate");
  }

  double a = 0.0;
  double b = 0.0;
  bool caveat = false;
  switch (choice.kind) {
    case ParameterChoice::Kind::kExplicit:
      a = choice.a;
      b = choice.b;
      break;
    case ParameterChoice::Kind::kMaxEnhancement: {
      const MaxEnhancementChoice best = max_enhancement_choice(given);
      a = best.a;
      b = best.b;
      caveat = best.caveat;
      break;
    }
    case ParameterChoice::Kind::kDefault:
      a = b = std::sqrt(region.radius_sq / 2.0);
      break;
  }
  if (std::abs(a * a + b * b - region.radius_sq) >
      kEnergyTol * std::max(1.0, region.radius_sq)) {
    throw InfeasibleError("choice violates 2(a^2 + b^2) = E1 + E2");
  }
  // The transmittance check below enforces 2|a^2 - b^2| >= |E1 - E2|.
  const double t = transmittance_for(given, a, b);
  const QuadratureVector optimal =
      encode(optimal_two_mode_encoding(t), Eigen::Vector2d(a, b));
  const auto [theta, phi] = rotation_angles(given, optimal);

  ProtocolTranscript transcript{given,
                                {a, b},
                                MeasurementSettings{t, theta, phi},
                                optimal,
                                {0.0, 0.0},
                                std::nullopt,
                                shots,
                                caveat,
                                {}};
  transcript.message_log.push_back(TranscriptRecord{
      1, "alice",
      {{"mode_energies", {given.mode_energy(0), given.mode_energy(1)}},
       {"radius_sq", region.radius_sq},
       {"min_abs_diff", region.min_abs_diff},
       {"equal_energy", region.equal_energy}}});
  transcript.message_log.push_back(TranscriptRecord{
      2, "alice", {{"a", a}, {"b", b}, {"caveat", caveat}}});
  transcript.message_log.push_back(TranscriptRecord{
      3, "alice", {{"T", t}, {"theta", theta}, {"phi", phi}}});

  // Bob rotates the given modes onto the optimal input, splits, and reads
  // x on mode 0 and p on mode 1.
  const QuadratureVector rotated =
      apply_phase_rotation(apply_phase_rotation(given, 0, theta), 1, phi);
  const QuadratureVector output = apply_beam_splitter(rotated, 0, 1, t);
  const std::vector<Quadrature> readout{Quadrature::X, Quadrature::P};

  CounterRng rng(seed);
  RunningStats stat_a;
  RunningStats stat_b;
  for (long long shot = 0; shot < shots; ++shot) {
    const std::vector<double> samples = homodyne_sample(output, readout, rng);
    stat_a.add(samples[0] / kSqrt2);
    stat_b.add(samples[1] / kSqrt2);
  }
  transcript.estimates = {stat_a.mean(), stat_b.mean()};
  if (shots >= 2) {
    transcript.empirical_variances = {{stat_a.variance(), stat_b.variance()}};
  }

  nlohmann::json bob{{"estimates", {stat_a.mean(), stat_b.mean()}},
                     {"shots", shots}};
  if (transcript.empirical_variances) {
    bob["empirical_variances"] = {transcript.empirical_variances->first,
                                  transcript.empirical_variances->second};
  }
  transcript.message_log.push_back(TranscriptRecord{4, "bob", std::move(bob)});
  return transcript;
}

void write_transcript(std::ostream& out,
                      const ProtocolTranscript& transcript) {
  for (const TranscriptRecord& record : transcript.message_log) {
    out << nlohmann::json{{"step", record.step},
                          {"role", record.role},
                          {"payload", record.payload}}
               .dump()
        << '\n';
  }
}

nlohmann::json transcript_to_json(const ProtocolTranscript& transcript) {
  nlohmann::json doc{
      {"given_states", std::vector<double>(transcript.given_states.values()
                                               .data(),
                                           transcript.given_states.values()
                                                   .data() +
                                               transcript.given_states.values()
                                                   .size())},
      {"chosen_params",
       {transcript.chosen_params.first, transcript.chosen_params.second}},
      {"settings",
       {{"T", transcript.settings.transmittance},
        {"theta", transcript.settings.theta},
        {"phi", transcript.settings.phi}}},
      {"optimal_input",
       std::vector<double>(transcript.optimal_input.values().data(),
                           transcript.optimal_input.values().data() +
                               transcript.optimal_input.values().size())},
      {"estimates",
       {transcript.estimates.first, transcript.estimates.second}},
      {"shots", transcript.shots},
      {"caveat", transcript.caveat}};
  if (transcript.empirical_variances) {
    doc["empirical_variances"] = {transcript.empirical_variances->first,
                                  transcript.empirical_variances->second};
  }
  nlohmann::json log = nlohmann::json::array();
  for (const TranscriptRecord& record : transcript.message_log) {
    log.push_back({{"step", record.step},
                   {"role", record.role},
                   {"payload", record.payload}});
  }
  doc["message_log"] = std::move(log);
  return doc;
}

}  // namespace quadest
