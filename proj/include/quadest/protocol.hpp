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

#ifndef QUADEST_PROTOCOL_HPP_
#define QUADEST_PROTOCOL_HPP_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadest/phase_space.hpp"

namespace quadest {

// A requested parameter choice that violates the energy constraints of the
// given states.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Allowed (a, b) values for two given coherent states with mode energies
// E1, E2: the circle a^2 + b^2 = (E1 + E2)/2 restricted to
// |a^2 - b^2| >= |E1 - E2|/2. Equal energies free the split entirely.
struct FeasibleRegion {
  double radius_sq;
  double min_abs_diff;
  bool equal_energy;

  bool contains(double a, double b, double tol) const;
};

struct MeasurementSettings {
  double transmittance;
  double theta;
  double phi;
};

// How the sender picks (a, b) on the energy circle.
struct ParameterChoice {
  enum class Kind { kExplicit, kMaxEnhancement, kDefault };

  Kind kind = Kind::kDefault;
  double a = 0.0;
  double b = 0.0;

  static ParameterChoice explicit_params(double a, double b) {
    return ParameterChoice{Kind::kExplicit, a, b};
  }
  static ParameterChoice max_enhancement() {
    return ParameterChoice{Kind::kMaxEnhancement, 0.0, 0.0};
  }
  static ParameterChoice equal_split() {
    return ParameterChoice{Kind::kDefault, 0.0, 0.0};
  }
};

// The (a, b, T) maximizing the joint-over-individual enhancement. Always
// puts the whole energy budget into a; caveat records that b then carries
// no information.
struct MaxEnhancementChoice {
  double a;
  double b;
  double transmittance;
  bool caveat;
};

struct TranscriptRecord {
  int step;
  std::string role;
  nlohmann::json payload;
};

struct ProtocolTranscript {
  QuadratureVector given_states;
  std::pair<double, double> chosen_params;
  MeasurementSettings settings;
  QuadratureVector optimal_input;
  std::pair<double, double> estimates;
  std::optional<std::pair<double, double>> empirical_variances;
  long long shots;
  bool caveat;
  std::vector<TranscriptRecord> message_log;
};

FeasibleRegion feasible_parameter_region(const QuadratureVector& r);

// Transmittance matching the given mode energies to the choice (a, b):
// T = ((E1 - E2)/(2(a^2 - b^2)) + 1)/2. Throws InfeasibleError when
// a^2 = b^2 with unequal energies or when T falls outside [0, 1].
double transmittance_for(const QuadratureVector& r, double a, double b);

// Per-mode rotation angles carrying `given` onto `optimal`. Requires equal
// per-mode energies (tolerance 1e-9); zero-amplitude modes get angle 0.
std::pair<double, double> rotation_angles(const QuadratureVector& given,
                                          const QuadratureVector& optimal);

MaxEnhancementChoice max_enhancement_choice(const QuadratureVector& r);

// Full settings negotiation plus simulated measurement: resolve the choice,
// compute (T, theta, phi), rotate, split, homodyne `shots` times, decode.
ProtocolTranscript run_protocol(const QuadratureVector& given,
                                const ParameterChoice& choice, long long shots,
                                std::uint64_t seed);

// One line-delimited JSON record per logged message.
void write_transcript(std::ostream& out, const ProtocolTranscript& transcript);

nlohmann::json transcript_to_json(const ProtocolTranscript& transcript);

}  // namespace quadest

#endif  // QUADEST_PROTOCOL_HPP_
