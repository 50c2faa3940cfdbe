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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quadest/rng.hpp"

namespace quadest {

using Complex = std::complex<double>;

/// Quadrature noise variance of a coherent state per quadrature,
/// in natural units hbar = 1 with [x, p] = i.
inline constexpr double kQuadratureNoiseVariance = 0.5;

/// Displacement means (x1, p1, ..., xn, pn) of an n-mode product coherent
/// state. The covariance stays at identity/2 under every operation in this
/// module, so only the means are carried.
class QuadratureVector {
 public:
  /// Throws std::invalid_argument on odd or zero length or non-finite
  /// entries.
  explicit QuadratureVector(Eigen::VectorXd values);
  QuadratureVector(std::initializer_list<double> values);

  static QuadratureVector zero(int modes);

  int modes() const { return static_cast<int>(values_.size()) / 2; }
  const Eigen::VectorXd& values() const { return values_; }

  double x(int mode) const;
  double p(int mode) const;
  void set_mode(int mode, double x, double p);

  /// x_i^2 + p_i^2 of one mode.
  double mode_energy(int mode) const;
  /// Sum of x_i^2 + p_i^2 over all modes.
  double total_energy() const;

 private:
  void check_mode(int mode) const;
  Eigen::VectorXd values_;
};

enum class Quadrature { X, P };

/// Parses a readout string such as "xp" or "xxp" (case-insensitive).
std::vector<Quadrature> parse_readout(std::string_view s);
std::string readout_string(const std::vector<Quadrature>& readout);

struct PhaseRotation {
  int mode;
  double angle;
};

struct BeamSplitter {
  int mode_a;
  int mode_b;
  double transmittance;
};

using NetworkElement = std::variant<PhaseRotation, BeamSplitter>;

/// alpha = (x + i p) / sqrt(2).
Complex amplitude_from_quadratures(double x, double p);
/// Inverse of amplitude_from_quadratures; exact round trip.
std::pair<double, double> quadratures_from_amplitude(Complex alpha);

Eigen::VectorXcd amplitudes_of(const QuadratureVector& r);
QuadratureVector quadratures_of(const Eigen::VectorXcd& amplitudes);

/// Counterclockwise rotation of one mode in the (x, p) plane:
/// (x, p) -> (x cos a - p sin a, x sin a + p cos a).
QuadratureVector apply_phase_rotation(const QuadratureVector& r, int mode,
                                      double angle);

/// Beam splitter of transmittance T on a mode pair, acting identically on the
/// x and p blocks with matrix [[sqrt(T), sqrt(1-T)], [sqrt(1-T), -sqrt(T)]].
/// The matrix is symmetric orthogonal, so the operation is an involution.
QuadratureVector apply_beam_splitter(const QuadratureVector& r, int mode_a,
                                     int mode_b, double transmittance);

/// Applies the elements sequentially, first element first.
QuadratureVector apply_network(const QuadratureVector& r,
                               const std::vector<NetworkElement>& net);

/// One homodyne outcome per mode: a normal draw around the selected
/// quadrature mean with variance kQuadratureNoiseVariance.
std::vector<double> homodyne_sample(const QuadratureVector& r,
                                    const std::vector<Quadrature>& selections,
                                    CounterRng& rng);

/// <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta).
Complex coherent_overlap(Complex alpha, Complex beta);

}  // namespace quadest
