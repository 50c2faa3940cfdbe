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

#include "quadest/phase_space.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace quadest {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
}

QuadratureVector::QuadratureVector(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() == 0 || values_.size() % 2 != 0) {
    throw std::invalid_argument(
        "quadrature vector needs an (x, p) pair per mode");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("quadrature vector entries must be finite");
  }
}

QuadratureVector::QuadratureVector(std::initializer_list<double> values)
    : QuadratureVector(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
          values.begin(), static_cast<Eigen::Index>(values.size())))) {}

QuadratureVector QuadratureVector::zero(int modes) {
  if (modes <= 0) throw std::invalid_argument("mode count must be positive");
  return QuadratureVector(Eigen::VectorXd::Zero(2 * modes));
}

void QuadratureVector::check_mode(int mode) const {
  if (mode < 0 || mode >= modes()) {
    throw std::invalid_argument("mode index out of range");
  }
}

double QuadratureVector::x(int mode) const {
  check_mode(mode);
  return values_[2 * mode];
}

double QuadratureVector::p(int mode) const {
  check_mode(mode);
  return values_[2 * mode + 1];
}

void QuadratureVector::set_mode(int mode, double x, double p) {
  check_mode(mode);
  if (!std::isfinite(x) || !std::isfinite(p)) {
    throw std::invalid_argument("quadrature values must be finite");
  }
  values_[2 * mode] = x;
  values_[2 * mode + 1] = p;
}

double QuadratureVector::mode_energy(int mode) const {
  check_mode(mode);
  const double xv = values_[2 * mode];
  const double pv = values_[2 * mode + 1];
  return xv * xv + pv * pv;
}

double QuadratureVector::total_energy() const { return values_.squaredNorm(); }

std::vector<Quadrature> parse_readout(std::string_view s) {
  if (s.empty()) {
    throw std::invalid_argument("readout needs at least one selection");
  }
  std::vector<Quadrature> out;
  out.reserve(s.size());
  for (char c : s) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
      case 'x':
        out.push_back(Quadrature::X);
        break;
      case 'p':
        out.push_back(Quadrature::P);
        break;
      default:
        throw std::invalid_argument("readout string may only contain x or p");
    }
  }
  return out;
}

std::string readout_string(const std::vector<Quadrature>& readout) {
  std::string s;
  s.reserve(readout.size());
  for (Quadrature q : readout) s += (q == Quadrature::X ? 'x' : 'p');
  return s;
}

Complex amplitude_from_quadratures(double x, double p) {
  return Complex(x, p) / kSqrt2;
}

std::pair<double, double> quadratures_from_amplitude(Complex alpha) {
  return {kSqrt2 * alpha.real(), kSqrt2 * alpha.imag()};
}

Eigen::VectorXcd amplitudes_of(const QuadratureVector& r) {
  Eigen::VectorXcd alpha(r.modes());
  for (int i = 0; i < r.modes(); ++i) {
    alpha[i] = amplitude_from_quadratures(r.x(i), r.p(i));
  }
  return alpha;
}

QuadratureVector quadratures_of(const Eigen::VectorXcd& amplitudes) {
  Eigen::VectorXd values(2 * amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    const auto [x, p] = quadratures_from_amplitude(amplitudes[i]);
    values[2 * i] = x;
    values[2 * i + 1] = p;
  }
  return QuadratureVector(std::move(values));
}

QuadratureVector apply_phase_rotation(const QuadratureVector& r, int mode,
                                      double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double x = r.x(mode);
  const double p = r.p(mode);
  QuadratureVector out = r;
  out.set_mode(mode, x * c - p * s, x * s + p * c);
  return out;
}

QuadratureVector apply_beam_splitter(const QuadratureVector& r, int mode_a,
                                     int mode_b, double transmittance) {
  if (mode_a == mode_b) {
    throw std::invalid_argument("beam splitter needs two distinct modes");
  }
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  const double t = std::sqrt(transmittance);
  const double u = std::sqrt(1.0 - transmittance);
  const double xa = r.x(mode_a), pa = r.p(mode_a);
  const double xb = r.x(mode_b), pb = r.p(mode_b);
  QuadratureVector out = r;
  out.set_mode(mode_a, t * xa + u * xb, t * pa + u * pb);
  out.set_mode(mode_b, u * xa - t * xb, u * pa - t * pb);
  return out;
}

QuadratureVector apply_network(const QuadratureVector& r,
                               const std::vector<NetworkElement>& net) {
  QuadratureVector out = r;
  for (const NetworkElement& element : net) {
    out = std::visit(
        [&out](const auto& e) -> QuadratureVector {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, PhaseRotation>) {
            return apply_phase_rotation(out, e.mode, e.angle);
          } else {
            return apply_beam_splitter(out, e.mode_a, e.mode_b,
                                       e.transmittance);
          }
        },
        element);
  }
  return out;
}

std::vector<double> homodyne_sample(const QuadratureVector& r,
                                    const std::vector<Quadrature>& selections,
                                    CounterRng& rng) {
  if (static_cast<int>(selections.size()) != r.modes()) {
    throw std::invalid_argument("need one quadrature selection per mode");
  }
  std::vector<double> samples(selections.size());
  for (int i = 0; i < r.modes(); ++i) {
    const double mean = selections[i] == Quadrature::X ? r.x(i) : r.p(i);
    samples[i] = rng.normal(mean, kQuadratureNoiseVariance);
  }
  return samples;
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) +
                  std::conj(alpha) * beta);
}

}  // namespace quadest
