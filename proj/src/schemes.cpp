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

#include "quadest/schemes.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <variant>

namespace quadest {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kUnitarityTolerance = 1e-10;

void check_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
}

// Encoding that feeds readout targets through the inverse network: column j
// is W^dag applied to the unit amplitude of mode j, multiplied by i when
// mode j reads out p.
EncodingMatrix encoding_for_network(const Eigen::MatrixXcd& w,
                                    const std::vector<Quadrature>& readout) {
  const auto n = w.rows();
  Eigen::MatrixXcd targets = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (readout[static_cast<size_t>(j)] == Quadrature::P) {
      targets(j, j) = Complex(0.0, 1.0);
    }
  }
  return EncodingMatrix(w.adjoint() * targets);
}

}  // namespace

double unitarity_residual(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::invalid_argument("matrix must be square and nonempty");
  }
  const Eigen::MatrixXcd defect =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd network_matrix(const DecodingNetwork& network, int modes) {
  if (network.unitary) {
    if (network.unitary->rows() != modes || network.unitary->cols() != modes) {
      throw std::invalid_argument("network unitary size does not match modes");
    }
    return *network.unitary;
  }
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(modes, modes);
  for (const NetworkElement& element : network.elements) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(modes, modes);
    if (const auto* rot = std::get_if<PhaseRotation>(&element)) {
      if (rot->mode < 0 || rot->mode >= modes) {
        throw std::invalid_argument("mode index out of range");
      }
      m(rot->mode, rot->mode) = std::polar(1.0, rot->angle);
    } else {
      const auto& bs = std::get<BeamSplitter>(element);
      if (bs.mode_a < 0 || bs.mode_a >= modes || bs.mode_b < 0 ||
          bs.mode_b >= modes) {
        throw std::invalid_argument("mode index out of range");
      }
      if (bs.mode_a == bs.mode_b) {
        throw std::invalid_argument("beam splitter needs two distinct modes");
      }
      check_transmittance(bs.transmittance);
      const double rt = std::sqrt(bs.transmittance);
      const double ru = std::sqrt(1.0 - bs.transmittance);
      m(bs.mode_a, bs.mode_a) = rt;
      m(bs.mode_a, bs.mode_b) = ru;
      m(bs.mode_b, bs.mode_a) = ru;
      m(bs.mode_b, bs.mode_b) = -rt;
    }
    w = m * w;
  }
  return w;
}

QuadratureVector apply(const DecodingNetwork& network,
                       const QuadratureVector& r) {
  if (network.unitary) {
    return quadratures_of(network_matrix(network, r.modes()) *
                          amplitudes_of(r));
  }
  return apply_network(r, network.elements);
}

Scheme two_mode_scheme(double transmittance) {
  check_transmittance(transmittance);
  Scheme scheme{optimal_two_mode_encoding(transmittance),
                DecodingNetwork{{BeamSplitter{0, 1, transmittance}}, {}},
                {Quadrature::X, Quadrature::P},
                kSqrt2};
  return scheme;
}

double three_mode_d(double t2, double b, double c) {
  check_transmittance(t2);
  return std::sqrt(t2 * b * b + (1.0 - t2) * c * c);
}

double three_mode_phase(double t2, double b, double c) {
  check_transmittance(t2);
  if (b == 0.0 && c == 0.0 && t2 > 0.0 && t2 < 1.0) {
    throw std::invalid_argument(
        "phase undefined for b = c = 0 at intermediate transmittance");
  }
  return std::atan2(-std::sqrt(t2) * b, std::sqrt(1.0 - t2) * c);
}

Scheme three_mode_scheme(double t1, double t2, double b, double c) {
  check_transmittance(t1);
  const double phi = three_mode_phase(t2, b, c);
  DecodingNetwork network{{BeamSplitter{0, 1, t1}, PhaseRotation{1, phi},
                           BeamSplitter{1, 2, t2}},
                          {}};
  const std::vector<Quadrature> readout{Quadrature::X, Quadrature::X,
                                        Quadrature::P};
  EncodingMatrix encoding =
      encoding_for_network(network_matrix(network, 3), readout);
  return Scheme{std::move(encoding), std::move(network), readout, kSqrt2};
}

Scheme n_mode_scheme(const Eigen::MatrixXcd& u) {
  if (unitarity_residual(u) > kUnitarityTolerance) {
    throw std::invalid_argument("encoding matrix must be unitary");
  }
  const auto n = u.rows();
  DecodingNetwork network{{}, u.adjoint()};
  return Scheme{EncodingMatrix(u), std::move(network),
                std::vector<Quadrature>(static_cast<size_t>(n), Quadrature::X),
                kSqrt2};
}

std::vector<std::vector<int>> partition_modes(int n) {
  if (n < 2) {
    throw std::invalid_argument("partition needs at least two modes");
  }
  std::vector<std::vector<int>> blocks;
  int mode = 0;
  int remaining = n;
  while (remaining > 3) {
    blocks.push_back({mode, mode + 1});
    mode += 2;
    remaining -= 2;
  }
  if (remaining == 2) {
    blocks.push_back({mode, mode + 1});
  } else {
    blocks.push_back({mode, mode + 1, mode + 2});
  }
  return blocks;
}

IndividualVariances individual_variances(double transmittance) {
  check_transmittance(transmittance);
  const double variance = 1.0 / (2.0 + std::abs(2.0 - 4.0 * transmittance));
  return IndividualVariances{variance, variance,
                             transmittance >= 0.5 ? 0 : 1};
}

double enhancement_ratio(double transmittance) {
  check_transmittance(transmittance);
  return 2.0 / (1.0 + std::abs(1.0 - 2.0 * transmittance));
}

QuadratureVector network_output(const Scheme& scheme,
                                const Eigen::VectorXd& params) {
  return apply(scheme.network, encode(scheme.encoding, params));
}

Eigen::VectorXd readout_means(const Scheme& scheme,
                              const QuadratureVector& output) {
  if (static_cast<int>(scheme.readout.size()) != output.modes()) {
    throw std::invalid_argument("need one quadrature selection per mode");
  }
  Eigen::VectorXd means(output.modes());
  for (int i = 0; i < output.modes(); ++i) {
    means[i] = scheme.readout[static_cast<size_t>(i)] == Quadrature::X
                   ? output.x(i)
                   : output.p(i);
  }
  return means;
}

Eigen::VectorXd decode(const Scheme& scheme, const Eigen::VectorXd& samples) {
  if (samples.size() != scheme.encoding.modes()) {
    throw std::invalid_argument("need one sample per readout");
  }
  return samples / scheme.scale;
}

Eigen::MatrixXcd random_unitary(int modes, CounterRng& rng) {
  if (modes <= 0) throw std::invalid_argument("mode count must be positive");
  Eigen::MatrixXcd g(modes, modes);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal()) / kSqrt2;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < modes; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

nlohmann::json scheme_to_json(const Scheme& scheme) {
  nlohmann::json network = nlohmann::json::array();
  if (scheme.network.unitary) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < scheme.network.unitary->rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < scheme.network.unitary->cols(); ++j) {
        const Complex& e = (*scheme.network.unitary)(i, j);
        row.push_back({{"re", e.real()}, {"im", e.imag()}});
      }
      rows.push_back(std::move(row));
    }
    network.push_back({{"type", "unitary"}, {"matrix", std::move(rows)}});
  } else {
    for (const NetworkElement& element : scheme.network.elements) {
      if (const auto* rot = std::get_if<PhaseRotation>(&element)) {
        network.push_back(
            {{"type", "phase"}, {"mode", rot->mode}, {"angle", rot->angle}});
      } else {
        const auto& bs = std::get<BeamSplitter>(element);
        network.push_back({{"type", "bs"},
                           {"modes", {bs.mode_a, bs.mode_b}},
                           {"T", bs.transmittance}});
      }
    }
  }
  return {{"encoding", encoding_to_json(scheme.encoding)},
          {"network", std::move(network)},
          {"readout", readout_string(scheme.readout)},
          {"scale", scheme.scale}};
}

Scheme scheme_from_json(const nlohmann::json& doc) {
  EncodingMatrix encoding = encoding_from_json(doc.at("encoding"));
  DecodingNetwork network;
  for (const auto& item : doc.at("network")) {
    const std::string type = item.at("type").get<std::string>();
    if (type == "phase") {
      network.elements.push_back(PhaseRotation{
          item.at("mode").get<int>(), item.at("angle").get<double>()});
    } else if (type == "bs") {
      const auto& modes = item.at("modes");
      network.elements.push_back(BeamSplitter{modes.at(0).get<int>(),
                                              modes.at(1).get<int>(),
                                              item.at("T").get<double>()});
    } else if (type == "unitary") {
      const auto& rows = item.at("matrix");
      const auto n = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd u(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != n) {
          throw std::invalid_argument("network unitary must be square");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
          const auto& e = row.at(static_cast<size_t>(j));
          u(i, j) = Complex(e.at("re").get<double>(), e.at("im").get<double>());
        }
      }
      network.unitary = std::move(u);
    } else {
      throw std::invalid_argument("unknown network element type: " + type);
    }
  }
  std::vector<Quadrature> readout =
      parse_readout(doc.at("readout").get<std::string>());
  if (static_cast<int>(readout.size()) != encoding.modes()) {
    throw std::invalid_argument("readout length does not match modes");
  }
  const double scale = doc.at("scale").get<double>();
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  return Scheme{std::move(encoding), std::move(network), std::move(readout),
                scale};
}

}  // namespace quadest
