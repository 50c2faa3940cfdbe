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

#ifndef QUADEST_SCHEMES_HPP_
#define QUADEST_SCHEMES_HPP_

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <vector>

#include "quadest/encoding.hpp"
#include "quadest/phase_space.hpp"
#include "quadest/rng.hpp"

namespace quadest {

// Receiver-side passive network. Either an ordered element list or, for the
// general n-mode case, an explicit unitary acting on mode amplitudes.
// The unitary form must have unitarity residual at most 1e-10.
struct DecodingNetwork {
  std::vector<NetworkElement> elements;
  std::optional<Eigen::MatrixXcd> unitary;
};

// Max abs entry of U^dag U - I.
double unitarity_residual(const Eigen::MatrixXcd& u);

// Amplitude-space matrix of the whole network (elements composed in order,
// later elements on the left).
Eigen::MatrixXcd network_matrix(const DecodingNetwork& network, int modes);

QuadratureVector apply(const DecodingNetwork& network,
                       const QuadratureVector& r);

// A complete encode/decode recipe: input encoding, receiver network, one
// measured quadrature per mode, and the estimator scale (sqrt(2) for every
// scheme here). Decoding the noiseless encoded means yields scale * params
// on the selected quadratures exactly.
struct Scheme {
  EncodingMatrix encoding;
  DecodingNetwork network;
  std::vector<Quadrature> readout;
  double scale;
};

// Two parameters in two modes: beam splitter of transmittance T, then
// homodyne of x on mode 0 and p on mode 1.
Scheme two_mode_scheme(double transmittance);

// Three parameters in three modes: B(T1) on modes (0,1), a phase shifter on
// mode 1, B(T2) on modes (1,2); homodyne x, x, p. The phase depends on the
// encoded values b and c, so it is part of the agreed settings.
Scheme three_mode_scheme(double t1, double t2, double b, double c);

// Combined p-quadrature weight of the middle arm, (T2 b^2 + (1-T2) c^2)^1/2.
double three_mode_d(double t2, double b, double c);

// Phase-shifter angle of the three-mode network, atan2(-sqrt(T2) b,
// sqrt(1-T2) c). Throws when b = c = 0 with T2 strictly inside (0, 1).
double three_mode_phase(double t2, double b, double c);

// n parameters in n modes: encode with unitary U on amplitudes, decode with
// U^{-1}, homodyne x on every mode.
Scheme n_mode_scheme(const Eigen::MatrixXcd& u);

// Blocks of 2 or 3 covering modes 0..n-1: pairs first, one triple last for
// odd n. Requires n >= 2.
std::vector<std::vector<int>> partition_modes(int n);

// Best mode-by-mode homodyne estimates without the receiver network.
// measured_mode is the mode whose x-quadrature estimates the first
// parameter; the second parameter reads p on the other mode.
struct IndividualVariances {
  double var_a;
  double var_b;
  int measured_mode;
};

IndividualVariances individual_variances(double transmittance);

// Ratio of individual to joint estimation variance, 2/(1 + |1 - 2T|).
double enhancement_ratio(double transmittance);

// Encoded means propagated through the receiver network.
QuadratureVector network_output(const Scheme& scheme,
                                const Eigen::VectorXd& params);

// Selected quadrature of each output mode, in parameter order.
Eigen::VectorXd readout_means(const Scheme& scheme,
                              const QuadratureVector& output);

// Estimates from one homodyne sample per mode: samples / scale.
Eigen::VectorXd decode(const Scheme& scheme, const Eigen::VectorXd& samples);

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// standard phase fix on the R diagonal.
Eigen::MatrixXcd random_unitary(int modes, CounterRng& rng);

nlohmann::json scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const nlohmann::json& doc);

}  // namespace quadest

#endif  // QUADEST_SCHEMES_HPP_
