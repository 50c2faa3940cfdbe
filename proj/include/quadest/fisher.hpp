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

#ifndef QUADEST_FISHER_HPP_
#define QUADEST_FISHER_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

#include "quadest/encoding.hpp"
#include "quadest/phase_space.hpp"

namespace quadest {

// Quantum Fisher information matrix for a family of pure product coherent
// states whose amplitudes depend linearly on the parameters. Always real
// symmetric and positive semidefinite.
struct QFIM {
  Eigen::MatrixXd matrix;

  int params() const { return static_cast<int>(matrix.rows()); }
};

// Thrown when a QFIM is too close to singular for the Cramer-Rao bound to
// be formed. Relative determinant threshold: 1e-12.
class SingularQfimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// QFIM contribution of a single mode carrying two parameters, from the two
// complex encoding entries of that mode's row. Equals
// 2*[[eps_x^2+eps_p^2, eps_p*eta_p+eps_x*eta_x], [sym, eta_x^2+eta_p^2]]
// in quadrature constants, i.e. 4*Re(conj(e) * [e eta]) blockwise.
Eigen::Matrix2d single_mode_qfim(Complex eps, Complex eta);

// Full QFIM: F_jk = 4 Re[sum_i conj(E_i^{(j)}) E_i^{(k)}] = 4 Re(E^dag E).
// Additive over modes; equals the sum of single_mode_qfim rows for n = 2.
QFIM qfim(const EncodingMatrix& encoding);

// Eigenvalues (lambda_+, lambda_-) of [[A, C], [C, B]] via the closed form
// (A+B +- sqrt((A-B)^2 + 4C^2))/2. Requires A, B >= 0. The two-mode QFIM
// with per-mode blocks A, B and cross term C has eigenvalues 2*lambda_+-.
std::pair<double, double> two_mode_eigenvalues(double A, double B, double C);

// Cramer-Rao variance bounds: diagonal of F^{-1} divided by N.
// Throws SingularQfimError when |det F| < 1e-12 * (product of row norms).
Eigen::VectorXd qcrb(const QFIM& f, long long repetitions);

// Attainability residual for parameters j != k: the trace of the SLD
// commutator term, 2 Im[(E^dag E)_jk]. Zero for all pairs iff a projective
// quadrature measurement can saturate the bound simultaneously.
double sld_commutator_trace(const EncodingMatrix& encoding, int j, int k);

// Coefficient vector of the SLD for parameter j: column j of the encoding.
Eigen::VectorXcd sld_coefficients(const EncodingMatrix& encoding, int j);

inline constexpr double kDefaultQfimStep = 1e-4;

// Independent oracle: central finite differences of the product coherent
// state, with every inner product evaluated through coherent_overlap.
// F_ij = 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>].
QFIM numerical_qfim(const EncodingMatrix& encoding,
                    const Eigen::VectorXd& params,
                    double step = kDefaultQfimStep);

}  // namespace quadest

#endif  // QUADEST_FISHER_HPP_
