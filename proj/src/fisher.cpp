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

#include "quadest/fisher.hpp"

#include <cassert>
#include <cmath>

namespace quadest {

namespace {

constexpr double kSingularityThreshold = 1e-12;

// <psi(u)|psi(v)> for the product coherent states with amplitudes E*u, E*v.
Complex state_overlap(const Eigen::MatrixXcd& e, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) {
  const Eigen::VectorXcd alpha = e * u;
  const Eigen::VectorXcd beta = e * v;
  Complex prod(1.0, 0.0);
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    prod *= coherent_overlap(alpha[i], beta[i]);
  }
  return prod;
}

}  // namespace

Eigen::Matrix2d single_mode_qfim(Complex eps, Complex eta) {
  Eigen::Matrix2d f;
  f(0, 0) = 4.0 * std::norm(eps);
  f(1, 1) = 4.0 * std::norm(eta);
  f(0, 1) = 4.0 * (std::conj(eps) * eta).real();
  f(1, 0) = f(0, 1);
  return f;
}

QFIM qfim(const EncodingMatrix& encoding) {
  const Eigen::MatrixXcd gram =
      encoding.entries().adjoint() * encoding.entries();
  Eigen::MatrixXd f = 4.0 * gram.real();
  f = ((f + f.transpose()) / 2.0).eval();
  return QFIM{std::move(f)};
}

std::pair<double, double> two_mode_eigenvalues(double A, double B, double C) {
  if (!(A >= 0.0 && B >= 0.0)) {
    throw std::invalid_argument("per-mode blocks A and B must be nonnegative");
  }
  const double disc = (A - B) * (A - B) + 4.0 * C * C;
  assert(disc >= 0.0);
  const double root = std::sqrt(disc);
  return {(A + B + root) / 2.0, (A + B - root) / 2.0};
}

Eigen::VectorXd qcrb(const QFIM& f, long long repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument("repetition count must be at least 1");
  }
  double scale = 1.0;
  for (Eigen::Index i = 0; i < f.matrix.rows(); ++i) {
    scale *= f.matrix.row(i).norm();
  }
  const double det = f.matrix.determinant();
  if (scale == 0.0 || std::abs(det) < kSingularityThreshold * scale) {
    throw SingularQfimError("QFIM is singular; bound undefined");
  }
  const Eigen::MatrixXd inv = f.matrix.inverse();
  return inv.diagonal() / static_cast<double>(repetitions);
}

double sld_commutator_trace(const EncodingMatrix& encoding, int j, int k) {
  if (j == k) {
    throw std::invalid_argument("parameter indices must differ");
  }
  const int n = encoding.modes();
  if (j < 0 || j >= n || k < 0 || k >= n) {
    throw std::invalid_argument("parameter index out of range");
  }
  const Complex cross = encoding.entries().col(j).dot(encoding.entries().col(k));
  return 2.0 * cross.imag();
}

Eigen::VectorXcd sld_coefficients(const EncodingMatrix& encoding, int j) {
  if (j < 0 || j >= encoding.modes()) {
    throw std::invalid_argument("parameter index out of range");
  }
  return encoding.entries().col(j);
}

QFIM numerical_qfim(const EncodingMatrix& encoding,
                    const Eigen::VectorXd& params, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const int n = encoding.modes();
  if (params.size() != n) {
    throw std::invalid_argument("parameter count must match encoding size");
  }
  const Eigen::MatrixXcd& e = encoding.entries();

  const auto shifted = [&](int i, double sign) {
    Eigen::VectorXd u = params;
    u[i] += sign * step;
    return u;
  };

  // <d_i psi|psi> by central differences.
  Eigen::VectorXcd first(n);
  for (int i = 0; i < n; ++i) {
    const Complex plus = state_overlap(e, shifted(i, +1.0), params);
    const Complex minus = state_overlap(e, shifted(i, -1.0), params);
    first[i] = (plus - minus) / (2.0 * step);
  }

  Eigen::MatrixXd f(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Complex pp = state_overlap(e, shifted(i, +1.0), shifted(j, +1.0));
      const Complex pm = state_overlap(e, shifted(i, +1.0), shifted(j, -1.0));
      const Complex mp = state_overlap(e, shifted(i, -1.0), shifted(j, +1.0));
      const Complex mm = state_overlap(e, shifted(i, -1.0), shifted(j, -1.0));
      const Complex second = (pp - pm - mp + mm) / (4.0 * step * step);
      const Complex value = second - first[i] * std::conj(first[j]);
      f(i, j) = 4.0 * value.real();
      f(j, i) = f(i, j);
    }
  }
  return QFIM{std::move(f)};
}

}  // namespace quadest
