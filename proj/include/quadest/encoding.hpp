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
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "quadest/phase_space.hpp"

namespace quadest {

/// Default absolute tolerance for constraint satisfaction.
inline constexpr double kDefaultTolerance = 1e-9;

/// The eight real constants of a linear two-mode encoding: parameter a enters
/// through the eps block, parameter b through the eta block.
struct TwoModeConstants {
  double eps_x1, eps_p1, eps_x2, eps_p2;
  double eta_x1, eta_p1, eta_x2, eta_p2;
};

/// Complex n x n matrix mapping n real parameters to n coherent amplitudes,
/// alpha_i = sum_j E(i, j) a_j. Row = mode, column = parameter. For two modes
/// the real constants are recovered via E(i, 0) = (eps_xi + i eps_pi)/sqrt(2)
/// and E(i, 1) = (eta_xi + i eta_pi)/sqrt(2).
class EncodingMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is square and finite.
  explicit EncodingMatrix(Eigen::MatrixXcd entries);

  static EncodingMatrix identity(int modes);
  static EncodingMatrix from_two_mode_constants(const TwoModeConstants& c);

  int modes() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// Two-mode real view; throws unless modes() == 2.
  TwoModeConstants two_mode_constants() const;

 private:
  Eigen::MatrixXcd entries_;
};

struct PairResidual {
  int j;
  int k;
  double re;  // equal-precision residual Re[(E^dag E)_{jk}]
  double im;  // attainability residual Im[(E^dag E)_{jk}]
};

/// Residuals of the energy / equal-precision / attainability constraint
/// system. satisfied holds iff every residual magnitude is <= tolerance,
/// which for a full encoding matrix is unitarity of E.
struct ConstraintReport {
  Eigen::VectorXd energy_residuals;  // per parameter: sum_i |E(i,j)|^2 - 1
  std::vector<PairResidual> cross;   // ordered pairs j < k
  double tolerance = kDefaultTolerance;
  double max_abs_residual = 0.0;
  bool satisfied = false;
};

/// Displacement means of the encoded n-mode product coherent state.
QuadratureVector encode(const EncodingMatrix& encoding,
                        const Eigen::VectorXd& params);

ConstraintReport check_constraints(const EncodingMatrix& encoding,
                                   double tol = kDefaultTolerance);

/// One-parameter family of optimal two-mode encodings, indexed by the
/// decoding beam splitter transmittance. Equals
/// general_two_mode_encoding(T, 0, 0, 0).
EncodingMatrix optimal_two_mode_encoding(double transmittance);

/// General optimal two-mode encoding with decoding phases (theta, phi, psi).
/// All angles zero reduces exactly to optimal_two_mode_encoding(T). Unitary
/// for every angle choice.
EncodingMatrix general_two_mode_encoding(double transmittance, double theta,
                                         double phi, double psi);

/// Same parametrization with a duplicated term in the eta_p2 entry: kept for
/// comparison, breaks unitarity for generic angles.
EncodingMatrix general_two_mode_encoding_literal(double transmittance,
                                                 double theta, double phi,
                                                 double psi);

/// Constraint residuals of an identical encoding (both modes carry the same
/// four constants). At least one residual is nonzero for every valid input,
/// so the report never comes back satisfied: identical encoding cannot reach
/// the bound for both parameters at once.
ConstraintReport identical_encoding_report(double eps_x, double eps_p,
                                           double eta_x, double eta_p,
                                           double tol = kDefaultTolerance);

/// True iff |sum_i (x_i^2 + p_i^2) - 2 sum_j a_j^2| <= tol.
bool energy_check(const QuadratureVector& r, const Eigen::VectorXd& params,
                  double tol = kDefaultTolerance);

struct EllipsePoint {
  double transmittance;
  double x1, p1;
  double x2, p2;
};

/// The two phase-space points of the optimal encoding at each transmittance.
/// For a, b != 0 every point lies on the ellipse x^2/a^2 + p^2/b^2 = 2.
std::vector<EllipsePoint> optimal_ellipse_points(
    double a, double b, const std::vector<double>& t_grid);

// JSON document form: {"modes": n, "entries": [[{"re": .., "im": ..}, ..], ..]},
// row-major with row = mode.
nlohmann::json encoding_to_json(const EncodingMatrix& encoding);
EncodingMatrix encoding_from_json(const nlohmann::json& doc);
EncodingMatrix load_encoding(const std::string& path);
void save_encoding(const std::string& path, const EncodingMatrix& encoding);

}  // namespace quadest
