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

#include "quadest/encoding.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace quadest {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

void check_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
}

}  // namespace

EncodingMatrix::EncodingMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("encoding matrix must be square and nonempty");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("encoding matrix entries must be finite");
  }
}

EncodingMatrix EncodingMatrix::identity(int modes) {
  if (modes <= 0) throw std::invalid_argument("mode count must be positive");
  return EncodingMatrix(Eigen::MatrixXcd::Identity(modes, modes));
}

EncodingMatrix EncodingMatrix::from_two_mode_constants(
    const TwoModeConstants& c) {
  Eigen::MatrixXcd e(2, 2);
  e(0, 0) = Complex(c.eps_x1, c.eps_p1) / kSqrt2;
  e(1, 0) = Complex(c.eps_x2, c.eps_p2) / kSqrt2;
  e(0, 1) = Complex(c.eta_x1, c.eta_p1) / kSqrt2;
  e(1, 1) = Complex(c.eta_x2, c.eta_p2) / kSqrt2;
  return EncodingMatrix(std::move(e));
}

TwoModeConstants EncodingMatrix::two_mode_constants() const {
  if (modes() != 2) {
    throw std::invalid_argument("two-mode view needs a 2x2 encoding");
  }
  TwoModeConstants c{};
  c.eps_x1 = kSqrt2 * entries_(0, 0).real();
  c.eps_p1 = kSqrt2 * entries_(0, 0).imag();
  c.eps_x2 = kSqrt2 * entries_(1, 0).real();
  c.eps_p2 = kSqrt2 * entries_(1, 0).imag();
  c.eta_x1 = kSqrt2 * entries_(0, 1).real();
  c.eta_p1 = kSqrt2 * entries_(0, 1).imag();
  c.eta_x2 = kSqrt2 * entries_(1, 1).real();
  c.eta_p2 = kSqrt2 * entries_(1, 1).imag();
  return c;
}

QuadratureVector encode(const EncodingMatrix& encoding,
                        const Eigen::VectorXd& params) {
  if (params.size() != encoding.modes()) {
    throw std::invalid_argument("parameter count must match encoding size");
  }
  return quadratures_of(encoding.entries() * params);
}

ConstraintReport check_constraints(const EncodingMatrix& encoding,
                                   double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Eigen::MatrixXcd gram =
      encoding.entries().adjoint() * encoding.entries();
  const int n = encoding.modes();

  ConstraintReport report;
  report.tolerance = tol;
  report.energy_residuals.resize(n);
  for (int j = 0; j < n; ++j) {
    report.energy_residuals[j] = gram(j, j).real() - 1.0;
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      report.cross.push_back(
          PairResidual{j, k, gram(j, k).real(), gram(j, k).imag()});
    }
  }

  double worst = report.energy_residuals.size() > 0
                     ? report.energy_residuals.cwiseAbs().maxCoeff()
                     : 0.0;
  for (const PairResidual& r : report.cross) {
    worst = std::max({worst, std::abs(r.re), std::abs(r.im)});
  }
  report.max_abs_residual = worst;
  report.satisfied = worst <= tol;
  return report;
}

EncodingMatrix optimal_two_mode_encoding(double transmittance) {
  return general_two_mode_encoding(transmittance, 0.0, 0.0, 0.0);
}

EncodingMatrix general_two_mode_encoding(double transmittance, double theta,
                                         double phi, double psi) {
  check_transmittance(transmittance);
  const double rt = std::sqrt(transmittance);
  const double ru = std::sqrt(1.0 - transmittance);
  const Complex et = std::polar(1.0, theta);
  const Complex ep = std::polar(1.0, phi);
  // Column two carries the quarter turn that routes parameter b to the
  // p-quadrature readout; with it, all angles zero lands exactly on the
  // one-parameter optimal family.
  const Complex twist = Complex(0.0, 1.0) * std::polar(1.0, psi);
  Eigen::MatrixXcd e(2, 2);
  e(0, 0) = rt * et;
  e(1, 0) = ru * ep;
  e(0, 1) = twist * ru * et;
  e(1, 1) = -twist * rt * ep;
  return EncodingMatrix(std::move(e));
}

EncodingMatrix general_two_mode_encoding_literal(double transmittance,
                                                 double theta, double phi,
                                                 double psi) {
  check_transmittance(transmittance);
  const double st = std::sqrt(2.0 * transmittance);
  const double su = std::sqrt(2.0 * (1.0 - transmittance));
  TwoModeConstants c{};
  c.eps_x1 = st * std::cos(theta);
  c.eps_p1 = st * std::sin(theta);
  c.eps_x2 = su * std::cos(phi);
  c.eps_p2 = su * std::sin(phi);
  c.eta_x1 = su * (std::sin(theta) * std::sin(psi) -
                   std::cos(theta) * std::cos(psi));
  c.eta_p1 = -su * (std::sin(theta) * std::cos(psi) +
                    std::cos(theta) * std::sin(psi));
  c.eta_x2 = st * (std::cos(phi) * std::cos(psi) -
                   std::sin(phi) * std::sin(psi));
  // Repeated term kept verbatim; this is the defect that breaks unitarity.
  c.eta_p2 = st * (std::cos(phi) * std::sin(psi) +
                   std::cos(phi) * std::sin(psi));
  return EncodingMatrix::from_two_mode_constants(c);
}

ConstraintReport identical_encoding_report(double eps_x, double eps_p,
                                           double eta_x, double eta_p,
                                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (eps_x == 0.0 && eps_p == 0.0) {
    throw std::invalid_argument("eps row must be nonzero");
  }
  if (eta_x == 0.0 && eta_p == 0.0) {
    throw std::invalid_argument("eta row must be nonzero");
  }
  // Both residuals vanishing would need (eps_x^2 + eps_p^2)(eta_x^2 +
  // eta_p^2) = 0, impossible for nonzero rows.
  const double precision = eps_p * eta_p + eps_x * eta_x;
  const double attainability = eps_p * eta_x - eps_x * eta_p;

  ConstraintReport report;
  report.tolerance = tol;
  report.energy_residuals.resize(0);
  report.cross.push_back(PairResidual{0, 1, precision, attainability});
  report.max_abs_residual =
      std::max(std::abs(precision), std::abs(attainability));
  report.satisfied = report.max_abs_residual <= tol;
  return report;
}

bool energy_check(const QuadratureVector& r, const Eigen::VectorXd& params,
                  double tol) {
  return std::abs(r.total_energy() - 2.0 * params.squaredNorm()) <= tol;
}

std::vector<EllipsePoint> optimal_ellipse_points(
    double a, double b, const std::vector<double>& t_grid) {
  if (a == 0.0 && b == 0.0) {
    throw std::invalid_argument("parameters (a, b) must not both be zero");
  }
  std::vector<EllipsePoint> points;
  points.reserve(t_grid.size());
  for (double t : t_grid) {
    check_transmittance(t);
    const double st = std::sqrt(2.0 * t);
    const double su = std::sqrt(2.0 * (1.0 - t));
    points.push_back(EllipsePoint{t, st * a, su * b, su * a, -st * b});
  }
  return points;
}

nlohmann::json encoding_to_json(const EncodingMatrix& encoding) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < encoding.modes(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < encoding.modes(); ++j) {
      const Complex& e = encoding.entries()(i, j);
      row.push_back({{"re", e.real()}, {"im", e.imag()}});
    }
    rows.push_back(std::move(row));
  }
  return {{"modes", encoding.modes()}, {"entries", std::move(rows)}};
}

EncodingMatrix encoding_from_json(const nlohmann::json& doc) {
  const int n = doc.at("modes").get<int>();
  const auto& rows = doc.at("entries");
  if (static_cast<int>(rows.size()) != n) {
    throw std::invalid_argument("entries row count does not match modes");
  }
  Eigen::MatrixXcd e(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("entries must form a square matrix");
    }
    for (int j = 0; j < n; ++j) {
      e(i, j) = Complex(row.at(j).at("re").get<double>(),
                        row.at(j).at("im").get<double>());
    }
  }
  return EncodingMatrix(std::move(e));
}

EncodingMatrix load_encoding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open encoding file: " + path);
  nlohmann::json doc;
  in >> doc;
  return encoding_from_json(doc);
}

void save_encoding(const std::string& path, const EncodingMatrix& encoding) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write encoding file: " + path);
  out << encoding_to_json(encoding).dump(2) << '\n';
}

}  // namespace quadest
