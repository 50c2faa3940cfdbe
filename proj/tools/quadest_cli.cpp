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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadest/encoding.hpp"
#include "quadest/fisher.hpp"
#include "quadest/phase_space.hpp"
#include "quadest/protocol.hpp"
#include "quadest/schemes.hpp"
#include "quadest/simulate.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw std::invalid_argument("malformed number list: " + text);
    }
  }
  if (values.empty()) {
    throw std::invalid_argument("empty number list");
  }
  return values;
}

Eigen::VectorXd parse_params(const std::string& text) {
  const std::vector<double> values = parse_numbers(text);
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<long>(values.size()));
}

// "lo:hi:step", inclusive of hi up to rounding slack.
std::vector<double> parse_grid(const std::string& text) {
  std::stringstream stream(text);
  std::string lo_s, hi_s, step_s;
  if (!std::getline(stream, lo_s, ':') || !std::getline(stream, hi_s, ':') ||
      !std::getline(stream, step_s)) {
    throw std::invalid_argument("grid must be lo:hi:step");
  }
  const double lo = std::stod(lo_s);
  const double hi = std::stod(hi_s);
  const double step = std::stod(step_s);
  if (!(step > 0.0) || hi < lo) {
    throw std::invalid_argument("grid must have positive step and hi >= lo");
  }
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = lo + i * step;
    if (t > hi + 1e-12) break;
    grid.push_back(std::min(t, hi));
  }
  return grid;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json report_to_json(const quadest::ConstraintReport& report) {
  json cross = json::array();
  for (const quadest::PairResidual& r : report.cross) {
    cross.push_back({{"j", r.j}, {"k", r.k}, {"re", r.re}, {"im", r.im}});
  }
  return {{"energy_residuals", vector_to_json(report.energy_residuals)},
          {"cross", std::move(cross)},
          {"max_abs_residual", report.max_abs_residual},
          {"satisfied", report.satisfied},
          {"tolerance", report.tolerance}};
}

void emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw std::invalid_argument("cannot write output file: " + output_path);
  }
  out << payload;
}

void emit_json(const json& doc, const std::string& output_path) {
  emit(doc.dump(2) + "\n", output_path);
}

struct Options {
  std::string encoding_path;
  std::string scheme_path;
  std::string params_text;
  std::string identical_text;
  std::string commutator_text;
  std::string given_text;
  std::string decode_text;
  std::string grid_text;
  std::string output_path;
  double transmittance = 0.5;
  double t1 = 0.5;
  double t2 = 0.5;
  double tol = quadest::kDefaultTolerance;
  double step = quadest::kDefaultQfimStep;
  long long shots = 1000;
  long long trials = 1;
  long long qcrb_reps = 0;
  std::uint64_t seed = 0;
  int modes = 0;
  int mode_index = -1;
  int sld_index = -1;
  bool oracle = false;
  bool eigenvalues = false;
  bool csv = false;
  bool max_enhancement = false;
};

quadest::Scheme scheme_from_options(const Options& opt, bool has_scheme,
                                    bool has_t, bool has_t12) {
  if (has_scheme) {
    std::ifstream in(opt.scheme_path);
    if (!in) {
      throw std::invalid_argument("cannot open scheme file: " +
                                  opt.scheme_path);
    }
    json doc;
    in >> doc;
    return quadest::scheme_from_json(doc);
  }
  if (has_t12) {
    const Eigen::VectorXd p = parse_params(opt.params_text);
    if (p.size() != 3) {
      throw std::invalid_argument(
          "three-mode simulation needs --params a,b,c");
    }
    return quadest::three_mode_scheme(opt.t1, opt.t2, p[1], p[2]);
  }
  if (has_t) {
    return quadest::two_mode_scheme(opt.transmittance);
  }
  throw std::invalid_argument("need --scheme, -T, or --T1/--T2");
}

int run_qfim(const Options& opt) {
  const quadest::EncodingMatrix e = quadest::load_encoding(opt.encoding_path);
  const int selectors = (opt.oracle ? 1 : 0) + (opt.qcrb_reps > 0 ? 1 : 0) +
                        (!opt.commutator_text.empty() ? 1 : 0) +
                        (opt.eigenvalues ? 1 : 0) +
                        (opt.mode_index >= 0 ? 1 : 0) +
                        (opt.sld_index >= 0 ? 1 : 0);
  if (selectors > 1) {
    throw std::invalid_argument("pick at most one qfim output selector");
  }
  if (opt.oracle) {
    if (opt.params_text.empty()) {
      throw std::invalid_argument("--oracle needs --params");
    }
    emit_json(matrix_to_json(quadest::numerical_qfim(
                                 e, parse_params(opt.params_text), opt.step)
                                 .matrix),
              opt.output_path);
  } else if (opt.qcrb_reps > 0) {
    emit_json(vector_to_json(quadest::qcrb(quadest::qfim(e), opt.qcrb_reps)),
              opt.output_path);
  } else if (!opt.commutator_text.empty()) {
    const std::vector<double> jk = parse_numbers(opt.commutator_text);
    if (jk.size() != 2) {
      throw std::invalid_argument("--commutator needs j,k");
    }
    const int j = static_cast<int>(jk[0]);
    const int k = static_cast<int>(jk[1]);
    emit_json({{"j", j},
               {"k", k},
               {"value", quadest::sld_commutator_trace(e, j, k)}},
              opt.output_path);
  } else if (opt.eigenvalues) {
    const quadest::QFIM f = quadest::qfim(e);
    if (f.params() != 2) {
      throw std::invalid_argument("--eigenvalues needs a two-mode encoding");
    }
    const auto [hi, lo] = quadest::two_mode_eigenvalues(
        f.matrix(0, 0) / 2.0, f.matrix(1, 1) / 2.0, f.matrix(0, 1) / 2.0);
    emit_json(json::array({2.0 * hi, 2.0 * lo}), opt.output_path);
  } else if (opt.mode_index >= 0) {
    if (e.modes() != 2) {
      throw std::invalid_argument("--mode needs a two-parameter encoding");
    }
    emit_json(matrix_to_json(quadest::single_mode_qfim(
                  e.entries()(opt.mode_index, 0),
                  e.entries()(opt.mode_index, 1))),
              opt.output_path);
  } else if (opt.sld_index >= 0) {
    const Eigen::VectorXcd c = quadest::sld_coefficients(e, opt.sld_index);
    json out = json::array();
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      out.push_back({{"re", c[i].real()}, {"im", c[i].imag()}});
    }
    emit_json(out, opt.output_path);
  } else {
    emit_json(matrix_to_json(quadest::qfim(e).matrix), opt.output_path);
  }
  return kExitOk;
}

int run_check(const Options& opt) {
  quadest::ConstraintReport report{};
  json doc;
  if (!opt.identical_text.empty()) {
    const std::vector<double> c = parse_numbers(opt.identical_text);
    if (c.size() != 4) {
      throw std::invalid_argument("--identical needs eps_x,eps_p,eta_x,eta_p");
    }
    report = quadest::identical_encoding_report(c[0], c[1], c[2], c[3],
                                                opt.tol);
    doc = report_to_json(report);
  } else if (!opt.encoding_path.empty()) {
    const quadest::EncodingMatrix e =
        quadest::load_encoding(opt.encoding_path);
    report = quadest::check_constraints(e, opt.tol);
    doc = report_to_json(report);
    if (!opt.params_text.empty()) {
      const Eigen::VectorXd params = parse_params(opt.params_text);
      doc["energy_ok"] = quadest::energy_check(quadest::encode(e, params),
                                               params, opt.tol);
    }
  } else {
    throw std::invalid_argument("need --encoding or --identical");
  }
  emit_json(doc, opt.output_path);
  return report.satisfied ? kExitOk : kExitInfeasible;
}

int emit_scheme(const quadest::Scheme& scheme, const Options& opt) {
  json doc{{"scheme", quadest::scheme_to_json(scheme)}};
  if (!opt.params_text.empty()) {
    const Eigen::VectorXd params = parse_params(opt.params_text);
    const quadest::QuadratureVector encoded =
        quadest::encode(scheme.encoding, params);
    const quadest::QuadratureVector output =
        quadest::network_output(scheme, params);
    const Eigen::VectorXd means = quadest::readout_means(scheme, output);
    doc["encoded"] = vector_to_json(encoded.values());
    doc["readout_means"] = vector_to_json(means);
    doc["decoded_means"] = vector_to_json(quadest::decode(scheme, means));
  }
  if (!opt.decode_text.empty()) {
    doc["decoded"] = vector_to_json(
        quadest::decode(scheme, parse_params(opt.decode_text)));
  }
  emit_json(doc, opt.output_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal multiparameter estimation with coherent states"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* qfim = app.add_subcommand(
      "qfim", "Fisher information of an encoding matrix");
  qfim->add_option("--encoding", opt.encoding_path)->required();
  qfim->add_flag("--oracle", opt.oracle,
                 "finite-difference oracle instead of the closed form");
  qfim->add_option("--params", opt.params_text);
  qfim->add_option("--step", opt.step);
  qfim->add_option("--qcrb", opt.qcrb_reps,
                   "print variance bounds for N repetitions");
  qfim->add_option("--commutator", opt.commutator_text,
                   "print the attainability residual for pair j,k");
  qfim->add_flag("--eigenvalues", opt.eigenvalues);
  qfim->add_option("--mode", opt.mode_index,
                   "print the single-mode 2x2 block");
  qfim->add_option("--sld", opt.sld_index,
                   "print the SLD coefficient vector for one parameter");

  CLI::App* check = app.add_subcommand(
      "check", "Unitarity / attainability constraint report");
  check->add_option("--encoding", opt.encoding_path);
  check->add_option("--identical", opt.identical_text,
                    "identical-encoding constants eps_x,eps_p,eta_x,eta_p");
  check->add_option("--params", opt.params_text);
  check->add_option("--tol", opt.tol);

  CLI::App* scheme = app.add_subcommand("scheme", "Construct a scheme");
  scheme->require_subcommand(1);
  CLI::App* scheme_two = scheme->add_subcommand("two", "beam splitter + x/p");
  scheme_two->add_option("-T", opt.transmittance)->required();
  CLI::App* scheme_three =
      scheme->add_subcommand("three", "two splitters + phase");
  scheme_three->add_option("--T1", opt.t1)->required();
  scheme_three->add_option("--T2", opt.t2)->required();
  scheme_three->add_option("--params", opt.params_text)->required();
  CLI::App* scheme_n = scheme->add_subcommand("n", "unitary encoding");
  scheme_n->add_option("--modes", opt.modes);
  scheme_n->add_option("--encoding", opt.encoding_path,
                       "unitary matrix in encoding JSON format");
  scheme_n->add_option("--seed", opt.seed);
  for (CLI::App* sub : {scheme_two, scheme_n}) {
    sub->add_option("--params", opt.params_text);
  }
  for (CLI::App* sub : {scheme_two, scheme_three, scheme_n}) {
    sub->add_option("--decode", opt.decode_text,
                    "decode one sample per readout");
  }

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo run of a scheme");
  simulate->add_option("--scheme", opt.scheme_path);
  CLI::Option* sim_t = simulate->add_option("-T", opt.transmittance);
  CLI::Option* sim_t1 = simulate->add_option("--T1", opt.t1);
  simulate->add_option("--T2", opt.t2);
  simulate->add_option("--params", opt.params_text)->required();
  simulate->add_option("--shots", opt.shots);
  simulate->add_option("--trials", opt.trials);
  simulate->add_option("--seed", opt.seed);

  CLI::App* baseline = app.add_subcommand(
      "baseline", "Individual homodyne baseline");
  baseline->add_option("-T", opt.transmittance)->required();
  baseline->add_option("--params", opt.params_text)->required();
  baseline->add_option("--shots", opt.shots);
  baseline->add_option("--seed", opt.seed);

  CLI::App* curve = app.add_subcommand(
      "curve", "Enhancement ratio across transmittances");
  curve->add_option("--grid", opt.grid_text)->required();
  curve->add_option("--shots", opt.shots);
  curve->add_option("--seed", opt.seed);
  curve->add_flag("--csv", opt.csv);

  CLI::App* ellipse = app.add_subcommand(
      "ellipse", "Optimal input family across transmittances");
  ellipse->add_option("--params", opt.params_text)->required();
  ellipse->add_option("--grid", opt.grid_text)->required();
  ellipse->add_flag("--csv", opt.csv);

  CLI::App* protocol = app.add_subcommand(
      "protocol", "Settings negotiation for two given coherent states");
  protocol->add_option("--given", opt.given_text, "x1,p1,x2,p2")->required();
  protocol->add_option("--params", opt.params_text);
  protocol->add_flag("--max-enhancement", opt.max_enhancement);
  protocol->add_option("--shots", opt.shots);
  protocol->add_option("--seed", opt.seed);

  CLI::App* partition = app.add_subcommand(
      "partition", "Split modes into blocks of two or three");
  partition->add_option("--modes", opt.modes)->required();

  for (CLI::App* sub :
       {qfim, check, scheme_two, scheme_three, scheme_n, simulate, baseline,
        curve, ellipse, protocol, partition}) {
    sub->add_option("--output", opt.output_path);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"type", "usage"}, {"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(qfim)) return run_qfim(opt);
    if (app.got_subcommand(check)) return run_check(opt);
    if (app.got_subcommand(scheme)) {
      if (scheme->got_subcommand(scheme_two)) {
        return emit_scheme(quadest::two_mode_scheme(opt.transmittance), opt);
      }
      if (scheme->got_subcommand(scheme_three)) {
        const Eigen::VectorXd p = parse_params(opt.params_text);
        if (p.size() != 3) {
          throw std::invalid_argument("three-mode scheme needs --params a,b,c");
        }
        return emit_scheme(
            quadest::three_mode_scheme(opt.t1, opt.t2, p[1], p[2]), opt);
      }
      if (!opt.encoding_path.empty()) {
        return emit_scheme(
            quadest::n_mode_scheme(
                quadest::load_encoding(opt.encoding_path).entries()),
            opt);
      }
      if (opt.modes <= 0) {
        throw std::invalid_argument("scheme n needs --modes or --encoding");
      }
      quadest::CounterRng rng(opt.seed);
      return emit_scheme(
          quadest::n_mode_scheme(quadest::random_unitary(opt.modes, rng)),
          opt);
    }
    if (app.got_subcommand(simulate)) {
      quadest::ExperimentConfig config{
          scheme_from_options(opt, !opt.scheme_path.empty(),
                              sim_t->count() > 0, sim_t1->count() > 0),
          parse_params(opt.params_text), opt.shots, opt.trials, opt.seed};
      emit_json(quadest::result_to_json(quadest::run_experiment(config)),
                opt.output_path);
      return kExitOk;
    }
    if (app.got_subcommand(baseline)) {
      const Eigen::VectorXd p = parse_params(opt.params_text);
      if (p.size() != 2) {
        throw std::invalid_argument("baseline needs --params a,b");
      }
      const quadest::EstimationResult result = quadest::run_individual_baseline(
          opt.transmittance, Eigen::Vector2d(p[0], p[1]), opt.shots, opt.seed);
      json doc = quadest::result_to_json(result);
      const quadest::IndividualVariances analytic =
          quadest::individual_variances(opt.transmittance);
      doc["analytic_variances"] = {{"var_a", analytic.var_a},
                                   {"var_b", analytic.var_b},
                                   {"measured_mode", analytic.measured_mode}};
      emit_json(doc, opt.output_path);
      return kExitOk;
    }
    if (app.got_subcommand(curve)) {
      const std::vector<quadest::CurvePoint> rows = quadest::enhancement_curve(
          parse_grid(opt.grid_text), opt.shots, opt.seed);
      if (opt.csv) {
        std::ostringstream text;
        quadest::write_curve_csv(text, rows);
        emit(text.str(), opt.output_path);
      } else {
        json out = json::array();
        for (const quadest::CurvePoint& row : rows) {
          out.push_back({{"T", row.transmittance},
                         {"ratio_analytic", row.ratio_analytic},
                         {"ratio_empirical", row.ratio_empirical},
                         {"ci_low", row.ci_low},
                         {"ci_high", row.ci_high}});
        }
        emit_json(out, opt.output_path);
      }
      return kExitOk;
    }
    if (app.got_subcommand(ellipse)) {
      const Eigen::VectorXd p = parse_params(opt.params_text);
      if (p.size() != 2) {
        throw std::invalid_argument("ellipse needs --params a,b");
      }
      const std::vector<quadest::EllipsePoint> rows =
          quadest::ellipse_trace(p[0], p[1], parse_grid(opt.grid_text));
      if (opt.csv) {
        std::ostringstream text;
        quadest::write_ellipse_csv(text, rows);
        emit(text.str(), opt.output_path);
      } else {
        json out = json::array();
        for (const quadest::EllipsePoint& row : rows) {
          out.push_back({{"T", row.transmittance},
                         {"x1", row.x1},
                         {"p1", row.p1},
                         {"x2", row.x2},
                         {"p2", row.p2}});
        }
        emit_json(out, opt.output_path);
      }
      return kExitOk;
    }
    if (app.got_subcommand(protocol)) {
      const Eigen::VectorXd g = parse_params(opt.given_text);
      if (g.size() != 4) {
        throw std::invalid_argument("protocol needs --given x1,p1,x2,p2");
      }
      quadest::ParameterChoice choice = quadest::ParameterChoice::equal_split();
      if (opt.max_enhancement && !opt.params_text.empty()) {
        throw std::invalid_argument(
            "--params and --max-enhancement are exclusive");
      }
      if (opt.max_enhancement) {
        choice = quadest::ParameterChoice::max_enhancement();
      } else if (!opt.params_text.empty()) {
        const Eigen::VectorXd p = parse_params(opt.params_text);
        if (p.size() != 2) {
          throw std::invalid_argument("protocol needs --params a,b");
        }
        choice = quadest::ParameterChoice::explicit_params(p[0], p[1]);
      }
      const quadest::ProtocolTranscript transcript = quadest::run_protocol(
          quadest::QuadratureVector(g), choice, opt.shots, opt.seed);
      if (!opt.output_path.empty()) {
        std::ofstream out(opt.output_path);
        if (!out) {
          throw std::invalid_argument("cannot write output file: " +
                                      opt.output_path);
        }
        quadest::write_transcript(out, transcript);
      }
      std::cout << quadest::transcript_to_json(transcript).dump(2) << "\n";
      return kExitOk;
    }
    if (app.got_subcommand(partition)) {
      emit_json({{"blocks", quadest::partition_modes(opt.modes)}},
                opt.output_path);
      return kExitOk;
    }
    throw std::invalid_argument("no subcommand given");
  } catch (const quadest::InfeasibleError& e) {
    std::cerr << json{{"type", "infeasible"}, {"error", e.what()}}.dump()
              << "\n";
    return kExitInfeasible;
  } catch (const quadest::SingularQfimError& e) {
    std::cerr << json{{"type", "singular"}, {"error", e.what()}}.dump()
              << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"type", "usage"}, {"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << json{{"type", "error"}, {"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  }
}
