// finsler command-line front end.
//
// Exit codes: 0 certified (or success), 1 I/O / parse failure,
// 2 hypothesis violation, 3 inconclusive or degenerate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "finsler/curvature.hpp"
#include "finsler/holonomy.hpp"
#include "finsler/io.hpp"
#include "finsler/spray.hpp"
#include "finsler/submanifold.hpp"

using namespace finsler;

namespace {

struct RunConfig {
  std::string metric_path;
  std::string out_path;
  std::string condition = "C";
  std::string plane;
  int grid = kDefaultGrid;
  double tol = kRankTol;
  std::uint64_t seed = 42;
  int samples = 100;
  double side = 0.3;
  double T = 1.0;
  std::string x0, y0;
  std::optional<double> lambda;
  std::string which = "F";
  double c0 = 0.0;
  std::vector<double> cos_coeffs, sin_coeffs;
};

std::string config_hash(const std::string& command, const Json& metric, const struct RunConfig& cfg);

struct ExitError {
  int code;
  std::string message;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitError{1, "cannot open '" + path + "'"};
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ExitError{1, "malformed JSON in '" + path + "': " + e.what()};
  }
}

MetricSpec metric_from(const Json& j) {
  try {
    return parse_metric_spec(j);
  } catch (const Error& e) {
    throw ExitError{1, e.what()};
  }
}

// CSV stays plain RFC 4180; its metadata goes next to it (or to stderr).
void emit_meta(const RunConfig& cfg, const Json& meta) {
  if (cfg.out_path.empty()) {
    std::cerr << meta.dump() << "\n";
    return;
  }
  std::ofstream out(cfg.out_path + ".meta.json", std::ios::binary);
  if (!out) throw ExitError{1, "cannot write '" + cfg.out_path + ".meta.json'"};
  out << meta.dump(2) << "\n";
}

Json csv_meta(const std::string& command, const Json& metric, const RunConfig& cfg, Json tolerances) {
  Json m;
  m["tool"] = "finsler";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["config_hash"] = config_hash(command, metric, cfg);
  m["seed"] = cfg.seed;
  m["tolerances"] = std::move(tolerances);
  return m;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw ExitError{1, "cannot write '" + cfg.out_path + "'"};
  out << text;
  if (!out) throw ExitError{1, "write to '" + cfg.out_path + "' failed"};
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ExitError{1, std::string("bad number in ") + what + ": '" + item + "'"};
    }
  }
  return out;
}

Eigen::VectorXd vec(const std::vector<double>& v) { return to_eigen(v); }

std::string config_hash(const std::string& command, const Json& metric, const RunConfig& cfg) {
  std::string canon = command + "\n" + metric.dump() + "\n" + cfg.condition + "\n" + cfg.plane + "\n" +
                      std::to_string(cfg.grid) + "\n" + format_double(cfg.tol) + "\n" + std::to_string(cfg.seed) +
                      "\n" + std::to_string(cfg.samples) + "\n" + format_double(cfg.side);
  return hex64(fnv1a64(canon));
}

std::string csv_header_xy(int n, const std::string& px, const std::string& py) {
  std::string h;
  for (int i = 1; i <= n; ++i) h += px + std::to_string(i) + ",";
  for (int i = 1; i <= n; ++i) h += py + std::to_string(i) + ",";
  return h;
}

std::string csv_vec(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += format_double(v(i)) + ",";
  return s;
}

int cmd_certify(const RunConfig& cfg) {
  const Json mj = read_json(cfg.metric_path);
  const MetricSpec spec = metric_from(mj);
  Condition cond;
  try {
    cond = parse_condition(cfg.condition);
  } catch (const std::invalid_argument& e) {
    throw ExitError{1, e.what()};
  }
  if (cfg.grid < kMinGrid) throw ExitError{1, "--grid must be >= 64"};
  if (!(cfg.tol > 0.0)) throw ExitError{1, "--tol must be positive"};

  CertifyParams params;
  params.grid = cfg.grid;
  params.tolerance = cfg.tol;
  params.certify_threshold = std::max(kCertifyGap, cfg.tol);
  params = randers_params_from(mj, params);

  CertificationReport rep;
  Json plane_json;
  if (!cfg.plane.empty()) {
    const auto idx = parse_list(cfg.plane, "--plane");
    if (idx.size() != 2) throw ExitError{1, "--plane expects two indices i,j"};
    const int i = static_cast<int>(idx[0]) - 1, j = static_cast<int>(idx[1]) - 1;
    try {
      rep = certify_via_plane(spec, coordinate_plane(spec.dim(), i, j), cond, params);
    } catch (const std::invalid_argument& e) {
      throw ExitError{1, e.what()};
    }
    plane_json = {static_cast<int>(idx[0]), static_cast<int>(idx[1])};
  } else if (spec.dim() != 2) {
    throw ExitError{1, "certification works on surfaces; pass --plane i,j for n > 2"};
  } else {
    rep = certify(spec, cond, params);
  }

  Json out;
  out["tool"] = "finsler";
  out["version"] = kToolVersion;
  out["config_hash"] = config_hash("certify", mj, cfg);
  out["seed"] = cfg.seed;
  out["metric"] = {{"family", std::string(family_name(spec.family()))}, {"n", spec.dim()}};
  if (!plane_json.is_null()) out["plane"] = plane_json;
  out["tolerances"] = {{"rank", params.tolerance},
                       {"certify_gap", params.certify_threshold},
                       {"homogeneity", 1e-9},
                       {"proportionality", 1e-8},
                       {"randers_form", 1e-10},
                       {"flat_point", 1e-8}};
  const Json body = report_to_json(rep);
  for (const auto& [k, v] : body.items()) out[k] = v;
  emit(cfg, out.dump(2) + "\n");

  switch (rep.status) {
    case CertifyStatus::Certified:
      return 0;
    case CertifyStatus::HypothesisViolation:
      return 2;
    case CertifyStatus::Inconclusive:
    case CertifyStatus::Degenerate:
      return 3;
  }
  return 3;
}

int cmd_curvature(const RunConfig& cfg) {
  const Json mj = read_json(cfg.metric_path);
  const MetricSpec spec = metric_from(mj);
  const double lambda = cfg.lambda ? *cfg.lambda : spec.lambda().value_or(0.0);
  const int n = spec.dim();
  emit_meta(cfg, csv_meta("curvature", mj, cfg, {{"lambda", lambda}, {"residual_scale", "1 + max|R|"}}));
  std::string csv = csv_header_xy(n, "x", "y") + "residual,matched_sign\n";
  for (const auto& p : sample_chart(spec, cfg.samples, cfg.seed)) {
    const FlagCurvatureResidual r = flag_curvature_residual(spec, p.x, p.y, lambda);
    csv += csv_vec(p.x) + csv_vec(p.y) + format_double(r.residual) + "," + std::to_string(r.matched_sign) + "\n";
  }
  emit(cfg, csv);
  return 0;
}

int cmd_transport(const RunConfig& cfg) {
  const Json mj = read_json(cfg.metric_path);
  const MetricSpec spec = metric_from(mj);
  const int n = spec.dim();
  const Path loop = square_loop(Eigen::VectorXd::Zero(n), cfg.side);
  const int samples = std::max(cfg.grid, 32);
  const HolonomyMap map = loop_holonomy(spec, loop, samples, cfg.seed);
  const double defect = nonlinearity_defect(map);
  emit_meta(cfg, csv_meta("transport", mj, cfg,
                          {{"rtol", 1e-10}, {"atol", 1e-12}, {"projection", kProjectionTol}, {"side", cfg.side}}));
  std::string csv = "k," + csv_header_xy(n, "y_in", "y_out") + "correction,valid,defect\n";
  for (std::size_t k = 0; k < map.input.size(); ++k) {
    csv += std::to_string(k) + "," + csv_vec(map.input[k]) + csv_vec(map.output[k]) + format_double(map.correction[k]) +
           "," + (map.valid[k] ? "1" : "0") + "," + format_double(defect) + "\n";
  }
  emit(cfg, csv);
  return 0;
}

int cmd_geodesic(const RunConfig& cfg) {
  const Json mj = read_json(cfg.metric_path);
  const MetricSpec spec = metric_from(mj);
  const int n = spec.dim();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n), y0 = Eigen::VectorXd::Zero(n);
  y0(0) = 1.0;
  if (!cfg.x0.empty()) x0 = vec(parse_list(cfg.x0, "--x0"));
  if (!cfg.y0.empty()) y0 = vec(parse_list(cfg.y0, "--y0"));
  if (x0.size() != n || y0.size() != n) throw ExitError{1, "--x0 / --y0 must have n components"};
  const GeodesicTrace tr = geodesic_integrate(spec, x0, y0, cfg.T, {}, std::max(cfg.samples, 1));
  emit_meta(cfg, csv_meta("geodesic", mj, cfg, {{"rtol", 1e-10}, {"atol", 1e-12}}));
  std::string csv = "t," + csv_header_xy(n, "x", "v") + "F\n";
  for (const auto& p : tr.points) {
    csv += format_double(p.t) + "," + csv_vec(p.x) + csv_vec(p.v) + format_double(finsler_value(spec, p.x, p.v)) + "\n";
  }
  emit(cfg, csv);
  return 0;
}

int cmd_profile(const RunConfig& cfg) {
  PolarProfile prof;
  Json mj = Json::object();
  if (!cfg.metric_path.empty()) {
    mj = read_json(cfg.metric_path);
    const MetricSpec spec = metric_from(mj);
    if (spec.family() == Family::PolarProfilePointwise) {
      prof = cfg.which == "P" ? *spec.profile_P() : *spec.profile_F();
    } else if (spec.dim() == 2) {
      const PointwiseData d = pointwise_at_origin(spec);
      try {
        prof = profile_from_function(cfg.which == "P" ? d.P0 : d.F0, cfg.which);
      } catch (const Error& e) {
        throw ExitError{1, e.what()};
      }
    } else {
      throw ExitError{1, "profile needs a two-dimensional metric"};
    }
  } else {
    prof = PolarProfile::fourier(cfg.c0, cfg.cos_coeffs, cfg.sin_coeffs);
    mj = {{"c0", cfg.c0}, {"cos", cfg.cos_coeffs}, {"sin", cfg.sin_coeffs}};
  }
  const int N = std::max(cfg.grid, 1);
  emit_meta(cfg, csv_meta("profile", mj, cfg, Json::object()));
  std::string csv = "t,r,rdot,rddot,kappa\n";
  for (int k = 0; k < N; ++k) {
    const double t = 2.0 * std::numbers::pi * k / N;
    const ProfileDerivatives d = prof.derivatives(t);
    csv += format_double(t) + "," + format_double(d.r) + "," + format_double(d.rdot) + "," + format_double(d.rddot) +
           "," + format_double(profile_curvature(prof, t)) + "\n";
  }
  emit(cfg, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical Finsler geometry: curvature, transport and holonomy certification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_metric) {
    auto* m = sub->add_option("--metric", cfg.metric_path, "metric specification JSON");
    if (needs_metric) m->required();
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for random sampling");
    sub->add_option("--grid", cfg.grid, "grid size");
    sub->add_option("--tol", cfg.tol, "rank tolerance");
  };

  auto* certify_cmd = app.add_subcommand("certify", "certify infinite-dimensional holonomy (exit 0/2/3)");
  common(certify_cmd, true);
  certify_cmd->add_option("--condition", cfg.condition, "A, B or C")->check(CLI::IsMember({"A", "B", "C"}));
  certify_cmd->add_option("--plane", cfg.plane, "coordinate plane i,j (1-based) for n > 2");

  auto* curvature_cmd = app.add_subcommand("curvature", "CSV of flag-curvature residuals");
  common(curvature_cmd, true);
  curvature_cmd->add_option("--samples", cfg.samples, "number of random chart points");
  curvature_cmd->add_option("--lambda", cfg.lambda, "flag curvature to test (default: the metric file's lambda)");

  auto* transport_cmd = app.add_subcommand("transport", "CSV of the square-loop holonomy map");
  common(transport_cmd, true);
  transport_cmd->add_option("--side", cfg.side, "side of the square loop at the origin");

  auto* geodesic_cmd = app.add_subcommand("geodesic", "CSV geodesic trace");
  common(geodesic_cmd, true);
  geodesic_cmd->add_option("--x0", cfg.x0, "initial point, comma separated");
  geodesic_cmd->add_option("--y0", cfg.y0, "initial velocity, comma separated");
  geodesic_cmd->add_option("--T", cfg.T, "parameter span");
  geodesic_cmd->add_option("--samples", cfg.samples, "output intervals");

  auto* profile_cmd = app.add_subcommand("profile", "CSV of t, r, rdot, rddot, kappa");
  common(profile_cmd, false);
  profile_cmd->add_option("--which", cfg.which, "F or P")->check(CLI::IsMember({"F", "P"}));
  profile_cmd->add_option("--c0", cfg.c0, "Fourier constant term");
  profile_cmd->add_option("--cos", cfg.cos_coeffs, "Fourier cosine coefficients")->delimiter(',');
  profile_cmd->add_option("--sin", cfg.sin_coeffs, "Fourier sine coefficients")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*certify_cmd) return cmd_certify(cfg);
    if (*curvature_cmd) return cmd_curvature(cfg);
    if (*transport_cmd) return cmd_transport(cfg);
    if (*geodesic_cmd) return cmd_geodesic(cfg);
    if (*profile_cmd) return cmd_profile(cfg);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
