// Command line surface: classification, trajectory sampling, bridge
// verification, spectra, wavefunction tables, the effective-potential
// profile, and the aggregated property suite.  Artifacts are plain CSV
// (schema versioned in a leading comment line) or JSON; every float is
// printed with 17 significant digits so identical invocations produce
// byte-identical output.
//
// Exit codes: 0 ok, 1 usage or validation error, 2 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvosc/cartesian.hpp"
#include "curvosc/closed_form.hpp"
#include "curvosc/model.hpp"
#include "curvosc/ode.hpp"
#include "curvosc/quantum.hpp"
#include "curvosc/selftest.hpp"

namespace {

using namespace curvosc;

constexpr double kPi = 3.14159265358979323846;
constexpr double kBridgeErrBudget = 1e-8;    // r^2 and azimuth agreement
constexpr double kBridgeOmegaBudget = 1e-12; // frequency identity

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(int v) { return std::to_string(v); }

// JSON null for non-finite values; bare %.17g otherwise.
std::string jnum(double v) { return std::isfinite(v) ? num(v) : "null"; }

int write_artifact(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::fputs(body.c_str(), stdout);
    return 0;
  }
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    std::fprintf(stderr, "curvosc: cannot open '%s' for writing\n", path.c_str());
    return 1;
  }
  std::fputs(body.c_str(), f);
  std::fclose(f);
  return 0;
}

// Rectangular table shared by the CSV and JSON emitters.
struct Table {
  std::string schema;                // e.g. "curvosc trajectory v1"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& table) {
  std::string out = "# " + table.schema + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += table.columns[c];
    out += (c + 1 < table.columns.size()) ? ',' : '\n';
  }
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += num(row[c]);
      out += (c + 1 < row.size()) ? ',' : '\n';
    }
  return out;
}

std::string to_json(const Table& table) {
  std::string out = "{\"schema\":\"" + table.schema + "\",\"columns\":[";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += "\"" + table.columns[c] + "\"";
    if (c + 1 < table.columns.size()) out += ',';
  }
  out += "],\"rows\":[";
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    out += '[';
    for (std::size_t c = 0; c < table.rows[k].size(); ++c) {
      out += jnum(table.rows[k][c]);
      if (c + 1 < table.rows[k].size()) out += ',';
    }
    out += ']';
    if (k + 1 < table.rows.size()) out += ',';
  }
  out += "]}\n";
  return out;
}

std::string render(const Table& table, const std::string& format) {
  return format == "json" ? to_json(table) : to_csv(table);
}

// Polar energy evaluated at a sampled state; line motion crosses r = 0
// exactly, where the metric is 1 and only the kinetic term survives.
double sample_energy(const ModelParams& params, const ClassicalState& state) {
  if (state.r == 0.0) return 0.5 * state.r_dot * state.r_dot;
  return energy_of_state(params, state);
}

// ---------------------------------------------------------------- classify

int run_classify(const ModelParams& params, double J, double E,
                 const std::string& format, const std::string& out) {
  const MotionConstants mc = motion_constants(params, J, E);
  const auto minimum = v_eff_minimum(params, J);

  std::optional<double> r2_lo, r2_hi;
  if (mc.regime != Regime::Forbidden) {
    const auto range = r2_range(make_trajectory(params, J, E));
    r2_lo = range.first;
    if (std::isfinite(range.second)) r2_hi = range.second;
  }

  std::string body;
  if (format == "json") {
    body = "{\"regime\":\"" + std::string(to_string(mc.regime)) + "\"";
    body += ",\"omega\":" + num(mc.omega);
    body += ",\"C\":" + num(mc.C) + ",\"qa\":" + num(mc.qa) + ",\"qb\":" + num(mc.qb);
    body += ",\"qc\":" + num(mc.qc) + ",\"delta\":" + num(mc.delta);
    body += ",\"r_min\":" + (minimum && minimum->r_min ? num(*minimum->r_min) : "null");
    body += ",\"v_min\":" + (minimum ? num(minimum->v_min) : "null");
    body += ",\"r2_lo\":" + (r2_lo ? num(*r2_lo) : "null");
    body += ",\"r2_hi\":" + (r2_hi ? num(*r2_hi) : "null") + "}\n";
  } else {
    body = "regime=" + std::string(to_string(mc.regime)) + "\n";
    body += "omega=" + num(mc.omega) + "\n";
    body += "C=" + num(mc.C) + "\nqa=" + num(mc.qa) + "\nqb=" + num(mc.qb) + "\n";
    body += "qc=" + num(mc.qc) + "\ndelta=" + num(mc.delta) + "\n";
    if (minimum && minimum->r_min) body += "r_min=" + num(*minimum->r_min) + "\n";
    if (minimum) body += "v_min=" + num(minimum->v_min) + "\n";
    if (r2_lo) body += "r2_lo=" + num(*r2_lo) + "\n";
    if (r2_hi) body += "r2_hi=" + num(*r2_hi) + "\n";
  }
  return write_artifact(out, body);
}

// -------------------------------------------------------------- trajectory

int run_trajectory(const ModelParams& params, double J, double E, double t0,
                   double t1, int samples, bool integrate_flag,
                   const std::string& format, const std::string& out) {
  const ClosedFormTrajectory traj = make_trajectory(params, J, E);

  Table table;
  table.schema = "curvosc trajectory v1";
  table.columns = {"t", "r", "r_dot", "phi", "x", "y", "energy_rel_drift"};

  const auto push_row = [&](double t, const ClassicalState& s, double e0) {
    const double drift = std::abs(sample_energy(params, s) - e0) / std::max(1.0, std::abs(e0));
    table.rows.push_back({t, s.r, s.r_dot, s.phi, s.r * std::cos(s.phi),
                          s.r * std::sin(s.phi), drift});
  };

  if (integrate_flag) {
    const ClassicalState start = eval_state(traj, t0);
    if (start.r < 1e-12)
      throw std::invalid_argument("trajectory: start time coincides with an origin "
                                  "passage; shift --t0");
    IntegrationConfig config;
    config.t0 = t0;
    config.t1 = t1;
    config.n_samples = samples;
    const SampledTrajectory sampled = integrate(params, start, config);
    for (int k = 0; k < samples; ++k)
      push_row(sampled.t[k], sampled.state_at(k), sampled.energy0);
  } else {
    for (int k = 0; k < samples; ++k) {
      const double t = t0 + (t1 - t0) * k / (samples - 1);
      push_row(t, eval_state(traj, t), E);
    }
  }
  return write_artifact(out, render(table, format));
}

// ------------------------------------------------------------------ bridge

int run_bridge(const CartesianAmplitudes& amps, ModelParams params, bool alpha_given,
               double t0, std::optional<double> t1_opt, int samples,
               const std::string& format, const std::string& out) {
  if (amps.kind == CartesianKind::Linear)
    params.alpha = linear_alpha(amps, params.lambda);
  else if (!alpha_given)
    throw std::invalid_argument("bridge: --alpha is required for trig and hyper");

  const CartesianInvariants inv = cartesian_invariants(amps, params);
  const ClosedFormTrajectory traj = bridge(amps, params);
  // Default window: one radial period when there is one, else unit span
  // scaled by nothing (the growing families leave [0, 3] well resolved).
  const double t1 = t1_opt ? *t1_opt
                           : (traj.kind == TrajectoryKind::Bounded && traj.omega > 0.0
                                  ? t0 + kPi / traj.omega
                                  : t0 + 3.0);
  const BridgeReport report = verify_bridge(amps, params, samples, t0, t1);

  const bool ok = report.max_r2_abs_err <= kBridgeErrBudget &&
                  report.max_angle_err <= kBridgeErrBudget &&
                  report.omega_gap <= kBridgeOmegaBudget;

  std::string body;
  if (format == "json") {
    body = "{\"invariants\":{\"omega_bar\":" + num(inv.omega_bar) + ",\"M\":" + num(inv.M) +
           ",\"P\":" + num(inv.P) + ",\"J\":" + num(inv.J) + ",\"E\":" + num(inv.E) +
           ",\"constraint_residual\":" + num(inv.constraint_residual) + "}";
    body += ",\"closed_form\":{\"A\":" + num(traj.A) + ",\"B\":" + num(traj.B) +
            ",\"omega\":" + num(traj.omega) + ",\"phi\":" + num(traj.phi) +
            ",\"K\":" + num(traj.K) + "}";
    body += ",\"report\":{\"t0\":" + num(t0) + ",\"t1\":" + num(t1) +
            ",\"n_samples\":" + num(report.n_samples) +
            ",\"max_r2_abs_err\":" + num(report.max_r2_abs_err) +
            ",\"max_r2_rel_err\":" + num(report.max_r2_rel_err) +
            ",\"max_angle_err\":" + num(report.max_angle_err) +
            ",\"omega_gap\":" + num(report.omega_gap) + "}";
    body += std::string(",\"pass\":") + (ok ? "true" : "false") + "}\n";
  } else {
    body = "omega_bar=" + num(inv.omega_bar) + "\nM=" + num(inv.M) + "\nP=" + num(inv.P) +
           "\nJ=" + num(inv.J) + "\nE=" + num(inv.E) +
           "\nconstraint_residual=" + num(inv.constraint_residual) + "\n";
    body += "A=" + num(traj.A) + "\nB=" + num(traj.B) + "\nomega=" + num(traj.omega) +
            "\nphi=" + num(traj.phi) + "\nK=" + num(traj.K) + "\n";
    body += "t0=" + num(t0) + "\nt1=" + num(t1) + "\nn_samples=" + num(report.n_samples) +
            "\n";
    body += "max_r2_abs_err=" + num(report.max_r2_abs_err) + "\nmax_r2_rel_err=" +
            num(report.max_r2_rel_err) + "\nmax_angle_err=" + num(report.max_angle_err) +
            "\nomega_gap=" + num(report.omega_gap) + "\n";
    body += std::string("pass=") + (ok ? "true" : "false") + "\n";
  }
  const int rc = write_artifact(out, body);
  return rc != 0 ? rc : (ok ? 0 : 2);
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const QuantumParams& qp, int count, const std::string& out) {
  const auto cap = max_principal(qp);
  // Auto count: the full ladder when it is finite, eight rungs otherwise.
  if (count == 0) count = cap ? std::max(0, *cap + 1) : 8;
  const auto levels = energy_levels(qp, count);

  std::string body = "[";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& level = levels[k];
    body += "{\"n\":" + num(level.n) + ",\"E\":" + num(level.energy) +
            ",\"degeneracy\":" + num(level.degeneracy) + ",\"states\":[";
    for (std::size_t s = 0; s < level.states.size(); ++s) {
      body += "{\"n_r\":" + num(level.states[s].n_r) + ",\"m\":" + num(level.states[s].m) + "}";
      if (s + 1 < level.states.size()) body += ',';
    }
    body += "]}";
    if (k + 1 < levels.size()) body += ',';
  }
  body += "]\n";
  return write_artifact(out, body);
}

// ------------------------------------------------------------ wavefunction

int run_wavefunction(const QuantumParams& qp, int n_r, int m, std::optional<double> t0,
                     std::optional<double> t1, int samples, const std::string& format,
                     const std::string& out) {
  const RadialEigenstate state = make_eigenstate(qp, n_r, m);
  const RadialWavefunction psi(qp, n_r, m);

  double r_hi;
  if (t1) {
    r_hi = *t1;
  } else if (qp.lambda < 0.0) {
    r_hi = (1.0 - 1e-6) / std::sqrt(-qp.lambda);
  } else {
    // Three classical turning radii of the flat level; the curved tail
    // decays slower, so pad by another factor.
    r_hi = 5.0 * std::sqrt(2.0 * (state.n + 1) / qp.beta);
  }
  const double r_lo = t0 ? *t0 : r_hi / samples;
  if (!(r_lo > 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("wavefunction: need 0 < grid start < grid end");

  Table table;
  table.schema = "curvosc wavefunction v1";
  table.columns = {"r", "R", "dR_dr", "ode_residual"};
  for (int k = 0; k < samples; ++k) {
    const double r = r_lo + (r_hi - r_lo) * k / (samples - 1);
    table.rows.push_back({r, state.norm * psi(r), state.norm * psi.derivative(r),
                          ode_residual(qp, state, r)});
  }
  return write_artifact(out, render(table, format));
}

// --------------------------------------------------------------- potential

int run_potential(const ModelParams& params, double J, std::optional<double> t0,
                  std::optional<double> t1, int samples, const std::string& format,
                  const std::string& out) {
  validate(params);
  const double r_hi = t1 ? *t1
                         : (params.lambda > 0.0 ? 3.0 / std::sqrt(params.lambda)
                                                : 0.999 / std::sqrt(-params.lambda));
  const double r_lo = t0 ? *t0 : r_hi / samples;
  if (!(r_lo > 0.0) || !(r_hi > r_lo))
    throw std::invalid_argument("potential: need 0 < grid start < grid end");
  if (!radial_domain(params).contains(r_hi))
    throw std::domain_error("potential: grid end outside the radial domain");

  Table table;
  table.schema = "curvosc potential v1";
  table.columns = {"r", "v_eff_J0", "v_eff_J"};
  for (int k = 0; k < samples; ++k) {
    const double r = r_lo + (r_hi - r_lo) * k / (samples - 1);
    table.rows.push_back({r, v_eff(params, 0.0, r), v_eff(params, J, r)});
  }
  return write_artifact(out, render(table, format));
}

// ------------------------------------------------------------------ verify

int run_verify(unsigned seed, const std::string& out) {
  const auto results = run_selftest(seed);
  std::string body;
  int failed = 0;
  for (const auto& res : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%-40s %s  %s\n", res.name.c_str(),
                  res.pass ? "PASS" : "FAIL", res.detail.c_str());
    body += line;
    failed += res.pass ? 0 : 1;
  }
  char tail[64];
  std::snprintf(tail, sizeof tail, "%zu/%zu passed\n",
                results.size() - static_cast<std::size_t>(failed), results.size());
  body += tail;
  const int rc = write_artifact(out, body);
  return rc != 0 ? rc : (failed == 0 ? 0 : 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillator on a constant-curvature surface: classification, "
               "closed-form and integrated trajectories, the cartesian bridge, "
               "and the quantum spectrum"};
  app.require_subcommand(1);

  double lambda = 0.0, alpha = 0.0, beta = 0.0, J = 0.0, E = 0.0, pot_J = 1.0;
  double t0 = 0.0, t1 = 10.0;
  std::optional<double> grid_lo, grid_hi, bridge_t1;
  int samples = 500, n_r = 0, m = 0, levels = 0;
  unsigned seed = 0;
  std::string format = "csv", out_path;
  bool integrate_flag = false;
  double A1 = 0.0, A2 = 0.0, p1 = 0.0, p2 = 0.0;
  CartesianKind kind = CartesianKind::Trig;

  const auto add_common = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--out", out_path, "output path; '-' or empty for stdout");
    if (with_format)
      cmd->add_option("--format", format, "artifact format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
  };

  CLI::App* classify = app.add_subcommand("classify", "regime and motion constants of (J, E)");
  classify->add_option("--lambda", lambda, "curvature parameter")->required();
  classify->add_option("--alpha", alpha, "oscillator strength")->required();
  classify->add_option("--J", J, "angular momentum")->capture_default_str();
  classify->add_option("--E", E, "energy")->required();
  add_common(classify);

  CLI::App* trajectory =
      app.add_subcommand("trajectory", "sample r, phi over time from the closed form");
  trajectory->add_option("--lambda", lambda, "curvature parameter")->required();
  trajectory->add_option("--alpha", alpha, "oscillator strength")->required();
  trajectory->add_option("--J", J, "angular momentum")->capture_default_str();
  trajectory->add_option("--E", E, "energy")->required();
  trajectory->add_option("--t0", t0, "start time")->capture_default_str();
  trajectory->add_option("--t1", t1, "end time")->capture_default_str();
  trajectory->add_option("--samples", samples, "sample count")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  trajectory->add_flag("--integrate", integrate_flag,
                       "integrate the equations of motion instead of sampling "
                       "the closed form (tolerance 1e-10)");
  add_common(trajectory);

  CLI::App* bridge_cmd = app.add_subcommand(
      "bridge", "map a two-coordinate amplitude set to the polar closed form and verify it");
  bridge_cmd
      ->add_option("--kind", kind, "solution family")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CartesianKind>{{"trig", CartesianKind::Trig},
                                               {"hyper", CartesianKind::Hyper},
                                               {"linear", CartesianKind::Linear}}))
      ->required();
  bridge_cmd->add_option("--A1", A1, "first amplitude")->required();
  bridge_cmd->add_option("--A2", A2, "second amplitude")->required();
  bridge_cmd->add_option("--phi1", p1, "first phase (offset for linear)")->required();
  bridge_cmd->add_option("--phi2", p2, "second phase (offset for linear)")->required();
  bridge_cmd->add_option("--lambda", lambda, "curvature parameter")->required();
  CLI::Option* alpha_opt =
      bridge_cmd->add_option("--alpha", alpha, "oscillator strength (derived for linear)");
  bridge_cmd->add_option("--t0", t0, "window start")->capture_default_str();
  bridge_cmd->add_option("--t1", bridge_t1, "window end (default: one radial period)");
  bridge_cmd->add_option("--samples", samples, "sample count")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  add_common(bridge_cmd);

  CLI::App* spectrum = app.add_subcommand("spectrum", "bound energy levels as JSON");
  spectrum->add_option("--lambda", lambda, "curvature parameter")->required();
  spectrum->add_option("--beta", beta, "potential strength")->required();
  spectrum->add_option("--samples", levels, "level count (0 = full ladder, or 8 "
                                            "when the ladder is infinite)")
      ->check(CLI::Range(0, 100000))
      ->capture_default_str();
  add_common(spectrum, /*with_format=*/false);

  CLI::App* wavefunction =
      app.add_subcommand("wavefunction", "normalized radial wavefunction table");
  wavefunction->add_option("--lambda", lambda, "curvature parameter")->required();
  wavefunction->add_option("--beta", beta, "potential strength")->required();
  wavefunction->add_option("--nr", n_r, "radial quantum number")
      ->check(CLI::Range(0, 10000))
      ->capture_default_str();
  wavefunction->add_option("--m", m, "angular quantum number")->capture_default_str();
  wavefunction->add_option("--t0", grid_lo, "radial grid start (default: one step)");
  wavefunction->add_option("--t1", grid_hi, "radial grid end (default: curvature-aware)");
  wavefunction->add_option("--samples", samples, "grid size")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  add_common(wavefunction);

  CLI::App* potential =
      app.add_subcommand("potential", "effective-potential profile, J = 0 and J columns");
  potential->add_option("--lambda", lambda, "curvature parameter")->required();
  potential->add_option("--alpha", alpha, "oscillator strength")->required();
  potential->add_option("--J", pot_J, "angular momentum of the solid column")
      ->capture_default_str();
  potential->add_option("--t0", grid_lo, "radial grid start (default: one step)");
  potential->add_option("--t1", grid_hi, "radial grid end (default: curvature-aware)");
  potential->add_option("--samples", samples, "grid size")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  add_common(potential);

  CLI::App* verify =
      app.add_subcommand("verify", "run every module's property suite; exit 2 on failure");
  verify->add_option("--seed", seed, "seed for the randomized properties")
      ->capture_default_str();
  add_common(verify, /*with_format=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*classify) return run_classify({lambda, alpha}, J, E, format, out_path);
    if (*trajectory) {
      if (!(t1 > t0)) throw std::invalid_argument("trajectory: need --t1 > --t0");
      return run_trajectory({lambda, alpha}, J, E, t0, t1, samples, integrate_flag,
                            format, out_path);
    }
    if (*bridge_cmd)
      return run_bridge({kind, A1, A2, p1, p2}, {lambda, alpha},
                        alpha_opt->count() > 0, t0, bridge_t1, samples, format, out_path);
    if (*spectrum) return run_spectrum({lambda, beta}, levels, out_path);
    if (*wavefunction)
      return run_wavefunction({lambda, beta}, n_r, m, grid_lo, grid_hi, samples, format,
                              out_path);
    if (*potential)
      return run_potential({lambda, alpha}, pot_J, grid_lo, grid_hi, samples, format,
                           out_path);
    if (*verify) return run_verify(seed, out_path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "curvosc: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "curvosc: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "curvosc: %s\n", e.what());
    return 2;
  }
  return 1;
}
