// Command-line driver for the worked example: reconstruction, residual
// oracle, sweeps and truncation-bound checks.
//
// Exit codes: 0 ok, 2 config error, 3 hypothesis violation, 4 oracle failure.

#include "lame/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitOracle = 4;

struct CommonFlags {
  std::string config_path;
  std::optional<double> epsilon;
  std::optional<int> n;
  std::optional<int> r;
  std::optional<double> scale;
  std::optional<double> horizon;
  std::string precision;
  std::string x_sign;
  std::string out;
  std::string components;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--epsilon", f.epsilon, "noise level, selects r");
  cmd->add_option("--n", f.n, "disturbance index (0 = none)");
  cmd->add_option("--r", f.r, "override the regularization parameter");
  cmd->add_option("--scale", f.scale, "disturbance amplitude multiplier");
  cmd->add_option("--horizon", f.horizon, "observation time T (default 30)");
  cmd->add_option("--precision", f.precision, "double or extended")
      ->check(CLI::IsMember({"double", "extended"}));
  cmd->add_option("--x-sign", f.x_sign, "boundary stress sign convention")
      ->check(CLI::IsMember({"paper", "traction", "auto"}));
  cmd->add_option("--components", f.components, "comma-separated subset of 1,2,3");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--force", f.force, "run even if W2/W2' fails");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

lame::ExperimentConfig build_config(const CommonFlags& f) {
  lame::ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    c = lame::experiment_config_from_json(nlohmann::json::parse(in));
  }
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.n) {
    if (*f.n == 0) {
      c.disturbance_n.reset();
    } else {
      c.disturbance_n = *f.n;
    }
  }
  if (f.r) c.r_override = *f.r;
  if (f.scale) c.scale = *f.scale;
  if (f.horizon) c.horizon = *f.horizon;
  if (!f.precision.empty()) c.precision = lame::parse_precision(f.precision);
  if (!f.x_sign.empty()) c.x_sign = f.x_sign;
  if (!f.components.empty()) c.components = parse_int_list(f.components);
  if (!f.out.empty()) c.output_dir = f.out;
  if (f.force) c.force = true;
  c.validate();
  return c;
}

int cmd_run_example(const lame::ExperimentConfig& c) {
  const auto report = lame::run_example(c);
  const std::filesystem::path dir(c.output_dir);
  lame::write_coefficients_csv(dir / "coefficients.csv", report);
  lame::write_series_json(dir / "series.json", report);
  lame::write_grid_csv(dir / "grid.csv", report);
  lame::write_report_json(dir / "report.json", report);
  lame::write_diagnostics_csv(dir / "diagnostics.csv", report);
  lame::write_timing_json(dir / "timing.json", report.wall_seconds);

  std::printf("r = %d, T = %g, X convention = %s, precision = %s\n", report.r, report.horizon,
              lame::to_string(report.convention).c_str(),
              std::string(lame::to_string(c.precision)).c_str());
  if (!(report.w2_ok && report.w2prime_ok)) {
    std::printf("WARNING: hypotheses violated (W2 %s, W2' %s), run forced\n",
                report.w2_ok ? "ok" : "fails", report.w2prime_ok ? "ok" : "fails");
  }
  std::printf("amplification log10(48 r e^{30 r}) = %.3f\n", report.amplification_log10);
  std::printf("Lemma 1 max residual = %.3e, Lemma 2 bound ok at %zu/%zu samples\n",
              report.lemma1_max_residual, report.lemma2.ok, report.lemma2.checked);
  for (const auto& comp : report.components) {
    std::printf("f_%d: ||err||^2_L2 = %.6f  ||err||^2_H1 = %.6f  floor^2 = %.6f  "
                "unregularized^2 = %.6f  max|Im| = %.2e\n",
                comp.j, comp.l2_error * comp.l2_error, comp.h1_error * comp.h1_error,
                comp.truncation_floor_l2 * comp.truncation_floor_l2,
                comp.unregularized_l2 * comp.unregularized_l2, comp.max_imag);
  }
  std::printf("wall time %.3f s; outputs in %s\n", report.wall_seconds, dir.string().c_str());
  return kExitOk;
}

int cmd_oracle(const lame::ExperimentConfig& c, const std::string& instance) {
  const auto kind = lame::parse_oracle_instance(instance);
  lame::OracleGrid grid;
  grid.components = c.components;
  const int n = c.disturbance_n.value_or(2);
  const auto report = lame::run_oracle(kind, n, c.precision, grid);
  lame::write_residuals_csv(std::filesystem::path(c.output_dir) / "residuals.csv", report);
  std::printf("instance %s: max residual paper = %.3e, traction = %.3e (threshold %.0e)\n",
              instance.c_str(), report.max_paper, report.max_traction, report.threshold);
  if (report.passing.empty()) {
    std::printf("no convention closes the identity\n");
    return kExitOracle;
  }
  for (auto conv : report.passing) std::printf("passes: %s\n", lame::to_string(conv).c_str());
  return kExitOk;
}

int cmd_sweep(const lame::ExperimentConfig& c, const std::string& scales, const std::string& ns) {
  const auto report = lame::run_sweep(c, parse_real_list(scales), parse_int_list(ns));
  lame::write_sweep_csv(std::filesystem::path(c.output_dir) / "sweep.csv", report);
  std::printf("%-6s %-6s %-4s %-14s %-14s %-14s %-14s\n", "kind", "scale", "n", "l2_err2",
              "dist_trunc", "unreg_err2", "closed_form2");
  for (const auto& r : report.rows) {
    std::printf("%-6s %-6g %-4d %-14.8g %-14.8g %-14.8g %-14.8g\n", r.kind.c_str(), r.scale, r.n,
                r.l2_err2, r.distance_to_truncation, r.unregularized_l2_err2,
                r.unregularized_closed_form2);
  }
  std::printf("noise response monotone in scale: %s\n", report.monotone ? "yes" : "no");
  return kExitOk;
}

int cmd_lemma5(const lame::ExperimentConfig& c, const std::string& rs) {
  const auto rows = lame::run_lemma5_suite(parse_int_list(rs));
  lame::write_lemma5_csv(std::filesystem::path(c.output_dir) / "lemma5.csv", rows);
  bool all = true;
  for (const auto& row : rows) {
    const auto& v = row.result;
    std::printf("%-16s r=%-3d L2 %.4e <= %.4e %s   H1 %.4e <= %.4e %s\n", row.name.c_str(), v.r,
                v.l2_lhs, v.l2_rhs, v.l2_bound_ok ? "ok" : "FAIL", v.h1_lhs, v.h1_rhs,
                v.h1_bound_ok ? "ok" : "FAIL");
    all = all && v.l2_bound_ok && v.h1_bound_ok;
  }
  return all ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized recovery of the Lame source term from boundary data"};
  app.require_subcommand(1);

  CommonFlags run_flags, oracle_flags, sweep_flags, lemma5_flags;
  auto* run = app.add_subcommand("run-example", "reconstruct f^eps for the worked example");
  add_common(run, run_flags);

  auto* oracle = app.add_subcommand("oracle", "Lemma 1 residuals under both X conventions");
  add_common(oracle, oracle_flags);
  std::string instance = "exact";
  oracle->add_option("--instance", instance, "exact, disturbed or zero")
      ->check(CLI::IsMember({"exact", "disturbed", "zero"}));

  auto* sweep = app.add_subcommand("sweep", "error versus disturbance scale and index");
  add_common(sweep, sweep_flags);
  std::string scales = "0,0.25,0.5,1";
  std::string ns = "1,5,10";
  sweep->add_option("--scales", scales, "comma-separated disturbance scales");
  sweep->add_option("--ns", ns, "comma-separated disturbance indices");

  auto* lemma5 = app.add_subcommand("lemma5-check", "truncation bounds on the example sources");
  add_common(lemma5, lemma5_flags);
  std::string rs = "1,2,4,8,16";
  lemma5->add_option("--rs", rs, "comma-separated r values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run_example(build_config(run_flags));
    if (*oracle) {
      CommonFlags f = oracle_flags;
      if (f.components.empty()) f.components = "1,2,3";
      return cmd_oracle(build_config(f), instance);
    }
    if (*sweep) return cmd_sweep(build_config(sweep_flags), scales, ns);
    if (*lemma5) return cmd_lemma5(build_config(lemma5_flags), rs);
  } catch (const lame::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const lame::OracleFailure& e) {
    std::cerr << "oracle failure: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
