#pragma once

/// \file
/// End-to-end runs on the worked example: reconstruction, the Lemma 1
/// residual oracle over both boundary-stress sign conventions, sweeps over
/// the disturbance, and the truncation-bound suite.

#include "lame/interpolation.hpp"
#include "lame/reconstruct.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace lame {

/// A hypothesis on (phi, T) fails and the run was not forced.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No sign convention closes the Lemma 1 identity.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oracle ---------------------------------------------------------------------

enum class OracleInstance { Exact, Disturbed, Zero };

OracleInstance parse_oracle_instance(const std::string& s);
std::string to_string(OracleInstance k);

struct OracleGrid {
  int z_min = 6;
  int z_max = 12;
  int np_max = 2;
  std::vector<int> components{1, 2, 3};
};

struct ResidualRecord {
  XConvention convention;
  double z = 0;
  int n = 0;
  int p = 0;
  int j = 0;
  double residual = 0;
};

struct OracleReport {
  OracleInstance instance = OracleInstance::Exact;
  int disturbance_n = 0;
  double threshold = 1e-6;
  std::vector<ResidualRecord> records;
  double max_paper = 0;
  double max_traction = 0;
  std::vector<XConvention> passing;
  double wall_seconds = 0;

  double max_for(XConvention c) const {
    return c == XConvention::Paper ? max_paper : max_traction;
  }
};

/// Lemma 1 residuals over the admissible part of the grid, for both
/// conventions. disturbance_n is used by OracleInstance::Disturbed.
OracleReport run_oracle(OracleInstance instance, int disturbance_n = 2,
                        Precision precision = Precision::Double, const OracleGrid& grid = {});

/// "paper" or "traction" as given; "auto" runs the exact-instance oracle
/// and returns the single passing convention. Throws OracleFailure if none
/// or both pass.
XConvention resolve_convention(const std::string& x_sign);

// Reconstruction ---------------------------------------------------------------

struct SampleDiagnostic {
  double z = 0;
  int n = 0;
  int p = 0;
  int j = 0;
  Complex<double> h;
  double abs_d1 = 0;
  double abs_d2 = 0;
  double lemma2_bound = 0;
  bool lemma2_ok = false;
  double residual = 0;  // Lemma 1 residual for the run's own instance
};

struct ComponentResult {
  int j = 1;
  CoefficientTable table{0, 1, {Complex<double>{}}};
  CosineSeries series;
  CosineSeries exact_truncation;  // Gamma_r f_j^0
  double max_imag = 0;
  double l2_error = 0;            // ||f_j^eps - f_j^0||
  double h1_error = 0;
  double truncation_floor_l2 = 0; // ||Gamma_r f_j^0 - f_j^0||
  double truncation_floor_h1 = 0;
  double distance_to_truncation = 0;  // ||f_j^eps - Gamma_r f_j^0||_{L^2}
  double unregularized_l2 = 0;    // ||f_j^n - f_j^0||
  SamplingStats stats;
};

struct Lemma2Summary {
  std::size_t checked = 0;
  std::size_t ok = 0;
  double min_ratio = 0;  // min over samples of min(|D1|, |D2|) / bound
};

struct RunReport {
  ExperimentConfig config;
  int r = 1;
  double horizon = 30;
  XConvention convention = XConvention::Traction;
  bool w2_ok = true;
  bool w2prime_ok = true;
  double amplification_log10 = 0;
  double lemma1_max_residual = 0;
  Lemma2Summary lemma2;
  std::vector<ComponentResult> components;
  std::vector<SampleDiagnostic> diagnostics;
  double max_imag = 0;
  double wall_seconds = 0;

  const ComponentResult& component(int j) const;
};

/// Builds the example (disturbed when config.disturbance_n is set), picks r
/// (config.r_override or select_r), interpolates the coefficient grid for
/// each requested component and measures the errors against f^0. Throws
/// HypothesisViolation if W2 or W2' fails and config.force is false.
RunReport run_example(const ExperimentConfig& config);

/// Deterministic summary (no timing).
nlohmann::json to_json(const RunReport& report);

// Sweeps -----------------------------------------------------------------------

struct SweepRow {
  std::string kind;  // "scale" or "n"
  double scale = 1;
  int n = 0;
  double l2_err2 = 0;
  double h1_err2 = 0;
  double distance_to_truncation = 0;
  double unregularized_l2_err2 = 0;
  double unregularized_closed_form2 = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// distance_to_truncation is nondecreasing along the scale rows.
  bool monotone = true;
};

/// Scale rows use config.disturbance_n (10 if unset); n rows use scale 1.
/// Only the first configured component is reconstructed.
SweepReport run_sweep(const ExperimentConfig& config, const std::vector<double>& scales,
                      const std::vector<int>& ns);

// Truncation bounds --------------------------------------------------------------

struct Lemma5Row {
  std::string name;
  Lemma5Result result;
};

/// f_1^0, f_2^0, f_3^0 and the n = 2 source perturbation, at each r.
std::vector<Lemma5Row> run_lemma5_suite(const std::vector<int>& rs = {1, 2, 4, 8, 16});

}  // namespace lame
