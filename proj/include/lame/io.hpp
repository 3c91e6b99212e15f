#pragma once

/// \file
/// CSV/JSON artifacts. Every floating-point value is written with 17
/// significant digits so that doubles round-trip exactly.

#include "lame/pipeline.hpp"

#include <filesystem>
#include <string>

namespace lame {

/// 17-significant-digit text for a double.
std::string format_real(double v);

/// m, n, p, kappa, re, im, exact_coef, abs_err (with a leading j column).
void write_coefficients_csv(const std::filesystem::path& path, const RunReport& report);
/// [{r, j, coefficients: [{m, n, p, kappa, c}]}] for each component.
void write_series_json(const std::filesystem::path& path, const RunReport& report);
/// j, x1, x2, x3, value on a resolution^3 grid over [0,1]^3.
void write_grid_csv(const std::filesystem::path& path, const RunReport& report,
                    int resolution = 33);
void write_report_json(const std::filesystem::path& path, const RunReport& report);
void write_timing_json(const std::filesystem::path& path, double wall_seconds);
/// z, n, p, j, re_h, im_h, abs_d1, abs_d2, lemma2_bound, residual.
void write_diagnostics_csv(const std::filesystem::path& path, const RunReport& report);
/// convention, z, n, p, j, residual.
void write_residuals_csv(const std::filesystem::path& path, const OracleReport& report);
/// kind, scale, n, l2_err2, h1_err2, distance_to_truncation,
/// unregularized_l2_err2, unregularized_closed_form2.
void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report);
/// field, r, l2_lhs, l2_rhs, l2_ok, h1_lhs, h1_rhs, h1_ok.
void write_lemma5_csv(const std::filesystem::path& path, const std::vector<Lemma5Row>& rows);

}  // namespace lame
