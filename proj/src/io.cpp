#include "lame/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lame {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_coefficients_csv(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << "j,m,n,p,kappa,re,im,exact_coef,abs_err\n";
  for (const auto& c : report.components) {
    const int r = c.table.r;
    for (int m = 0; m <= r; ++m)
      for (int n = 0; n <= r; ++n)
        for (int p = 0; p <= r; ++p) {
          const auto v = c.table.at(m, n, p);
          const double exact = c.exact_truncation.at(m, n, p);
          out << c.j << ',' << m << ',' << n << ',' << p << ',' << kappa(m, n, p) << ','
              << format_real(v.real()) << ',' << format_real(v.imag()) << ','
              << format_real(exact) << ',' << format_real(std::abs(v.real() - exact)) << '\n';
        }
  }
}

void write_series_json(const std::filesystem::path& path, const RunReport& report) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto& c : report.components) {
    nlohmann::json coefs = nlohmann::json::array();
    const int r = c.series.r();
    for (int m = 0; m <= r; ++m)
      for (int n = 0; n <= r; ++n)
        for (int p = 0; p <= r; ++p)
          coefs.push_back(
              {{"m", m}, {"n", n}, {"p", p}, {"kappa", kappa(m, n, p)}, {"c", c.series.at(m, n, p)}});
    all.push_back({{"r", r}, {"j", c.j}, {"coefficients", coefs}});
  }
  auto out = open_out(path);
  out << all.dump(2) << '\n';
}

void write_grid_csv(const std::filesystem::path& path, const RunReport& report, int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  auto out = open_out(path);
  out << "j,x1,x2,x3,value\n";
  const double h = 1.0 / (resolution - 1);
  for (const auto& c : report.components) {
    for (int a = 0; a < resolution; ++a)
      for (int b = 0; b < resolution; ++b)
        for (int d = 0; d < resolution; ++d) {
          const double x1 = a * h, x2 = b * h, x3 = d * h;
          out << c.j << ',' << format_real(x1) << ',' << format_real(x2) << ','
              << format_real(x3) << ',' << format_real(c.series.eval(x1, x2, x3)) << '\n';
        }
  }
}

void write_report_json(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << to_json(report).dump(2) << '\n';
}

void write_timing_json(const std::filesystem::path& path, double wall_seconds) {
  auto out = open_out(path);
  out << nlohmann::json{{"wall_seconds", wall_seconds}}.dump(2) << '\n';
}

void write_diagnostics_csv(const std::filesystem::path& path, const RunReport& report) {
  auto out = open_out(path);
  out << "z,n,p,j,re_h,im_h,abs_d1,abs_d2,lemma2_bound,residual\n";
  for (const auto& d : report.diagnostics) {
    out << format_real(d.z) << ',' << d.n << ',' << d.p << ',' << d.j << ','
        << format_real(d.h.real()) << ',' << format_real(d.h.imag()) << ','
        << format_real(d.abs_d1) << ',' << format_real(d.abs_d2) << ','
        << format_real(d.lemma2_bound) << ',' << format_real(d.residual) << '\n';
  }
}

void write_residuals_csv(const std::filesystem::path& path, const OracleReport& report) {
  auto out = open_out(path);
  out << "convention,z,n,p,j,residual\n";
  for (const auto& r : report.records) {
    out << to_string(r.convention) << ',' << format_real(r.z) << ',' << r.n << ',' << r.p << ','
        << r.j << ',' << format_real(r.residual) << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report) {
  auto out = open_out(path);
  out << "kind,scale,n,l2_err2,h1_err2,distance_to_truncation,unregularized_l2_err2,"
         "unregularized_closed_form2\n";
  for (const auto& r : report.rows) {
    out << r.kind << ',' << format_real(r.scale) << ',' << r.n << ',' << format_real(r.l2_err2)
        << ',' << format_real(r.h1_err2) << ',' << format_real(r.distance_to_truncation) << ','
        << format_real(r.unregularized_l2_err2) << ','
        << format_real(r.unregularized_closed_form2) << '\n';
  }
}

void write_lemma5_csv(const std::filesystem::path& path, const std::vector<Lemma5Row>& rows) {
  auto out = open_out(path);
  out << "field,r,l2_lhs,l2_rhs,l2_ok,h1_lhs,h1_rhs,h1_ok\n";
  for (const auto& row : rows) {
    const auto& v = row.result;
    out << row.name << ',' << v.r << ',' << format_real(v.l2_lhs) << ',' << format_real(v.l2_rhs)
        << ',' << flag(v.l2_bound_ok) << ',' << format_real(v.h1_lhs) << ','
        << format_real(v.h1_rhs) << ',' << flag(v.h1_bound_ok) << '\n';
  }
}

}  // namespace lame
