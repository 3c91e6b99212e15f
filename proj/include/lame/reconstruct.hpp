#pragma once

/// \file
/// The regularized source f_j^eps as a truncated Fourier-cosine series,
/// the truncation operator Gamma_r, and exact error norms.
///
/// A series stores c(m, n, p) and represents
///     sum_{0 <= m,n,p <= r} kappa(m,n,p) c(m,n,p) cos(m pi x1) cos(n pi x2) cos(p pi x3),
/// so c is the cosine transform F(w)(m pi, n pi, p pi) of the function it
/// approximates and ||series||^2 = sum kappa c^2.

#include "lame/fields.hpp"

#include <vector>

namespace lame {

/// (1 + [m != 0]) (1 + [n != 0]) (1 + [p != 0]).
int kappa(int m, int n, int p);

/// Flat index of (m, n, p) in a grid of side r + 1.
inline std::size_t grid_index(int r, int m, int n, int p) {
  const std::size_t s = static_cast<std::size_t>(r) + 1;
  return (static_cast<std::size_t>(m) * s + static_cast<std::size_t>(n)) * s +
         static_cast<std::size_t>(p);
}

struct CoefficientTable {
  int r = 0;
  int j = 1;
  std::vector<Complex<double>> coef;  // (r+1)^3 entries, grid_index order

  /// Throws std::invalid_argument if r < 0, j outside 1..3 or the size is wrong.
  CoefficientTable(int r, int j, std::vector<Complex<double>> coef);
  const Complex<double>& at(int m, int n, int p) const { return coef[grid_index(r, m, n, p)]; }
};

class CosineSeries {
 public:
  CosineSeries() = default;
  /// Throws std::invalid_argument if r < 0 or c has the wrong size.
  CosineSeries(int r, std::vector<double> c);
  static CosineSeries zero(int r) {
    const std::size_t s = static_cast<std::size_t>(r) + 1;
    return CosineSeries(r, std::vector<double>(s * s * s, 0.0));
  }

  int r() const { return r_; }
  const std::vector<double>& coefficients() const { return c_; }
  double at(int m, int n, int p) const { return c_[grid_index(r_, m, n, p)]; }

  double eval(double x1, double x2, double x3) const;
  double l2_norm() const;
  /// Weights each mode by 1 + pi^2 (m^2 + n^2 + p^2).
  double h1_norm() const;
  TrigField to_field() const;

 private:
  int r_ = 0;
  std::vector<double> c_;
};

/// Gamma_r(w) with exact coefficients. w must be static.
CosineSeries truncate(const TrigField& w, int r);

struct Assembled {
  CosineSeries series;
  double max_imag = 0;  // max |Im coef| over the table, a conditioning diagnostic
};

/// Real parts of the table as a series.
Assembled assemble(const CoefficientTable& table);

/// Exact ||series - exact|| in L^2 and H^1: the in-span part from the
/// coefficient differences, the out-of-span part from the fields.
double l2_error(const CosineSeries& series, const TrigField& exact);
double h1_error(const CosineSeries& series, const TrigField& exact);

struct Lemma5Result {
  int r = 0;
  double l2_lhs = 0;  // ||Gamma_r w - w||_{L^2}
  double l2_rhs = 0;  // ||w||_{H^1} / (pi sqrt r)
  double h1_lhs = 0;  // ||Gamma_r w - w||_{H^1}
  double h1_rhs = 0;  // 4 ||w||_{H^2} / r^{1/4}
  bool l2_bound_ok = false;
  bool h1_bound_ok = false;
};

/// Both truncation bounds evaluated exactly. Throws std::invalid_argument
/// if r < 1.
Lemma5Result lemma5_check(const TrigField& w, int r);

}  // namespace lame
