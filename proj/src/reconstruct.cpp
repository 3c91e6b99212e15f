#include "lame/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lame {

int kappa(int m, int n, int p) {
  return (m != 0 ? 2 : 1) * (n != 0 ? 2 : 1) * (p != 0 ? 2 : 1);
}

CoefficientTable::CoefficientTable(int r_, int j_, std::vector<Complex<double>> c)
    : r(r_), j(j_), coef(std::move(c)) {
  if (r < 0) throw std::invalid_argument("coefficient table: r must be >= 0");
  if (j < 1 || j > 3) throw std::invalid_argument("coefficient table: j must be in 1..3");
  const std::size_t s = static_cast<std::size_t>(r) + 1;
  if (coef.size() != s * s * s) throw std::invalid_argument("coefficient table: wrong size");
}

CosineSeries::CosineSeries(int r, std::vector<double> c) : r_(r), c_(std::move(c)) {
  if (r_ < 0) throw std::invalid_argument("cosine series: r must be >= 0");
  const std::size_t s = static_cast<std::size_t>(r_) + 1;
  if (c_.size() != s * s * s) throw std::invalid_argument("cosine series: wrong size");
}

namespace {

constexpr double kPi = std::numbers::pi;

double mode_h1_weight(int m, int n, int p) {
  return 1 + kPi * kPi * double(m * m + n * n + p * p);
}

template <class F>
void for_each_mode(int r, F&& f) {
  for (int m = 0; m <= r; ++m)
    for (int n = 0; n <= r; ++n)
      for (int p = 0; p <= r; ++p) f(m, n, p);
}

// Exact value of cos(k pi x) via the integer-phase factor evaluation.
double cos_mode(int k, double x) { return AxisFactor::cos(k).value(x); }

}  // namespace

double CosineSeries::eval(double x1, double x2, double x3) const {
  CompensatedSum<double> s;
  for_each_mode(r_, [&](int m, int n, int p) {
    const double c = at(m, n, p);
    if (c == 0) return;
    s.add(kappa(m, n, p) * c * cos_mode(m, x1) * cos_mode(n, x2) * cos_mode(p, x3));
  });
  return s.value();
}

double CosineSeries::l2_norm() const {
  CompensatedSum<double> s;
  for_each_mode(r_, [&](int m, int n, int p) {
    const double c = at(m, n, p);
    s.add(kappa(m, n, p) * c * c);
  });
  return std::sqrt(s.value());
}

double CosineSeries::h1_norm() const {
  CompensatedSum<double> s;
  for_each_mode(r_, [&](int m, int n, int p) {
    const double c = at(m, n, p);
    s.add(kappa(m, n, p) * mode_h1_weight(m, n, p) * c * c);
  });
  return std::sqrt(s.value());
}

TrigField CosineSeries::to_field() const {
  std::vector<TrigField::Term> terms;
  for_each_mode(r_, [&](int m, int n, int p) {
    const double c = at(m, n, p);
    if (c == 0) return;
    terms.push_back({Complex<double>(kappa(m, n, p) * c, 0),
                     {AxisFactor::cos(m), AxisFactor::cos(n), AxisFactor::cos(p)},
                     std::nullopt});
  });
  return TrigField(std::move(terms));
}

CosineSeries truncate(const TrigField& w, int r) {
  if (r < 0) throw std::invalid_argument("truncate: r must be >= 0");
  if (w.time_dependent()) throw std::invalid_argument("truncate: field must be static");
  auto out = CosineSeries::zero(r);
  std::vector<double> c(out.coefficients());
  // Integer wavenumbers throughout, so the exact inner products apply and
  // orthogonal modes come out as exact zeros.
  for_each_mode(r, [&](int m, int n, int p) {
    const auto basis =
        TrigField::product(1, AxisFactor::cos(m), AxisFactor::cos(n), AxisFactor::cos(p));
    c[grid_index(r, m, n, p)] = inner_product(w, basis).real();
  });
  return CosineSeries(r, std::move(c));
}

Assembled assemble(const CoefficientTable& table) {
  Assembled out;
  std::vector<double> c(table.coef.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = table.coef[i].real();
    out.max_imag = std::max(out.max_imag, std::abs(table.coef[i].imag()));
  }
  out.series = CosineSeries(table.r, std::move(c));
  return out;
}

namespace {

// Squared in-span difference sum kappa weight (c - F(w))^2 and the
// out-of-span remainder w - Gamma_r w. Cosine modes have vanishing normal
// derivative, so the remainder is orthogonal to the span in H^1 as well.
struct ErrorSplit {
  double in_span_l2 = 0;
  double in_span_h1 = 0;
  TrigField remainder;
};

ErrorSplit split_error(const CosineSeries& series, const TrigField& exact) {
  const CosineSeries proj = truncate(exact, series.r());
  CompensatedSum<double> l2;
  CompensatedSum<double> h1;
  for_each_mode(series.r(), [&](int m, int n, int p) {
    const double d = series.at(m, n, p) - proj.at(m, n, p);
    const double k = kappa(m, n, p) * d * d;
    l2.add(k);
    h1.add(k * mode_h1_weight(m, n, p));
  });
  return {l2.value(), h1.value(), exact - proj.to_field()};
}

}  // namespace

double l2_error(const CosineSeries& series, const TrigField& exact) {
  const auto s = split_error(series, exact);
  const double rem = lame::l2_norm(s.remainder);
  return std::sqrt(s.in_span_l2 + rem * rem);
}

double h1_error(const CosineSeries& series, const TrigField& exact) {
  const auto s = split_error(series, exact);
  const double rem = lame::h1_norm(s.remainder);
  return std::sqrt(s.in_span_h1 + rem * rem);
}

Lemma5Result lemma5_check(const TrigField& w, int r) {
  if (r < 1) throw std::invalid_argument("lemma5_check: r must be >= 1");
  Lemma5Result out;
  out.r = r;
  const TrigField rem = w - truncate(w, r).to_field();
  out.l2_lhs = lame::l2_norm(rem);
  out.h1_lhs = lame::h1_norm(rem);
  out.l2_rhs = lame::h1_norm(w) / (kPi * std::sqrt(double(r)));
  out.h1_rhs = 4 * lame::h2_norm(w) / std::pow(double(r), 0.25);
  out.l2_bound_ok = out.l2_lhs <= out.l2_rhs;
  out.h1_bound_ok = out.h1_lhs <= out.h1_rhs;
  return out;
}

}  // namespace lame
