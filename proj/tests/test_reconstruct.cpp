#include "lame/lame_data.hpp"
#include "lame/reconstruct.hpp"

#include <doctest.h>

#include <numbers>

using namespace lame;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Complex<double>;

const double kF111 = 128 / (135 * kPi * kPi * kPi);

TrigField f1() { return example_exact<double>().f[0]; }

}  // namespace

TEST_CASE("kappa") {
  CHECK(kappa(0, 0, 0) == 1);
  CHECK(kappa(1, 0, 1) == 4);
  CHECK(kappa(2, 3, 1) == 8);
  CHECK(kappa(0, 5, 0) == 2);
}

TEST_CASE("truncate") {
  SUBCASE("f1 at r = 1") {
    const auto s = truncate(f1(), 1);
    CHECK(s.at(1, 1, 1) == Approx(kF111).epsilon(1e-14));
    CHECK(kF111 == Approx(0.030567).epsilon(1e-4));
    for (int m = 0; m <= 1; ++m)
      for (int n = 0; n <= 1; ++n)
        for (int p = 0; p <= 1; ++p)
          if (m + n + p < 3) CHECK(std::abs(s.at(m, n, p)) < 1e-16);
    const double x = 0.2, y = 0.7, z = 0.4;
    CHECK(s.eval(x, y, z) ==
          Approx(8 * kF111 * std::cos(kPi * x) * std::cos(kPi * y) * std::cos(kPi * z)));
  }
  SUBCASE("a basis function is reproduced") {
    const auto w = TrigField::product(1, AxisFactor::cos(1), AxisFactor::one(), AxisFactor::one());
    for (int r : {1, 2, 5}) {
      const auto s = truncate(w, r);
      CHECK(s.at(1, 0, 0) == Approx(0.5).epsilon(1e-15));
      CHECK(l2_error(s, w) < 1e-15);
      CHECK(s.to_field() == w);
    }
  }
  SUBCASE("truncation floor") {
    const auto s = truncate(f1(), 1);
    const double floor2 = std::pow(l2_error(s, f1()), 2);
    CHECK(floor2 == Approx(0.125 - 8 * kF111 * kF111).epsilon(1e-13));
    CHECK(floor2 == Approx(0.11753).epsilon(1e-4));
  }
  CHECK_THROWS_AS(truncate(example_exact<double>().u[0], 1), std::invalid_argument);
}

TEST_CASE("assemble") {
  const CoefficientTable zero(1, 1, std::vector<C>(8));
  const auto a = assemble(zero);
  CHECK(a.series.l2_norm() == 0.0);
  CHECK(a.max_imag == 0.0);
  std::vector<C> c(8);
  c[grid_index(1, 1, 1, 1)] = C(0.25, -1e-9);
  c[grid_index(1, 0, 0, 0)] = C(-0.5, 3e-9);
  const auto b = assemble(CoefficientTable(1, 2, c));
  CHECK(b.series.at(1, 1, 1) == 0.25);
  CHECK(b.series.at(0, 0, 0) == -0.5);
  CHECK(b.max_imag == 3e-9);
  CHECK_THROWS_AS(CoefficientTable(1, 4, c), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientTable(2, 1, c), std::invalid_argument);
}

TEST_CASE("error norms") {
  CHECK(l2_error(CosineSeries::zero(1), f1()) == Approx(std::sqrt(0.125)).epsilon(1e-15));
  CHECK(h1_error(CosineSeries::zero(1), f1()) == Approx(h1_norm(f1())).epsilon(1e-14));
  // Against a direct field computation of the difference.
  std::vector<double> c(27);
  c[grid_index(2, 1, 2, 0)] = 0.3;
  c[grid_index(2, 0, 0, 0)] = -0.1;
  c[grid_index(2, 1, 1, 1)] = 0.02;
  const CosineSeries s(2, c);
  const auto w = example_disturbed<double>(2).f[1];
  CHECK(l2_error(s, w) == Approx(l2_norm(s.to_field() - w)).epsilon(1e-13));
  CHECK(h1_error(s, w) == Approx(h1_norm(s.to_field() - w)).epsilon(1e-13));
  CHECK(s.l2_norm() == Approx(l2_norm(s.to_field())).epsilon(1e-13));
  CHECK(s.h1_norm() == Approx(h1_norm(s.to_field())).epsilon(1e-13));
}

TEST_CASE("Lemma 5 truncation bounds") {
  for (int r : {1, 2, 4, 8}) {
    const auto res = lemma5_check(f1(), r);
    CHECK(res.l2_bound_ok);
    CHECK(res.h1_bound_ok);
    CHECK(res.l2_lhs == Approx(l2_error(truncate(f1(), r), f1())).epsilon(1e-15));
  }
  const auto cos_series =
      TrigField::product(1, AxisFactor::cos(2), AxisFactor::cos(1), AxisFactor::one());
  CHECK(lemma5_check(cos_series, 2).l2_lhs < 1e-15);
  for (int n : {1, 2, 3}) {
    const auto w = TrigField::product(1, AxisFactor::sin(2 * n), AxisFactor::sin(2 * n),
                                      AxisFactor::sin(2 * n));
    for (int r = 1; r < 2 * n; ++r) {
      const auto res = lemma5_check(w, r);
      CHECK(res.l2_bound_ok);
      CHECK(res.h1_bound_ok);
      // The sine product has nonzero cosine coefficients only at odd
      // indices, so the remainder is at most the whole field.
      CHECK(res.l2_lhs <= std::sqrt(2.0) / 4 + 1e-15);
    }
  }
  CHECK_THROWS_AS(lemma5_check(f1(), 0), std::invalid_argument);
}
