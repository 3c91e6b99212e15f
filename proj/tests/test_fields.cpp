#include "lame/fields.hpp"
#include "lame/lame_data.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <numbers>

using namespace lame;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Complex<double>;

TrigField f1() {
  return TrigField::product(1, AxisFactor::sin(4), AxisFactor::sin(2), AxisFactor::sin(2));
}

const std::array<KernelKind, 3> kCos3{KernelKind::Cos, KernelKind::Cos, KernelKind::Cos};

}  // namespace

TEST_CASE("integrate_axis closed forms") {
  SUBCASE("sin(4 pi x) cos(pi x)") {
    const C v = integrate_axis<double>(AxisFactor::sin(4), KernelKind::Cos, C(kPi, 0));
    CHECK(v.real() == Approx(8 / (15 * kPi)).epsilon(1e-14));
    CHECK(v.imag() == 0.0);
  }
  SUBCASE("constant against cos(0)") {
    CHECK(integrate_axis<double>(AxisFactor::one(), KernelKind::Cos, C(0, 0)) == C(1, 0));
  }
  SUBCASE("resonant cos(pi x) cos(pi x)") {
    const C v = integrate_axis<double>(AxisFactor::cos(1), KernelKind::Cos, C(kPi, 0));
    CHECK(v.real() == Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-16);
  }
  SUBCASE("sin(2 pi x) cosh(6 x)") {
    const C v = integrate_axis<double>(AxisFactor::sin(2), KernelKind::Cos, C(0, -6));
    const double want = 2 * kPi * (1 - std::cosh(6.0)) / (4 * kPi * kPi + 36);
    CHECK(v.real() == Approx(want).epsilon(1e-13));
    CHECK(want == Approx(-16.7085).epsilon(1e-5));
  }
}

TEST_CASE("integrate_axis against extended quadrature") {
  const std::vector<AxisFactor> factors{AxisFactor::one(),    AxisFactor::cos(1),
                                        AxisFactor::cos(3),   AxisFactor::sin(2),
                                        AxisFactor::sin(4),   AxisFactor::sin(20)};
  const std::vector<C> args{C(0, 0),       C(kPi, 0),   C(4 * kPi, 0), C(0, -6),
                            C(0, 40),      C(3.5, 2.0), C(-7, 0.25),   C(20 * kPi, 0),
                            C(1e-9, 1e-9), C(-39, 0)};
  for (const auto& f : factors) {
    for (auto k : {KernelKind::Cos, KernelKind::Sin}) {
      for (const auto& a : args) {
        const C got = integrate_axis<double>(f, k, a);
        const auto want = oracle::axis_integral(f, k, oracle::XC(a.real(), a.imag()));
        const double scale = std::max(1.0, static_cast<double>(abs(want)));
        CHECK(std::abs(got - to_double(want)) / scale < 1e-12);
      }
    }
  }
}

TEST_CASE("volume_integral") {
  SUBCASE("f1 at (pi, pi, pi)") {
    const C v = volume_integral(f1(), kCos3, {C(kPi, 0), C(kPi, 0), C(kPi, 0)});
    const double want = 8 / (15 * kPi) * std::pow(4 / (3 * kPi), 2);
    CHECK(v.real() == Approx(want).epsilon(1e-14));
    CHECK(want == Approx(0.030567).epsilon(1e-4));
  }
  SUBCASE("f1 at the origin") {
    CHECK(std::abs(volume_integral(f1(), kCos3, {C(0), C(0), C(0)})) < 1e-16);
  }
  SUBCASE("constant") {
    CHECK(volume_integral(TrigField::constant(1), kCos3, {C(0), C(0), C(0)}) == C(1, 0));
  }
  SUBCASE("time-dependent field rejected") {
    const auto u = TrigField::product(1, AxisFactor::sin(1), AxisFactor::one(), AxisFactor::one(),
                                      AxisFactor::cos(1));
    CHECK_THROWS_AS(volume_integral(u, kCos3, {C(0), C(0), C(0)}), std::invalid_argument);
  }
}

TEST_CASE("eval") {
  CHECK(f1().eval({0.125, 0.25, 0.25}).real() == Approx(1.0).epsilon(1e-15));
  CHECK(f1().eval({0.0, 0.3, 0.7}) == C(0, 0));
  const auto ex = example_exact<double>();
  const TrigField::Point x{0.31, 0.47, 0.83};
  CHECK(ex.u[0].eval(x, 30.0).real() == Approx(ex.f[0].eval(x).real()).epsilon(1e-15));
  CHECK_THROWS_AS(ex.u[0].eval(x), std::invalid_argument);
  CHECK_THROWS_AS(f1().eval(x, 1.0), std::invalid_argument);
}

TEST_CASE("norms") {
  CHECK(l2_norm(f1()) * l2_norm(f1()) == Approx(0.125).epsilon(1e-15));
  CHECK(l2_norm(TrigField{}) == 0.0);
  for (int n : {1, 2, 5, 10}) {
    const auto g0 = example_exact<double>().bundle.g[0];
    const auto gn = example_disturbed<double>(n).bundle.g[0];
    CHECK(l2_norm(gn - g0) == Approx(std::sqrt(2.0) / (4 * std::pow(n, 1.5))).epsilon(1e-14));
  }
  const auto c1 = TrigField::product(1, AxisFactor::cos(1), AxisFactor::one(), AxisFactor::one());
  CHECK(std::pow(h1_norm(c1), 2) == Approx(0.5 * (1 + kPi * kPi)).epsilon(1e-14));
  CHECK(std::pow(h2_norm(c1), 2) == Approx(0.5 * (1 + kPi * kPi + std::pow(kPi, 4))).epsilon(1e-14));
  // Non-orthogonal pair: 1 and sin(pi x) overlap by 2/pi.
  const auto s = TrigField::constant(1) +
                 TrigField::product(1, AxisFactor::sin(1), AxisFactor::one(), AxisFactor::one());
  CHECK(std::pow(l2_norm(s), 2) == Approx(1 + 0.5 + 4 / kPi).epsilon(1e-14));
}

TEST_CASE("Parseval against a midpoint grid") {
  std::vector<TrigField::Term> terms;
  terms.push_back({C(0.7), {AxisFactor::one(), AxisFactor::cos(1), AxisFactor::one()}, {}});
  terms.push_back({C(-0.4), {AxisFactor::cos(2), AxisFactor::cos(1), AxisFactor::cos(3)}, {}});
  terms.push_back({C(1.1), {AxisFactor::cos(1), AxisFactor::one(), AxisFactor::cos(1)}, {}});
  const TrigField w(terms);
  const int n = 64;
  double sum = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const double v = w.eval({(a + 0.5) / n, (b + 0.5) / n, (c + 0.5) / n}).real();
        sum += v * v;
      }
  sum /= double(n) * n * n;
  CHECK(std::pow(l2_norm(w), 2) == Approx(sum).epsilon(1e-6));
}

TEST_CASE("canonical form") {
  std::vector<TrigField::Term> terms;
  terms.push_back({C(1), {AxisFactor::cos(-2), AxisFactor::one(), AxisFactor::one()}, {}});
  terms.push_back({C(2), {AxisFactor::cos(2), AxisFactor::one(), AxisFactor::one()}, {}});
  terms.push_back({C(5), {AxisFactor::sin(0), AxisFactor::one(), AxisFactor::one()}, {}});
  terms.push_back({C(1), {AxisFactor::sin(-1), AxisFactor::one(), AxisFactor::one()}, {}});
  const TrigField w(terms);
  REQUIRE(w.terms().size() == 2);
  // Merged cos terms and the sign pulled out of sin(-pi x).
  const auto x = TrigField::Point{0.2, 0.5, 0.5};
  const double want = 3 * std::cos(2 * kPi * 0.2) - std::sin(kPi * 0.2);
  CHECK(w.eval(x).real() == Approx(want).epsilon(1e-14));

  std::vector<TrigField::Term> mixed;
  mixed.push_back({C(1), {AxisFactor::one(), AxisFactor::one(), AxisFactor::one()}, {}});
  mixed.push_back(
      {C(1), {AxisFactor::one(), AxisFactor::one(), AxisFactor::one()}, AxisFactor::cos(1)});
  CHECK_THROWS_AS(TrigField{mixed}, std::invalid_argument);
}

TEST_CASE("derivatives and slices") {
  const auto u = example_exact<double>().u[0];
  const auto d = u.derivative(0);
  const TrigField::Point x{0.1, 0.2, 0.3};
  const double want = 4 * kPi * std::cos(4 * kPi * 0.1) * std::sin(2 * kPi * 0.2) *
                      std::sin(2 * kPi * 0.3) * std::cos(kPi * 0.7);
  CHECK(d.eval(x, 0.7).real() == Approx(want).epsilon(1e-13));
  CHECK(u.time_derivative().eval(x, 0.0).real() == Approx(0.0));
  CHECK(u.at_time(30.0) == example_exact<double>().f[0]);
  // Sin factor restricted to x2 = 1 vanishes.
  CHECK(u.on_face(1, 1).empty());
}

TEST_CASE("JSON round trip") {
  const auto u = example_disturbed<double>(3).u[1] +
                 TrigField::product(C(0.1, -0.3), AxisFactor::cos(2), AxisFactor::one(),
                                    AxisFactor::sin(5), AxisFactor::sin(1));
  const auto j = to_json(u);
  const auto back = trig_field_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back == u);
  CHECK_THROWS(trig_field_from_json(nlohmann::json::parse(R"([{"coef_re": 1}])")));
}
