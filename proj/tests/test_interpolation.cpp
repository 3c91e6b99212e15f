#include "lame/interpolation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace lame;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Complex<double>;
using XC = Complex<Extended>;

std::vector<Extended> extended_nodes(const NodeSet& s) {
  return {s.nodes.begin(), s.nodes.end()};
}

}  // namespace

TEST_CASE("select_r") {
  CHECK(select_r(0.01) == 1);
  CHECK(select_r(0.5) == 1);
  CHECK(select_r(std::exp(-30.0)) == 1);
  CHECK(select_r(std::exp(-60.0)) == 2);
  CHECK(select_r(std::exp(-60.0) * (1 + 1e-6)) == 1);
  CHECK(select_r(std::exp(-61.0)) == 2);
  CHECK(select_r(std::exp(-120.0)) == 3);
  CHECK(select_r_from_log(60.0) == 2);
  CHECK(select_r_from_log(59.999) == 1);
  CHECK(select_r_from_log(6000.0) == 101);
  CHECK_THROWS_AS(select_r(1.0), std::invalid_argument);
  CHECK_THROWS_AS(select_r(0.0), std::invalid_argument);
  CHECK_THROWS_AS(select_r(-0.1), std::invalid_argument);
}

TEST_CASE("node sets") {
  const auto b1 = build_nodes(1);
  CHECK(b1.nodes.size() == 48);
  CHECK(b1.nodes.front() == -29);
  CHECK(b1.nodes.back() == 29);
  const auto b2 = build_nodes(2);
  CHECK(b2.nodes.size() == 96);
  CHECK(b2.nodes.back() == 58);
  for (int r : {1, 2, 3, 5}) {
    const auto s = build_nodes(r);
    CHECK(std::is_sorted(s.nodes.begin(), s.nodes.end()));
    CHECK(std::adjacent_find(s.nodes.begin(), s.nodes.end()) == s.nodes.end());
    double min_abs = 1e9;
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      CHECK(s.nodes[i] == -s.nodes[s.nodes.size() - 1 - i]);
      min_abs = std::min(min_abs, std::abs(s.nodes[i]));
    }
    CHECK(min_abs == 5 * r + 1);
  }
  CHECK_THROWS_AS(build_nodes(0), std::invalid_argument);
}

TEST_CASE("amplification estimate") {
  CHECK(amplification_log10(1) == Approx(14.71).epsilon(1e-3));
  CHECK(amplification_log10(2) == Approx(28.04).epsilon(1e-3));
  CHECK(amplification_estimate(build_nodes(1)) == amplification_log10(1));
  CHECK_THROWS_AS(amplification_log10(0), std::invalid_argument);
}

TEST_CASE("lagrange_eval basics") {
  CHECK(lagrange_eval<double>(std::vector<double>{-1, 1}, {C(-1), C(1)}, C(0)) == C(0));
  const auto b1 = build_nodes(1);
  // In double the basis sums to one only up to the Lebesgue function at z
  // (~1e6 at i pi); in extended precision the constant comes back to the
  // last bit of the double result.
  const std::vector<C> constant(48, C(2.5, -1));
  const std::vector<XC> xconstant(48, XC(2.5, -1));
  for (C z : {C(0, kPi), C(3, 0), C(-40, 2), C(6, 0)}) {
    const C v = lagrange_eval(b1, constant, z);
    // Outside the node span the Lebesgue function explodes in double.
    if (std::abs(z) < 29) CHECK(std::abs(v - C(2.5, -1)) <= 1e-9);
    const C w = to_double(lagrange_eval(b1, xconstant, XC(z.real(), z.imag())));
    CHECK(w == C(2.5, -1));
  }
  // Node coincidence returns the stored value.
  std::vector<C> vals(48);
  for (int i = 0; i < 48; ++i) vals[i] = C(i, -i);
  CHECK(lagrange_eval(b1, vals, C(7, 0)) == vals[25]);
  CHECK(lagrange_eval(b1, vals, C(7 + 1e-15, 0)) == vals[25]);
  CHECK_THROWS_AS(lagrange_eval(b1, std::vector<C>(3), C(0)), std::invalid_argument);
  CHECK_THROWS_AS(LagrangeInterpolator<double>({1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("lagrange_eval against the product formula") {
  const auto b1 = build_nodes(1);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<XC> vx(48);
  for (auto& v : vx) v = XC(u(rng), u(rng));
  for (XC z : {XC(0, oracle::xpi()), XC(2, 1), XC(0, 0), XC(15.5, 0)}) {
    const XC got = lagrange_eval(b1, vx, z);
    const XC want = oracle::lagrange(extended_nodes(b1), vx, z);
    CHECK(oracle::rel_err(got, want) < 1e-80);
  }
}

TEST_CASE("truncated exponential series at i pi (extended)") {
  const auto b1 = build_nodes(1);
  auto p = [](const XC& x) {
    XC sum(0), term(1);
    for (int d = 0; d <= 47; ++d) {
      sum += term;
      term *= x / Extended(d + 1);
    }
    return sum;
  };
  std::vector<XC> vals;
  for (double x : b1.nodes) vals.push_back(p(XC(x)));
  const XC z(0, oracle::xpi());
  CHECK(oracle::rel_err(lagrange_eval(b1, vals, z), p(z)) < 1e-10);
}

TEST_CASE("double evaluator on a well-conditioned case") {
  // Degree-3 polynomial on 8 Chebyshev-like nodes.
  std::vector<double> nodes;
  for (int i = 0; i < 8; ++i) nodes.push_back(std::cos(kPi * (i + 0.5) / 8));
  auto p = [](C x) { return 1.0 + x * (0.5 - x * (2.0 - x)); };
  std::vector<C> vals;
  for (double x : nodes) vals.push_back(p(C(x)));
  for (C z : {C(0.3, 0), C(-0.7, 0.2), C(0, 1)})
    CHECK(std::abs(lagrange_eval(nodes, vals, z) - p(z)) < 1e-13);
}

TEST_CASE("node order does not matter") {
  auto b = build_nodes(1);
  std::vector<C> vals;
  for (double x : b.nodes) vals.push_back(C(std::cos(x / 7), std::sin(x / 11)));
  const C z(0.4, 2.9);
  const C ref = lagrange_eval(b.nodes, vals, z);
  std::mt19937 rng(3);
  std::vector<std::size_t> idx(b.nodes.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> n2;
    std::vector<C> v2;
    for (auto i : idx) {
      n2.push_back(b.nodes[i]);
      v2.push_back(vals[i]);
    }
    const C got = lagrange_eval(n2, v2, z);
    CHECK(std::abs(got - ref) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(ref));
  }
}

TEST_CASE("mirror pairs cancel on the imaginary axis") {
  const auto b = build_nodes(1);
  std::vector<C> vals;
  for (double x : b.nodes) vals.push_back(C(1 / (1 + x * x / 400), 0));
  for (int m = 0; m <= 3; ++m) CHECK(lagrange_eval(b, vals, C(0, m * kPi)).imag() == 0.0);
}

TEST_CASE("interpolated coefficients") {
  const auto ex = example_exact<double>(XConvention::Traction);
  const auto nodes = build_nodes(1);
  SUBCASE("zero data") {
    const DataBundle<double> zero(ex.bundle.constants, 30.0, ex.bundle.phi, {}, {}, {});
    for (int m = 0; m <= 1; ++m) CHECK(interp_coeff(zero, 1, m, 1, 0, nodes) == C(0));
  }
  SUBCASE("exact data") {
    const double want = 128 / (135 * kPi * kPi * kPi);
    CHECK(std::abs(interp_coeff(ex.bundle, 1, 1, 1, 1, nodes).real() - want) < 1e-2);
    CHECK(std::abs(interp_coeff(ex.bundle, 1, 0, 0, 0, nodes)) < 1e-2);
  }
  SUBCASE("mirrored sampling equals full sampling") {
    const auto d = example_disturbed<double>(10, XConvention::Traction);
    SamplingStats half, full;
    for (int j = 1; j <= 3; ++j) {
      const auto a = interp_grid(d.bundle, j, nodes, Sampling::Mirrored, &half);
      const auto b = interp_grid(d.bundle, j, nodes, Sampling::Full, &full);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
    CHECK(2 * half.samples == full.samples);
    CHECK(half.zero_branch == 0);
  }
  SUBCASE("grid agrees with single coefficients") {
    const auto g = interp_grid(ex.bundle, 2, nodes);
    CHECK(g[(1 * 2 + 0) * 2 + 1] == interp_coeff(ex.bundle, 2, 1, 0, 1, nodes));
  }
  CHECK_THROWS_AS(interp_coeff(ex.bundle, 1, 2, 0, 0, nodes), std::invalid_argument);
}
