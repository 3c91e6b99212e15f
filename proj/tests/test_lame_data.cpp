#include "lame/lame_data.hpp"
#include "lame/spectral_kernel.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <numbers>
#include <random>

using namespace lame;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
using C = Complex<double>;

double max_residual(const ExampleInstance<double>& ex, std::mt19937& rng) {
  std::uniform_real_distribution<double> X(0, 1), Tt(0, 30);
  const auto res = lame_residual(ex.bundle.constants, ex.u, ex.bundle.phi.field(), ex.f);
  double worst = 0;
  for (int s = 0; s < 100; ++s) {
    const TrigField::Point x{X(rng), X(rng), X(rng)};
    const double t = Tt(rng);
    for (const auto& r : res) worst = std::max(worst, std::abs(r.eval(x, t)));
  }
  return worst;
}

// Compares two face fields by evaluation at a few in-face points.
double face_diff(const TrigField& a, const TrigField& b) {
  double worst = 0;
  for (double s : {0.13, 0.41, 0.77})
    for (double t : {0.2, 1.3, 17.9}) {
      const TrigField::Point x{s, 0.5 * s + 0.1, 0.9 - s};
      worst = std::max(worst, std::abs(a.eval(x, t) - b.eval(x, t)));
    }
  return worst;
}

}  // namespace

TEST_CASE("Lame constants") {
  CHECK_NOTHROW(LameConstants(-1, 1));
  CHECK_THROWS_AS(LameConstants(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(LameConstants(-2.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(LameConstants(-2, 1), std::invalid_argument);
}

TEST_CASE("observation time conditions") {
  const LameConstants c(-1, 1);
  CHECK(validate_w2prime(c, 30));
  CHECK_FALSE(validate_w2prime(c, 26));
  CHECK(validate_w2(c, 2.1));
  CHECK_FALSE(validate_w2prime(c, 2.1));
  CHECK_FALSE(validate_w2(c, 1.9));
}

TEST_CASE("traction from displacement") {
  const LameConstants c(-1, 1);
  const auto ex = example_exact<double>();
  SUBCASE("zero displacement") {
    const auto x = traction_from_displacement(c, FieldVector<double>{});
    for (const auto& face : x.faces())
      for (const auto& comp : face) CHECK(comp.empty());
  }
  SUBCASE("face x2 = 0, component 1") {
    const auto x = traction_from_displacement(c, ex.u, Face{1, 0});
    const auto want = TrigField::product(-2 * kPi, AxisFactor::sin(4), AxisFactor::one(),
                                         AxisFactor::sin(2), AxisFactor::cos(1));
    CHECK(face_diff(x[0], want) < 1e-12);
  }
  SUBCASE("face x1 = 0, component 1") {
    const auto x = traction_from_displacement(c, ex.u, Face{0, 0});
    const auto want = TrigField::product(-4 * kPi, AxisFactor::one(), AxisFactor::sin(2),
                                         AxisFactor::sin(2), AxisFactor::cos(1));
    CHECK(face_diff(x[0], want) < 1e-12);
  }
  SUBCASE("linearity") {
    const auto v = example_disturbed<double>(3).u;
    FieldVector<double> sum;
    for (int i = 0; i < 3; ++i) sum[i] = ex.u[i].scaled(2.0) + v[i].scaled(-0.5);
    const auto lhs = traction_from_displacement(c, sum);
    const auto rhs = traction_from_displacement(c, ex.u).scaled(2.0) +
                     traction_from_displacement(c, v).scaled(-0.5);
    for (int f = 0; f < kFaceCount; ++f)
      for (int i = 0; i < 3; ++i) CHECK(face_diff(lhs.faces()[f][i], rhs.faces()[f][i]) < 1e-12);
  }
}

TEST_CASE("sign conventions of the example boundary stress") {
  const LameConstants c(-1, 1);
  const auto paper = example_exact<double>(XConvention::Paper);
  const auto traction = example_exact<double>(XConvention::Traction);
  const auto computed = traction_from_displacement(c, paper.u);
  for (int f = 0; f < kFaceCount; ++f) {
    for (int i = 0; i < 3; ++i) {
      const auto& p = paper.bundle.traction.faces()[f][i];
      const auto& t = traction.bundle.traction.faces()[f][i];
      CHECK(face_diff(t, computed.faces()[f][i]) < 1e-12);
      CHECK(face_diff(p, -computed.faces()[f][i]) < 1e-12);
    }
  }
}

TEST_CASE("exact example") {
  const auto ex = example_exact<double>();
  CHECK(ex.f[0] == TrigField::product(1, AxisFactor::sin(4), AxisFactor::sin(2), AxisFactor::sin(2)));
  CHECK(ex.bundle.constants.mu() == 1.0);
  CHECK(ex.bundle.constants.lambda() == -1.0);
  CHECK(ex.bundle.horizon == 30.0);
  CHECK(ex.bundle.phi(0.0) == Approx(23 * kPi * kPi));
  std::mt19937 rng(7);
  CHECK(max_residual(ex, rng) < 1e-10);
  const TrigField::Point x{0.3, 0.6, 0.9};
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(ex.u[j].eval(x, 0.0) - ex.bundle.g[j].eval(x)) < 1e-15);
    CHECK(std::abs(ex.u[j].time_derivative().eval(x, 0.0)) < 1e-15);
    CHECK(ex.bundle.h[j].empty());
  }
}

TEST_CASE("disturbed example") {
  const auto ex0 = example_exact<double>();
  for (int n : {1, 2, 5, 10}) {
    const auto ex = example_disturbed<double>(n);
    std::mt19937 rng(n);
    CHECK(max_residual(ex, rng) < 1e-10);
    for (int j = 0; j < 3; ++j) {
      CHECK(l2_norm(ex.bundle.g[j] - ex0.bundle.g[j]) ==
            Approx(std::sqrt(2.0) / (4 * std::pow(n, 1.5))).epsilon(1e-13));
      CHECK(l2_norm(ex.f[j] - ex0.f[j]) == Approx(disturbed_source_error(n)).epsilon(1e-13));
    }
  }
  CHECK(std::pow(disturbed_source_error(10), 2) == Approx(0.3398).epsilon(1e-3));
  CHECK_THROWS_AS(example_disturbed<double>(0), std::invalid_argument);
  // The disturbed displacement also generates the Traction-convention data.
  const auto ex = example_disturbed<double>(4, XConvention::Traction);
  const auto computed = traction_from_displacement(ex.bundle.constants, ex.u);
  for (int f = 0; f < kFaceCount; ++f)
    for (int i = 0; i < 3; ++i)
      CHECK(face_diff(ex.bundle.traction.faces()[f][i], computed.faces()[f][i]) < 1e-11);
}

TEST_CASE("W1 witness") {
  const auto& w = example_exact<double>().bundle.phi.witness();
  CHECK(w.sign == 1);
  CHECK(w.lambda_end == Approx(1.0 / 3).epsilon(1e-3));
  CHECK(w.bound == Approx(23 * kPi * kPi * std::cos(kPi / 3)).epsilon(1e-12));

  const auto phi0 = TrigField::product(0.0, AxisFactor::one(), AxisFactor::one(),
                                       AxisFactor::one(), AxisFactor::cos(1));
  CHECK_THROWS_AS(SourceTimeProfile<double>(phi0, 30.0), std::invalid_argument);
  const auto phi = example_exact<double>().bundle.phi.field();
  CHECK_NOTHROW(SourceTimeProfile<double>(phi, 30.0, W1Witness{0.25, 100.0, 1}));
  CHECK_THROWS_AS(SourceTimeProfile<double>(phi, 30.0, W1Witness{0.75, 100.0, 1}),
                  std::invalid_argument);
}

TEST_CASE("Lemma 2 diagnostic") {
  const auto ex = example_exact<double>();
  const auto r = lemma2_diagnostic(ex.bundle, Frequency<double>::canonical(30, 1, 1));
  CHECK(r.ok);
  const auto s = lemma2_diagnostic(ex.bundle, Frequency<double>::canonical(6, 0, 0));
  CHECK(s.bound == Approx(0.25 * 6 * ex.bundle.phi.witness().bound).epsilon(1e-14));
  CHECK_THROWS_AS(lemma2_diagnostic(ex.bundle, Frequency<double>::canonical(0, 0, 0)),
                  InadmissibleFrequency);
}

TEST_CASE("config JSON") {
  const auto c = experiment_config_from_json(nlohmann::json::parse(
      R"({"epsilon": 0.05, "n": 0, "r_override": 2, "components": [1, 3], "output_dir": "o"})"));
  CHECK(c.epsilon == 0.05);
  CHECK_FALSE(c.disturbance_n.has_value());
  CHECK(c.r_override == 2);
  CHECK(c.components == std::vector<int>{1, 3});
  const auto back = experiment_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({"epsilon": 1.5})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({"components": [4]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json::parse(R"({"r_override": 0})")),
                  std::invalid_argument);
}

TEST_CASE("data bundle JSON round trip") {
  const auto ex = example_disturbed<double>(2, XConvention::Traction);
  const auto j = to_json(ex.bundle);
  const auto back = data_bundle_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.horizon == ex.bundle.horizon);
  CHECK(back.phi.field() == ex.bundle.phi.field());
  for (int i = 0; i < 3; ++i) CHECK(back.g[i] == ex.bundle.g[i]);
  for (int f = 0; f < kFaceCount; ++f)
    for (int i = 0; i < 3; ++i) CHECK(back.traction.faces()[f][i] == ex.bundle.traction.faces()[f][i]);
  const auto alpha = Frequency<double>::canonical(8, 1, 0);
  CHECK(h_functional(back, alpha, 1) == h_functional(ex.bundle, alpha, 1));
}
