#pragma once

/// \file
/// Problem data for the inverse source problem
///
///     u_tt - mu Lap u - (lambda + mu) grad div u = phi(t) f(x)   in (0,1)^3
///     u(., 0) = g,  u_t(., 0) = h,  u = 0 on the boundary,
///     (stress tensor) . n = X on the boundary,
///
/// together with the hypothesis checks on (phi, T) and generators for the
/// worked example with mu = 1, lambda = -1, T = 30.

#include "lame/fields.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lame {

class LameConstants {
 public:
  /// Throws std::invalid_argument unless mu > 0 and lambda + 2 mu > 0.
  LameConstants(double lambda, double mu);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

  /// sqrt(lambda + 2 mu) and sqrt(mu) in the requested precision.
  template <class T>
  T pressure_speed() const {
    using std::sqrt;
    return sqrt(T(lambda_) + T(2) * T(mu_));
  }
  template <class T>
  T shear_speed() const {
    using std::sqrt;
    return sqrt(T(mu_));
  }

 private:
  double lambda_;
  double mu_;
};

/// Observation time long enough for uniqueness.
bool validate_w2(const LameConstants& c, double horizon);
/// Observation time long enough for the regularization estimates.
bool validate_w2prime(const LameConstants& c, double horizon);

/// phi keeps one sign and |phi| >= bound on (0, lambda_end).
struct W1Witness {
  double lambda_end = 0;
  double bound = 0;
  int sign = 1;
};

template <class T>
class SourceTimeProfile {
 public:
  /// Finds a witness: the largest prefix of (0, horizon) on which phi keeps
  /// the sign of phi(0) and |phi| >= |phi(0)|/2, located on a dyadic grid
  /// and refined by bisection. Throws std::invalid_argument if phi is not a
  /// time-only field or phi(0) = 0.
  SourceTimeProfile(BasicTrigField<T> phi, double horizon);
  /// Uses the given witness after checking it on 2^14 samples.
  SourceTimeProfile(BasicTrigField<T> phi, double horizon, W1Witness witness);

  const BasicTrigField<T>& field() const { return phi_; }
  const W1Witness& witness() const { return witness_; }
  double operator()(double t) const;

 private:
  BasicTrigField<T> phi_;
  W1Witness witness_;
};

struct Face {
  int axis = 0;  // 0, 1, 2
  int side = 0;  // 0 for x_axis = 0, 1 for x_axis = 1

  int normal_sign() const { return side == 0 ? -1 : 1; }
  int index() const { return 2 * axis + side; }
  static Face from_index(int i) { return {i / 2, i % 2}; }
};

inline constexpr int kFaceCount = 6;

/// Boundary stress history. Each face stores (X1, X2, X3) as fields in the
/// two in-face coordinates and time; the normal-axis factor is One.
template <class T>
class BoundaryTraction {
 public:
  BoundaryTraction() = default;
  /// Throws std::invalid_argument if a component is static or varies along
  /// the face normal.
  explicit BoundaryTraction(std::array<FieldVector<T>, kFaceCount> faces);

  const FieldVector<T>& on(const Face& f) const { return faces_[f.index()]; }
  const std::array<FieldVector<T>, kFaceCount>& faces() const { return faces_; }

  BoundaryTraction operator+(const BoundaryTraction& o) const;
  BoundaryTraction scaled(const Complex<T>& s) const;

  template <class U>
  BoundaryTraction<U> cast() const {
    std::array<FieldVector<U>, kFaceCount> out;
    for (int f = 0; f < kFaceCount; ++f)
      for (int i = 0; i < 3; ++i) out[f][i] = faces_[f][i].template cast<U>();
    return BoundaryTraction<U>(std::move(out));
  }

 private:
  std::array<FieldVector<T>, kFaceCount> faces_{};
};

/// The observation I = (phi, X, g, h) with the material and the horizon.
template <class T>
struct DataBundle {
  /// Throws std::invalid_argument if horizon <= 0 or g, h are time-dependent.
  DataBundle(LameConstants constants, double horizon, SourceTimeProfile<T> phi,
             BoundaryTraction<T> traction, FieldVector<T> g, FieldVector<T> h);

  LameConstants constants;
  double horizon;
  SourceTimeProfile<T> phi;
  BoundaryTraction<T> traction;
  FieldVector<T> g;
  FieldVector<T> h;
};

/// sigma . n on one face for a displacement u (time-dependent fields), with
/// sigma_j = lambda div u + 2 mu d_j u_j, tau_jk = mu (d_k u_j + d_j u_k).
template <class T>
FieldVector<T> traction_from_displacement(const LameConstants& c,
                                          const FieldVector<T>& u,
                                          const Face& face);

template <class T>
BoundaryTraction<T> traction_from_displacement(const LameConstants& c,
                                               const FieldVector<T>& u);

/// Pointwise residual of the Lame system for (u, f) with source profile phi.
template <class T>
FieldVector<T> lame_residual(const LameConstants& c, const FieldVector<T>& u,
                             const BasicTrigField<T>& phi,
                             const FieldVector<T>& f);

/// Sign convention for the boundary stress of the worked example.
/// Paper: the printed formulas with n_k replaced by the outward +-1.
/// Traction: sigma . n with the outward normal (the negation of Paper).
enum class XConvention { Paper, Traction };

XConvention parse_x_convention(const std::string& s);
std::string to_string(XConvention c);

template <class T>
struct ExampleInstance {
  DataBundle<T> bundle;
  FieldVector<T> f;  // exact source term
  FieldVector<T> u;  // exact displacement
};

/// mu = 1, lambda = -1, T = 30, phi = 23 pi^2 cos(pi t), h = 0, and
/// u = cos(pi t) f with f_1 = sin(4 pi x1) sin(2 pi x2) sin(2 pi x3), etc.
template <class T>
ExampleInstance<T> example_exact(XConvention conv = XConvention::Paper);

/// The exact instance plus scale * (the n-th disturbance of g, X and the
/// matching u, f). Throws std::invalid_argument if n < 1.
template <class T>
ExampleInstance<T> example_disturbed(int n, XConvention conv = XConvention::Paper,
                                     double scale = 1.0);

/// Closed form of ||f_j^n - f_j^0||_{L^2} for the n-th disturbance.
double disturbed_source_error(int n);

/// Run configuration for the command-line driver.
struct ExperimentConfig {
  double epsilon = 0.01;
  std::optional<int> disturbance_n = 10;
  double scale = 1.0;
  std::optional<int> r_override;
  std::vector<int> components{1};
  std::string output_dir = "out";
  Precision precision = Precision::Double;
  std::string x_sign = "auto";
  bool force = false;
  /// Replaces the example's T = 30 (e.g. to run with W2' violated).
  std::optional<double> horizon;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Keys: epsilon, n (0 or null for none), r_override, components,
/// output_dir, and optionally scale, precision, x_sign, force, horizon.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

nlohmann::json to_json(const DataBundle<double>& b);
DataBundle<double> data_bundle_from_json(const nlohmann::json& j);

}  // namespace lame
