#include "lame/lame_data.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace lame {

LameConstants::LameConstants(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!(mu > 0) || !(lambda + 2 * mu > 0)) {
    throw std::invalid_argument("Lame constants need mu > 0 and lambda + 2 mu > 0");
  }
}

namespace {

double slowness(const LameConstants& c) {
  return std::max(1 / std::sqrt(c.mu()), 1 / std::sqrt(c.lambda() + 2 * c.mu()));
}

constexpr int kW1Samples = 1 << 14;

template <class T>
bool is_time_only(const BasicTrigField<T>& phi) {
  if (!phi.time_dependent()) return false;
  for (const auto& t : phi.terms()) {
    for (const auto& f : t.space)
      if (f.kind != FactorKind::One) return false;
  }
  return true;
}

template <class T>
double eval_time(const BasicTrigField<T>& phi, double t) {
  return to_double(phi.eval({T(0), T(0), T(0)}, T(t)).real());
}

template <class T>
void check_witness(const BasicTrigField<T>& phi, double horizon, const W1Witness& w) {
  if (!(w.lambda_end > 0 && w.lambda_end < horizon) || !(w.bound > 0) ||
      (w.sign != 1 && w.sign != -1)) {
    throw std::invalid_argument("W1 witness out of range");
  }
  const double tol = 1e-12 * w.bound;
  for (int i = 1; i < kW1Samples; ++i) {
    const double t = w.lambda_end * i / kW1Samples;
    if (w.sign * eval_time(phi, t) < w.bound - tol) {
      throw std::invalid_argument("phi violates the W1 witness at t = " +
                                  std::to_string(t));
    }
  }
}

}  // namespace

bool validate_w2(const LameConstants& c, double horizon) {
  return horizon > 2 * slowness(c);
}

bool validate_w2prime(const LameConstants& c, double horizon) {
  return horizon > 12 * std::sqrt(5.0) * slowness(c);
}

template <class T>
SourceTimeProfile<T>::SourceTimeProfile(BasicTrigField<T> phi, double horizon)
    : phi_(std::move(phi)) {
  if (!is_time_only(phi_)) throw std::invalid_argument("phi must depend on t only");
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  const double phi0 = eval_time(phi_, 0.0);
  if (phi0 == 0) throw std::invalid_argument("phi(0) = 0: no W1 witness");
  const int sign = phi0 > 0 ? 1 : -1;
  const double bound = 0.5 * std::abs(phi0);
  const double step = horizon / kW1Samples;
  auto excess = [&](double t) { return sign * eval_time(phi_, t) - bound; };

  double end = horizon - step;
  for (int i = 1; i < kW1Samples; ++i) {
    if (excess(i * step) < 0) {
      double lo = (i - 1) * step;
      double hi = i * step;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) >= 0 ? lo : hi) = mid;
      }
      end = lo;
      break;
    }
  }
  witness_ = {end, bound, sign};
  check_witness(phi_, horizon, witness_);
}

template <class T>
SourceTimeProfile<T>::SourceTimeProfile(BasicTrigField<T> phi, double horizon,
                                        W1Witness witness)
    : phi_(std::move(phi)), witness_(witness) {
  if (!is_time_only(phi_)) throw std::invalid_argument("phi must depend on t only");
  check_witness(phi_, horizon, witness_);
}

template <class T>
double SourceTimeProfile<T>::operator()(double t) const {
  return eval_time(phi_, t);
}

template <class T>
BoundaryTraction<T>::BoundaryTraction(std::array<FieldVector<T>, kFaceCount> faces)
    : faces_(std::move(faces)) {
  for (int f = 0; f < kFaceCount; ++f) {
    const Face face = Face::from_index(f);
    for (const auto& comp : faces_[f]) {
      if (!comp.empty() && !comp.time_dependent()) {
        throw std::invalid_argument("boundary traction must be time-dependent");
      }
      for (const auto& t : comp.terms()) {
        if (t.space[face.axis].kind != FactorKind::One) {
          throw std::invalid_argument("face data must not vary along the normal");
        }
      }
    }
  }
}

template <class T>
BoundaryTraction<T> BoundaryTraction<T>::operator+(const BoundaryTraction& o) const {
  auto out = faces_;
  for (int f = 0; f < kFaceCount; ++f)
    for (int i = 0; i < 3; ++i) out[f][i] = out[f][i] + o.faces_[f][i];
  return BoundaryTraction(std::move(out));
}

template <class T>
BoundaryTraction<T> BoundaryTraction<T>::scaled(const Complex<T>& s) const {
  auto out = faces_;
  for (auto& face : out)
    for (auto& comp : face) comp = comp.scaled(s);
  return BoundaryTraction(std::move(out));
}

template <class T>
DataBundle<T>::DataBundle(LameConstants constants_, double horizon_,
                          SourceTimeProfile<T> phi_, BoundaryTraction<T> traction_,
                          FieldVector<T> g_, FieldVector<T> h_)
    : constants(constants_),
      horizon(horizon_),
      phi(std::move(phi_)),
      traction(std::move(traction_)),
      g(std::move(g_)),
      h(std::move(h_)) {
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  for (int i = 0; i < 3; ++i) {
    if (g[i].time_dependent() || h[i].time_dependent()) {
      throw std::invalid_argument("initial data g, h must be static");
    }
  }
}

template <class T>
FieldVector<T> traction_from_displacement(const LameConstants& c,
                                          const FieldVector<T>& u,
                                          const Face& face) {
  const Complex<T> lambda(T(c.lambda()));
  const Complex<T> mu(T(c.mu()));
  const int k = face.axis;
  std::array<FieldVector<T>, 3> grad;  // grad[j][l] = d_l u_j
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) grad[j][l] = u[j].derivative(l);
  const auto div = grad[0][0] + grad[1][1] + grad[2][2];
  const Complex<T> n(T(face.normal_sign()));
  FieldVector<T> out;
  for (int j = 0; j < 3; ++j) {
    BasicTrigField<T> s = (j == k) ? div.scaled(lambda) + grad[j][j].scaled(T(2) * mu)
                                   : (grad[j][k] + grad[k][j]).scaled(mu);
    out[j] = s.scaled(n).on_face(k, face.side);
  }
  return out;
}

template <class T>
BoundaryTraction<T> traction_from_displacement(const LameConstants& c,
                                               const FieldVector<T>& u) {
  std::array<FieldVector<T>, kFaceCount> faces;
  for (int f = 0; f < kFaceCount; ++f)
    faces[f] = traction_from_displacement(c, u, Face::from_index(f));
  return BoundaryTraction<T>(std::move(faces));
}

template <class T>
FieldVector<T> lame_residual(const LameConstants& c, const FieldVector<T>& u,
                             const BasicTrigField<T>& phi, const FieldVector<T>& f) {
  const Complex<T> mu(T(c.mu()));
  const Complex<T> lm(T(c.lambda()) + T(c.mu()));
  BasicTrigField<T> div;
  for (int l = 0; l < 3; ++l) div = div + u[l].derivative(l);
  FieldVector<T> out;
  for (int j = 0; j < 3; ++j) {
    BasicTrigField<T> lap;
    for (int l = 0; l < 3; ++l) lap = lap + u[j].derivative(l).derivative(l);
    // phi * f_j as a product of a time-only and a static field.
    std::vector<SeparableTerm<T>> forcing;
    for (const auto& a : phi.terms())
      for (const auto& b : f[j].terms())
        forcing.push_back({a.coef * b.coef, b.space, a.time});
    out[j] = u[j].time_derivative().time_derivative() - lap.scaled(mu) -
             div.derivative(j).scaled(lm) - BasicTrigField<T>(std::move(forcing));
  }
  return out;
}

XConvention parse_x_convention(const std::string& s) {
  if (s == "paper") return XConvention::Paper;
  if (s == "traction") return XConvention::Traction;
  throw std::invalid_argument("unknown X convention '" + s + "'");
}

std::string to_string(XConvention c) {
  return c == XConvention::Paper ? "paper" : "traction";
}

namespace {

// Wavenumbers of the exact component j: 2 on every axis, 4 on axis j.
std::array<int, 3> exact_wavenumbers(int j) {
  std::array<int, 3> k{2, 2, 2};
  k[j] = 4;
  return k;
}

template <class T>
BasicTrigField<T> sine_product(const Complex<T>& coef, const std::array<int, 3>& k,
                               std::optional<AxisFactor> time = {}) {
  return BasicTrigField<T>::product(coef, AxisFactor::sin(k[0]), AxisFactor::sin(k[1]),
                                    AxisFactor::sin(k[2]), time);
}

// Boundary stress on one face, written with sine factors on the two in-face
// axes and the normal axis left as One.
template <class T>
BasicTrigField<T> face_sine_product(const Complex<T>& coef, int normal_axis,
                                    const std::array<int, 3>& k) {
  std::array<AxisFactor, 3> f;
  for (int l = 0; l < 3; ++l)
    f[l] = l == normal_axis ? AxisFactor::one() : AxisFactor::sin(k[l]);
  return BasicTrigField<T>::product(coef, f[0], f[1], f[2], AxisFactor::cos(1));
}

template <class T>
SourceTimeProfile<T> example_phi() {
  const T p = pi<T>();
  auto phi = BasicTrigField<T>::product(Complex<T>(T(23) * p * p), AxisFactor::one(),
                                        AxisFactor::one(), AxisFactor::one(),
                                        AxisFactor::cos(1));
  return SourceTimeProfile<T>(std::move(phi), 30.0);
}

template <class T>
BoundaryTraction<T> example_traction(XConvention conv, int n, double scale) {
  const T p = pi<T>();
  const T sign = conv == XConvention::Paper ? T(1) : T(-1);
  std::array<FieldVector<T>, kFaceCount> faces;
  for (int fi = 0; fi < kFaceCount; ++fi) {
    const Face face = Face::from_index(fi);
    const T nk(face.normal_sign());
    for (int i = 0; i < 3; ++i) {
      const T c = face.axis == i ? T(-4) * p : T(-2) * p;
      auto x = face_sine_product<T>(Complex<T>(sign * c * nk), face.axis,
                                    exact_wavenumbers(i));
      if (n > 0) {
        using std::sqrt;
        const T amp = T(scale) * T(-2) * p / sqrt(T(n));
        x = x + face_sine_product<T>(Complex<T>(sign * amp * nk), face.axis,
                                     {2 * n, 2 * n, 2 * n});
      }
      faces[fi][i] = x;
    }
  }
  return BoundaryTraction<T>(std::move(faces));
}

template <class T>
ExampleInstance<T> build_example(XConvention conv, int n, double scale) {
  using std::sqrt;
  FieldVector<T> f, u, g, h;
  const std::array<int, 3> kn{2 * n, 2 * n, 2 * n};
  for (int j = 0; j < 3; ++j) {
    const auto k = exact_wavenumbers(j);
    g[j] = sine_product<T>(Complex<T>(T(1)), k);
    f[j] = g[j];
    u[j] = sine_product<T>(Complex<T>(T(1)), k, AxisFactor::cos(1));
    if (n > 0) {
      const T nn(n);
      const T n32 = nn * sqrt(nn);
      const T amp_g = T(scale) / n32;
      const T amp_f = T(scale) * (T(12) * nn * nn - T(1)) / (T(23) * n32);
      g[j] = g[j] + sine_product<T>(Complex<T>(amp_g), kn);
      u[j] = u[j] + sine_product<T>(Complex<T>(amp_g), kn, AxisFactor::cos(1));
      f[j] = f[j] + sine_product<T>(Complex<T>(amp_f), kn);
    }
  }
  DataBundle<T> bundle(LameConstants(-1.0, 1.0), 30.0, example_phi<T>(),
                       example_traction<T>(conv, n, scale), g, h);
  return {std::move(bundle), std::move(f), std::move(u)};
}

}  // namespace

template <class T>
ExampleInstance<T> example_exact(XConvention conv) {
  return build_example<T>(conv, 0, 0.0);
}

template <class T>
ExampleInstance<T> example_disturbed(int n, XConvention conv, double scale) {
  if (n < 1) throw std::invalid_argument("disturbance index n must be >= 1");
  return build_example<T>(conv, n, scale);
}

double disturbed_source_error(int n) {
  const double nn = n;
  return std::sqrt(2.0) / 4 *
         std::sqrt((144 * nn * nn * nn * nn - 24 * nn * nn + 1) / (529 * nn * nn * nn));
}

// Config ---------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (disturbance_n && *disturbance_n < 1)
    throw std::invalid_argument("n must be positive (use 0 for no disturbance)");
  if (r_override && *r_override < 1) throw std::invalid_argument("r must be >= 1");
  if (components.empty()) throw std::invalid_argument("components must not be empty");
  for (int j : components)
    if (j < 1 || j > 3) throw std::invalid_argument("components must be in {1,2,3}");
  if (!(scale >= 0)) throw std::invalid_argument("scale must be nonnegative");
  if (x_sign != "auto") parse_x_convention(x_sign);
  if (horizon && !(*horizon > 0)) throw std::invalid_argument("horizon must be positive");
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
  if (j.contains("n")) {
    const auto& n = j.at("n");
    if (n.is_null() || n.get<int>() == 0) {
      c.disturbance_n.reset();
    } else {
      c.disturbance_n = n.get<int>();
    }
  }
  if (j.contains("r_override") && !j.at("r_override").is_null())
    c.r_override = j.at("r_override").get<int>();
  if (j.contains("components")) c.components = j.at("components").get<std::vector<int>>();
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("scale")) c.scale = j.at("scale").get<double>();
  if (j.contains("precision")) c.precision = parse_precision(j.at("precision").get<std::string>());
  if (j.contains("x_sign")) c.x_sign = j.at("x_sign").get<std::string>();
  if (j.contains("force")) c.force = j.at("force").get<bool>();
  if (j.contains("horizon") && !j.at("horizon").is_null())
    c.horizon = j.at("horizon").get<double>();
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"epsilon", c.epsilon},
          {"n", c.disturbance_n ? nlohmann::json(*c.disturbance_n) : nlohmann::json(0)},
          {"scale", c.scale},
          {"r_override", c.r_override ? nlohmann::json(*c.r_override) : nlohmann::json()},
          {"components", c.components},
          {"output_dir", c.output_dir},
          {"precision", std::string(to_string(c.precision))},
          {"x_sign", c.x_sign},
          {"force", c.force},
          {"horizon", c.horizon ? nlohmann::json(*c.horizon) : nlohmann::json()}};
}

nlohmann::json to_json(const DataBundle<double>& b) {
  nlohmann::json faces = nlohmann::json::array();
  for (int f = 0; f < kFaceCount; ++f) {
    const Face face = Face::from_index(f);
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& x : b.traction.faces()[f]) comps.push_back(to_json(x));
    faces.push_back({{"axis", face.axis}, {"side", face.side}, {"X", comps}});
  }
  auto vec = [](const FieldVector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& w : v) a.push_back(to_json(w));
    return a;
  };
  const auto& w = b.phi.witness();
  return {{"lambda", b.constants.lambda()},
          {"mu", b.constants.mu()},
          {"T", b.horizon},
          {"phi", to_json(b.phi.field())},
          {"w1", {{"Lambda", w.lambda_end}, {"C", w.bound}, {"sign", w.sign}}},
          {"X", faces},
          {"g", vec(b.g)},
          {"h", vec(b.h)}};
}

DataBundle<double> data_bundle_from_json(const nlohmann::json& j) {
  const LameConstants c(j.at("lambda").get<double>(), j.at("mu").get<double>());
  const double horizon = j.at("T").get<double>();
  auto phi_field = trig_field_from_json(j.at("phi"));
  auto phi = j.contains("w1")
                 ? SourceTimeProfile<double>(
                       phi_field, horizon,
                       W1Witness{j.at("w1").at("Lambda").get<double>(),
                                 j.at("w1").at("C").get<double>(),
                                 j.at("w1").at("sign").get<int>()})
                 : SourceTimeProfile<double>(phi_field, horizon);
  std::array<FieldVector<double>, kFaceCount> faces;
  for (const auto& fj : j.at("X")) {
    const Face face{fj.at("axis").get<int>(), fj.at("side").get<int>()};
    if (face.axis < 0 || face.axis > 2 || face.side < 0 || face.side > 1)
      throw std::invalid_argument("bad face in bundle JSON");
    for (int i = 0; i < 3; ++i) faces[face.index()][i] = trig_field_from_json(fj.at("X").at(i));
  }
  auto vec = [](const nlohmann::json& a) {
    FieldVector<double> v;
    for (int i = 0; i < 3; ++i) v[i] = trig_field_from_json(a.at(i));
    return v;
  };
  return DataBundle<double>(c, horizon, std::move(phi),
                            BoundaryTraction<double>(std::move(faces)), vec(j.at("g")),
                            vec(j.at("h")));
}

#define LAME_INSTANTIATE_DATA(T)                                                      \
  template class SourceTimeProfile<T>;                                                \
  template class BoundaryTraction<T>;                                                 \
  template struct DataBundle<T>;                                                      \
  template FieldVector<T> traction_from_displacement<T>(                              \
      const LameConstants&, const FieldVector<T>&, const Face&);                      \
  template BoundaryTraction<T> traction_from_displacement<T>(const LameConstants&,    \
                                                             const FieldVector<T>&);  \
  template FieldVector<T> lame_residual<T>(const LameConstants&,                      \
                                           const FieldVector<T>&,                     \
                                           const BasicTrigField<T>&,                  \
                                           const FieldVector<T>&);                    \
  template ExampleInstance<T> example_exact<T>(XConvention);                          \
  template ExampleInstance<T> example_disturbed<T>(int, XConvention, double);

LAME_INSTANTIATE_DATA(double)
LAME_INSTANTIATE_DATA(Extended)

}  // namespace lame
