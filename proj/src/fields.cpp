#include "lame/fields.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lame {

namespace {

// \int_0^1 cos(b x) dx
template <class T>
Complex<T> cos_moment(const Complex<T>& b) {
  return sinc(b);
}

// \int_0^1 sin(b x) dx = (1 - cos b)/b = (b/2) sinc(b/2)^2
template <class T>
Complex<T> sin_moment(const Complex<T>& b) {
  const Complex<T> h = b / T(2);
  const Complex<T> s = sinc(h);
  return h * s * s;
}

// \int_0^1 sin(q pi x) dx for integer q.
template <class T>
T sin_moment_int(int q) {
  if (q % 2 == 0) return T(0);
  return T(2) / (T(q) * pi<T>());
}

// cos(m pi t) and sin(m pi t), exact when m*t is an integer.
template <class T>
bool integer_phase(int k, const T& t, long long& m) {
  using std::floor;
  const T kt = T(k) * t;
  if (floor(kt) != kt) return false;
  m = static_cast<long long>(kt);
  return true;
}

bool less_signature(const AxisFactor& a, const AxisFactor& b) { return a < b; }

template <class T>
bool less_term(const SeparableTerm<T>& a, const SeparableTerm<T>& b) {
  if (a.space != b.space) {
    return std::lexicographical_compare(a.space.begin(), a.space.end(),
                                        b.space.begin(), b.space.end(),
                                        less_signature);
  }
  return a.time < b.time;
}

template <class T>
bool same_signature(const SeparableTerm<T>& a, const SeparableTerm<T>& b) {
  return a.space == b.space && a.time == b.time;
}

}  // namespace

Precision parse_precision(std::string_view name) {
  if (name == "double") return Precision::Double;
  if (name == "extended") return Precision::Extended;
  throw std::invalid_argument("unknown precision '" + std::string(name) + "'");
}

std::string_view to_string(Precision p) {
  return p == Precision::Double ? "double" : "extended";
}

template <class T>
T AxisFactor::value(const T& s) const {
  using std::cos;
  using std::sin;
  switch (kind) {
    case FactorKind::One:
      return T(1);
    case FactorKind::Cos: {
      long long m = 0;
      if (integer_phase(k, s, m)) return (m % 2 == 0) ? T(1) : T(-1);
      return cos(T(k) * pi<T>() * s);
    }
    case FactorKind::Sin: {
      long long m = 0;
      if (integer_phase(k, s, m)) return T(0);
      return sin(T(k) * pi<T>() * s);
    }
  }
  return T(0);
}

int normalize(AxisFactor& f) {
  switch (f.kind) {
    case FactorKind::One:
      if (f.k != 0) throw std::invalid_argument("One factor with k != 0");
      return 1;
    case FactorKind::Cos:
      if (f.k < 0) f.k = -f.k;
      if (f.k == 0) f = AxisFactor::one();
      return 1;
    case FactorKind::Sin:
      if (f.k == 0) return 0;
      if (f.k < 0) {
        f.k = -f.k;
        return -1;
      }
      return 1;
  }
  return 1;
}

template <class T>
Complex<T> integrate_axis(const AxisFactor& factor, KernelKind kernel,
                          Complex<T> a) {
  // Reduce a to a canonical half-plane so the result is exactly even (cos
  // kernel) or odd (sin kernel) in a.
  const bool flipped = canonicalize_sign(a);
  const Complex<T> w(T(factor.k) * pi<T>(), T(0));
  const T half(0.5);
  Complex<T> r;
  switch (factor.kind) {
    case FactorKind::One:
      r = kernel == KernelKind::Cos ? cos_moment(a) : sin_moment(a);
      break;
    case FactorKind::Cos:
      r = kernel == KernelKind::Cos
              ? half * (cos_moment(w - a) + cos_moment(w + a))
              : half * (sin_moment(a + w) + sin_moment(a - w));
      break;
    case FactorKind::Sin:
      r = kernel == KernelKind::Cos
              ? half * (sin_moment(w + a) + sin_moment(w - a))
              : half * (cos_moment(w - a) - cos_moment(w + a));
      break;
  }
  if (flipped && kernel == KernelKind::Sin) r = -r;
  return r;
}

template <class T>
T axis_inner(const AxisFactor& a, const AxisFactor& b) {
  using K = FactorKind;
  if (b.kind == K::One && a.kind != K::One) return axis_inner<T>(b, a);
  if (b.kind == K::Sin && a.kind == K::Cos) return axis_inner<T>(b, a);
  const T half(0.5);
  switch (a.kind) {
    case K::One:
      if (b.kind == K::One) return T(1);
      if (b.kind == K::Cos) return b.k == 0 ? T(1) : T(0);
      return sin_moment_int<T>(b.k);
    case K::Cos:
      // b is Cos
      return a.k == b.k ? (a.k == 0 ? T(1) : half) : T(0);
    case K::Sin:
      if (b.kind == K::Sin) return a.k == b.k ? half : T(0);
      return half * (sin_moment_int<T>(a.k + b.k) +
                     sin_moment_int<T>(a.k - b.k));
  }
  return T(0);
}

template <class T>
BasicTrigField<T>::BasicTrigField(std::vector<Term> terms) {
  std::vector<Term> kept;
  kept.reserve(terms.size());
  std::optional<bool> timed;
  for (auto& t : terms) {
    const bool has_time = t.time.has_value();
    if (timed && *timed != has_time) {
      throw std::invalid_argument(
          "TrigField mixes time-dependent and static terms");
    }
    timed = has_time;
    int mult = 1;
    for (auto& f : t.space) mult *= normalize(f);
    if (t.time) mult *= normalize(*t.time);
    if (mult == 0) continue;
    if (mult < 0) t.coef = -t.coef;
    kept.push_back(t);
  }
  time_dependent_ = timed.value_or(false);
  std::stable_sort(kept.begin(), kept.end(), less_term<T>);
  for (const auto& t : kept) {
    if (!terms_.empty() && same_signature(terms_.back(), t)) {
      terms_.back().coef += t.coef;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coef == Complex<T>(0); });
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::product(Complex<T> coef, AxisFactor a1,
                                             AxisFactor a2, AxisFactor a3,
                                             std::optional<AxisFactor> time) {
  return BasicTrigField({Term{coef, {a1, a2, a3}, time}});
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::constant(Complex<T> coef) {
  return product(coef, AxisFactor::one(), AxisFactor::one(), AxisFactor::one());
}

template <class T>
Complex<T> BasicTrigField<T>::eval(const Point& x, std::optional<T> t) const {
  if (t.has_value() && !time_dependent_ && !terms_.empty()) {
    throw std::invalid_argument("time given for a static field");
  }
  if (!t.has_value() && time_dependent_) {
    throw std::invalid_argument("time required for a time-dependent field");
  }
  CompensatedComplexSum<T> sum;
  for (const auto& term : terms_) {
    T p = term.space[0].value(x[0]) * term.space[1].value(x[1]) *
          term.space[2].value(x[2]);
    if (term.time) p *= term.time->value(*t);
    sum.add(term.coef * p);
  }
  return sum.value();
}

namespace {

// Derivative of one factor: returns the new factor and the scalar it
// contributes, or nullopt when the derivative vanishes.
template <class T>
std::optional<std::pair<AxisFactor, T>> differentiate(const AxisFactor& f) {
  const T w = T(f.k) * pi<T>();
  switch (f.kind) {
    case FactorKind::One:
      return std::nullopt;
    case FactorKind::Cos:
      return std::pair{AxisFactor::sin(f.k), -w};
    case FactorKind::Sin:
      return std::pair{AxisFactor::cos(f.k), w};
  }
  return std::nullopt;
}

}  // namespace

template <class T>
BasicTrigField<T> BasicTrigField<T>::derivative(int axis) const {
  std::vector<Term> out;
  for (const auto& term : terms_) {
    auto d = differentiate<T>(term.space.at(axis));
    if (!d) continue;
    Term t = term;
    t.space[axis] = d->first;
    t.coef *= d->second;
    out.push_back(t);
  }
  BasicTrigField r(std::move(out));
  r.time_dependent_ = time_dependent_;
  return r;
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::time_derivative() const {
  if (!time_dependent_) return {};
  std::vector<Term> out;
  for (const auto& term : terms_) {
    auto d = differentiate<T>(*term.time);
    if (!d) continue;
    Term t = term;
    t.time = d->first;
    t.coef *= d->second;
    out.push_back(t);
  }
  BasicTrigField r(std::move(out));
  r.time_dependent_ = true;
  return r;
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::at_time(const T& t) const {
  if (!time_dependent_) return *this;
  std::vector<Term> out;
  for (const auto& term : terms_) {
    Term s = term;
    s.coef *= term.time->value(t);
    s.time.reset();
    out.push_back(s);
  }
  return BasicTrigField(std::move(out));
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::on_face(int axis, int side) const {
  if (side != 0 && side != 1) throw std::invalid_argument("face side must be 0 or 1");
  std::vector<Term> out;
  for (const auto& term : terms_) {
    Term s = term;
    s.coef *= term.space.at(axis).value(T(side));
    s.space[axis] = AxisFactor::one();
    out.push_back(s);
  }
  BasicTrigField r(std::move(out));
  r.time_dependent_ = time_dependent_;
  return r;
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::operator+(const BasicTrigField& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  BasicTrigField r(std::move(all));
  r.time_dependent_ = time_dependent_ || o.time_dependent_;
  return r;
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::operator-() const {
  return scaled(Complex<T>(T(-1)));
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::operator-(const BasicTrigField& o) const {
  return *this + (-o);
}

template <class T>
BasicTrigField<T> BasicTrigField<T>::scaled(const Complex<T>& s) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coef *= s;
  BasicTrigField r(std::move(out));
  r.time_dependent_ = time_dependent_;
  return r;
}

template <class T>
Complex<T> volume_integral(const BasicTrigField<T>& w,
                           const std::array<KernelKind, 3>& kernels,
                           const std::array<Complex<T>, 3>& a) {
  if (w.time_dependent()) {
    throw std::invalid_argument("volume_integral needs a static field");
  }
  CompensatedComplexSum<T> sum;
  for (const auto& term : w.terms()) {
    Complex<T> p = term.coef;
    for (int l = 0; l < 3; ++l) {
      p *= integrate_axis<T>(term.space[l], kernels[l], a[l]);
    }
    sum.add(p);
  }
  return sum.value();
}

template <class T>
Complex<T> inner_product(const BasicTrigField<T>& w1,
                         const BasicTrigField<T>& w2) {
  if (w1.time_dependent() || w2.time_dependent()) {
    throw std::invalid_argument("inner_product needs static fields");
  }
  CompensatedComplexSum<T> sum;
  for (const auto& a : w1.terms()) {
    for (const auto& b : w2.terms()) {
      T p = axis_inner<T>(a.space[0], b.space[0]);
      if (p == 0) continue;
      p *= axis_inner<T>(a.space[1], b.space[1]);
      if (p == 0) continue;
      p *= axis_inner<T>(a.space[2], b.space[2]);
      sum.add(a.coef * std::conj(b.coef) * p);
    }
  }
  return sum.value();
}

namespace {

template <class T>
T squared(const BasicTrigField<T>& w) {
  const T v = inner_product(w, w).real();
  return v < 0 ? T(0) : v;
}

}  // namespace

template <class T>
T l2_norm(const BasicTrigField<T>& w) {
  using std::sqrt;
  return sqrt(squared(w));
}

template <class T>
T h1_norm(const BasicTrigField<T>& w) {
  using std::sqrt;
  T s = squared(w);
  for (int i = 0; i < 3; ++i) s += squared(w.derivative(i));
  return sqrt(s);
}

template <class T>
T h2_norm(const BasicTrigField<T>& w) {
  using std::sqrt;
  T s = squared(w);
  for (int i = 0; i < 3; ++i) {
    const auto di = w.derivative(i);
    s += squared(di);
    for (int j = i; j < 3; ++j) s += squared(di.derivative(j));
  }
  return sqrt(s);
}

// JSON ----------------------------------------------------------------------

namespace {

const char* kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::One:
      return "one";
    case FactorKind::Cos:
      return "cos";
    case FactorKind::Sin:
      return "sin";
  }
  return "one";
}

FactorKind kind_from_name(const std::string& s) {
  if (s == "one") return FactorKind::One;
  if (s == "cos") return FactorKind::Cos;
  if (s == "sin") return FactorKind::Sin;
  throw std::invalid_argument("unknown factor kind '" + s + "'");
}

nlohmann::json factor_json(const AxisFactor& f) {
  return {{"kind", kind_name(f.kind)}, {"k", f.k}};
}

AxisFactor factor_from_json(const nlohmann::json& j) {
  return {kind_from_name(j.at("kind").get<std::string>()), j.at("k").get<int>()};
}

}  // namespace

nlohmann::json to_json(const TrigField& w) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : w.terms()) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& f : t.space) axes.push_back(factor_json(f));
    out.push_back({{"coef_re", t.coef.real()},
                   {"coef_im", t.coef.imag()},
                   {"axes", axes},
                   {"time", t.time ? factor_json(*t.time) : nlohmann::json()}});
  }
  return out;
}

TrigField trig_field_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("TrigField JSON must be an array");
  std::vector<SeparableTerm<double>> terms;
  for (const auto& t : j) {
    SeparableTerm<double> term;
    term.coef = {t.at("coef_re").get<double>(), t.at("coef_im").get<double>()};
    const auto& axes = t.at("axes");
    if (!axes.is_array() || axes.size() != 3) {
      throw std::invalid_argument("TrigField term needs exactly 3 axes");
    }
    for (int l = 0; l < 3; ++l) term.space[l] = factor_from_json(axes[l]);
    if (t.contains("time") && !t.at("time").is_null()) {
      term.time = factor_from_json(t.at("time"));
    }
    terms.push_back(term);
  }
  return TrigField(std::move(terms));
}

// Instantiations ------------------------------------------------------------

#define LAME_INSTANTIATE_FIELDS(T)                                            \
  template T AxisFactor::value<T>(const T&) const;                            \
  template Complex<T> integrate_axis<T>(const AxisFactor&, KernelKind,        \
                                        Complex<T>);                          \
  template T axis_inner<T>(const AxisFactor&, const AxisFactor&);             \
  template class BasicTrigField<T>;                                           \
  template Complex<T> volume_integral<T>(const BasicTrigField<T>&,            \
                                         const std::array<KernelKind, 3>&,    \
                                         const std::array<Complex<T>, 3>&);   \
  template Complex<T> inner_product<T>(const BasicTrigField<T>&,              \
                                       const BasicTrigField<T>&);             \
  template T l2_norm<T>(const BasicTrigField<T>&);                            \
  template T h1_norm<T>(const BasicTrigField<T>&);                            \
  template T h2_norm<T>(const BasicTrigField<T>&);

LAME_INSTANTIATE_FIELDS(double)
LAME_INSTANTIATE_FIELDS(Extended)

}  // namespace lame
