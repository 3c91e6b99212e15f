#pragma once

/// \file
/// Separable trigonometric fields on the unit cube [0,1]^3, optionally
/// carrying one time factor. Every field in the library (sources, initial
/// data, displacements, boundary tractions) is a finite sum of products
///
///     coef * a1(x1) * a2(x2) * a3(x3) * [b(t)],
///
/// where each factor is 1, cos(k pi s) or sin(k pi s) for an integer
/// wavenumber k. Integrals against cos/sin kernels with arbitrary complex
/// arguments and all Sobolev norms are available in closed form.

#include "lame/numeric.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>
#include <vector>

namespace lame {

enum class FactorKind { One, Cos, Sin };
enum class KernelKind { Cos, Sin };

/// One factor of a separable term. The factor oscillates at frequency k*pi.
struct AxisFactor {
  FactorKind kind = FactorKind::One;
  int k = 0;

  static constexpr AxisFactor one() { return {FactorKind::One, 0}; }
  static constexpr AxisFactor cos(int k) { return {FactorKind::Cos, k}; }
  static constexpr AxisFactor sin(int k) { return {FactorKind::Sin, k}; }

  template <class T>
  T value(const T& s) const;

  friend auto operator<=>(const AxisFactor&, const AxisFactor&) = default;
};

/// Brings a factor to canonical form (k >= 0, Cos(0) -> One) and returns
/// the scalar the term must be multiplied by: +1, -1, or 0 if the factor
/// vanishes identically (Sin with k = 0).
int normalize(AxisFactor& f);

/// \int_0^1 factor(x) * kernel(a x) dx for complex a, in closed form. The
/// resonant case (a = +-k pi) is the regular limit of the same expression.
template <class T>
Complex<T> integrate_axis(const AxisFactor& factor, KernelKind kernel,
                          Complex<T> a);

/// Exact \int_0^1 a(x) b(x) dx for two integer-wavenumber factors.
template <class T>
T axis_inner(const AxisFactor& a, const AxisFactor& b);

template <class T>
struct SeparableTerm {
  Complex<T> coef{};
  std::array<AxisFactor, 3> space{};
  std::optional<AxisFactor> time{};
};

template <class T>
class BasicTrigField {
 public:
  using Term = SeparableTerm<T>;
  using Point = std::array<T, 3>;

  BasicTrigField() = default;
  /// Canonicalizes: factor signs are normalized, vanishing terms dropped and
  /// terms with equal factor signatures merged. Throws std::invalid_argument
  /// when time factors are present on some terms but not on others.
  explicit BasicTrigField(std::vector<Term> terms);

  static BasicTrigField product(Complex<T> coef, AxisFactor a1, AxisFactor a2,
                                AxisFactor a3,
                                std::optional<AxisFactor> time = {});
  static BasicTrigField constant(Complex<T> coef);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool time_dependent() const { return time_dependent_; }

  /// Throws std::invalid_argument if t is given for a static field or
  /// missing for a time-dependent one.
  Complex<T> eval(const Point& x, std::optional<T> t = {}) const;

  BasicTrigField derivative(int axis) const;
  BasicTrigField time_derivative() const;
  /// Static field u(., t).
  BasicTrigField at_time(const T& t) const;
  /// Restriction to the face x_axis = side (side 0 or 1); the axis factor
  /// is folded into the coefficient and replaced by One.
  BasicTrigField on_face(int axis, int side) const;

  BasicTrigField operator+(const BasicTrigField& o) const;
  BasicTrigField operator-(const BasicTrigField& o) const;
  BasicTrigField operator-() const;
  BasicTrigField scaled(const Complex<T>& s) const;

  template <class U>
  BasicTrigField<U> cast() const {
    std::vector<SeparableTerm<U>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      out.push_back({Complex<U>(U(t.coef.real()), U(t.coef.imag())), t.space,
                     t.time});
    }
    return BasicTrigField<U>(std::move(out));
  }

  friend bool operator==(const BasicTrigField& a, const BasicTrigField& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto& x = a.terms_[i];
      const auto& y = b.terms_[i];
      if (x.coef != y.coef || x.space != y.space || x.time != y.time)
        return false;
    }
    return true;
  }

 private:
  std::vector<Term> terms_;
  bool time_dependent_ = false;
};

using TrigField = BasicTrigField<double>;

template <class T>
using FieldVector = std::array<BasicTrigField<T>, 3>;

/// \int_\Omega w(x) * k1(a1 x1) k2(a2 x2) k3(a3 x3) dx. w must be static.
template <class T>
Complex<T> volume_integral(const BasicTrigField<T>& w,
                           const std::array<KernelKind, 3>& kernels,
                           const std::array<Complex<T>, 3>& a);

/// <w1, w2> in L^2(Omega) (conjugate-linear in w2). Static fields only.
template <class T>
Complex<T> inner_product(const BasicTrigField<T>& w1,
                         const BasicTrigField<T>& w2);

template <class T>
T l2_norm(const BasicTrigField<T>& w);
template <class T>
T h1_norm(const BasicTrigField<T>& w);
/// Sum over multi-indices |beta| <= 2, each mixed derivative counted once.
template <class T>
T h2_norm(const BasicTrigField<T>& w);

nlohmann::json to_json(const TrigField& w);
TrigField trig_field_from_json(const nlohmann::json& j);

}  // namespace lame
