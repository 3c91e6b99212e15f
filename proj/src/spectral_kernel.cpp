#include "lame/spectral_kernel.hpp"

#include <boost/math/special_functions/expm1.hpp>

#include <algorithm>
#include <cmath>

namespace lame {

template <class T>
Frequency<T>::Frequency(std::array<Complex<T>, 3> alpha) : alpha_(alpha) {
  using std::abs;
  using std::sqrt;
  Complex<T> dot(0);
  T mag2(0);
  for (const auto& a : alpha_) {
    dot += a * a;
    mag2 += std::norm(a);
  }
  const T tol = T(1e-12) * (T(1) + mag2);
  if (abs(dot.imag()) > tol || dot.real() > tol) {
    throw InadmissibleFrequency("frequency needs alpha.alpha real and <= 0");
  }
  norm0_ = dot.real() < 0 ? sqrt(-dot.real()) : T(0);
}

template <class T>
Frequency<T> Frequency<T>::canonical(const T& z, int n, int p) {
  const T pv = pi<T>();
  return Frequency({Complex<T>(T(0), -z), Complex<T>(T(n) * pv, T(0)),
                    Complex<T>(T(p) * pv, T(0))});
}

KernelSpec g_kernel(KernelIndex idx) {
  if (idx.j < 1 || idx.j > 3 || idx.k < 1 || idx.k > 3) {
    throw std::invalid_argument("kernel index out of range");
  }
  KernelSpec s;
  if (idx.j == idx.k) return s;
  s.sign = -1;
  s.kinds[idx.j - 1] = KernelKind::Sin;
  s.kinds[idx.k - 1] = KernelKind::Sin;
  return s;
}

template <class T>
T hyp_ratio(const T& a, const T& horizon, const T& t) {
  using std::exp;
  const T num = -boost::math::expm1(T(-2) * a * (horizon - t));
  return exp(-a * t) * num / (T(1) + exp(T(-2) * a * horizon));
}

template <class T>
T stable_tanh(const T& x) {
  using std::exp;
  const T q = exp(T(-2) * x);
  return -boost::math::expm1(T(-2) * x) / (T(1) + q);
}

template <class T>
T stable_sech(const T& x) {
  using std::exp;
  return T(2) * exp(-x) / (T(1) + exp(T(-2) * x));
}

template <class T>
T time_kernel_integral(const AxisFactor& b, const T& a, const T& horizon) {
  using std::exp;
  const T q = exp(-a * horizon);
  const T one_minus_q = -boost::math::expm1(-a * horizon);
  const T denom = T(1) + q * q;
  if (b.kind == FactorKind::One) {
    return one_minus_q * one_minus_q / (a * denom);
  }
  // \int_0^T e^{i w t} sinh(a(T-t))/cosh(aT) dt, then the real or
  // imaginary part.
  const T w = T(b.k) * pi<T>();
  const Complex<T> e_iwT(AxisFactor::cos(b.k).value(horizon),
                         AxisFactor::sin(b.k).value(horizon));
  const Complex<T> iw(T(0), w);
  const Complex<T> first = (q * e_iwT - T(1)) / (iw - a);
  const Complex<T> second = q * (e_iwT - q) / (iw + a);
  const Complex<T> j = (first - second) / denom;
  return b.kind == FactorKind::Cos ? j.real() : j.imag();
}

namespace {

template <class T>
struct Speeds {
  T norm0;
  T a1;  // sqrt(lambda + 2 mu) |alpha|_0
  T a2;  // sqrt(mu) |alpha|_0
};

template <class T>
Speeds<T> speeds(const LameConstants& c, const Frequency<T>& alpha) {
  return {alpha.norm0(), c.pressure_speed<T>() * alpha.norm0(),
          c.shear_speed<T>() * alpha.norm0()};
}

// cos(alpha c) or sin(alpha c) for c in {0, 1}.
template <class T>
Complex<T> kernel_at(KernelKind kind, Complex<T> a, int side) {
  if (side == 0) return kind == KernelKind::Cos ? Complex<T>(1) : Complex<T>(0);
  const bool flipped = canonicalize_sign(a);
  if (kind == KernelKind::Cos) return ccos(a);
  const Complex<T> s = csin(a);
  return flipped ? -s : s;
}

template <class T>
Complex<T> kernel_volume(const BasicTrigField<T>& w, int j, int i,
                         const Frequency<T>& alpha) {
  if (w.empty()) return Complex<T>(0);
  const KernelSpec s = g_kernel({j, i});
  const Complex<T> v = volume_integral(w, s.kinds, alpha.alpha());
  return s.sign < 0 ? -v : v;
}

// \int_0^T \int_{boundary} X_i G_i^j sinh(a(T-t))/cosh(aT) dw dt
template <class T>
Complex<T> kernel_surface(const BoundaryTraction<T>& X, int j, int i,
                          const Frequency<T>& alpha, const T& a, const T& horizon) {
  const KernelSpec s = g_kernel({j, i});
  CompensatedComplexSum<T> sum;
  for (int fi = 0; fi < kFaceCount; ++fi) {
    const Face face = Face::from_index(fi);
    const auto& field = X.on(face)[i - 1];
    if (field.empty()) continue;
    const Complex<T> normal_factor =
        kernel_at(s.kinds[face.axis], alpha[face.axis], face.side);
    if (normal_factor == Complex<T>(0)) continue;
    for (const auto& term : field.terms()) {
      Complex<T> p = term.coef * normal_factor;
      for (int l = 0; l < 3; ++l) {
        if (l == face.axis) continue;
        p *= integrate_axis<T>(term.space[l], s.kinds[l], alpha[l]);
      }
      p *= time_kernel_integral(*term.time, a, horizon);
      sum.add(p);
    }
  }
  const Complex<T> v = sum.value();
  return s.sign < 0 ? -v : v;
}

// Projections of the data shared by E1_j and E2_j.
template <class T>
struct DataBlocks {
  std::array<Complex<T>, 3> vg{};  // \int g_i G_i^j
  std::array<Complex<T>, 3> vh{};  // \int h_i G_i^j
  std::array<Complex<T>, 3> s1{};  // surface-time block, pressure weight
  std::array<Complex<T>, 3> s2{};  // surface-time block, shear weight
};

template <class T>
DataBlocks<T> data_blocks(const DataBundle<T>& b, const Frequency<T>& alpha, int j,
                          const Speeds<T>& sp, bool pressure, bool shear) {
  DataBlocks<T> out;
  const T horizon(b.horizon);
  for (int i = 1; i <= 3; ++i) {
    out.vg[i - 1] = kernel_volume(b.g[i - 1], j, i, alpha);
    out.vh[i - 1] = kernel_volume(b.h[i - 1], j, i, alpha);
    if (pressure) out.s1[i - 1] = kernel_surface(b.traction, j, i, alpha, sp.a1, horizon);
    if (shear) out.s2[i - 1] = kernel_surface(b.traction, j, i, alpha, sp.a2, horizon);
  }
  return out;
}

// sum_i alpha_i v_i
template <class T>
Complex<T> weighted(const Frequency<T>& alpha, const std::array<Complex<T>, 3>& v) {
  CompensatedComplexSum<T> s;
  for (int i = 0; i < 3; ++i) s.add(alpha[i] * v[i]);
  return s.value();
}

template <class T>
Complex<T> assemble_e1(const DataBlocks<T>& blk, const Frequency<T>& alpha, int j,
                       const Speeds<T>& sp, const T& horizon) {
  const Complex<T> aj = alpha[j - 1];
  CompensatedComplexSum<T> e;
  e.add(-sp.a1 * aj * weighted(alpha, blk.vg));
  e.add(-stable_tanh(sp.a1 * horizon) * aj * weighted(alpha, blk.vh));
  e.add(-(aj * weighted(alpha, blk.s1)));
  return e.value();
}

template <class T>
Complex<T> assemble_e2(const DataBlocks<T>& blk, const Frequency<T>& alpha, int j,
                       const Speeds<T>& sp, const T& horizon) {
  const Complex<T> aj = alpha[j - 1];
  const T n2 = sp.norm0 * sp.norm0;
  CompensatedComplexSum<T> gblk;
  gblk.add(-n2 * blk.vg[j - 1]);
  gblk.add(-(aj * weighted(alpha, blk.vg)));
  CompensatedComplexSum<T> hblk;
  hblk.add(-n2 * blk.vh[j - 1]);
  hblk.add(-(aj * weighted(alpha, blk.vh)));
  CompensatedComplexSum<T> e;
  e.add(-sp.a2 * gblk.value());
  e.add(-stable_tanh(sp.a2 * horizon) * hblk.value());
  e.add(n2 * blk.s2[j - 1]);
  e.add(aj * weighted(alpha, blk.s2));
  return e.value();
}

void check_component(int j) {
  if (j < 1 || j > 3) throw std::invalid_argument("component j must be in 1..3");
}

template <class T>
void require_positive_norm(const Frequency<T>& alpha) {
  if (!(alpha.norm0() > 0)) {
    throw InadmissibleFrequency("need alpha.alpha < 0 strictly");
  }
}

template <class T>
bool negligible(const Complex<T>& d, const T& norm0) {
  using std::abs;
  return abs(d) <= T(1e-30) * (T(1) + norm0 * norm0);
}

}  // namespace

template <class T>
Complex<T> d_term(const DataBundle<T>& bundle, const Frequency<T>& alpha, Wave e) {
  require_positive_norm(alpha);
  const Speeds<T> sp = speeds(bundle.constants, alpha);
  const T a = e == Wave::Pressure ? sp.a1 : sp.a2;
  const T horizon(bundle.horizon);
  CompensatedComplexSum<T> sum;
  for (const auto& term : bundle.phi.field().terms()) {
    sum.add(term.coef * time_kernel_integral(*term.time, a, horizon));
  }
  return -(sp.norm0 * sp.norm0) * sum.value();
}

template <class T>
Complex<T> e_term(const DataBundle<T>& bundle, const Frequency<T>& alpha, Wave e, int j) {
  check_component(j);
  require_positive_norm(alpha);
  const Speeds<T> sp = speeds(bundle.constants, alpha);
  const bool p = e == Wave::Pressure;
  const auto blk = data_blocks(bundle, alpha, j, sp, p, !p);
  const T horizon(bundle.horizon);
  return p ? assemble_e1(blk, alpha, j, sp, horizon) : assemble_e2(blk, alpha, j, sp, horizon);
}

template <class T>
Complex<T> e_star_term(const FieldVector<T>& u_final, const LameConstants& constants,
                       double horizon, const Frequency<T>& alpha, Wave e, int j) {
  check_component(j);
  require_positive_norm(alpha);
  const Speeds<T> sp = speeds(constants, alpha);
  std::array<Complex<T>, 3> vu;
  for (int i = 1; i <= 3; ++i) vu[i - 1] = kernel_volume(u_final[i - 1], j, i, alpha);
  const Complex<T> aj = alpha[j - 1];
  const T th(horizon);
  if (e == Wave::Pressure) {
    return sp.a1 * stable_sech(sp.a1 * th) * aj * weighted(alpha, vu);
  }
  const T n2 = sp.norm0 * sp.norm0;
  CompensatedComplexSum<T> blk;
  blk.add(-n2 * vu[j - 1]);
  blk.add(-(aj * weighted(alpha, vu)));
  return sp.a2 * stable_sech(sp.a2 * th) * blk.value();
}

template <class T>
SpectralSample<T> h_sample(const DataBundle<T>& bundle, const Frequency<T>& alpha, int j) {
  check_component(j);
  require_positive_norm(alpha);
  SpectralSample<T> out;
  out.d1 = d_term(bundle, alpha, Wave::Pressure);
  out.d2 = d_term(bundle, alpha, Wave::Shear);
  if (negligible(out.d1, alpha.norm0()) || negligible(out.d2, alpha.norm0())) {
    out.zero_branch = true;
    return out;
  }
  const Speeds<T> sp = speeds(bundle.constants, alpha);
  const auto blk = data_blocks(bundle, alpha, j, sp, true, true);
  const T horizon(bundle.horizon);
  const Complex<T> e1 = assemble_e1(blk, alpha, j, sp, horizon);
  const Complex<T> e2 = assemble_e2(blk, alpha, j, sp, horizon);
  out.h = e1 / out.d1 + e2 / out.d2;
  return out;
}

template <class T>
T lemma1_residual(const DataBundle<T>& bundle, const FieldVector<T>& f,
                  const FieldVector<T>& u_final, const Frequency<T>& alpha, int j) {
  using std::abs;
  check_component(j);
  require_positive_norm(alpha);
  const Complex<T> d1 = d_term(bundle, alpha, Wave::Pressure);
  const Complex<T> d2 = d_term(bundle, alpha, Wave::Shear);
  if (negligible(d1, alpha.norm0()) || negligible(d2, alpha.norm0())) {
    throw std::domain_error("lemma1_residual: vanishing denominator");
  }
  const Speeds<T> sp = speeds(bundle.constants, alpha);
  const auto blk = data_blocks(bundle, alpha, j, sp, true, true);
  const T horizon(bundle.horizon);
  const Complex<T> e1 = assemble_e1(blk, alpha, j, sp, horizon) +
                        e_star_term(u_final, bundle.constants, bundle.horizon, alpha,
                                    Wave::Pressure, j);
  const Complex<T> e2 = assemble_e2(blk, alpha, j, sp, horizon) +
                        e_star_term(u_final, bundle.constants, bundle.horizon, alpha,
                                    Wave::Shear, j);
  const Complex<T> lhs = kernel_volume(f[j - 1], j, j, alpha);
  const Complex<T> rhs = e1 / d1 + e2 / d2;
  return abs(lhs - rhs) / (T(1) + abs(lhs));
}

template <class T>
Lemma2Record lemma2_diagnostic(const DataBundle<T>& bundle, const Frequency<T>& alpha) {
  using std::abs;
  require_positive_norm(alpha);
  Lemma2Record r;
  const Complex<T> d1 = d_term(bundle, alpha, Wave::Pressure);
  const Complex<T> d2 = d_term(bundle, alpha, Wave::Shear);
  r.d1 = to_double(d1);
  r.d2 = to_double(d2);
  const auto& c = bundle.constants;
  const double slow = std::min(1 / std::sqrt(c.mu()), 1 / std::sqrt(c.lambda() + 2 * c.mu()));
  r.bound = 0.25 * to_double(alpha.norm0()) * bundle.phi.witness().bound * slow;
  r.ok = to_double(T(abs(d1))) >= r.bound && to_double(T(abs(d2))) >= r.bound;
  return r;
}

#define LAME_INSTANTIATE_KERNEL(T)                                                      \
  template class Frequency<T>;                                                          \
  template T hyp_ratio<T>(const T&, const T&, const T&);                                \
  template T stable_tanh<T>(const T&);                                                  \
  template T stable_sech<T>(const T&);                                                  \
  template T time_kernel_integral<T>(const AxisFactor&, const T&, const T&);            \
  template Complex<T> d_term<T>(const DataBundle<T>&, const Frequency<T>&, Wave);       \
  template Complex<T> e_term<T>(const DataBundle<T>&, const Frequency<T>&, Wave, int);  \
  template Complex<T> e_star_term<T>(const FieldVector<T>&, const LameConstants&,       \
                                     double, const Frequency<T>&, Wave, int);           \
  template SpectralSample<T> h_sample<T>(const DataBundle<T>&, const Frequency<T>&,     \
                                         int);                                          \
  template T lemma1_residual<T>(const DataBundle<T>&, const FieldVector<T>&,            \
                                const FieldVector<T>&, const Frequency<T>&, int);       \
  template Lemma2Record lemma2_diagnostic<T>(const DataBundle<T>&, const Frequency<T>&);

LAME_INSTANTIATE_KERNEL(double)
LAME_INSTANTIATE_KERNEL(Extended)

}  // namespace lame
