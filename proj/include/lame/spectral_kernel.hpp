#pragma once

/// \file
/// Complex-frequency projections of the Lame system. For a frequency
/// alpha in C^3 with alpha.alpha <= 0, testing the system against the
/// kernels G_k^j and the time weight sinh(a(T - t))/cosh(aT) turns the data
/// I = (phi, X, g, h) into
///
///     F(f_j)(alpha) = (E1_j + E1*_j)/D1 + (E2_j + E2*_j)/D2,
///
/// where the starred terms depend on the unobserved final state u(., T).
/// Dropping them gives the data functional H_j, which approximates the
/// cosine transform of f_j at large |alpha|_0.
///
/// All hyperbolic factors are evaluated in shifted-exponential form, and
/// the E-block sums are accumulated with compensated summation.

#include "lame/fields.hpp"
#include "lame/lame_data.hpp"

#include <array>
#include <stdexcept>

namespace lame {

class InadmissibleFrequency : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A frequency triple alpha with alpha.alpha real and <= 0.
template <class T>
class Frequency {
 public:
  /// Throws InadmissibleFrequency unless Im(alpha.alpha) and max(0,
  /// Re(alpha.alpha)) are below 1e-12 (1 + |alpha|^2).
  explicit Frequency(std::array<Complex<T>, 3> alpha);

  /// alpha = (-i z, n pi, p pi).
  static Frequency canonical(const T& z, int n, int p);

  const std::array<Complex<T>, 3>& alpha() const { return alpha_; }
  const Complex<T>& operator[](int i) const { return alpha_[i]; }
  /// |alpha|_0 = sqrt(-(alpha.alpha)).
  const T& norm0() const { return norm0_; }

 private:
  std::array<Complex<T>, 3> alpha_;
  T norm0_;
};

/// Which of the two wave speeds weights the time kernel:
/// Pressure uses sqrt(lambda + 2 mu), Shear uses sqrt(mu).
enum class Wave { Pressure = 1, Shear = 2 };

/// Kernel G_k^j (1-based j, k): a sign and a cos/sin choice per axis.
struct KernelIndex {
  int j = 1;
  int k = 1;
};

struct KernelSpec {
  int sign = 1;
  std::array<KernelKind, 3> kinds{KernelKind::Cos, KernelKind::Cos, KernelKind::Cos};
};

/// Diagonal: (+1, cos cos cos). Off-diagonal {j, k}: sin on axes j and k,
/// cos on the third, sign -1.
KernelSpec g_kernel(KernelIndex idx);

/// sinh(a (T - t)) / cosh(a T) as e^{-at}(1 - e^{-2a(T-t)})/(1 + e^{-2aT}).
template <class T>
T hyp_ratio(const T& a, const T& horizon, const T& t);

/// tanh(a T) and 1/cosh(a T) without overflow.
template <class T>
T stable_tanh(const T& x);
template <class T>
T stable_sech(const T& x);

/// \int_0^T b(t) sinh(a (T - t))/cosh(a T) dt for one time factor b, a > 0.
template <class T>
T time_kernel_integral(const AxisFactor& time_factor, const T& a, const T& horizon);

/// D_e(I)(alpha) = -|alpha|_0^2 \int_0^T phi(t) sinh(c|alpha|_0 (T - t)) /
/// cosh(c|alpha|_0 T) dt, c the wave speed. Requires |alpha|_0 > 0.
template <class T>
Complex<T> d_term(const DataBundle<T>& bundle, const Frequency<T>& alpha, Wave e);

/// E1_j(I)(alpha) (Pressure) or E2_j(I)(alpha) (Shear); j in 1..3.
template <class T>
Complex<T> e_term(const DataBundle<T>& bundle, const Frequency<T>& alpha, Wave e, int j);

/// E1*_j or E2*_j from the final state u(., T) (static fields).
template <class T>
Complex<T> e_star_term(const FieldVector<T>& u_final, const LameConstants& constants,
                       double horizon, const Frequency<T>& alpha, Wave e, int j);

/// One evaluation of H_j with the denominators it used.
template <class T>
struct SpectralSample {
  Complex<T> h{};
  Complex<T> d1{};
  Complex<T> d2{};
  bool zero_branch = false;
};

/// H_j(I)(alpha) = E1_j/D1 + E2_j/D2, or 0 when |D1| or |D2| is at most
/// 1e-30 (1 + |alpha|_0^2). Requires alpha.alpha < 0 strictly.
template <class T>
SpectralSample<T> h_sample(const DataBundle<T>& bundle, const Frequency<T>& alpha, int j);

template <class T>
Complex<T> h_functional(const DataBundle<T>& bundle, const Frequency<T>& alpha, int j) {
  return h_sample(bundle, alpha, j).h;
}

/// |LHS - RHS| / (1 + |LHS|) for the identity
/// F(f_j)(alpha) = (E1 + E1*)/D1 + (E2 + E2*)/D2.
/// Throws std::domain_error if a denominator vanishes.
template <class T>
T lemma1_residual(const DataBundle<T>& bundle, const FieldVector<T>& f,
                  const FieldVector<T>& u_final, const Frequency<T>& alpha, int j);

/// Lower bound on |D_e| from the W1 witness at large |alpha|_0:
/// (1/4) |alpha|_0 C min{1/sqrt(mu), 1/sqrt(lambda + 2 mu)}.
struct Lemma2Record {
  Complex<double> d1;
  Complex<double> d2;
  double bound = 0;
  bool ok = false;
};

/// Throws InadmissibleFrequency unless alpha.alpha < 0.
template <class T>
Lemma2Record lemma2_diagnostic(const DataBundle<T>& bundle, const Frequency<T>& alpha);

}  // namespace lame
