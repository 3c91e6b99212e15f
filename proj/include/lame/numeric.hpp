#pragma once

/// \file
/// Scalar types and small numeric kernels shared by the library: the
/// extended-precision type, compensated summation, complex trig built
/// from real functions, and a series-safe sinc.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>

namespace lame {

/// Software-emulated 100-decimal-digit float.
using Extended = boost::multiprecision::cpp_bin_float_100;

template <class T>
using Complex = std::complex<T>;

enum class Precision { Double, Extended };

Precision parse_precision(std::string_view name);
std::string_view to_string(Precision p);

template <class T>
inline T pi() {
  return boost::math::constants::pi<T>();
}

template <class T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

template <class T>
inline Complex<double> to_double(const Complex<T>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class T>
inline T epsilon_of() {
  return std::numeric_limits<T>::epsilon();
}

/// Neumaier's variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  void add(const T& x) {
    using std::abs;
    const T t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

template <class T>
class CompensatedComplexSum {
 public:
  void add(const Complex<T>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedComplexSum& operator+=(const Complex<T>& z) {
    add(z);
    return *this;
  }
  Complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

// Complex sin/cos through real functions. The real library functions are
// exactly odd/even, so these inherit exact parity under z -> -z.
template <class T>
inline Complex<T> csin(const Complex<T>& z) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}

template <class T>
inline Complex<T> ccos(const Complex<T>& z) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {cos(z.real()) * cosh(z.imag()), -(sin(z.real()) * sinh(z.imag()))};
}

/// sin(z)/z, with the Taylor series near the origin.
template <class T>
Complex<T> sinc(const Complex<T>& z) {
  using std::abs;
  if (abs(z) >= T(1)) {
    return csin(z) / z;
  }
  const Complex<T> z2 = z * z;
  Complex<T> term(T(1), T(0));
  Complex<T> sum = term;
  const T tol = epsilon_of<T>() / 4;
  for (int k = 1; k < 200; ++k) {
    term *= -z2 / T((2 * k) * (2 * k + 1));
    sum += term;
    if (abs(term) <= tol * abs(sum)) break;
  }
  return sum;
}

/// Canonical representative of {a, -a}: real part positive, or real part
/// zero and imaginary part nonnegative. Returns true if a was negated.
template <class T>
inline bool canonicalize_sign(Complex<T>& a) {
  if (a.real() < 0 || (a.real() == 0 && a.imag() < 0)) {
    a = -a;
    return true;
  }
  return false;
}

}  // namespace lame
