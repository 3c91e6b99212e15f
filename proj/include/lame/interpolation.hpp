#pragma once

/// \file
/// Regularization parameter, node set and Lagrange interpolation of the
/// data functional H along the line alpha_1 = -i z.
///
/// The coefficient F_eps(m, n, p) is the value at z = i m pi of the
/// polynomial interpolating z -> H_j(-i z, n pi, p pi) on the real nodes
/// B_r = {+-(5r + j) : j = 1..24r}. The evaluation point lies outside the
/// node hull's gap, so the basis polynomials are large; they are formed as
/// scaled products in an order that makes the two members of every
/// symmetric node pair complex conjugates of each other bit for bit.

#include "lame/spectral_kernel.hpp"

#include <vector>

namespace lame {

struct NodeSet {
  int r = 0;
  std::vector<double> nodes;  // ascending
};

/// The integer in (L, L + 1] with L = ln(1/eps)/60. Throws
/// std::invalid_argument unless 0 < eps < 1.
int select_r(double epsilon);
/// Same rule from ln(1/eps) directly, for eps below the double range.
int select_r_from_log(double log_inv_epsilon);

/// {+-(5r + j) : j = 1..24r}. Throws std::invalid_argument if r < 1.
NodeSet build_nodes(int r);

/// log10(48 r e^{30 r}), the noise amplification of the interpolation
/// step. Throws std::invalid_argument if r < 1.
double amplification_log10(int r);
inline double amplification_estimate(const NodeSet& nodes) {
  return amplification_log10(nodes.r);
}

/// Lagrange interpolation on a fixed set of distinct real nodes.
template <class T>
class LagrangeInterpolator {
 public:
  /// Throws std::invalid_argument on fewer than one node or duplicates.
  explicit LagrangeInterpolator(std::vector<T> nodes);

  std::size_t size() const { return nodes_.size(); }
  /// Nodes in ascending order; values passed to eval follow this order.
  const std::vector<T>& nodes() const { return nodes_; }

  /// Interpolant at z; returns values[j] if z is within 1e-14 relative of
  /// node j. Throws std::invalid_argument on a size mismatch.
  Complex<T> eval(const std::vector<Complex<T>>& values, const Complex<T>& z) const;

  /// The Lagrange basis l_0(z), ..., l_{N-1}(z).
  std::vector<Complex<T>> basis(const Complex<T>& z) const;

 private:
  std::vector<T> nodes_;
  std::vector<T> log_weight_;  // log of prod_{k != j} |x_j - x_k| / S
  std::vector<int> sign_;      // sign of prod_{k != j} (x_j - x_k)
  T scale_;                    // S = max |x_k|
};

/// lagrange_eval for unsorted (node, value) pairs; the pairs are sorted by
/// node first, so the result does not depend on the input order.
template <class T>
Complex<T> lagrange_eval(const std::vector<T>& nodes, const std::vector<Complex<T>>& values,
                         const Complex<T>& z);

template <class T>
Complex<T> lagrange_eval(const NodeSet& nodes, const std::vector<Complex<T>>& values,
                         const Complex<T>& z);

enum class Sampling {
  Mirrored,  // evaluate H at positive nodes, reuse for the negative ones
  Full,      // evaluate H at every node
};

/// Counts collected while sampling H.
struct SamplingStats {
  std::size_t samples = 0;
  std::size_t zero_branch = 0;
};

/// F_eps(m, n, p) = L[B_r, H_j(-i., n pi, p pi)](i m pi).
/// Requires 0 <= m, n, p <= nodes.r.
template <class T>
Complex<T> interp_coeff(const DataBundle<T>& bundle, int j, int m, int n, int p,
                        const NodeSet& nodes, Sampling sampling = Sampling::Mirrored,
                        SamplingStats* stats = nullptr);

/// All F_eps(m, n, p), 0 <= m, n, p <= r, flattened as (m (r+1) + n)(r+1) + p.
/// H is sampled once per (n, p) and reused for every m.
template <class T>
std::vector<Complex<T>> interp_grid(const DataBundle<T>& bundle, int j, const NodeSet& nodes,
                                    Sampling sampling = Sampling::Mirrored,
                                    SamplingStats* stats = nullptr);

}  // namespace lame
