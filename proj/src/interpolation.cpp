#include "lame/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lame {

int select_r_from_log(double log_inv_epsilon) {
  if (!std::isfinite(log_inv_epsilon) || log_inv_epsilon <= 0) {
    throw std::invalid_argument("select_r: need ln(1/epsilon) > 0");
  }
  double l = log_inv_epsilon / 60;
  // ln(1/eps)/60 landing on an integer m means eps = e^{-60 m}; the double
  // nearest that value should count as the boundary, which belongs to the
  // interval above.
  const double m = std::round(l);
  if (std::abs(l - m) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, m)) l = m;
  return static_cast<int>(std::floor(l)) + 1;
}

int select_r(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("select_r: epsilon must lie in (0, 1)");
  }
  return select_r_from_log(-std::log(epsilon));
}

NodeSet build_nodes(int r) {
  if (r < 1) throw std::invalid_argument("build_nodes: r must be >= 1");
  NodeSet s;
  s.r = r;
  s.nodes.reserve(48 * static_cast<std::size_t>(r));
  for (int j = 24 * r; j >= 1; --j) s.nodes.push_back(-double(5 * r + j));
  for (int j = 1; j <= 24 * r; ++j) s.nodes.push_back(double(5 * r + j));
  return s;
}

double amplification_log10(int r) {
  if (r < 1) throw std::invalid_argument("amplification: r must be >= 1");
  return std::log10(48.0 * r) + 30.0 * r * std::log10(std::exp(1.0));
}

template <class T>
LagrangeInterpolator<T>::LagrangeInterpolator(std::vector<T> nodes) : nodes_(std::move(nodes)) {
  using std::abs;
  using std::log;
  if (nodes_.empty()) throw std::invalid_argument("interpolation needs at least one node");
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw std::invalid_argument("interpolation nodes must be distinct");
  }
  scale_ = T(0);
  for (const auto& x : nodes_) scale_ = std::max(scale_, T(abs(x)));
  if (scale_ == 0) scale_ = T(1);
  const std::size_t n = nodes_.size();
  log_weight_.resize(n);
  sign_.resize(n);
  std::vector<T> logs;
  logs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    logs.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) logs.push_back(log(T(abs(nodes_[j] - nodes_[k])) / scale_));
    }
    // Sorting makes the sum depend only on the multiset of distances.
    std::sort(logs.begin(), logs.end());
    CompensatedSum<T> s;
    for (const auto& v : logs) s.add(v);
    log_weight_[j] = s.value();
    sign_[j] = (n - 1 - j) % 2 == 0 ? 1 : -1;
  }
}

template <class T>
std::vector<Complex<T>> LagrangeInterpolator<T>::basis(const Complex<T>& z) const {
  using std::abs;
  using std::exp;
  const std::size_t n = nodes_.size();
  std::vector<Complex<T>> out(n);
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) {
    const T xj = nodes_[j];
    // Factor order: by |x_k|, same side as x_j first. The mirror node -x_j
    // then multiplies the mirrored factors in the same sequence.
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t k) {
      return std::pair<T, int>(abs(nodes_[k]), (nodes_[k] < 0) == (xj < 0) ? 0 : 1);
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    Complex<T> prod(T(1), T(0));
    for (std::size_t k : order) {
      if (k == j) continue;
      prod *= (z - nodes_[k]) / scale_;
    }
    const T w = exp(-log_weight_[j]);
    out[j] = sign_[j] > 0 ? prod * w : -(prod * w);
  }
  return out;
}

template <class T>
Complex<T> LagrangeInterpolator<T>::eval(const std::vector<Complex<T>>& values,
                                         const Complex<T>& z) const {
  using std::abs;
  const std::size_t n = nodes_.size();
  if (values.size() != n) throw std::invalid_argument("lagrange_eval: size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    const T tol = T(1e-14) * std::max(T(1), T(abs(nodes_[j])));
    if (abs(z - nodes_[j]) <= tol) return values[j];
  }
  const auto l = basis(z);
  // Pair the outermost nodes inward; for a symmetric node set and even data
  // each pair's imaginary parts cancel exactly on the imaginary axis.
  CompensatedComplexSum<T> sum;
  for (std::size_t i = 0, k = n - 1; i < k; ++i, --k) {
    sum.add(l[i] * values[i] + l[k] * values[k]);
  }
  if (n % 2 == 1) sum.add(l[n / 2] * values[n / 2]);
  return sum.value();
}

template <class T>
Complex<T> lagrange_eval(const std::vector<T>& nodes, const std::vector<Complex<T>>& values,
                         const Complex<T>& z) {
  if (nodes.size() != values.size()) throw std::invalid_argument("lagrange_eval: size mismatch");
  std::vector<std::size_t> idx(nodes.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
  std::vector<Complex<T>> sorted;
  sorted.reserve(idx.size());
  for (auto i : idx) sorted.push_back(values[i]);
  return LagrangeInterpolator<T>(nodes).eval(sorted, z);
}

template <class T>
Complex<T> lagrange_eval(const NodeSet& nodes, const std::vector<Complex<T>>& values,
                         const Complex<T>& z) {
  return lagrange_eval(std::vector<T>(nodes.nodes.begin(), nodes.nodes.end()), values, z);
}

namespace {

template <class T>
std::vector<Complex<T>> sample_line(const DataBundle<T>& bundle, int j, int n, int p,
                                    const std::vector<T>& nodes, Sampling sampling,
                                    SamplingStats* stats) {
  const std::size_t count = nodes.size();
  std::vector<Complex<T>> values(count);
  auto sample = [&](const T& z) {
    const auto s = h_sample(bundle, Frequency<T>::canonical(z, n, p), j);
    if (stats) {
      ++stats->samples;
      if (s.zero_branch) ++stats->zero_branch;
    }
    return s.h;
  };
  for (std::size_t i = 0; i < count; ++i) {
    if (sampling == Sampling::Full || nodes[i] > 0) {
      values[i] = sample(nodes[i]);
    }
  }
  if (sampling == Sampling::Mirrored) {
    // Nodes are ascending and symmetric: node i mirrors node count-1-i.
    for (std::size_t i = 0; i < count; ++i) {
      if (nodes[i] < 0) values[i] = values[count - 1 - i];
      if (nodes[i] == 0) values[i] = sample(nodes[i]);
    }
  }
  return values;
}

void check_index(int v, int r, const char* what) {
  if (v < 0 || v > r) {
    throw std::invalid_argument(std::string("interpolation: ") + what + " out of [0, r]");
  }
}

}  // namespace

template <class T>
std::vector<Complex<T>> interp_grid(const DataBundle<T>& bundle, int j, const NodeSet& nodes,
                                    Sampling sampling, SamplingStats* stats) {
  const int r = nodes.r;
  const std::vector<T> x(nodes.nodes.begin(), nodes.nodes.end());
  const LagrangeInterpolator<T> interp(x);
  const std::size_t side = static_cast<std::size_t>(r) + 1;
  std::vector<Complex<T>> out(side * side * side);
  for (int n = 0; n <= r; ++n) {
    for (int p = 0; p <= r; ++p) {
      const auto values = sample_line(bundle, j, n, p, interp.nodes(), sampling, stats);
      for (int m = 0; m <= r; ++m) {
        out[(m * side + n) * side + p] = interp.eval(values, Complex<T>(T(0), T(m) * pi<T>()));
      }
    }
  }
  return out;
}

template <class T>
Complex<T> interp_coeff(const DataBundle<T>& bundle, int j, int m, int n, int p,
                        const NodeSet& nodes, Sampling sampling, SamplingStats* stats) {
  check_index(m, nodes.r, "m");
  check_index(n, nodes.r, "n");
  check_index(p, nodes.r, "p");
  const std::vector<T> x(nodes.nodes.begin(), nodes.nodes.end());
  const LagrangeInterpolator<T> interp(x);
  const auto values = sample_line(bundle, j, n, p, interp.nodes(), sampling, stats);
  return interp.eval(values, Complex<T>(T(0), T(m) * pi<T>()));
}

#define LAME_INSTANTIATE_INTERP(T)                                                         \
  template class LagrangeInterpolator<T>;                                                  \
  template Complex<T> lagrange_eval<T>(const std::vector<T>&,                              \
                                       const std::vector<Complex<T>>&, const Complex<T>&); \
  template Complex<T> lagrange_eval<T>(const NodeSet&, const std::vector<Complex<T>>&,     \
                                       const Complex<T>&);                                 \
  template Complex<T> interp_coeff<T>(const DataBundle<T>&, int, int, int, int,            \
                                      const NodeSet&, Sampling, SamplingStats*);           \
  template std::vector<Complex<T>> interp_grid<T>(const DataBundle<T>&, int,               \
                                                  const NodeSet&, Sampling, SamplingStats*);

LAME_INSTANTIATE_INTERP(double)
LAME_INSTANTIATE_INTERP(Extended)

}  // namespace lame
