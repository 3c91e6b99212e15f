#include "lame/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lame {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
ExampleInstance<T> with_horizon(ExampleInstance<T> inst, double horizon) {
  const auto& b = inst.bundle;
  DataBundle<T> nb(b.constants, horizon, SourceTimeProfile<T>(b.phi.field(), horizon),
                   b.traction, b.g, b.h);
  return ExampleInstance<T>{std::move(nb), std::move(inst.f), std::move(inst.u)};
}

template <class T>
ExampleInstance<T> make_instance(std::optional<int> n, XConvention conv, double scale,
                                 std::optional<double> horizon) {
  auto inst = n ? example_disturbed<T>(*n, conv, scale) : example_exact<T>(conv);
  if (horizon) return with_horizon(std::move(inst), *horizon);
  return inst;
}

template <class T>
ExampleInstance<T> zero_instance() {
  const auto ex = example_exact<T>();
  const auto& b = ex.bundle;
  DataBundle<T> zb(b.constants, b.horizon, b.phi, BoundaryTraction<T>{}, FieldVector<T>{},
                   FieldVector<T>{});
  return ExampleInstance<T>{std::move(zb), FieldVector<T>{}, FieldVector<T>{}};
}

template <class T>
FieldVector<T> final_state(const ExampleInstance<T>& inst) {
  FieldVector<T> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = inst.u[i].empty() ? BasicTrigField<T>{} : inst.u[i].at_time(T(inst.bundle.horizon));
  }
  return out;
}

bool admissible(double z, int n, int p) {
  return z * z > double(n * n + p * p) * M_PI * M_PI;
}

template <class T>
OracleReport oracle_impl(OracleInstance instance, int disturbance_n, const OracleGrid& grid) {
  OracleReport rep;
  rep.instance = instance;
  rep.disturbance_n = disturbance_n;
  for (XConvention conv : {XConvention::Paper, XConvention::Traction}) {
    const ExampleInstance<T> inst = instance == OracleInstance::Exact ? example_exact<T>(conv)
                                    : instance == OracleInstance::Disturbed
                                        ? example_disturbed<T>(disturbance_n, conv)
                                        : zero_instance<T>();
    const auto u_final = final_state(inst);
    double worst = 0;
    for (int z = grid.z_min; z <= grid.z_max; ++z) {
      for (int n = 0; n <= grid.np_max; ++n) {
        for (int p = 0; p <= grid.np_max; ++p) {
          if (!admissible(z, n, p)) continue;
          const auto alpha = Frequency<T>::canonical(T(z), n, p);
          for (int j : grid.components) {
            const double res = to_double(lemma1_residual(inst.bundle, inst.f, u_final, alpha, j));
            rep.records.push_back({conv, double(z), n, p, j, res});
            worst = std::max(worst, res);
          }
        }
      }
    }
    (conv == XConvention::Paper ? rep.max_paper : rep.max_traction) = worst;
    if (worst <= rep.threshold) rep.passing.push_back(conv);
  }
  return rep;
}

template <class T>
RunReport run_impl(const ExperimentConfig& config, Clock::time_point t0) {
  RunReport rep;
  rep.config = config;
  rep.convention = resolve_convention(config.x_sign);
  rep.r = config.r_override ? *config.r_override : select_r(config.epsilon);
  rep.amplification_log10 = amplification_log10(rep.r);

  const auto inst =
      make_instance<T>(config.disturbance_n, rep.convention, config.scale, config.horizon);
  rep.horizon = inst.bundle.horizon;
  rep.w2_ok = validate_w2(inst.bundle.constants, rep.horizon);
  rep.w2prime_ok = validate_w2prime(inst.bundle.constants, rep.horizon);
  if (!(rep.w2_ok && rep.w2prime_ok) && !config.force) {
    throw HypothesisViolation("observation time T = " + std::to_string(rep.horizon) +
                              " violates " + (rep.w2_ok ? "W2'" : "W2") +
                              "; rerun with --force to proceed");
  }

  // Reference data in double: f^0 and the disturbed source f^n.
  const auto reference = example_exact<double>(rep.convention).f;
  const auto disturbed =
      make_instance<double>(config.disturbance_n, rep.convention, config.scale, {}).f;

  const NodeSet nodes = build_nodes(rep.r);
  const auto u_final = final_state(inst);

  for (int j : config.components) {
    ComponentResult c;
    c.j = j;
    const auto grid = interp_grid(inst.bundle, j, nodes, Sampling::Mirrored, &c.stats);
    std::vector<Complex<double>> coef;
    coef.reserve(grid.size());
    for (const auto& v : grid) coef.push_back(to_double(v));
    c.table = CoefficientTable(rep.r, j, std::move(coef));
    auto assembled = assemble(c.table);
    c.series = std::move(assembled.series);
    c.max_imag = assembled.max_imag;
    const TrigField& f0 = reference[j - 1];
    c.exact_truncation = truncate(f0, rep.r);
    c.l2_error = l2_error(c.series, f0);
    c.h1_error = h1_error(c.series, f0);
    c.truncation_floor_l2 = l2_error(c.exact_truncation, f0);
    c.truncation_floor_h1 = h1_error(c.exact_truncation, f0);
    c.distance_to_truncation = l2_error(c.series, c.exact_truncation.to_field());
    c.unregularized_l2 = l2_norm(disturbed[j - 1] - f0);
    rep.max_imag = std::max(rep.max_imag, c.max_imag);

    for (int n = 0; n <= rep.r; ++n) {
      for (int p = 0; p <= rep.r; ++p) {
        for (double z : nodes.nodes) {
          if (z <= 0) continue;
          const auto alpha = Frequency<T>::canonical(T(z), n, p);
          const auto s = h_sample(inst.bundle, alpha, j);
          const auto l2 = lemma2_diagnostic(inst.bundle, alpha);
          SampleDiagnostic d;
          d.z = z;
          d.n = n;
          d.p = p;
          d.j = j;
          d.h = to_double(s.h);
          d.abs_d1 = std::abs(l2.d1);
          d.abs_d2 = std::abs(l2.d2);
          d.lemma2_bound = l2.bound;
          d.lemma2_ok = l2.ok;
          d.residual = to_double(lemma1_residual(inst.bundle, inst.f, u_final, alpha, j));
          rep.lemma1_max_residual = std::max(rep.lemma1_max_residual, d.residual);
          const double ratio = std::min(d.abs_d1, d.abs_d2) / l2.bound;
          rep.lemma2.min_ratio =
              rep.lemma2.checked == 0 ? ratio : std::min(rep.lemma2.min_ratio, ratio);
          ++rep.lemma2.checked;
          if (l2.ok) ++rep.lemma2.ok;
          rep.diagnostics.push_back(d);
        }
      }
    }
    rep.components.push_back(std::move(c));
  }
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

}  // namespace

OracleInstance parse_oracle_instance(const std::string& s) {
  if (s == "exact") return OracleInstance::Exact;
  if (s == "disturbed") return OracleInstance::Disturbed;
  if (s == "zero") return OracleInstance::Zero;
  throw std::invalid_argument("unknown oracle instance '" + s + "'");
}

std::string to_string(OracleInstance k) {
  switch (k) {
    case OracleInstance::Exact:
      return "exact";
    case OracleInstance::Disturbed:
      return "disturbed";
    case OracleInstance::Zero:
      return "zero";
  }
  return "exact";
}

OracleReport run_oracle(OracleInstance instance, int disturbance_n, Precision precision,
                        const OracleGrid& grid) {
  if (instance == OracleInstance::Disturbed && disturbance_n < 1) {
    throw std::invalid_argument("oracle: disturbed instance needs n >= 1");
  }
  const auto t0 = Clock::now();
  OracleReport rep = precision == Precision::Double
                         ? oracle_impl<double>(instance, disturbance_n, grid)
                         : oracle_impl<Extended>(instance, disturbance_n, grid);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

XConvention resolve_convention(const std::string& x_sign) {
  if (x_sign != "auto") return parse_x_convention(x_sign);
  const auto rep = run_oracle(OracleInstance::Exact);
  if (rep.passing.size() != 1) {
    throw OracleFailure("cannot select the X sign convention: " +
                        std::to_string(rep.passing.size()) +
                        " conventions close the Lemma 1 identity");
  }
  return rep.passing.front();
}

const ComponentResult& RunReport::component(int j) const {
  for (const auto& c : components)
    if (c.j == j) return c;
  throw std::out_of_range("component not in report");
}

RunReport run_example(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  return config.precision == Precision::Double ? run_impl<double>(config, t0)
                                               : run_impl<Extended>(config, t0);
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"j", c.j},
                     {"l2_error", c.l2_error},
                     {"l2_error_squared", c.l2_error * c.l2_error},
                     {"h1_error", c.h1_error},
                     {"h1_error_squared", c.h1_error * c.h1_error},
                     {"truncation_floor_l2", c.truncation_floor_l2},
                     {"truncation_floor_l2_squared", c.truncation_floor_l2 * c.truncation_floor_l2},
                     {"truncation_floor_h1", c.truncation_floor_h1},
                     {"truncation_floor_h1_squared", c.truncation_floor_h1 * c.truncation_floor_h1},
                     {"distance_to_truncation", c.distance_to_truncation},
                     {"unregularized_l2", c.unregularized_l2},
                     {"unregularized_l2_squared", c.unregularized_l2 * c.unregularized_l2},
                     {"max_imag", c.max_imag},
                     {"h_samples", c.stats.samples},
                     {"h_zero_branch", c.stats.zero_branch}});
  }
  return {{"config", to_json(r.config)},
          {"r", r.r},
          {"T", r.horizon},
          {"x_convention", to_string(r.convention)},
          {"hypotheses",
           {{"w2", r.w2_ok},
            {"w2_prime", r.w2prime_ok},
            {"forced", !(r.w2_ok && r.w2prime_ok)}}},
          {"amplification_log10", r.amplification_log10},
          {"lemma1_max_residual", r.lemma1_max_residual},
          {"lemma2", {{"checked", r.lemma2.checked}, {"ok", r.lemma2.ok}, {"min_ratio", r.lemma2.min_ratio}}},
          {"max_imag", r.max_imag},
          {"components", comps}};
}

SweepReport run_sweep(const ExperimentConfig& config, const std::vector<double>& scales,
                      const std::vector<int>& ns) {
  SweepReport rep;
  ExperimentConfig base = config;
  base.components = {config.components.front()};
  // Resolve the convention once rather than per row.
  base.x_sign = to_string(resolve_convention(config.x_sign));
  const int j = base.components.front();

  auto row_from = [&](const std::string& kind, double scale, int n) {
    ExperimentConfig c = base;
    c.disturbance_n = n;
    c.scale = scale;
    const auto run = run_example(c);
    const auto& comp = run.component(j);
    SweepRow row;
    row.kind = kind;
    row.scale = scale;
    row.n = n;
    row.l2_err2 = comp.l2_error * comp.l2_error;
    row.h1_err2 = comp.h1_error * comp.h1_error;
    row.distance_to_truncation = comp.distance_to_truncation;
    row.unregularized_l2_err2 = comp.unregularized_l2 * comp.unregularized_l2;
    const double closed = scale * disturbed_source_error(n);
    row.unregularized_closed_form2 = closed * closed;
    return row;
  };

  const int n_fixed = config.disturbance_n.value_or(10);
  std::vector<double> sorted = scales;
  std::sort(sorted.begin(), sorted.end());
  double prev = -1;
  for (double s : sorted) {
    rep.rows.push_back(row_from("scale", s, n_fixed));
    const double d = rep.rows.back().distance_to_truncation;
    if (prev >= 0 && d < prev * (1 - 1e-12)) rep.monotone = false;
    prev = d;
  }
  for (int n : ns) rep.rows.push_back(row_from("n", 1.0, n));
  return rep;
}

std::vector<Lemma5Row> run_lemma5_suite(const std::vector<int>& rs) {
  const auto exact = example_exact<double>();
  const auto disturbed = example_disturbed<double>(2);
  const std::vector<std::pair<std::string, TrigField>> fields{
      {"f1", exact.f[0]},
      {"f2", exact.f[1]},
      {"f3", exact.f[2]},
      {"perturbation_n2", disturbed.f[0] - exact.f[0]}};
  std::vector<Lemma5Row> out;
  for (const auto& [name, w] : fields) {
    for (int r : rs) out.push_back({name, lemma5_check(w, r)});
  }
  return out;
}

}  // namespace lame
