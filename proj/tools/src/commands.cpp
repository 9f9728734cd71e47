#include "skewproj/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "skewproj/cli/parallel.hpp"
#include "skewproj/cli/stream_io.hpp"
#include "skewproj/error.hpp"
#include "skewproj/numerics.hpp"
#include "skewproj/random.hpp"
#include "skewproj/stable.hpp"

namespace skewproj::cli {
namespace {

// Samples of one Monte Carlo trial: k draws of S(alpha, 1, 1) at counters (trial, j).
void draw_trial(const stable::StableSampler& sampler, std::uint64_t seed, std::uint64_t trial,
                std::vector<double>& out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    const random::CmsInput in = random::cms_input(seed, trial, j);
    out[j] = sampler(in.u, in.w);
  }
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& v) {
  numerics::CompensatedSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / static_cast<double>(v.size());
  numerics::CompensatedSum q;
  for (double x : v) q.add((x - mean) * (x - mean));
  const double var = v.size() > 1 ? q.value() / static_cast<double>(v.size() - 1) : 0.0;
  return {mean, var};
}

std::string opt(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

}  // namespace

void parse_distribution(const std::string& spec, GenConfig& config) {
  if (spec == "uniform") {
    config.distribution = Distribution::uniform;
    return;
  }
  if (spec == "zipf") {
    config.distribution = Distribution::zipf;
    return;
  }
  if (spec.rfind("zipf:", 0) == 0) {
    config.distribution = Distribution::zipf;
    try {
      config.zipf_s = std::stod(spec.substr(5));
    } catch (const std::exception&) {
      throw ConfigError("bad zipf exponent in '" + spec + "'");
    }
    if (!(config.zipf_s > 0.0)) throw ConfigError("zipf exponent must be positive");
    return;
  }
  throw ConfigError("unknown distribution '" + spec + "' (use zipf, zipf:<s> or uniform)");
}

void cmd_gen(const GenConfig& c, std::ostream& out) {
  if (c.D == 0) throw ConfigError("gen: D must be positive");
  if (!(c.deletion_fraction >= 0.0 && c.deletion_fraction < 1.0)) {
    throw ConfigError("gen: deletion fraction must lie in [0, 1)");
  }
  std::vector<double> cdf;
  if (c.distribution == Distribution::zipf) {
    cdf.resize(c.D);
    numerics::CompensatedSum s;
    for (std::uint64_t i = 0; i < c.D; ++i) {
      s.add(std::pow(static_cast<double>(i + 1), -c.zipf_s));
      cdf[i] = s.value();
    }
    for (double& v : cdf) v /= cdf.back();
  }
  auto draw_index = [&](double u) -> std::uint64_t {
    if (c.distribution == Distribution::uniform) {
      return std::min<std::uint64_t>(c.D, 1 + static_cast<std::uint64_t>(u * c.D));
    }
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return 1 + std::min<std::uint64_t>(c.D - 1, static_cast<std::uint64_t>(it - cdf.begin()));
  };

  std::unordered_map<std::uint64_t, std::uint64_t> mass;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<std::uint64_t> live;

  out << "# skewproj stream D=" << c.D << " updates=" << c.n_updates
      << " dist=" << (c.distribution == Distribution::zipf ? "zipf:" + format_exact(c.zipf_s)
                                                           : std::string("uniform"))
      << " deletion_fraction=" << format_exact(c.deletion_fraction) << " seed=" << c.seed
      << '\n';
  for (std::uint64_t t = 0; t < c.n_updates; ++t) {
    const random::UniformPair p = random::uniform_pair(c.seed, t, 0);
    const random::UniformPair q = random::uniform_pair(c.seed, t, 1);
    if (p.first < c.deletion_fraction && !live.empty()) {
      const std::size_t pos = std::min(live.size() - 1, static_cast<std::size_t>(p.second * live.size()));
      const std::uint64_t idx = live[pos];
      std::uint64_t& m = mass[idx];
      const std::uint64_t amount = 1 + std::min<std::uint64_t>(m - 1, static_cast<std::uint64_t>(q.first * m));
      m -= amount;
      if (m == 0) {
        const std::uint64_t moved = live.back();
        live[pos] = moved;
        slot[moved] = pos;
        live.pop_back();
        slot.erase(idx);
      }
      write_update(out, {idx, -static_cast<double>(amount)});
    } else {
      const std::uint64_t idx = draw_index(p.second);
      const std::uint64_t amount = 1 + static_cast<std::uint64_t>(q.first * 10.0);
      std::uint64_t& m = mass[idx];
      if (m == 0) {
        slot[idx] = live.size();
        live.push_back(idx);
      }
      m += amount;
      write_update(out, {idx, static_cast<double>(amount)});
    }
  }
}

SkewedSketch cmd_sketch(std::istream& stream, double alpha, std::uint32_t k, std::uint64_t seed,
                        Summation summation) {
  SkewedSketch sketch(alpha, k, seed, summation);
  StreamReader reader(stream);
  StreamUpdate u;
  while (reader.next(u)) sketch.update(u);
  return sketch;
}

SkewedSketch cmd_merge(const std::vector<SkewedSketch>& sketches) {
  if (sketches.empty()) throw ConfigError("merge: at least one sketch required");
  SkewedSketch out = sketches.front();
  for (std::size_t i = 1; i < sketches.size(); ++i) out.merge(sketches[i]);
  return out;
}

EstimateReport cmd_estimate(const SkewedSketch& sketch, Method method,
                            const EstimateOptions& options) {
  return estimate(sketch, method, options);
}

double cmd_exact(std::istream& stream, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("exact: alpha must be positive");
  std::map<std::uint64_t, double> signal;
  StreamReader reader(stream);
  StreamUpdate u;
  while (reader.next(u)) signal[u.index] += u.increment;
  numerics::CompensatedSum s;
  for (const auto& [index, value] : signal) {
    if (value < 0.0) {
      throw PreconditionError("exact: final A[" + std::to_string(index) +
                              "] is negative; the signal must be non-negative");
    }
    if (value > 0.0) s.add(alpha == 1.0 ? value : std::pow(value, alpha));
  }
  return s.value();
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string estimate_csv_header() { return "method,alpha,k,estimate,variance_factor,degenerate"; }

std::string estimate_csv_row(const EstimateReport& r) {
  std::ostringstream o;
  o << method_name(r.method) << ',' << format_real(r.alpha) << ',' << r.k << ','
    << format_real(r.estimate) << ',' << format_real(r.variance_factor) << ','
    << (r.degenerate ? 1 : 0);
  return o.str();
}

EstimateReport parse_estimate_csv_row(const std::string& row) {
  std::vector<std::string> f;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != 6) throw InputError("estimate row: expected 6 fields");
  EstimateReport r;
  try {
    r.method = parse_method(f[0]);
    r.alpha = std::stod(f[1]);
    r.k = std::stoull(f[2]);
    r.estimate = std::stod(f[3]);
    r.variance_factor = std::stod(f[4]);
    r.degenerate = f[5] == "1";
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw InputError("estimate row: bad number");
  }
  return r;
}

std::string experiment_csv_header() {
  return "alpha,estimator,k,trials,empirical_mean,empirical_V,theoretical_V,epsilon,"
         "empirical_tail,bound_tail,side";
}

std::string experiment_csv_row(const ExperimentRow& r) {
  std::ostringstream o;
  o << format_real(r.alpha) << ',' << r.estimator << ',' << r.k << ',' << r.trials << ','
    << opt(r.empirical_mean) << ',' << opt(r.empirical_V) << ',' << opt(r.theoretical_V) << ','
    << opt(r.epsilon) << ',' << opt(r.empirical_tail) << ',' << opt(r.bound_tail) << ','
    << r.side;
  return o.str();
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << experiment_csv_header() << '\n';
  for (const auto& r : rows) out << experiment_csv_row(r) << '\n';
}

std::vector<ExperimentRow> cmd_experiment_variance(const std::vector<double>& alpha_grid,
                                                   const ExperimentConfig& cfg) {
  if (cfg.trials < 2) throw ConfigError("experiment: at least 2 trials required");
  if (cfg.k < 2) throw ConfigError("experiment: k must be at least 2");
  std::vector<ExperimentRow> rows;
  for (double alpha : alpha_grid) {
    const stable::StableSampler sampler({alpha, 1.0, 1.0});
    std::vector<Method> methods = {Method::gm};
    if (alpha < 1.0) methods.push_back(Method::hm);
    if (alpha == 0.5) methods.push_back(Method::mle05);
    methods.push_back(Method::op);
    const OptimalPower power = estimators::solve_optimal_lambda(alpha);
    const std::size_t nm = methods.size();

    auto per_trial = run_trials<std::vector<double>>(cfg.trials, cfg.threads, [&](std::uint64_t t) {
      std::vector<double> x(cfg.k);
      draw_trial(sampler, cfg.seed, t, x);
      std::vector<double> est(nm);
      for (std::size_t m = 0; m < nm; ++m) {
        switch (methods[m]) {
          case Method::gm: est[m] = estimators::gm_estimate(x, alpha).estimate; break;
          case Method::hm: est[m] = estimators::hm_estimate(x, alpha, true).estimate; break;
          case Method::mle05: est[m] = estimators::mle05_estimate(x, true).estimate; break;
          case Method::op: est[m] = estimators::op_estimate(x, alpha, power).estimate; break;
          case Method::gm_beta: break;
        }
      }
      return est;
    });

    for (std::size_t m = 0; m < nm; ++m) {
      std::vector<double> v(cfg.trials);
      for (std::uint64_t t = 0; t < cfg.trials; ++t) v[t] = per_trial[t][m];
      const Moments mo = moments(v);
      ExperimentRow r;
      r.alpha = alpha;
      r.estimator = std::string(method_name(methods[m]));
      r.k = cfg.k;
      r.trials = cfg.trials;
      r.empirical_mean = mo.mean;
      r.empirical_V = static_cast<double>(cfg.k) * mo.variance;
      switch (methods[m]) {
        case Method::gm: r.theoretical_V = estimators::gm_variance_factor(alpha); break;
        case Method::hm: r.theoretical_V = estimators::hm_variance_factor(alpha); break;
        case Method::mle05: r.theoretical_V = 0.5; break;
        case Method::op: r.theoretical_V = power.g_min; break;
        case Method::gm_beta: break;
      }
      rows.push_back(r);
    }
    ExperimentRow ref;
    ref.alpha = alpha;
    ref.estimator = "symmetric-gm";
    ref.k = cfg.k;
    ref.trials = cfg.trials;
    ref.theoretical_V = bounds::symmetric_gm_reference_variance(alpha);
    rows.push_back(ref);
  }
  return rows;
}

std::vector<ExperimentRow> cmd_experiment_tails(double alpha, bounds::BoundEstimator estimator,
                                                const std::vector<double>& epsilon_grid,
                                                const ExperimentConfig& cfg,
                                                bool asymptotic_left) {
  using bounds::Side;
  if (cfg.trials < 1) throw ConfigError("experiment: at least 1 trial required");
  if (cfg.k < 2) throw ConfigError("experiment: k must be at least 2");
  if (estimator == bounds::BoundEstimator::hm && !(alpha < 1.0)) {
    throw ConfigError("experiment: hm requires alpha < 1");
  }
  if (estimator == bounds::BoundEstimator::mle05 && alpha != 0.5) {
    throw ConfigError("experiment: mle05 requires alpha = 0.5");
  }
  const stable::StableSampler sampler({alpha, 1.0, 1.0});
  const auto estimates = run_trials<double>(cfg.trials, cfg.threads, [&](std::uint64_t t) {
    std::vector<double> x(cfg.k);
    draw_trial(sampler, cfg.seed, t, x);
    switch (estimator) {
      case bounds::BoundEstimator::gm: return estimators::gm_estimate(x, alpha).estimate;
      case bounds::BoundEstimator::hm: return estimators::hm_estimate(x, alpha, false).estimate;
      case bounds::BoundEstimator::mle05: return estimators::mle05_estimate(x, false).estimate;
    }
    return 0.0;
  });

  std::vector<ExperimentRow> rows;
  const double n = static_cast<double>(cfg.trials);
  for (double eps : epsilon_grid) {
    for (Side side : {Side::right, Side::left}) {
      if (side == Side::left && !(eps < 1.0)) continue;
      bounds::TailBoundSpec spec;
      if (estimator == bounds::BoundEstimator::gm && side == Side::left && !asymptotic_left) {
        spec = bounds::gm_left_rate(alpha, eps, cfg.k);
      } else {
        spec = bounds::tail_rate(estimator, alpha, eps, side);
      }
      std::uint64_t hits = 0;
      for (double e : estimates) {
        if (side == Side::right ? e >= 1.0 + eps : e <= 1.0 - eps) ++hits;
      }
      ExperimentRow r;
      r.alpha = alpha;
      r.estimator = std::string(bounds::bound_estimator_name(estimator));
      r.k = cfg.k;
      r.trials = cfg.trials;
      r.epsilon = eps;
      r.empirical_tail = static_cast<double>(hits) / n;
      r.bound_tail = spec.bound(static_cast<double>(cfg.k));
      r.side = std::string(bounds::side_name(side));
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<BoundsTableRow> cmd_bounds_table(const std::vector<double>& grid,
                                             const std::vector<double>& epsilon_grid,
                                             bounds::BoundEstimator estimator, TableMode mode) {
  using bounds::Side;
  std::vector<BoundsTableRow> rows;
  auto emit = [&](double alpha, std::optional<double> offset) {
    for (double eps : epsilon_grid) {
      for (Side side : {Side::right, Side::left}) {
        if (side == Side::left && (!(eps < 1.0) || offset)) continue;
        const bounds::TailBoundSpec spec = bounds::tail_rate(estimator, alpha, eps, side);
        BoundsTableRow r;
        r.estimator = std::string(bounds::bound_estimator_name(estimator));
        r.alpha = alpha;
        r.offset = offset;
        r.epsilon = eps;
        r.side = side;
        r.rate = spec.rate;
        r.G = spec.G();
        r.inner_constant = spec.inner_constant;
        if (offset && side == Side::right) {
          try {
            r.approximation = bounds::near_one_approximation(eps, *offset);
          } catch (const DomainError&) {
          }
        }
        rows.push_back(r);
      }
    }
  };
  for (double g : grid) {
    if (mode == TableMode::alpha) {
      emit(g, std::nullopt);
    } else {
      if (!(g > 0.0 && g < 1.0)) throw DomainError("bounds table: offsets must lie in (0, 1)");
      emit(1.0 - g, g);
      emit(1.0 + g, g);
    }
  }
  return rows;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundsTableRow>& rows) {
  out << "estimator,alpha,offset,epsilon,side,rate,G,inner_constant,approx_G\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << format_real(r.alpha) << ',' << opt(r.offset) << ','
        << format_real(r.epsilon) << ',' << bounds::side_name(r.side) << ',' << format_real(r.rate)
        << ',' << format_real(r.G) << ',' << format_real(r.inner_constant) << ',' << opt(r.approximation)
        << '\n';
  }
}

}  // namespace skewproj::cli
