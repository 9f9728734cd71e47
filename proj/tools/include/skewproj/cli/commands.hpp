#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewproj/bounds.hpp"
#include "skewproj/estimators.hpp"
#include "skewproj/sketch.hpp"

namespace skewproj::cli {

enum class Distribution { zipf, uniform };

struct GenConfig {
  std::uint64_t D = 10000;
  std::uint64_t n_updates = 20000;
  Distribution distribution = Distribution::zipf;
  double zipf_s = 1.1;
  double deletion_fraction = 0.0;
  std::uint64_t seed = 1;
};

// Parses "zipf", "zipf:<s>" or "uniform".
void parse_distribution(const std::string& spec, GenConfig& config);

// Writes a Turnstile stream whose final signal is non-negative: insertions add
// 1..10 to an index drawn from the distribution, deletions remove 1..A[i] from
// an index that currently holds mass.
void cmd_gen(const GenConfig& config, std::ostream& out);

SkewedSketch cmd_sketch(std::istream& stream, double alpha, std::uint32_t k, std::uint64_t seed,
                        Summation summation = Summation::compensated);

SkewedSketch cmd_merge(const std::vector<SkewedSketch>& sketches);

EstimateReport cmd_estimate(const SkewedSketch& sketch, Method method,
                            const EstimateOptions& options = {});

// Sum of A[i]^alpha over the aggregated stream. Throws PreconditionError
// naming the first index with A[i] < 0.
double cmd_exact(std::istream& stream, double alpha);

std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateReport& r);
// Parses one row produced by estimate_csv_row.
EstimateReport parse_estimate_csv_row(const std::string& row);

// Ten significant digits.
std::string format_real(double x);

struct ExperimentRow {
  double alpha = 0.0;
  std::string estimator;
  std::uint64_t k = 0;
  std::uint64_t trials = 0;
  std::optional<double> empirical_mean;
  std::optional<double> empirical_V;
  std::optional<double> theoretical_V;
  std::optional<double> epsilon;
  std::optional<double> empirical_tail;
  std::optional<double> bound_tail;
  std::string side;
};

std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentRow& row);
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct ExperimentConfig {
  std::uint64_t k = 100;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Per alpha: gm, hm (alpha < 1), mle05 (alpha = 0.5) and op rows with F = 1,
// followed by the symmetric-projection reference row.
std::vector<ExperimentRow> cmd_experiment_variance(const std::vector<double>& alpha_grid,
                                                   const ExperimentConfig& config);

// Left gm bounds use the finite normalizer at k0 = k unless `asymptotic_left`.
std::vector<ExperimentRow> cmd_experiment_tails(double alpha, bounds::BoundEstimator estimator,
                                                const std::vector<double>& epsilon_grid,
                                                const ExperimentConfig& config,
                                                bool asymptotic_left = false);

enum class TableMode { alpha, delta };

struct BoundsTableRow {
  std::string estimator;
  double alpha = 0.0;
  std::optional<double> offset;
  double epsilon = 0.0;
  bounds::Side side = bounds::Side::right;
  double rate = 0.0;
  double G = 0.0;
  double inner_constant = 0.0;
  std::optional<double> approximation;
};

// In delta mode each offset d yields right-tail rows at alpha = 1 - d and 1 + d.
std::vector<BoundsTableRow> cmd_bounds_table(const std::vector<double>& grid,
                                             const std::vector<double>& epsilon_grid,
                                             bounds::BoundEstimator estimator, TableMode mode);
void write_bounds_csv(std::ostream& out, const std::vector<BoundsTableRow>& rows);

}  // namespace skewproj::cli
