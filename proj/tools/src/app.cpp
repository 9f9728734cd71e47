#include "skewproj/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "skewproj/cli/commands.hpp"
#include "skewproj/error.hpp"

namespace skewproj::cli {
namespace {

std::unique_ptr<std::istream> open_input(const std::string& path, bool binary = false) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return std::make_unique<std::istringstream>(buf.str());
  }
  auto f = std::make_unique<std::ifstream>(path, binary ? std::ios::binary : std::ios::in);
  if (!*f) throw InputError("cannot open '" + path + "'");
  return f;
}

// Writes through `body` to the file at path, or to `out` for "-".
template <typename Body>
void with_output(const std::string& path, std::ostream& out, bool binary, Body body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw InputError("write to '" + path + "' failed");
}

bounds::BoundEstimator parse_bound_estimator(const std::string& s) {
  if (s == "gm") return bounds::BoundEstimator::gm;
  if (s == "hm") return bounds::BoundEstimator::hm;
  if (s == "mle05" || s == "mle") return bounds::BoundEstimator::mle05;
  throw ConfigError("tail bounds exist for gm, hm and mle05 only, got '" + s + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skewed stable random projections for frequency moments of Turnstile streams",
               "skewproj"};
  app.require_subcommand(1);

  GenConfig gen;
  std::string gen_dist = "zipf:1.1";
  std::string out_path = "-";
  std::string in_path = "-";
  double alpha = 0.5;
  double beta = 1.0;
  std::uint32_t k = 100;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  unsigned threads = 0;
  std::string method = "gm";
  bool plain = false;
  bool uncorrected = false;
  bool asymptotic_left = false;
  std::vector<std::string> inputs;
  std::vector<double> alpha_grid;
  std::vector<double> epsilon_grid;
  std::vector<double> offset_grid;
  std::string mode = "alpha";
  double epsilon = 0.1;
  double delta_prob = 0.05;

  auto* c_gen = app.add_subcommand("gen", "Generate a synthetic Turnstile stream");
  c_gen->add_option("--D", gen.D, "Index domain size")->capture_default_str();
  c_gen->add_option("--updates", gen.n_updates, "Number of updates")->capture_default_str();
  c_gen->add_option("--dist", gen_dist, "zipf, zipf:<s> or uniform")->capture_default_str();
  c_gen->add_option("--deletion-fraction", gen.deletion_fraction, "Share of deletions in [0,1)")
      ->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  c_gen->add_option("--out", out_path, "Output path ('-' for stdout)");

  auto* c_sketch = app.add_subcommand("sketch", "Build a sketch from a stream file");
  c_sketch->add_option("--in", in_path, "Stream file ('-' for stdin)");
  c_sketch->add_option("--alpha", alpha, "Moment order")->capture_default_str();
  c_sketch->add_option("--k", k, "Number of projections")->capture_default_str();
  c_sketch->add_option("--seed", seed, "Projection seed")->capture_default_str();
  c_sketch->add_option("--out", out_path, "Sketch file")->required();
  c_sketch->add_flag("--plain", plain, "Plain instead of compensated accumulator summation");

  auto* c_merge = app.add_subcommand("merge", "Merge sketches built with the same parameters");
  c_merge->add_option("inputs", inputs, "Sketch files")->required();
  c_merge->add_option("--out", out_path, "Merged sketch file")->required();

  auto* c_est = app.add_subcommand("estimate", "Estimate F_(alpha) from a sketch file");
  c_est->add_option("--in", in_path, "Sketch file")->required();
  c_est->add_option("--method", method, "gm, gm-beta, hm, mle05 or op")->capture_default_str();
  c_est->add_option("--beta", beta, "Skewness for gm-beta")->capture_default_str();
  c_est->add_flag("--uncorrected", uncorrected, "Skip the bias correction of hm and mle05");

  auto* c_exact = app.add_subcommand("exact", "Exact F_(alpha) of a stream file");
  c_exact->add_option("--in", in_path, "Stream file ('-' for stdin)");
  c_exact->add_option("--alpha", alpha, "Moment order")->capture_default_str();

  auto* c_var = app.add_subcommand("experiment-variance", "Monte Carlo variance factors");
  c_var->add_option("--alpha", alpha_grid, "Comma-separated alpha grid")
      ->delimiter(',')
      ->required();
  c_var->add_option("--k", k, "Samples per estimate")->capture_default_str();
  c_var->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  c_var->add_option("--seed", seed, "Master seed")->capture_default_str();
  c_var->add_option("--threads", threads, "Worker threads (0 = all cores)");
  c_var->add_option("--out", out_path, "CSV output path");

  auto* c_tail = app.add_subcommand("experiment-tails", "Monte Carlo tail frequencies vs bounds");
  c_tail->add_option("--alpha", alpha, "Moment order")->capture_default_str();
  c_tail->add_option("--method", method, "gm, hm or mle05")->capture_default_str();
  c_tail->add_option("--epsilon", epsilon_grid, "Comma-separated epsilon grid")
      ->delimiter(',')
      ->required();
  c_tail->add_option("--k", k, "Samples per estimate")->capture_default_str();
  c_tail->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  c_tail->add_option("--seed", seed, "Master seed")->capture_default_str();
  c_tail->add_option("--threads", threads, "Worker threads (0 = all cores)");
  c_tail->add_flag("--asymptotic-left", asymptotic_left,
                   "Use the k -> infinity normalizer for left gm bounds");
  c_tail->add_option("--out", out_path, "CSV output path");

  auto* c_table = app.add_subcommand("bounds-table", "Tabulate tail-bound constants");
  c_table->add_option("--mode", mode, "alpha or delta")->capture_default_str();
  c_table->add_option("--alpha", alpha_grid, "Alpha grid (alpha mode)")->delimiter(',');
  c_table->add_option("--offset", offset_grid, "Offsets |alpha - 1| (delta mode)")->delimiter(',');
  c_table->add_option("--epsilon", epsilon_grid, "Comma-separated epsilon grid")
      ->delimiter(',')
      ->required();
  c_table->add_option("--method", method, "gm, hm or mle05")->capture_default_str();
  c_table->add_option("--out", out_path, "CSV output path");

  auto* c_cplx = app.add_subcommand("complexity", "Sample size k for (epsilon, delta) accuracy");
  c_cplx->add_option("--alpha", alpha, "Moment order")->capture_default_str();
  c_cplx->add_option("--epsilon", epsilon, "Relative accuracy")->capture_default_str();
  c_cplx->add_option("--delta-prob", delta_prob, "Failure probability")->capture_default_str();
  c_cplx->add_option("--method", method, "gm, hm or mle05")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'skewproj --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*c_gen) {
      parse_distribution(gen_dist, gen);
      with_output(out_path, out, false, [&](std::ostream& o) { cmd_gen(gen, o); });
    } else if (*c_sketch) {
      auto in = open_input(in_path);
      const SkewedSketch s = cmd_sketch(*in, alpha, k, seed,
                                        plain ? Summation::plain : Summation::compensated);
      with_output(out_path, out, true, [&](std::ostream& o) { s.write(o); });
    } else if (*c_merge) {
      std::vector<SkewedSketch> sketches;
      for (const auto& path : inputs) {
        auto in = open_input(path, true);
        sketches.push_back(SkewedSketch::read(*in));
      }
      const SkewedSketch m = cmd_merge(sketches);
      with_output(out_path, out, true, [&](std::ostream& o) { m.write(o); });
    } else if (*c_est) {
      auto in = open_input(in_path, true);
      const SkewedSketch s = SkewedSketch::read(*in);
      EstimateOptions opts;
      opts.beta = beta;
      opts.corrected = !uncorrected;
      const EstimateReport r = cmd_estimate(s, parse_method(method), opts);
      out << estimate_csv_header() << '\n' << estimate_csv_row(r) << '\n';
    } else if (*c_exact) {
      auto in = open_input(in_path);
      out << format_real(cmd_exact(*in, alpha)) << '\n';
    } else if (*c_var) {
      const auto rows = cmd_experiment_variance(alpha_grid, {k, trials, seed, threads});
      with_output(out_path, out, false, [&](std::ostream& o) { write_experiment_csv(o, rows); });
    } else if (*c_tail) {
      const auto rows = cmd_experiment_tails(alpha, parse_bound_estimator(method), epsilon_grid,
                                             {k, trials, seed, threads}, asymptotic_left);
      with_output(out_path, out, false, [&](std::ostream& o) { write_experiment_csv(o, rows); });
    } else if (*c_table) {
      TableMode tm;
      if (mode == "alpha") {
        tm = TableMode::alpha;
      } else if (mode == "delta") {
        tm = TableMode::delta;
      } else {
        throw ConfigError("bounds-table: mode must be 'alpha' or 'delta'");
      }
      const auto& grid = tm == TableMode::alpha ? alpha_grid : offset_grid;
      if (grid.empty()) throw ConfigError("bounds-table: empty grid");
      const auto rows = cmd_bounds_table(grid, epsilon_grid, parse_bound_estimator(method), tm);
      with_output(out_path, out, false, [&](std::ostream& o) { write_bounds_csv(o, rows); });
    } else if (*c_cplx) {
      const bounds::ComplexityResult r =
          bounds::sample_complexity(alpha, epsilon, delta_prob, parse_bound_estimator(method));
      out << "k,G,epsilon,delta\n"
          << r.k << ',' << format_real(r.G) << ',' << format_real(r.epsilon) << ','
          << format_real(r.delta) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace skewproj::cli
