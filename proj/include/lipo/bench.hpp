#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipo/objectives.hpp"
#include "lipo/optimizers.hpp"

namespace lipo {

/// Algorithm as named on the command line. AdaLIPO's alpha defaults to
/// 0.01/d once the problem dimension is known.
struct AlgorithmSpec {
  Algorithm kind = Algorithm::ADALIPO;
  double k = 0.0;
  double p = 0.1;
  std::optional<double> alpha;
  std::size_t max_rejects = 100000;

  /// Parses "prs", "lipo:K", "adalipo" or "adalipo:P,ALPHA".
  /// Throws std::invalid_argument on malformed input.
  static AlgorithmSpec parse(const std::string& text);

  OptimizerConfig resolve(std::size_t dim, std::uint64_t seed) const;
};

enum class ReportFormat { csv, json };

struct ProtocolConfig {
  /// Registry name, or "csv:PATH" for the kernel ridge regression objective.
  std::string problem;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t runs = 100;
  std::size_t budget = 1000;
  std::vector<double> targets{0.90, 0.95, 0.99};
  std::size_t mc_samples = 1000000;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  std::string output_path;
  ReportFormat output_format = ReportFormat::csv;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct TargetReport {
  std::string problem;
  std::string algorithm;
  double target = 0.0;
  double mean_tau = 0.0;
  double std_tau = 0.0;
  double fallback_rate = 0.0;
  double f_target_value = 0.0;
  double f_max_used = 0.0;
  double f_avg_used = 0.0;

  friend bool operator==(const TargetReport&, const TargetReport&) = default;
};

/// Registry lookup, or a dataset-backed objective for "csv:PATH".
ObjectiveSpec resolve_problem(const std::string& problem);

/// Mean of m evaluations at uniform points. Throws std::runtime_error on a
/// non-finite evaluation.
double estimate_average(const ObjectiveSpec& spec, std::size_t m, RandomStream& rng);

/// f_max - (f_max - f_avg)(1 - t). Throws std::invalid_argument if
/// f_max < f_avg or t is outside (0, 1].
double f_target(double f_max, double f_avg, double t);

/// First 1-based index i <= n with values[i-1] >= target, or n if none.
std::size_t stopping_time(std::span<const double> values, double target, std::size_t n);

/// Runs every algorithm `runs` times (run r seeded with base_seed + r),
/// then reports mean and population standard deviation of the stopping
/// times per target. f_max is the problem's known maximum when it has one,
/// otherwise the best value observed across all runs. Diagnostics go to
/// `log` when given. Output does not depend on `jobs`.
std::vector<TargetReport> run_protocol(const ProtocolConfig& config, std::ostream* log = nullptr);

void write_csv(std::span<const TargetReport> reports, std::ostream& out);
void write_json(std::span<const TargetReport> reports, std::ostream& out);
std::vector<TargetReport> parse_json(const std::string& text);

/// Sorts by (problem, algorithm, target) and writes to `path`. Throws
/// std::runtime_error on I/O failure.
void emit_report(std::vector<TargetReport> reports, ReportFormat format, const std::string& path);

}  // namespace lipo
