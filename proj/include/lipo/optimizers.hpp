#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipo/geometry.hpp"
#include "lipo/lipschitz.hpp"
#include "lipo/region_sampler.hpp"

namespace lipo {

enum class Algorithm { PRS, LIPO, ADALIPO };

struct OptimizerConfig {
  Algorithm kind = Algorithm::ADALIPO;
  /// Lipschitz constant, LIPO only.
  double k = 0.0;
  /// Exploration probability, AdaLIPO only.
  double p = 0.1;
  /// Mesh density, AdaLIPO only.
  std::optional<LipschitzMesh> mesh;
  /// Rejected candidates allowed per ask before the best-UB fallback.
  std::size_t max_rejects = 100000;
  std::uint64_t seed = 0;

  static OptimizerConfig prs(std::uint64_t seed = 0);
  static OptimizerConfig lipo(double k, std::uint64_t seed = 0);
  static OptimizerConfig adalipo(double p, double alpha, std::uint64_t seed = 0);

  /// Throws std::invalid_argument if the invariants of `kind` do not hold.
  void validate() const;
};

/// Canonical short label, e.g. "prs", "lipo:1", "adalipo:0.1,0.0025".
std::string label(const OptimizerConfig& config);

/// One entry per ask/tell round.
struct StepRecord {
  /// B_t; true for PRS draws and for every first step.
  bool explored = true;
  /// Lipschitz constant used by the decision rule at this step (0 if none).
  double k_used = 0.0;
  /// AdaLIPO estimate after the matching tell.
  double k_hat = 0.0;
  std::size_t rejects = 0;
  bool fallback = false;
};

/// Ask/tell engine for PRS, LIPO and AdaLIPO. Maximizes.
class Optimizer {
public:
  Optimizer(OptimizerConfig config, BoxDomain domain);

  /// Next point to evaluate. LIPO and AdaLIPO exploitation steps draw
  /// candidates until one satisfies the decision rule; after max_rejects
  /// rejections the candidate with the largest upper bound is returned and
  /// the step is flagged as a fallback. A second ask without a tell
  /// discards the pending step and draws a new one.
  Point ask();

  /// Records f(point). Throws std::invalid_argument on a dimension mismatch
  /// or non-finite value.
  void tell(const Point& point, double value);

  const OptimizerConfig& config() const noexcept { return config_; }
  const BoxDomain& domain() const noexcept { return domain_; }
  const EvaluationHistory& history() const noexcept { return history_; }
  const std::vector<StepRecord>& trace() const noexcept { return trace_; }
  double k_hat() const noexcept { return k_hat_; }
  std::size_t fallbacks() const noexcept { return fallbacks_; }

private:
  Point rejection_sample(double k, StepRecord& rec);

  OptimizerConfig config_;
  BoxDomain domain_;
  EvaluationHistory history_;
  RandomStream rng_;
  RegionSampler sampler_;
  double k_hat_ = 0.0;
  std::vector<StepRecord> trace_;
  std::optional<StepRecord> pending_;
  std::size_t fallbacks_ = 0;
};

struct RunResult {
  EvaluationHistory history;
  std::size_t best_index = 0;
  double best_value = 0.0;
  Point best_point;
  std::vector<StepRecord> trace;
  std::size_t fallbacks = 0;
};

using Objective = std::function<double(const Point&)>;

/// Exactly n evaluations of `objective`. Throws std::runtime_error if the
/// objective returns a non-finite value.
RunResult run(const OptimizerConfig& config, const Objective& objective,
              const BoxDomain& domain, std::size_t n);

}  // namespace lipo
