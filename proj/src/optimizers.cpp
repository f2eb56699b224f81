#include "lipo/optimizers.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lipo {

OptimizerConfig OptimizerConfig::prs(std::uint64_t seed) {
  OptimizerConfig c;
  c.kind = Algorithm::PRS;
  c.seed = seed;
  return c;
}

OptimizerConfig OptimizerConfig::lipo(double k, std::uint64_t seed) {
  OptimizerConfig c;
  c.kind = Algorithm::LIPO;
  c.k = k;
  c.seed = seed;
  return c;
}

OptimizerConfig OptimizerConfig::adalipo(double p, double alpha, std::uint64_t seed) {
  OptimizerConfig c;
  c.kind = Algorithm::ADALIPO;
  c.p = p;
  c.mesh = LipschitzMesh(alpha);
  c.seed = seed;
  return c;
}

void OptimizerConfig::validate() const {
  if (max_rejects == 0) throw std::invalid_argument("max_rejects must be positive");
  switch (kind) {
    case Algorithm::PRS:
      break;
    case Algorithm::LIPO:
      if (!(k >= 0.0) || !std::isfinite(k))
        throw std::invalid_argument("LIPO requires a finite k >= 0");
      break;
    case Algorithm::ADALIPO:
      if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("AdaLIPO requires 0 < p < 1");
      if (!mesh) throw std::invalid_argument("AdaLIPO requires a Lipschitz mesh");
      break;
  }
}

std::string label(const OptimizerConfig& config) {
  std::ostringstream os;
  os.precision(6);
  switch (config.kind) {
    case Algorithm::PRS:
      os << "prs";
      break;
    case Algorithm::LIPO:
      os << "lipo:" << config.k;
      break;
    case Algorithm::ADALIPO:
      os << "adalipo:" << config.p << ',' << (config.mesh ? config.mesh->alpha() : 0.0);
      break;
  }
  return os.str();
}

Optimizer::Optimizer(OptimizerConfig config, BoxDomain domain)
    : config_(std::move(config)),
      domain_(std::move(domain)),
      rng_(config_.seed),
      sampler_(domain_) {
  config_.validate();
}

Point Optimizer::rejection_sample(double k, StepRecord& rec) {
  rec.k_used = k;
  sampler_.update(history_, k);
  Point best_rejected;
  double best_ub = -std::numeric_limits<double>::infinity();
  const double target = history_.max_value();
  for (std::size_t r = 0; r < config_.max_rejects; ++r) {
    // Uniform over a superset of the potential maximizers (the whole domain
    // once the region is known to be empty).
    Point candidate = sampler_.propose(rng_);
    // Exact whenever it beats the best rejected bound so far, which is all
    // the fallback needs.
    const double ub = history_.upper_bound_above(k, candidate, best_ub);
    if (ub >= target) return candidate;
    sampler_.reject_last();
    ++rec.rejects;
    if (ub > best_ub) {
      best_ub = ub;
      best_rejected = std::move(candidate);
    }
  }
  rec.fallback = true;
  return best_rejected;
}

Point Optimizer::ask() {
  StepRecord rec;
  Point x;
  if (history_.empty()) {
    x = domain_.sample(rng_);
  } else {
    switch (config_.kind) {
      case Algorithm::PRS:
        x = domain_.sample(rng_);
        break;
      case Algorithm::LIPO:
        rec.explored = false;
        x = rejection_sample(config_.k, rec);
        break;
      case Algorithm::ADALIPO: {
        rec.explored = rng_.uniform01() < config_.p;
        if (rec.explored)
          x = domain_.sample(rng_);
        else
          x = rejection_sample(k_hat_, rec);
        break;
      }
    }
  }
  pending_ = rec;
  return x;
}

void Optimizer::tell(const Point& point, double value) {
  if (point.dim() != domain_.dim())
    throw std::invalid_argument("tell: dimension mismatch");
  history_.insert(Evaluation{point, value});
  StepRecord rec = pending_.value_or(StepRecord{});
  pending_.reset();
  if (config_.kind == Algorithm::ADALIPO) k_hat_ = config_.mesh->round_up(history_.max_slope());
  rec.k_hat = k_hat_;
  if (rec.fallback) ++fallbacks_;
  trace_.push_back(rec);
}

RunResult run(const OptimizerConfig& config, const Objective& objective,
              const BoxDomain& domain, std::size_t n) {
  if (n == 0) throw std::invalid_argument("run: budget must be >= 1");
  Optimizer opt(config, domain);
  for (std::size_t t = 0; t < n; ++t) {
    Point x = opt.ask();
    const double y = objective(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "run: objective returned a non-finite value at step " << t + 1;
      throw std::runtime_error(os.str());
    }
    opt.tell(x, y);
  }
  RunResult result;
  result.history = opt.history();
  result.best_index = result.history.argmax();
  result.best_value = result.history.max_value();
  result.best_point = result.history[result.best_index].point;
  result.trace = opt.trace();
  result.fallbacks = opt.fallbacks();
  return result;
}

}  // namespace lipo
