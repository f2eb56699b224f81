#include "lipo/lipschitz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipo {

void EvaluationHistory::insert(Evaluation e) {
  if (!std::isfinite(e.value))
    throw std::invalid_argument("EvaluationHistory: non-finite value");
  if (!entries_.empty() && e.point.dim() != dim())
    throw std::invalid_argument("EvaluationHistory: dimension mismatch");
  if (e.point.dim() == 0)
    throw std::invalid_argument("EvaluationHistory: empty point");

  if (entries_.empty()) {
    max_ = min_ = e.value;
    argmax_ = 0;
  } else {
    for (const auto& old : entries_) {
      const double dist = distance(old.point, e.point);
      if (dist == 0.0) {
        ++degenerate_pairs_;
        if (old.value != e.value) inconsistent_ = true;
        continue;
      }
      const double slope = std::abs(old.value - e.value) / dist;
      if (slope > max_slope_) max_slope_ = slope;
    }
    if (e.value > max_) {
      max_ = e.value;
      argmax_ = entries_.size();
    }
    if (e.value < min_) min_ = e.value;
  }
  entries_.push_back(std::move(e));
}

double EvaluationHistory::upper_bound(double k, const Point& x) const {
  return upper_bound_above(k, x, -std::numeric_limits<double>::infinity());
}

double EvaluationHistory::upper_bound_above(double k, const Point& x, double floor) const {
  if (entries_.empty()) throw std::logic_error("upper_bound: empty history");
  if (k < 0.0) throw std::invalid_argument("upper_bound: negative Lipschitz constant");
  double best = std::numeric_limits<double>::infinity();
  // Recent evaluations sit closest to the current maximum, so they are the
  // likeliest to cut a candidate; scan newest first.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    const double ub = it->value + k * distance(x, it->point);
    if (ub < best) {
      best = ub;
      if (best < floor) break;
    }
  }
  return best;
}

bool EvaluationHistory::accepts(double k, const Point& x) const {
  return upper_bound_above(k, x, max_) >= max_;
}

LipschitzMesh::LipschitzMesh(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("LipschitzMesh: alpha must be > 0");
  log_base_ = std::log1p(alpha);
}

double LipschitzMesh::value(long i) const {
  return std::pow(1.0 + alpha_, static_cast<double>(i));
}

long LipschitzMesh::index_for(double slope) const {
  long i = static_cast<long>(std::ceil(std::log(slope) / log_base_));
  // Guard the ceil against rounding in log/exp so that value(i) >= slope
  // and value(i - 1) < slope both hold exactly.
  while (value(i) < slope) ++i;
  while (value(i - 1) >= slope) --i;
  return i;
}

double LipschitzMesh::round_up(double slope) const {
  if (slope < 0.0 || std::isnan(slope))
    throw std::invalid_argument("LipschitzMesh: negative slope");
  if (slope == 0.0) return 0.0;
  return value(index_for(slope));
}

}  // namespace lipo
