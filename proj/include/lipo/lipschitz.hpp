#pragma once

#include <cstddef>
#include <vector>

#include "lipo/geometry.hpp"

namespace lipo {

struct Evaluation {
  Point point;
  double value = 0.0;
};

/// Ordered record of evaluations with running max/min and the maximal
/// pairwise slope max_{i != j} |f_i - f_j| / |x_i - x_j|, maintained in O(t)
/// per insertion.
class EvaluationHistory {
public:
  EvaluationHistory() = default;

  /// Appends `e` and updates the caches. Pairs at zero distance are skipped
  /// and counted as degenerate; if their values differ the history is
  /// marked inconsistent. Throws std::invalid_argument on a dimension
  /// mismatch or a non-finite value.
  void insert(Evaluation e);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t dim() const noexcept { return entries_.empty() ? 0 : entries_.front().point.dim(); }

  const std::vector<Evaluation>& entries() const noexcept { return entries_; }
  const Evaluation& operator[](std::size_t i) const { return entries_[i]; }

  double max_value() const noexcept { return max_; }
  double min_value() const noexcept { return min_; }
  /// First index attaining max_value().
  std::size_t argmax() const noexcept { return argmax_; }
  /// 0 while fewer than two distinct points have been inserted.
  double max_slope() const noexcept { return max_slope_; }

  std::size_t degenerate_pairs() const noexcept { return degenerate_pairs_; }
  bool inconsistent() const noexcept { return inconsistent_; }

  /// min_i f(X_i) + k |x - X_i|. Throws std::logic_error on an empty history.
  double upper_bound(double k, const Point& x) const;

  /// Same minimum, but the scan stops as soon as the running minimum drops
  /// below `floor`. The result is exact whenever it is >= floor.
  double upper_bound_above(double k, const Point& x, double floor) const;

  /// LIPO decision rule: upper_bound(k, x) >= max_value(). Exact comparison.
  bool accepts(double k, const Point& x) const;

private:
  std::vector<Evaluation> entries_;
  double max_ = 0.0;
  double min_ = 0.0;
  std::size_t argmax_ = 0;
  double max_slope_ = 0.0;
  std::size_t degenerate_pairs_ = 0;
  bool inconsistent_ = false;
};

inline double upper_bound(const EvaluationHistory& h, double k, const Point& x) {
  return h.upper_bound(k, x);
}

inline bool accepts(const EvaluationHistory& h, double k, const Point& x) {
  return h.accepts(k, x);
}

inline EvaluationHistory max_slope_insert(EvaluationHistory h, Evaluation e) {
  h.insert(std::move(e));
  return h;
}

/// Geometric grid k_i = (1 + alpha)^i, i in Z, used to round slope
/// estimates up to a discrete Lipschitz constant.
class LipschitzMesh {
public:
  /// Throws std::invalid_argument unless alpha > 0.
  explicit LipschitzMesh(double alpha);

  double alpha() const noexcept { return alpha_; }

  /// Mesh exponent of the smallest mesh value >= slope (slope > 0).
  long index_for(double slope) const;

  /// (1+alpha)^i
  double value(long i) const;

  /// Smallest mesh value >= slope, and 0 for slope == 0.
  double round_up(double slope) const;

private:
  double alpha_;
  double log_base_;
};

inline double mesh_round_up(const LipschitzMesh& mesh, double slope) {
  return mesh.round_up(slope);
}

}  // namespace lipo
