#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lipo/geometry.hpp"
#include "lipo/lipschitz.hpp"

namespace lipo {

/// Proposal distribution for uniform sampling of the potential maximizers
/// {x : min_i f_i + k |x - X_i| >= max_i f_i}.
///
/// The region is the domain minus the balls {x : f_i + k |x - X_i| < max}.
/// Cells of an adaptive kd-partition that lie inside one such ball are
/// pruned, and cells that keep producing rejected candidates are split down
/// to adjacent doubles. Pruning uses the same rounded arithmetic as
/// EvaluationHistory::accepts, so it is exact rather than approximate.
/// propose() is uniform over the union of live cells, a superset of the
/// region, so running the exact decision rule on its output yields points
/// that are uniform over the region.
class RegionSampler {
public:
  explicit RegionSampler(BoxDomain domain);

  /// Synchronizes with the history and constant k. Pruning stays valid while
  /// k does not increase; a larger k resets the partition.
  void update(const EvaluationHistory& history, double k);

  /// False when every cell has been pruned, i.e. the region is empty.
  bool has_volume() const;

  /// Uniform draw over the live cells.
  Point propose(RandomStream& rng);

  /// Feedback for the cell of the last proposal.
  void reject_last();

  /// Live volume relative to the domain volume.
  double live_fraction() const;
  std::size_t cell_count() const noexcept { return nodes_.size(); }

private:
  struct Node {
    std::size_t box = 0;  // offset of [lower..., upper...] in boxes_
    int parent = -1;
    int left = -1;
    int right = -1;
    double volume = 0.0;
    double live = 0.0;
    std::size_t checked = 0;  // balls tested so far
    double checked_max = 0.0;  // running max at that time
    std::uint32_t rejects = 0;
    bool pruned = false;
    bool atomic = false;  // no coordinate can be bisected further
  };

  void reset();
  int add_node(std::vector<double> box, int parent);
  bool refresh_pruning(int id);
  void set_live_zero(int id);
  void refresh_ancestors(int id);
  void split(int id);
  void settle_atomic(int id);

  const double* lo(const Node& n) const { return &boxes_[n.box]; }
  const double* hi(const Node& n) const { return &boxes_[n.box + dim_]; }

  BoxDomain domain_;
  std::size_t dim_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;
  const EvaluationHistory* history_ = nullptr;
  double k_ = 0.0;
  int last_leaf_ = -1;
};

}  // namespace lipo
