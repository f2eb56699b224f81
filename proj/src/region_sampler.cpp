#include "lipo/region_sampler.hpp"

#include <algorithm>
#include <cmath>

namespace lipo {

namespace {

constexpr std::uint32_t kSplitAfterRejects = 2;
}  // namespace

RegionSampler::RegionSampler(BoxDomain domain) : domain_(std::move(domain)), dim_(domain_.dim()) {
  reset();
}

void RegionSampler::reset() {
  nodes_.clear();
  boxes_.clear();
  std::vector<double> box(domain_.lower());
  box.insert(box.end(), domain_.upper().begin(), domain_.upper().end());
  add_node(std::move(box), -1);
  last_leaf_ = -1;
}

int RegionSampler::add_node(std::vector<double> box, int parent) {
  Node n;
  n.box = boxes_.size();
  n.parent = parent;
  double v = 1.0;
  for (std::size_t i = 0; i < dim_; ++i) v *= box[dim_ + i] - box[i];
  n.volume = n.live = v;
  boxes_.insert(boxes_.end(), box.begin(), box.end());
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size() - 1);
}

void RegionSampler::update(const EvaluationHistory& history, double k) {
  if (k > k_) reset();
  k_ = k;
  history_ = &history;
}

bool RegionSampler::has_volume() const { return nodes_[0].live > 0.0; }

double RegionSampler::live_fraction() const { return nodes_[0].live / nodes_[0].volume; }

bool RegionSampler::refresh_pruning(int id) {
  Node& n = nodes_[static_cast<std::size_t>(id)];
  if (n.pruned) return true;
  if (!history_ || history_->empty()) return false;
  const double best = history_->max_value();
  std::size_t start = n.checked_max == best ? n.checked : 0;
  const auto& entries = history_->entries();
  const double* l = lo(n);
  const double* h = hi(n);
  for (std::size_t i = start; i < entries.size(); ++i) {
    const Point& c = entries[i].point;
    double far2 = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double a = std::max(std::abs(c[j] - l[j]), std::abs(c[j] - h[j]));
      far2 += a * a;
    }
    // Every rounded operation of the pointwise bound is monotone in the
    // coordinate offsets, so this corner value is its exact maximum over the
    // cell and pruning never drops a point that the rule would accept.
    if (entries[i].value + k_ * std::sqrt(far2) < best) {
      n.pruned = true;
      break;
    }
  }
  n.checked = entries.size();
  n.checked_max = best;
  if (n.pruned) set_live_zero(id);
  return n.pruned;
}

void RegionSampler::set_live_zero(int id) {
  nodes_[static_cast<std::size_t>(id)].live = 0.0;
  refresh_ancestors(id);
}

void RegionSampler::refresh_ancestors(int id) {
  for (int p = nodes_[static_cast<std::size_t>(id)].parent; p >= 0;
       p = nodes_[static_cast<std::size_t>(p)].parent) {
    Node& pn = nodes_[static_cast<std::size_t>(p)];
    pn.live = nodes_[static_cast<std::size_t>(pn.left)].live +
              nodes_[static_cast<std::size_t>(pn.right)].live;
  }
}

void RegionSampler::split(int id) {
  const Node n = nodes_[static_cast<std::size_t>(id)];
  if (n.atomic) return;
  int axis = -1;
  double widest = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    const double l = boxes_[n.box + j];
    const double h = boxes_[n.box + dim_ + j];
    const double mid = 0.5 * (l + h);
    if (l < mid && mid < h && h - l > widest) {
      widest = h - l;
      axis = static_cast<int>(j);
    }
  }
  if (axis < 0) {
    settle_atomic(id);
    return;
  }
  const auto ax = static_cast<std::size_t>(axis);
  std::vector<double> a(boxes_.begin() + static_cast<std::ptrdiff_t>(n.box),
                        boxes_.begin() + static_cast<std::ptrdiff_t>(n.box + 2 * dim_));
  std::vector<double> b = a;
  const double mid = 0.5 * (a[ax] + a[dim_ + ax]);
  a[dim_ + ax] = mid;
  b[ax] = mid;
  const int left = add_node(std::move(a), id);
  const int right = add_node(std::move(b), id);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  refresh_pruning(left);
  refresh_pruning(right);
  Node& parent = nodes_[static_cast<std::size_t>(id)];
  parent.live = nodes_[static_cast<std::size_t>(left)].live + nodes_[static_cast<std::size_t>(right)].live;
  if (parent.live == 0.0) parent.pruned = true;
  refresh_ancestors(id);
}

void RegionSampler::settle_atomic(int id) {
  Node& n = nodes_[static_cast<std::size_t>(id)];
  n.atomic = true;
  // No coordinate can be bisected, so the corners are the only points a
  // proposal can return from this cell.
  Point corner(dim_);
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim_); ++mask) {
    for (std::size_t j = 0; j < dim_; ++j)
      corner[j] = (mask >> j) & 1 ? boxes_[n.box + dim_ + j] : boxes_[n.box + j];
    if (history_->accepts(k_, corner)) return;
  }
  n.pruned = true;
  set_live_zero(id);
}

Point RegionSampler::propose(RandomStream& rng) {
  while (true) {
    int id = 0;
    bool restart = false;
    while (true) {
      if (refresh_pruning(id)) {
        restart = true;
        break;
      }
      const Node& n = nodes_[static_cast<std::size_t>(id)];
      if (n.left < 0) break;
      const double l = nodes_[static_cast<std::size_t>(n.left)].live;
      const double r = nodes_[static_cast<std::size_t>(n.right)].live;
      if (l + r == 0.0) {
        restart = true;
        break;
      }
      id = rng.uniform01() * (l + r) < l ? n.left : n.right;
    }
    if (restart) {
      if (!has_volume()) return domain_.sample(rng);
      continue;
    }
    last_leaf_ = id;
    const Node& leaf = nodes_[static_cast<std::size_t>(id)];
    Point x(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const double a = boxes_[leaf.box + j];
      const double b = boxes_[leaf.box + dim_ + j];
      x[j] = std::min(a + (b - a) * rng.uniform01(), b);
    }
    return x;
  }
}

void RegionSampler::reject_last() {
  if (last_leaf_ < 0) return;
  Node& leaf = nodes_[static_cast<std::size_t>(last_leaf_)];
  if (leaf.left < 0 && !leaf.pruned && ++leaf.rejects >= kSplitAfterRejects) split(last_leaf_);
  last_leaf_ = -1;
}

}  // namespace lipo
