#include "lipo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lipo {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("bound query: ") + what);
}

void check_common(const BoundQuery& q) {
  require(q.n >= 1, "n must be >= 1");
  require(q.delta > 0.0 && q.delta <= 1.0, "delta must lie in (0, 1]");
  require(q.d >= 1, "d must be >= 1");
}

void check_condition(const BoundQuery& q) {
  require(q.kappa >= 1.0, "kappa must be >= 1");
  require(q.c_kappa > 0.0, "c_kappa must be > 0");
}

double inv_d(const BoundQuery& q) { return 1.0 / static_cast<double>(q.d); }

// Visits every node of a grid_per_dim^d lattice over the domain.
template <typename Fn>
void for_each_grid_node(const BoxDomain& domain, std::size_t grid_per_dim, Fn&& fn) {
  const std::size_t d = domain.dim();
  std::vector<std::size_t> idx(d, 0);
  Point x(d);
  const double steps = static_cast<double>(grid_per_dim - 1);
  while (true) {
    for (std::size_t i = 0; i < d; ++i)
      x[i] = idx[i] + 1 == grid_per_dim
                 ? domain.upper()[i]
                 : domain.lower()[i] + domain.side(i) * static_cast<double>(idx[i]) / steps;
    fn(x);
    std::size_t axis = 0;
    while (axis < d && ++idx[axis] == grid_per_dim) idx[axis++] = 0;
    if (axis == d) break;
  }
}

}  // namespace

double prs_covering_bound(const BoundQuery& q) {
  check_common(q);
  require(q.diam > 0.0, "diam must be > 0");
  const double d = static_cast<double>(q.d);
  const double n = static_cast<double>(q.n);
  return q.diam * std::pow((std::log(n / q.delta) + d * std::log(d)) / n, inv_d(q));
}

double lipo_gap_bound(const BoundQuery& q) {
  check_common(q);
  require(q.k >= 0.0, "k must be >= 0");
  require(q.diam > 0.0, "diam must be > 0");
  return q.k * q.diam * std::pow(std::log(1.0 / q.delta) / static_cast<double>(q.n), inv_d(q));
}

double lipo_spike_lower(const BoundQuery& q) {
  check_common(q);
  require(q.k >= 0.0, "k must be >= 0");
  require(q.rad > 0.0, "rad must be > 0");
  return q.k * q.rad * std::pow(q.delta / static_cast<double>(q.n), inv_d(q));
}

double fast_rate_bound(const BoundQuery& q) {
  check_common(q);
  check_condition(q);
  require(q.k > 0.0, "k must be > 0");
  require(q.diam > 0.0, "diam must be > 0");
  require(q.max_dist > 0.0, "max_dist must be > 0");
  const double d = static_cast<double>(q.d);
  const double n = static_cast<double>(q.n);
  const double c = std::pow(q.c_kappa * std::pow(q.max_dist, q.kappa - 1.0) / (8.0 * q.k), d);
  const double denom = std::log(n / q.delta) + 2.0 * std::pow(2.0 * std::sqrt(d), d);
  if (q.kappa == 1.0)
    return q.k * q.diam * std::exp(-c * n * std::log(2.0) / denom);
  const double growth = std::pow(2.0, d * (q.kappa - 1.0)) - 1.0;
  return q.k * q.diam * (std::pow(2.0, q.kappa) / 2.0) *
         std::pow(1.0 + c * n * growth / denom, -q.kappa / (d * (q.kappa - 1.0)));
}

double exp_lower_bound(const BoundQuery& q) {
  require(q.delta > 0.0 && q.delta <= 1.0, "delta must lie in (0, 1]");
  require(q.d >= 1, "d must be >= 1");
  require(q.rad > 0.0, "rad must be > 0");
  check_condition(q);
  const double n = static_cast<double>(q.n);
  const double l = std::log(1.0 / q.delta);
  return q.c_kappa * std::pow(q.rad, q.kappa) *
         std::exp(-(q.kappa / static_cast<double>(q.d)) * (n + std::sqrt(2.0 * n * l) + l));
}

std::pair<double, double> minimax_constants(std::size_t d, double diam, double rad) {
  require(d >= 1, "d must be >= 1");
  require(diam > 0.0 && rad > 0.0, "diam and rad must be > 0");
  double factorial = 1.0;
  for (std::size_t i = 2; i <= d; ++i) factorial *= static_cast<double>(i);
  return {rad / (8.0 * std::sqrt(static_cast<double>(d))), diam * factorial};
}

double adalipo_gap_bound(const BoundQuery& q) {
  check_common(q);
  require(q.k >= 0.0, "k must be >= 0");
  require(q.diam > 0.0, "diam must be > 0");
  require(q.p > 0.0 && q.p <= 1.0, "p must lie in (0, 1]");
  require(q.gamma > 0.0 && q.gamma <= 1.0, "gamma must lie in (0, 1]");
  double constant = 5.0 / q.p;
  if (q.gamma < 1.0) constant += 2.0 * std::log(q.delta / 3.0) / (q.p * std::log1p(-q.gamma));
  return q.k * q.diam * std::pow(constant, inv_d(q)) *
         std::pow(std::log(3.0 / q.delta) / static_cast<double>(q.n), inv_d(q));
}

double gamma_estimate(const ObjectiveSpec& spec, double k, std::size_t m, RandomStream& rng) {
  if (m == 0) throw std::invalid_argument("gamma_estimate: m must be >= 1");
  if (k < 0.0) throw std::invalid_argument("gamma_estimate: k must be >= 0");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Point a = spec.domain.sample(rng);
    Point b = spec.domain.sample(rng);
    double dist = distance(a, b);
    while (dist == 0.0) {
      b = spec.domain.sample(rng);
      dist = distance(a, b);
    }
    if (std::abs(spec.evaluator(a) - spec.evaluator(b)) / dist > k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(m);
}

CoveringRadius covering_radius(std::span<const Point> points, const BoxDomain& domain,
                               std::size_t grid_per_dim) {
  if (points.empty()) throw std::invalid_argument("covering_radius: empty point set");
  if (grid_per_dim < 2) throw std::invalid_argument("covering_radius: grid_per_dim must be >= 2");
  for (const auto& p : points)
    if (p.dim() != domain.dim()) throw std::invalid_argument("covering_radius: dimension mismatch");

  const std::size_t d = domain.dim();
  double worst2 = 0.0;
  for_each_grid_node(domain, grid_per_dim, [&](const Point& x) {
    double nearest2 = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double diff = x[i] - p[i];
        s += diff * diff;
      }
      if (s < nearest2) {
        nearest2 = s;
        if (nearest2 <= worst2) return;  // cannot raise the maximum
      }
    }
    worst2 = std::max(worst2, nearest2);
  });

  double cell2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double h = domain.side(i) / static_cast<double>(grid_per_dim - 1);
    cell2 += h * h;
  }
  return {std::sqrt(worst2), 0.5 * std::sqrt(cell2)};
}

bool check_decreasing_condition(const ObjectiveSpec& spec, std::size_t grid_per_dim) {
  if (!spec.condition)
    throw std::invalid_argument("check_decreasing_condition: " + spec.name + " has no condition");
  if (!spec.known_argmax)
    throw std::invalid_argument("check_decreasing_condition: " + spec.name + " has no maximizer");
  if (grid_per_dim < 2)
    throw std::invalid_argument("check_decreasing_condition: grid_per_dim must be >= 2");
  const Point& star = *spec.known_argmax;
  const double f_star = spec.evaluator(star);
  const auto [kappa, c] = *spec.condition;
  bool ok = true;
  for_each_grid_node(spec.domain, grid_per_dim, [&](const Point& x) {
    if (!ok) return;
    if (f_star - spec.evaluator(x) < c * std::pow(distance(x, star), kappa) - 1e-9) ok = false;
  });
  return ok;
}

}  // namespace lipo
