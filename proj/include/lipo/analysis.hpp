#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "lipo/geometry.hpp"
#include "lipo/objectives.hpp"

namespace lipo {

/// Parameters of the closed-form rate bounds. Each evaluator reads only the
/// fields it needs and throws std::invalid_argument when one is out of range.
struct BoundQuery {
  std::size_t n = 1;      // evaluation budget
  double delta = 0.1;     // confidence level, in (0, 1]
  std::size_t d = 1;      // dimension
  double k = 1.0;         // Lipschitz constant (k_{i*} for AdaLIPO)
  double diam = 1.0;      // diameter of the domain
  double rad = 0.5;       // inradius of the domain
  double kappa = 1.0;     // decrease exponent, >= 1
  double c_kappa = 1.0;   // decrease constant, > 0
  double max_dist = 1.0;  // max_x |x - x*|
  double p = 0.1;         // AdaLIPO exploration probability
  double gamma = 1.0;     // Gamma(f, k_{i*-1}), in (0, 1]
};

/// Covering radius of n uniform points, holding with probability 1 - delta:
/// diam ((ln(n/delta) + d ln d) / n)^{1/d}.
double prs_covering_bound(const BoundQuery& q);

/// LIPO gap with probability 1 - delta: k diam (ln(1/delta)/n)^{1/d}.
double lipo_gap_bound(const BoundQuery& q);

/// Gap that some k-Lipschitz function forces on LIPO with probability
/// 1 - delta: k rad (delta/n)^{1/d}.
double lipo_spike_lower(const BoundQuery& q);

/// LIPO gap under the decreasing condition. Exponential for kappa = 1,
/// polynomial for kappa > 1, with C = (c_kappa max_dist^{kappa-1} / 8k)^d.
double fast_rate_bound(const BoundQuery& q);

/// c_kappa rad^kappa exp(-(kappa/d)(n + sqrt(2 n ln(1/delta)) + ln(1/delta))).
/// n = 0 is accepted here.
double exp_lower_bound(const BoundQuery& q);

/// c1 = rad / (8 sqrt(d)), c2 = diam * d!.
std::pair<double, double> minimax_constants(std::size_t d, double diam, double rad);

/// AdaLIPO gap with probability 1 - delta:
/// k diam (5/p + 2 ln(delta/3) / (p ln(1 - gamma)))^{1/d} (ln(3/delta)/n)^{1/d},
/// with ln(0) = -inf so that gamma = 1 keeps only the 5/p term.
double adalipo_gap_bound(const BoundQuery& q);

/// Monte Carlo estimate of P(|f(X1) - f(X2)| / |X1 - X2| > k) over m
/// independent uniform pairs. Zero-distance pairs are redrawn.
double gamma_estimate(const ObjectiveSpec& spec, double k, std::size_t m, RandomStream& rng);

struct CoveringRadius {
  double radius = 0.0;  // max over grid nodes of the distance to the set
  double slack = 0.0;   // half-diagonal of one grid cell; sup <= radius + slack
};

/// Grid approximation of sup_{x in X} min_i |X_i - x|. The grid has
/// grid_per_dim nodes per axis and includes the domain corners.
CoveringRadius covering_radius(std::span<const Point> points, const BoxDomain& domain,
                               std::size_t grid_per_dim);

/// f(x*) - f(x) >= c_kappa |x - x*|^kappa - 1e-9 at every node of a regular
/// grid. Throws std::invalid_argument if the spec lacks a condition or a
/// known maximizer.
bool check_decreasing_condition(const ObjectiveSpec& spec, std::size_t grid_per_dim);

}  // namespace lipo
