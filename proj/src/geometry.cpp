#include "lipo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lipo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : seed_(seed), engine_(splitmix64(seed)) {}

double RandomStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

RandomStream RandomStream::split(std::uint64_t index) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("BoxDomain: dimension must be >= 1");
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("BoxDomain: lower/upper dimension mismatch");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
      throw std::invalid_argument("BoxDomain: empty interior along axis " + std::to_string(i));
  }
}

BoxDomain BoxDomain::cube(std::size_t dim, double lo, double hi) {
  return BoxDomain(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

bool BoxDomain::contains(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!(p[i] >= lower_[i] && p[i] <= upper_[i])) return false;
  return true;
}

Point BoxDomain::sample(RandomStream& rng) const {
  Point p(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    p[i] = lower_[i] + side(i) * rng.uniform01();
  return p;
}

double BoxDomain::diameter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += side(i) * side(i);
  return std::sqrt(s);
}

double BoxDomain::inradius() const {
  double m = side(0);
  for (std::size_t i = 1; i < dim(); ++i) m = std::min(m, side(i));
  return 0.5 * m;
}

double BoxDomain::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= side(i);
  return v;
}

double distance(const Point& p, const Point& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(p.dim()) +
                                " vs " + std::to_string(q.dim()) + ")");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace lipo
