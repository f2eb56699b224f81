#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace lipo {

/// A point of R^d. Coordinates are plain doubles.
class Point {
public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& vec() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const Point&, const Point&) = default;

private:
  std::vector<double> coords_;
};

/// Seedable random stream. Every consumer owns its stream; there is no
/// global generator. Draws are bit-reproducible for a given seed.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed);

  /// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
  double uniform01();

  /// Independent stream keyed by (this stream's seed, index).
  RandomStream split(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Axis-aligned box [lower_1, upper_1] x ... x [lower_d, upper_d].
class BoxDomain {
public:
  /// Throws std::invalid_argument unless d >= 1 and lower[i] < upper[i].
  BoxDomain(std::vector<double> lower, std::vector<double> upper);

  /// [lo, hi]^d
  static BoxDomain cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double side(std::size_t i) const { return upper_[i] - lower_[i]; }

  bool contains(const Point& p) const;

  /// Consumes exactly dim() draws from the stream.
  Point sample(RandomStream& rng) const;

  /// Length of the main diagonal.
  double diameter() const;
  /// Half of the shortest side.
  double inradius() const;
  /// Lebesgue measure.
  double volume() const;

private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

inline Point uniform_sample(const BoxDomain& domain, RandomStream& rng) {
  return domain.sample(rng);
}

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& p, const Point& q);

inline double diameter(const BoxDomain& domain) { return domain.diameter(); }
inline double inradius(const BoxDomain& domain) { return domain.inradius(); }

}  // namespace lipo
