#pragma once

// Direct kernel ridge regression cross-validation, written without Eigen as
// a cross-check of krr_cv_score. Shares only the fold assignment.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lipo/objectives.hpp"

namespace oracle {

// Gauss-Jordan elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline double krr_cv(const lipo::Dataset& data, double sigma, double lambda) {
  const auto fold = lipo::fold_assignment(data);
  const auto n = static_cast<std::size_t>(data.features.rows());
  const auto p = static_cast<std::size_t>(data.features.cols());
  auto kernel = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      const double d = data.features(static_cast<long>(i), static_cast<long>(c)) -
                       data.features(static_cast<long>(j), static_cast<long>(c));
      s += d * d;
    }
    return std::exp(-s / (2.0 * sigma * sigma));
  };
  double total = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    std::vector<std::size_t> tr, te;
    for (std::size_t i = 0; i < n; ++i) (fold[i] == k ? te : tr).push_back(i);
    const std::size_t m = tr.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m));
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) a[i][j] = kernel(tr[i], tr[j]);
      a[i][i] += static_cast<double>(m) * lambda;
      y[i] = data.targets(static_cast<long>(tr[i]));
    }
    const auto alpha = solve(a, y);
    for (std::size_t i : te) {
      double pred = 0.0;
      for (std::size_t j = 0; j < m; ++j) pred += alpha[j] * kernel(i, tr[j]);
      const double r = pred - data.targets(static_cast<long>(i));
      total += r * r;
    }
  }
  return -total / 10.0;
}

// 30 points of y = sin(x) on [0, 6], before standardization.
inline lipo::Dataset sin_dataset() {
  std::string csv = "x,y\n";
  for (int i = 0; i < 30; ++i) {
    const double x = 6.0 * i / 29.0;
    csv += std::to_string(x) + "," + std::to_string(std::sin(x)) + "\n";
  }
  return lipo::parse_dataset(csv, "sin30");
}

}  // namespace oracle
