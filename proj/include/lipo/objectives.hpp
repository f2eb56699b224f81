#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lipo/geometry.hpp"

namespace lipo {

/// Local decrease around the maximizer: f(x*) - f(x) >= c_kappa |x - x*|^kappa.
struct DecreasingCondition {
  double kappa = 1.0;
  double c_kappa = 1.0;
};

struct ObjectiveSpec {
  std::string name;
  BoxDomain domain;
  std::function<double(const Point&)> evaluator;
  std::optional<double> known_max;
  std::optional<Point> known_argmax;
  std::optional<double> known_lipschitz;
  std::optional<DecreasingCondition> condition;
};

/// Formula value at x. Throws std::domain_error when x is outside the
/// spec's domain; no clamping.
double evaluate(const ObjectiveSpec& spec, const Point& x);

/// Names accepted by registry_lookup, sorted.
std::vector<std::string> registry_names();

/// Throws std::invalid_argument for an unknown name.
ObjectiveSpec registry_lookup(const std::string& name);

/// f(x) = 1 - |x|_2 on [-radius, radius]^d.
ObjectiveSpec make_sphere_norm(std::size_t dim, double radius = 1.0);
/// f(x) = 1 - max_i |x_i| on [-radius, radius]^d.
ObjectiveSpec make_largest_coordinate(std::size_t dim, double radius = 1.0);

/// Weights 10^{(i-1)/4}, i = 1..4, of the linear slope benchmark.
std::vector<double> linear_slope_weights();

// ---------------------------------------------------------------------------
// Kernel ridge regression cross-validation objective

struct Dataset {
  Eigen::MatrixXd features;  // rows = samples
  Eigen::VectorXd targets;
  std::string name;
};

struct LoadReport {
  std::size_t dropped_rows = 0;
  std::vector<std::size_t> dropped_columns;  // zero-variance feature columns
  bool had_header = false;
};

/// Reads a numeric CSV whose last column is the target. A non-numeric first
/// line is treated as a header. Rows with missing or non-numeric cells are
/// dropped, zero-variance feature columns are dropped, features are
/// standardized (population variance) and targets are centered.
/// Throws std::runtime_error on an unreadable file or no usable rows.
Dataset load_dataset(const std::string& path, LoadReport* report = nullptr);
Dataset parse_dataset(const std::string& csv_text, const std::string& name,
                      LoadReport* report = nullptr);

inline constexpr std::size_t kFolds = 10;

/// Fold index (0..9) of each dataset row. Rows are ranked in lexicographic
/// order of (features, target), that ranking is shuffled with a stream keyed
/// by the dataset name, and folds are dealt round-robin. Permuting the rows
/// permutes the result accordingly.
std::vector<std::size_t> fold_assignment(const Dataset& data);

/// -(1/10) sum_k sum_{i in fold k} (fhat_k(X_i) - Y_i)^2 where fhat_k is
/// the Gaussian-kernel ridge regressor trained on the other nine folds:
/// alpha = (K + m lambda I)^{-1} y with m the training-set size.
double krr_cv_score(const Dataset& data, double sigma, double lambda);

/// krr_cv_score at sigma = 10^{x_1}, lambda = 10^{x_2}, for x in
/// [-2,4] x [-5,5]. Throws std::domain_error outside the domain.
double krr_cv_objective(const Dataset& data, const Point& x);

BoxDomain krr_domain();

/// Wraps a dataset as a maximization problem over krr_domain().
ObjectiveSpec make_krr_objective(Dataset data);

}  // namespace lipo
