#include "lipo/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lipo {

namespace {

constexpr double kPi = std::numbers::pi;

// Maximum of HolderTable on [-10,10]^2: a 4001x4001 grid search refined by a
// stationary-point solve in 40-digit arithmetic (19.2085025678867318...),
// rounded up.
constexpr double kHolderTableMax = 19.20850256788675;
constexpr double kHolderTableArgmax1 = 8.055023475736563;
constexpr double kHolderTableArgmax2 = 9.664590019241273;

double holder_table(const Point& x) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  return std::abs(std::sin(x[0])) * std::abs(std::cos(x[1])) * std::exp(std::abs(1.0 - r / kPi));
}

double rosenbrock(const Point& x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.dim(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return -s;
}

double sphere(const Point& x) {
  double s = 0.0;
  for (double xi : x) {
    const double d = xi - kPi / 16.0;
    s += d * d;
  }
  return -std::sqrt(s);
}

double deb_n1(const Point& x) {
  double s = 0.0;
  for (double xi : x) s += std::pow(std::sin(5.0 * kPi * xi), 6);
  return s / static_cast<double>(x.dim());
}

ObjectiveSpec holder_table_spec() {
  ObjectiveSpec s{"holder_table", BoxDomain::cube(2, -10.0, 10.0), holder_table, {}, {}, {}, {}};
  s.known_max = kHolderTableMax;
  // One of four symmetric maximizers, so no decreasing condition applies.
  s.known_argmax = Point{kHolderTableArgmax1, kHolderTableArgmax2};
  return s;
}

ObjectiveSpec rosenbrock_spec() {
  ObjectiveSpec s{"rosenbrock", BoxDomain::cube(3, -2.048, 2.048), rosenbrock, {}, {}, {}, {}};
  s.known_max = 0.0;
  s.known_argmax = Point{1.0, 1.0, 1.0};
  return s;
}

ObjectiveSpec sphere_spec() {
  ObjectiveSpec s{"sphere", BoxDomain::cube(4, 0.0, 1.0), sphere, {}, {}, {}, {}};
  s.known_max = 0.0;
  s.known_argmax = Point(4, kPi / 16.0);
  s.known_lipschitz = 1.0;
  s.condition = DecreasingCondition{1.0, 1.0};
  return s;
}

ObjectiveSpec linear_slope_spec() {
  const std::vector<double> w = linear_slope_weights();
  auto f = [w](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (x[i] - 5.0);
    return s;
  };
  ObjectiveSpec s{"linear_slope", BoxDomain::cube(4, -5.0, 5.0), f, {}, {}, {}, {}};
  double norm2 = 0.0;
  for (double wi : w) norm2 += wi * wi;
  s.known_max = 0.0;
  s.known_argmax = Point(4, 5.0);
  s.known_lipschitz = std::sqrt(norm2);
  // <w, x* - x> >= min_i w_i |x* - x|_1 >= min_i w_i |x* - x|_2, min_i w_i = 1.
  s.condition = DecreasingCondition{1.0, 1.0};
  return s;
}

ObjectiveSpec deb_n1_spec() {
  ObjectiveSpec s{"deb_n1", BoxDomain::cube(5, -5.0, 5.0), deb_n1, {}, {}, {}, {}};
  s.known_max = 1.0;
  s.known_argmax = Point(5, 0.1);
  return s;
}

ObjectiveSpec linear_1d_spec() {
  ObjectiveSpec s{"linear_1d", BoxDomain::cube(1, 0.0, 1.0), [](const Point& x) { return x[0]; },
                  {}, {}, {}, {}};
  s.known_max = 1.0;
  s.known_argmax = Point{1.0};
  s.known_lipschitz = 1.0;
  s.condition = DecreasingCondition{1.0, 1.0};
  return s;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n\"");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

double evaluate(const ObjectiveSpec& spec, const Point& x) {
  if (!spec.domain.contains(x))
    throw std::domain_error("evaluate: point outside the domain of " + spec.name);
  return spec.evaluator(x);
}

std::vector<double> linear_slope_weights() {
  std::vector<double> w(4);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(10.0, static_cast<double>(i) / 4.0);
  return w;
}

ObjectiveSpec make_sphere_norm(std::size_t dim, double radius) {
  auto f = [](const Point& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return 1.0 - std::sqrt(s);
  };
  ObjectiveSpec s{"sphere_norm", BoxDomain::cube(dim, -radius, radius), f, {}, {}, {}, {}};
  s.known_max = 1.0;
  s.known_argmax = Point(dim, 0.0);
  s.known_lipschitz = 1.0;
  s.condition = DecreasingCondition{1.0, 1.0};
  return s;
}

ObjectiveSpec make_largest_coordinate(std::size_t dim, double radius) {
  auto f = [](const Point& x) {
    double m = 0.0;
    for (double xi : x) m = std::max(m, std::abs(xi));
    return 1.0 - m;
  };
  ObjectiveSpec s{"largest_coordinate", BoxDomain::cube(dim, -radius, radius), f, {}, {}, {}, {}};
  s.known_max = 1.0;
  s.known_argmax = Point(dim, 0.0);
  s.known_lipschitz = 1.0;
  s.condition = DecreasingCondition{1.0, 1.0 / std::sqrt(static_cast<double>(dim))};
  return s;
}

std::vector<std::string> registry_names() {
  return {"deb_n1",   "holder_table", "largest_coordinate", "linear_1d",
          "linear_slope", "rosenbrock", "sphere",       "sphere_norm"};
}

ObjectiveSpec registry_lookup(const std::string& name) {
  if (name == "holder_table") return holder_table_spec();
  if (name == "rosenbrock") return rosenbrock_spec();
  if (name == "sphere") return sphere_spec();
  if (name == "linear_slope") return linear_slope_spec();
  if (name == "deb_n1") return deb_n1_spec();
  if (name == "sphere_norm") return make_sphere_norm(2);
  if (name == "largest_coordinate") return make_largest_coordinate(2);
  if (name == "linear_1d") return linear_1d_spec();
  throw std::invalid_argument("unknown objective '" + name + "'");
}

// ---------------------------------------------------------------------------

Dataset parse_dataset(const std::string& csv_text, const std::string& name, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};

  std::istringstream is(csv_text);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    std::vector<double> row;
    bool ok = true;
    for (const auto& c : cells) {
      auto v = parse_number(c);
      if (!v) {
        ok = false;
        break;
      }
      row.push_back(*v);
    }
    if (first) {
      first = false;
      width = cells.size();
      if (!ok && std::none_of(cells.begin(), cells.end(),
                              [](const std::string& c) { return parse_number(c).has_value(); })) {
        rep.had_header = true;
        continue;
      }
    }
    if (!ok || cells.size() != width) {
      ++rep.dropped_rows;
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("dataset " + name + ": no usable rows");
  if (width < 1) throw std::runtime_error("dataset " + name + ": no columns");

  const std::size_t n = rows.size();
  const std::size_t nf = width - 1;
  std::vector<std::size_t> keep;
  std::vector<double> means(nf, 0.0), stds(nf, 0.0);
  for (std::size_t j = 0; j < nf; ++j) {
    double m = 0.0;
    for (const auto& r : rows) m += r[j];
    m /= static_cast<double>(n);
    double v = 0.0;
    for (const auto& r : rows) v += (r[j] - m) * (r[j] - m);
    v /= static_cast<double>(n);
    means[j] = m;
    stds[j] = std::sqrt(v);
    if (stds[j] > 0.0)
      keep.push_back(j);
    else
      rep.dropped_columns.push_back(j);
  }

  Dataset d;
  d.name = name;
  d.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(keep.size()));
  d.targets.resize(static_cast<Eigen::Index>(n));
  double ymean = 0.0;
  for (const auto& r : rows) ymean += r[nf];
  ymean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < keep.size(); ++c) {
      const std::size_t j = keep[c];
      d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          (rows[i][j] - means[j]) / stds[j];
    }
    d.targets(static_cast<Eigen::Index>(i)) = rows[i][nf] - ymean;
  }
  return d;
}

Dataset load_dataset(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read dataset file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of("/\\"); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_dataset(buf.str(), name, report);
}

std::vector<std::size_t> fold_assignment(const Dataset& data) {
  const auto n = static_cast<std::size_t>(data.features.rows());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](std::size_t a, std::size_t b) {
    const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
      if (data.features(ia, j) != data.features(ib, j)) return data.features(ia, j) < data.features(ib, j);
    }
    return data.targets(ia) < data.targets(ib);
  };
  std::stable_sort(order.begin(), order.end(), row_less);

  RandomStream rng(fnv1a(data.name));
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i));
    std::swap(order[i - 1], order[std::min(j, i - 1)]);
  }
  std::vector<std::size_t> fold(n);
  for (std::size_t pos = 0; pos < n; ++pos) fold[order[pos]] = pos % kFolds;
  return fold;
}

double krr_cv_score(const Dataset& data, double sigma, double lambda) {
  const Eigen::Index n = data.features.rows();
  if (n < static_cast<Eigen::Index>(kFolds))
    throw std::invalid_argument("krr_cv_score: need at least 10 rows");
  if (!(sigma > 0.0) || !(lambda > 0.0) || !std::isfinite(sigma) || !std::isfinite(lambda))
    throw std::invalid_argument("krr_cv_score: sigma and lambda must be positive and finite");

  const auto fold = fold_assignment(data);
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d2 = (data.features.row(i) - data.features.row(j)).squaredNorm();
      gram(i, j) = gram(j, i) = std::exp(-d2 * inv_two_sigma2);
    }
  }

  double total = 0.0;
  for (std::size_t k = 0; k < kFolds; ++k) {
    std::vector<Eigen::Index> train, test;
    for (Eigen::Index i = 0; i < n; ++i)
      (fold[static_cast<std::size_t>(i)] == k ? test : train).push_back(i);
    const auto m = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd a = gram(train, train);
    a.diagonal().array() += static_cast<double>(m) * lambda;
    const Eigen::VectorXd y = data.targets(train);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("krr_cv_score: regularized kernel system is not positive definite");
    const Eigen::VectorXd alpha = llt.solve(y);
    const Eigen::VectorXd pred = gram(test, train) * alpha;
    total += (pred - data.targets(test)).squaredNorm();
  }
  const double score = -total / static_cast<double>(kFolds);
  if (!std::isfinite(score)) throw std::runtime_error("krr_cv_score: non-finite result");
  return score;
}

BoxDomain krr_domain() { return BoxDomain({-2.0, -5.0}, {4.0, 5.0}); }

double krr_cv_objective(const Dataset& data, const Point& x) {
  if (!krr_domain().contains(x))
    throw std::domain_error("krr_cv_objective: point outside [-2,4]x[-5,5]");
  return krr_cv_score(data, std::pow(10.0, x[0]), std::pow(10.0, x[1]));
}

ObjectiveSpec make_krr_objective(Dataset data) {
  std::string name = "krr:" + data.name;
  auto shared = std::make_shared<const Dataset>(std::move(data));
  return ObjectiveSpec{std::move(name), krr_domain(),
                       [shared](const Point& x) { return krr_cv_objective(*shared, x); },
                       {}, {}, {}, {}};
}

}  // namespace lipo
