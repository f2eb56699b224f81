// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "krr_oracle.hpp"
#include "lipo/analysis.hpp"
#include "lipo/bench.hpp"
#include "lipo/lipschitz.hpp"
#include "lipo/objectives.hpp"
#include "lipo/optimizers.hpp"

using namespace lipo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Nearest-rank quantile.
double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::max<std::size_t>(rank, 1) - 1];
}

Outcome decision_rule_oracle() {
  RandomStream rng(20240501);
  std::size_t agree = 0, total = 0, accepted = 0;
  for (int h = 0; h < 50; ++h) {
    const std::size_t d = 1 + static_cast<std::size_t>(h % 3);
    const std::size_t t = 1 + static_cast<std::size_t>(rng.uniform01() * 20.0);
    const double k = 0.05 + 5.0 * rng.uniform01();
    const auto box = BoxDomain::cube(d, 0.0, 1.0);
    EvaluationHistory hist;
    std::vector<std::pair<std::vector<double>, double>> raw;
    for (std::size_t i = 0; i < t; ++i) {
      Point x = box.sample(rng);
      const double v = 2.0 * rng.uniform01() - 1.0;
      raw.emplace_back(x.vec(), v);
      hist.insert({std::move(x), v});
    }
    double fmax = -std::numeric_limits<double>::infinity();
    for (const auto& r : raw) fmax = std::max(fmax, r.second);
    for (int c = 0; c < 1000; ++c) {
      const Point x = box.sample(rng);
      double ub = std::numeric_limits<double>::infinity();
      for (const auto& r : raw) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += std::pow(x[j] - r.first[j], 2);
        ub = std::min(ub, r.second + k * std::sqrt(s));
      }
      const bool want = ub >= fmax;
      accepted += want;
      agree += hist.accepts(k, x) == want;
      ++total;
    }
  }
  return {agree == total,
          fmt("%zu/%zu agree, %zu accepted by the oracle", agree, total, accepted)};
}

std::vector<double> best_values(const OptimizerConfig& base, const ObjectiveSpec& f,
                                std::size_t n, std::size_t seeds) {
  std::vector<double> out;
  for (std::size_t s = 0; s < seeds; ++s) {
    OptimizerConfig cfg = base;
    cfg.seed = s;
    out.push_back(run(cfg, f.evaluator, f.domain, n).best_value);
  }
  return out;
}

Outcome stochastic_dominance() {
  const auto f = make_sphere_norm(2);
  const std::size_t seeds = 500, n = 200;
  const auto lipo = best_values(OptimizerConfig::lipo(1.0), f, n, seeds);
  const auto prs = best_values(OptimizerConfig::prs(), f, n, seeds);
  std::vector<double> pooled = lipo;
  pooled.insert(pooled.end(), prs.begin(), prs.end());
  const double z = 2.5758293035489004;  // two-sided 99% normal quantile
  const double m = static_cast<double>(seeds);
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (int dec = 1; dec <= 9; ++dec) {
    const double theta = quantile(pooled, dec / 10.0);
    auto freq = [&](const std::vector<double>& v) {
      return static_cast<double>(std::count_if(v.begin(), v.end(),
                                                [&](double b) { return b >= theta; })) / m;
    };
    const double pl = freq(lipo), pp = freq(prs);
    const double pbar = 0.5 * (pl + pp);
    const double margin = z * std::sqrt(pbar * (1.0 - pbar) * 2.0 / m);
    worst = std::min(worst, pl - pp + margin);
    pass = pass && pl >= pp - margin;
  }
  return {pass, fmt("min over deciles of P_lipo - P_prs + margin = %.3f", worst)};
}

Outcome corollary_quantile() {
  const auto f = make_sphere_norm(2);
  bool pass = true;
  std::string detail;
  for (std::size_t n : {100, 400}) {
    const auto best = best_values(OptimizerConfig::lipo(1.0), f, n, 200);
    std::vector<double> gaps;
    for (double b : best) gaps.push_back(1.0 - b);
    const double q90 = quantile(gaps, 0.9);
    BoundQuery q;
    q.n = n;
    q.delta = 0.1;
    q.d = 2;
    q.k = 1.0;
    q.diam = f.domain.diameter();
    const double bound = lipo_gap_bound(q);
    pass = pass && q90 <= bound;
    detail += fmt("n=%zu q90=%.3g bound=%.3g; ", n, q90, bound);
  }
  return {pass, detail};
}

Outcome estimator_capture() {
  const double alpha = 0.005;
  bool pass = true;
  std::string detail;
  const auto weights = linear_slope_weights();
  double wnorm = 0.0;
  for (double w : weights) wnorm += w * w;
  wnorm = std::sqrt(wnorm);
  const std::pair<ObjectiveSpec, double> cases[] = {{make_sphere_norm(2), 1.0},
                                                    {registry_lookup("linear_slope"), wnorm}};
  for (const auto& [f, kstar] : cases) {
    int hits = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const RunResult r = run(OptimizerConfig::adalipo(0.1, alpha, s), f.evaluator, f.domain, 1000);
      const double khat = r.trace.back().k_hat;
      hits += khat >= kstar && khat <= kstar * (1.0 + alpha);
    }
    pass = pass && hits >= 95;
    detail += fmt("%s k*=%.4f: %d/100; ", f.name.c_str(), kstar, hits);
  }
  return {pass, detail};
}

Outcome stopping_times() {
  struct Expect {
    const char* problem;
    const char* algo;
    double target;
    double value;
    double tol;
  };
  const Expect expect[] = {
      {"sphere", "adalipo", 0.90, 36, 0.5},       {"sphere", "adalipo", 0.95, 42, 0.5},
      {"sphere", "adalipo", 0.99, 52, 0.5},       {"linear_slope", "adalipo", 0.90, 29, 0.5},
      {"holder_table", "adalipo", 0.90, 77, 0.5}, {"sphere", "prs", 0.90, 924, 0.3},
      {"linear_slope", "prs", 0.90, 831, 0.3},
  };
  std::vector<TargetReport> all;
  for (const char* p : {"sphere", "linear_slope", "holder_table"}) {
    ProtocolConfig c;
    c.problem = p;
    c.algorithms = {AlgorithmSpec::parse("prs"), AlgorithmSpec::parse("adalipo")};
    c.base_seed = 1;
    const auto r = run_protocol(c);
    all.insert(all.end(), r.begin(), r.end());
  }
  bool pass = true;
  std::string detail;
  for (const auto& e : expect) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const TargetReport& r) {
      return r.problem == e.problem && r.algorithm.rfind(e.algo, 0) == 0 &&
             std::abs(r.target - e.target) < 1e-12;
    });
    if (it == all.end()) return {false, fmt("missing report for %s %s", e.problem, e.algo)};
    const bool ok = std::abs(it->mean_tau - e.value) <= e.tol * e.value;
    pass = pass && ok;
    detail += fmt("%s/%s@%g=%.1f(ref %g)%s; ", e.problem, e.algo, e.target * 100, it->mean_tau,
                  e.value, ok ? "" : " OUT");
  }
  return {pass, detail};
}

Outcome covering_bound() {
  const auto box = BoxDomain::cube(2, 0.0, 1.0);
  BoundQuery q;
  q.n = 500;
  q.delta = 0.1;
  q.d = 2;
  q.diam = box.diameter();
  const double bound = prs_covering_bound(q);
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RunResult r = run(OptimizerConfig::prs(s), [](const Point&) { return 0.0; }, box, 500);
    std::vector<Point> pts;
    for (const auto& e : r.history.entries()) pts.push_back(e.point);
    const double rad = covering_radius(pts, box, 200).radius;
    worst = std::max(worst, rad);
    within += rad <= bound;
  }
  return {within >= 90, fmt("%d/100 within bound %.4f (largest radius %.4f)", within, bound, worst)};
}

Outcome decreasing_condition() {
  const bool sphere = check_decreasing_condition(make_sphere_norm(2), 200);
  const bool largest = check_decreasing_condition(make_largest_coordinate(2), 200);
  ObjectiveSpec doubled = make_sphere_norm(2);
  doubled.condition = DecreasingCondition{1.0, 2.0};
  const bool violated = !check_decreasing_condition(doubled, 200);
  return {sphere && largest && violated,
          fmt("sphere_norm %s, largest_coordinate %s, sphere_norm c=2 %s", sphere ? "holds" : "fails",
              largest ? "holds" : "fails", violated ? "rejected" : "accepted")};
}

Outcome krr_oracle() {
  const Dataset d = oracle::sin_dataset();
  double worst = 0.0;
  for (double x1 : {-1.0, 0.5, 2.0})
    for (double x2 : {-4.0, -1.0, 2.0}) {
      const double got = krr_cv_objective(d, Point{x1, x2});
      const double want = oracle::krr_cv(d, std::pow(10.0, x1), std::pow(10.0, x2));
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
  return {worst <= 1e-8, fmt("max relative error %.2e over 9 points", worst)};
}

Outcome determinism() {
  ProtocolConfig c;
  c.problem = "holder_table";
  c.algorithms = {AlgorithmSpec::parse("prs"), AlgorithmSpec::parse("lipo:40"),
                  AlgorithmSpec::parse("adalipo")};
  c.runs = 20;
  c.budget = 200;
  c.mc_samples = 100000;
  c.base_seed = 77;
  auto render = [](const std::vector<TargetReport>& r) {
    std::ostringstream csv, json;
    write_csv(r, csv);
    write_json(r, json);
    return csv.str() + json.str();
  };
  const std::string a = render(run_protocol(c));
  const std::string b = render(run_protocol(c));
  c.jobs = 4;
  const std::string p1 = render(run_protocol(c));
  const std::string p2 = render(run_protocol(c));
  const bool pass = a == b && p1 == p2 && a == p1;
  return {pass, fmt("jobs=1 repeat %s, jobs=4 repeat %s, jobs=1 vs 4 %s (%zu bytes)",
                    a == b ? "identical" : "DIFFERENT", p1 == p2 ? "identical" : "DIFFERENT",
                    a == p1 ? "identical" : "DIFFERENT", a.size())};
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"decision rule matches brute force", 10, decision_rule_oracle},
      {"LIPO stochastically dominates PRS", 120, stochastic_dominance},
      {"LIPO gap quantile under bound", 60, corollary_quantile},
      {"AdaLIPO estimate captures k*", 120, estimator_capture},
      {"stopping times match reference", 900, stopping_times},
      {"PRS covering radius under bound", 60, covering_bound},
      {"decreasing condition checks", 10, decreasing_condition},
      {"KRR objective matches oracle", 60, krr_oracle},
      {"reports are deterministic", 300, determinism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %d. %s: %s [%.1f s of %.0f s]\n", pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
