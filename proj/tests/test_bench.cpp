#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lipo/bench.hpp"

using namespace lipo;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProtocolConfig small_config(const std::string& problem) {
  ProtocolConfig c;
  c.problem = problem;
  c.algorithms = {AlgorithmSpec::parse("prs"), AlgorithmSpec::parse("adalipo"),
                  AlgorithmSpec::parse("lipo:20")};
  c.runs = 6;
  c.budget = 60;
  c.mc_samples = 20000;
  c.base_seed = 123;
  return c;
}

}  // namespace

TEST_CASE("algorithm parsing") {
  CHECK(AlgorithmSpec::parse("prs").kind == Algorithm::PRS);
  const auto l = AlgorithmSpec::parse("lipo:2.5");
  CHECK(l.kind == Algorithm::LIPO);
  CHECK(l.k == 2.5);
  const auto a = AlgorithmSpec::parse("adalipo");
  CHECK(a.p == 0.1);
  CHECK_FALSE(a.alpha.has_value());
  CHECK(a.resolve(4, 0).mesh->alpha() == doctest::Approx(0.0025));
  const auto b = AlgorithmSpec::parse("adalipo:0.2,0.05");
  CHECK(b.p == 0.2);
  CHECK(*b.alpha == 0.05);
  for (const char* bad : {"lipo", "lipo:x", "lipo:-1", "adalipo:1.5", "adalipo:0.1,0", "bayes", "prs:1"})
    CHECK_THROWS_AS(AlgorithmSpec::parse(bad), std::invalid_argument);
}

TEST_CASE("f_target") {
  CHECK(f_target(1.0, 0.0, 0.9) == doctest::Approx(0.9));
  CHECK(f_target(3.0, -1.0, 1.0) == 3.0);
  CHECK(f_target(0.0, -2.0, 0.95) == doctest::Approx(-0.1));
  CHECK_THROWS_AS(f_target(0.0, 1.0, 0.9), std::invalid_argument);
}

TEST_CASE("stopping time") {
  const std::vector<double> v{0.1, 0.5, 0.9};
  CHECK(stopping_time(v, 0.5, 3) == 2);
  CHECK(stopping_time(v, 0.05, 3) == 1);
  const std::vector<double> flat(1000, 0.3);
  CHECK(stopping_time(flat, 1.0, 1000) == 1000);
}

TEST_CASE("stopping time is monotone in the target") {
  RandomStream rng(3);
  std::vector<double> v(200);
  for (auto& x : v) x = rng.uniform01();
  std::size_t prev = 1;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const std::size_t tau = stopping_time(v, t, v.size());
    CHECK(tau >= prev);
    prev = tau;
  }
}

TEST_CASE("estimate_average") {
  const auto lin = registry_lookup("linear_1d");
  RandomStream rng(4);
  CHECK(std::abs(estimate_average(lin, 1000000, rng) - 0.5) <= 0.002);

  ObjectiveSpec constant = lin;
  constant.evaluator = [](const Point&) { return 2.75; };
  CHECK(estimate_average(constant, 1000, rng) == 2.75);

  const auto deb = registry_lookup("deb_n1");
  RandomStream a(5), b(6);
  const double est = estimate_average(deb, 1000000, a);
  const double ref = estimate_average(deb, 10000000, b);
  CHECK(std::abs(est - ref) <= 0.005);
  // E[sin^6] over whole periods is 5/16.
  CHECK(ref == doctest::Approx(5.0 / 16.0).epsilon(0.005));
}

TEST_CASE("single run, single step protocol") {
  ProtocolConfig c;
  c.problem = "sphere";
  c.algorithms = {AlgorithmSpec::parse("prs")};
  c.runs = 1;
  c.budget = 1;
  c.mc_samples = 100;
  for (const auto& r : run_protocol(c)) {
    CHECK(r.mean_tau == 1.0);
    CHECK(r.std_tau == 0.0);
  }
}

TEST_CASE("protocol invariants") {
  const auto reports = run_protocol(small_config("holder_table"));
  REQUIRE(reports.size() == 9);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    CHECK(r.mean_tau >= 1.0);
    CHECK(r.mean_tau <= 60.0);
    CHECK(r.std_tau >= 0.0);
    CHECK(r.f_max_used == doctest::Approx(19.2085));
    if (i % 3 != 0) {
      CHECK(reports[i - 1].algorithm == r.algorithm);
      CHECK(reports[i - 1].target < r.target);
      CHECK(reports[i - 1].mean_tau <= r.mean_tau);
    }
  }
  CHECK(reports[0].algorithm < reports[3].algorithm);
}

TEST_CASE("pooled maximum is used without a known maximum") {
  ProtocolConfig c = small_config("sphere");
  const auto known = run_protocol(c);
  CHECK(known[0].f_max_used == 0.0);
}

TEST_CASE("protocol output does not depend on the job count") {
  ProtocolConfig c = small_config("holder_table");
  const auto serial = run_protocol(c);
  c.jobs = 4;
  const auto parallel = run_protocol(c);
  CHECK(serial == parallel);
}

TEST_CASE("protocol on a CSV dataset uses the pooled maximum") {
  const std::string path = "bench_krr_test.csv";
  {
    std::ofstream out(path);
    out << "x1,x2,y\n";
    RandomStream rng(9);
    for (int i = 0; i < 40; ++i) {
      const double a = rng.uniform01(), b = rng.uniform01();
      out << a << ',' << b << ',' << std::sin(3 * a) + b * b << '\n';
    }
  }
  ProtocolConfig c;
  c.problem = "csv:" + path;
  c.algorithms = {AlgorithmSpec::parse("adalipo")};
  c.runs = 2;
  c.budget = 15;
  c.mc_samples = 200;
  const auto reports = run_protocol(c);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].f_max_used < 0.0);
  CHECK(reports[0].f_max_used >= reports[0].f_avg_used);
  std::remove(path.c_str());
}

TEST_CASE("protocol config validation") {
  ProtocolConfig c = small_config("sphere");
  c.targets = {0.5, 1.0};
  CHECK_THROWS_AS(run_protocol(c), std::invalid_argument);
  c = small_config("sphere");
  c.runs = 0;
  CHECK_THROWS_AS(run_protocol(c), std::invalid_argument);
  c = small_config("nowhere");
  CHECK_THROWS_AS(run_protocol(c), std::invalid_argument);
}

TEST_CASE("CSV report layout") {
  std::ostringstream empty;
  write_csv({}, empty);
  CHECK(empty.str() == "problem,algorithm,target,mean_tau,std_tau,fallback_rate,f_target,f_max,f_avg\n");

  TargetReport r{"sphere", "prs", 0.9, 924.123456, 210.5, 0.0, -0.0712345678, 0.0, -0.712345678};
  std::ostringstream one;
  write_csv(std::vector<TargetReport>{r}, one);
  CHECK(one.str() ==
        "problem,algorithm,target,mean_tau,std_tau,fallback_rate,f_target,f_max,f_avg\n"
        "sphere,prs,0.9,924.123,210.5,0,-0.0712346,0,-0.712346\n");

  r.algorithm = "adalipo:0.1,0.0025";
  std::ostringstream quoted;
  write_csv(std::vector<TargetReport>{r}, quoted);
  CHECK(quoted.str().find("sphere,\"adalipo:0.1,0.0025\",0.9,") != std::string::npos);
}

TEST_CASE("JSON report round trip") {
  const auto reports = run_protocol(small_config("linear_slope"));
  const std::string path = "bench_report_test.json";
  emit_report(reports, ReportFormat::json, path);
  const std::string text = slurp(path);
  CHECK(text.back() == '\n');
  CHECK(parse_json(text) == reports);
  std::remove(path.c_str());
}

TEST_CASE("emit_report sorts and fails on bad paths") {
  TargetReport a{"p", "b", 0.9, 1, 0, 0, 0, 0, 0};
  TargetReport b{"p", "a", 0.95, 1, 0, 0, 0, 0, 0};
  TargetReport c{"p", "a", 0.9, 1, 0, 0, 0, 0, 0};
  const std::string path = "bench_sort_test.csv";
  emit_report({a, b, c}, ReportFormat::csv, path);
  const std::string text = slurp(path);
  CHECK(text.find("p,a,0.9,") < text.find("p,a,0.95,"));
  CHECK(text.find("p,a,0.95,") < text.find("p,b,0.9,"));
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_report({a}, ReportFormat::csv, "/nonexistent/dir/out.csv"), std::runtime_error);
}
