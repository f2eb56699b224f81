#include "lipo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace lipo {

namespace {

double parse_real(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad number '" + s + "' in " + context);
}

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void sort_reports(std::vector<TargetReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const TargetReport& a, const TargetReport& b) {
    if (a.problem != b.problem) return a.problem < b.problem;
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    return a.target < b.target;
  });
}

struct RunOutcome {
  std::vector<double> values;
  std::size_t fallbacks = 0;
};

}  // namespace

AlgorithmSpec AlgorithmSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  AlgorithmSpec spec;
  if (head == "prs") {
    if (!args.empty()) throw std::invalid_argument("prs takes no parameters");
    spec.kind = Algorithm::PRS;
  } else if (head == "lipo") {
    if (args.empty()) throw std::invalid_argument("lipo requires a Lipschitz constant: lipo:K");
    spec.kind = Algorithm::LIPO;
    spec.k = parse_real(args, text);
    if (spec.k < 0.0) throw std::invalid_argument("lipo: K must be >= 0");
  } else if (head == "adalipo") {
    spec.kind = Algorithm::ADALIPO;
    if (!args.empty()) {
      const auto comma = args.find(',');
      spec.p = parse_real(args.substr(0, comma), text);
      if (comma != std::string::npos) spec.alpha = parse_real(args.substr(comma + 1), text);
    }
    if (!(spec.p > 0.0 && spec.p < 1.0)) throw std::invalid_argument("adalipo: p must lie in (0,1)");
    if (spec.alpha && !(*spec.alpha > 0.0)) throw std::invalid_argument("adalipo: alpha must be > 0");
  } else {
    throw std::invalid_argument("unknown algorithm '" + text + "'");
  }
  return spec;
}

OptimizerConfig AlgorithmSpec::resolve(std::size_t dim, std::uint64_t seed) const {
  OptimizerConfig c;
  switch (kind) {
    case Algorithm::PRS:
      c = OptimizerConfig::prs(seed);
      break;
    case Algorithm::LIPO:
      c = OptimizerConfig::lipo(k, seed);
      break;
    case Algorithm::ADALIPO:
      c = OptimizerConfig::adalipo(p, alpha.value_or(0.01 / static_cast<double>(dim)), seed);
      break;
  }
  c.max_rejects = max_rejects;
  return c;
}

void ProtocolConfig::validate() const {
  if (problem.empty()) throw std::invalid_argument("no problem given");
  if (algorithms.empty()) throw std::invalid_argument("no algorithm given");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (mc_samples < 1) throw std::invalid_argument("mc-samples must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (targets.empty()) throw std::invalid_argument("no target given");
  for (double t : targets)
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("targets must lie in (0,1)");
}

ObjectiveSpec resolve_problem(const std::string& problem) {
  if (problem.rfind("csv:", 0) == 0) return make_krr_objective(load_dataset(problem.substr(4)));
  return registry_lookup(problem);
}

double estimate_average(const ObjectiveSpec& spec, std::size_t m, RandomStream& rng) {
  if (m == 0) throw std::invalid_argument("estimate_average: m must be >= 1");
  // Kahan summation keeps 10^6-term means accurate to the last few digits.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = spec.evaluator(spec.domain.sample(rng));
    if (!std::isfinite(v)) throw std::runtime_error("estimate_average: non-finite evaluation");
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(m);
}

double f_target(double f_max, double f_avg, double t) {
  if (f_max < f_avg) throw std::invalid_argument("f_target: f_max < f_avg");
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("f_target: t must lie in (0,1]");
  return f_max - (f_max - f_avg) * (1.0 - t);
}

std::size_t stopping_time(std::span<const double> values, double target, std::size_t n) {
  const std::size_t limit = std::min(n, values.size());
  for (std::size_t i = 0; i < limit; ++i)
    if (values[i] >= target) return i + 1;
  return n;
}

std::vector<TargetReport> run_protocol(const ProtocolConfig& config, std::ostream* log) {
  config.validate();
  const ObjectiveSpec spec = resolve_problem(config.problem);
  const std::size_t dim = spec.domain.dim();
  const std::size_t n_algos = config.algorithms.size();
  const std::size_t n_tasks = n_algos * config.runs;

  std::vector<OptimizerConfig> resolved;
  for (const auto& a : config.algorithms) resolved.push_back(a.resolve(dim, config.base_seed));

  std::vector<RunOutcome> outcomes(n_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      try {
        OptimizerConfig c = resolved[task / config.runs];
        c.seed = config.base_seed + task % config.runs;
        RunResult r = run(c, spec.evaluator, spec.domain, config.budget);
        RunOutcome& out = outcomes[task];
        out.values.reserve(r.history.size());
        for (const auto& e : r.history.entries()) out.values.push_back(e.value);
        out.fallbacks = r.fallbacks;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_tasks;
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, n_tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  double pooled_max = -std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes)
    for (double v : o.values) pooled_max = std::max(pooled_max, v);
  const double f_max = spec.known_max.value_or(pooled_max);
  if (log) {
    *log << spec.name << ": pooled best " << pooled_max;
    if (spec.known_max) *log << ", known maximum " << *spec.known_max << " used";
    *log << '\n';
  }

  RandomStream mc_rng = RandomStream(config.base_seed).split(0xa11ce);
  const double f_avg = estimate_average(spec, config.mc_samples, mc_rng);
  if (log) *log << spec.name << ": Monte Carlo average " << f_avg << '\n';

  std::vector<TargetReport> reports;
  for (std::size_t a = 0; a < n_algos; ++a) {
    std::size_t fallbacks = 0;
    for (std::size_t r = 0; r < config.runs; ++r) fallbacks += outcomes[a * config.runs + r].fallbacks;
    for (double t : config.targets) {
      const double target = f_target(f_max, f_avg, t);
      std::vector<double> taus;
      for (std::size_t r = 0; r < config.runs; ++r)
        taus.push_back(static_cast<double>(
            stopping_time(outcomes[a * config.runs + r].values, target, config.budget)));
      const double k = static_cast<double>(config.runs);
      double mean = 0.0;
      for (double tau : taus) mean += tau;
      mean /= k;
      double var = 0.0;
      for (double tau : taus) var += (tau - mean) * (tau - mean);
      var /= k;

      TargetReport rep;
      rep.problem = config.problem;
      rep.algorithm = label(resolved[a]);
      rep.target = t;
      rep.mean_tau = mean;
      rep.std_tau = std::sqrt(var);
      rep.fallback_rate = static_cast<double>(fallbacks) / (k * static_cast<double>(config.budget));
      rep.f_target_value = target;
      rep.f_max_used = f_max;
      rep.f_avg_used = f_avg;
      reports.push_back(std::move(rep));
    }
  }
  sort_reports(reports);
  return reports;
}

void write_csv(std::span<const TargetReport> reports, std::ostream& out) {
  out << "problem,algorithm,target,mean_tau,std_tau,fallback_rate,f_target,f_max,f_avg\n";
  for (const auto& r : reports) {
    out << csv_field(r.problem) << ',' << csv_field(r.algorithm) << ',' << format_g6(r.target) << ','
        << format_g6(r.mean_tau) << ',' << format_g6(r.std_tau) << ',' << format_g6(r.fallback_rate)
        << ',' << format_g6(r.f_target_value) << ',' << format_g6(r.f_max_used) << ','
        << format_g6(r.f_avg_used) << '\n';
  }
}

void write_json(std::span<const TargetReport> reports, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"problem", r.problem},
                   {"algorithm", r.algorithm},
                   {"target", r.target},
                   {"mean_tau", r.mean_tau},
                   {"std_tau", r.std_tau},
                   {"fallback_rate", r.fallback_rate},
                   {"f_target", r.f_target_value},
                   {"f_max", r.f_max_used},
                   {"f_avg", r.f_avg_used}});
  }
  out << arr.dump(2) << '\n';
}

std::vector<TargetReport> parse_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<TargetReport> reports;
  for (const auto& j : arr) {
    TargetReport r;
    r.problem = j.at("problem").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.target = j.at("target").get<double>();
    r.mean_tau = j.at("mean_tau").get<double>();
    r.std_tau = j.at("std_tau").get<double>();
    r.fallback_rate = j.at("fallback_rate").get<double>();
    r.f_target_value = j.at("f_target").get<double>();
    r.f_max_used = j.at("f_max").get<double>();
    r.f_avg_used = j.at("f_avg").get<double>();
    reports.push_back(std::move(r));
  }
  return reports;
}

void emit_report(std::vector<TargetReport> reports, ReportFormat format, const std::string& path) {
  sort_reports(reports);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (format == ReportFormat::csv)
    write_csv(reports, out);
  else
    write_json(reports, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace lipo
