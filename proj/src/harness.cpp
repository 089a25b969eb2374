#include "hhbound/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "hhbound/quadrature.hpp"
#include "hhbound/report.hpp"

namespace hhbound {

namespace {

// Uniform draw in [0, 1) from the top 53 bits, identical across standard
// libraries.
double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * unit_draw(gen);
}

// One hypothesis-gated block of work: a case spec at one q and one
// (alpha, m) pair, or the classical (plain convexity) block for that q.
struct Unit {
  std::size_t case_index;
  double q;
  ConvexityParams params;
  bool classical;
};

struct UnitResult {
  std::vector<CaseReport> reports;
  std::vector<HypothesisRejection> rejections;
  std::vector<CaseError> errors;
};

struct PreparedCase {
  std::optional<DifferentiablePair> pair;
  double g_sup = 0.0;
  std::vector<double> xs;
  std::string setup_error;
};

double resolved_b_star(const CaseSpec& spec) {
  if (spec.b_star > 0.0) return spec.b_star;
  const double m_min = *std::min_element(spec.ms.begin(), spec.ms.end());
  double b_star = spec.interval.b;
  if (m_min > 0.0) b_star = std::max(b_star, spec.interval.b / m_min);
  return b_star;
}

PreparedCase prepare(const CaseSpec& spec, std::size_t index,
                     std::uint64_t seed) {
  PreparedCase out;
  if (!spec.xs.empty()) {
    out.xs = spec.xs;
  } else {
    out.xs = linspace(spec.interval.a, spec.interval.b, spec.x_points);
  }
  std::mt19937_64 gen(seed + index);
  for (int k = 0; k < spec.x_random; ++k) {
    out.xs.push_back(uniform(gen, spec.interval.a, spec.interval.b));
  }
  std::sort(out.xs.begin(), out.xs.end());
  try {
    out.pair = make_pair(spec.f, make_domain(resolved_b_star(spec)));
    out.g_sup = bound_sup(spec.g, spec.interval);
  } catch (const std::exception& e) {
    out.setup_error = e.what();
  }
  return out;
}

UnitResult run_unit(const SuiteConfig& config, const Unit& unit,
                    const PreparedCase& prep) {
  const CaseSpec& spec = config.cases[unit.case_index];
  UnitResult out;
  auto record_error = [&](const std::string& message) {
    out.errors.push_back({spec.f.spec(), spec.g.spec(), message});
  };
  if (!prep.pair) {
    record_error(prep.setup_error);
    return out;
  }
  std::vector<TheoremId> theorems;
  for (TheoremId id : spec.theorems) {
    if (is_classical(id) == unit.classical) theorems.push_back(id);
  }
  if (theorems.empty()) return out;

  const ConvexityParams gate = unit.classical ? ConvexityParams{1.0, 1.0}
                                              : unit.params;
  Verdict verdict;
  try {
    if (!unit.classical) validate_for_bounds(unit.params);
    verdict = check_hypothesis(*prep.pair, unit.q, gate, spec.interval,
                               config.grid);
  } catch (const std::exception& e) {
    record_error(e.what());
    return out;
  }
  if (!verdict.holds) {
    for (TheoremId id : theorems) {
      out.rejections.push_back({spec.f.spec(), spec.g.spec(), spec.interval,
                                unit.q, unit.params, id, *verdict.witness});
    }
    return out;
  }

  for (TheoremId id : theorems) {
    std::vector<double> xs = prep.xs;
    if (is_corollary(id)) xs = {spec.interval.midpoint()};
    for (double x : xs) {
      try {
        const BoundCase c = make_case(*prep.pair, spec.g, spec.interval, x,
                                      unit.q, unit.params, prep.g_sup);
        out.reports.push_back({spec.f.spec(), spec.g.spec(), spec.interval, x,
                               unit.q, unit.params, evaluate_case(c, id)});
      } catch (const std::exception& e) {
        record_error(std::string(to_string(id)) + " at x = " + format_real(x) +
                     ": " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

void validate_config(const SuiteConfig& config) {
  if (config.cases.empty()) {
    throw InvalidArgument("suite config has an empty case list");
  }
  if (config.jobs == 0) throw InvalidArgument("jobs must be >= 1");
  validate_grid(config.grid);
  for (const auto& spec : config.cases) {
    make_interval(spec.interval.a, spec.interval.b);
    if (spec.xs.empty() && spec.x_points < 2) {
      throw InvalidArgument("x sweep needs at least two points");
    }
    for (double x : spec.xs) {
      if (!spec.interval.contains(x)) {
        throw InvalidArgument("x = " + format_real(x) + " outside [a, b]");
      }
    }
    if (spec.x_random < 0) throw InvalidArgument("x_random must be >= 0");
    if (spec.qs.empty() || spec.alphas.empty() || spec.ms.empty() ||
        spec.theorems.empty()) {
      throw InvalidArgument("case q, alpha, m and theorem lists must be non-empty");
    }
    for (double q : spec.qs) {
      if (!(q >= 1.0)) throw InvalidArgument("q must be >= 1");
    }
    for (double alpha : spec.alphas) {
      for (double m : spec.ms) validate_for_definition({alpha, m});
    }
  }
}

BoundReport evaluate_case(const BoundCase& c, TheoremId theorem) {
  const IntegralResult lhs =
      uses_endpoint_lhs(theorem) ? lhs_endpoint(c) : lhs_point(c);
  const double rhs = bound_for(theorem, c);
  return make_report(theorem, lhs.value, lhs.error_estimate, rhs);
}

VerifyOutcome verify_case(const BoundCase& c, TheoremId theorem,
                          const GridSpec& grid) {
  validate_case(c);
  const ConvexityParams gate =
      is_classical(theorem) ? ConvexityParams{1.0, 1.0} : c.params;
  VerifyOutcome out;
  out.hypothesis = check_hypothesis(c.pair, c.q, gate, c.interval, grid);
  if (out.hypothesis.holds) out.report = evaluate_case(c, theorem);
  return out;
}

BoundCase build_case(const RealFunction& f, const RealFunction& g,
                     const Interval& iv, double b_star, double x, double q,
                     const ConvexityParams& params) {
  const DifferentiablePair pair = make_pair(f, make_domain(b_star));
  return make_case(pair, g, iv, x, q, params, bound_sup(g, iv));
}

std::vector<BoundReport> sweep_x(const BoundCase& base, int n_points,
                                 TheoremId theorem, const GridSpec& grid) {
  if (n_points < 2) throw InvalidArgument("sweep needs n_points >= 2");
  const ConvexityParams gate =
      is_classical(theorem) ? ConvexityParams{1.0, 1.0} : base.params;
  const Verdict verdict =
      check_hypothesis(base.pair, base.q, gate, base.interval, grid);
  std::vector<BoundReport> out;
  if (!verdict.holds) return out;
  const auto xs = linspace(base.interval.a, base.interval.b, n_points);
  for (double x : xs) {
    BoundCase c = base;
    c.x = x;
    try {
      validate_case(c);
      out.push_back(evaluate_case(c, theorem));
    } catch (const std::exception&) {
      // Per-point failures leave that point out of the sweep.
    }
  }
  return out;
}

double reduction_check(const Interval& iv, int n_cases, std::uint64_t seed) {
  if (n_cases < 1) throw InvalidArgument("reduction check needs n_cases >= 1");
  std::mt19937_64 gen(seed);
  double worst = 0.0;
  for (int k = 0; k < n_cases; ++k) {
    BoundInputs in;
    in.interval = iv;
    in.params = {1.0, 1.0};
    in.g_sup = 1.0;
    in.x = uniform(gen, iv.a, iv.b);
    in.q = uniform(gen, 1.0, 4.0);
    in.deriv_a = uniform(gen, 0.0, 5.0);
    in.deriv_far = uniform(gen, 0.0, 5.0);
    worst = std::max(worst, std::abs(rhs_theorem21(in) - rhs_theorem13(in)));
    worst = std::max(worst, std::abs(rhs_theorem22(in) - rhs_theorem14(in)));
    in.x = iv.midpoint();
    const double classical = rhs_classical_symmetric(in);
    worst = std::max(worst, std::abs(rhs_corollary21(in) - classical));
    worst = std::max(worst, std::abs(rhs_corollary22(in) - classical));
  }
  return worst;
}

SuiteResult run_suite(const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate_config(config);

  std::vector<PreparedCase> prepared;
  std::vector<Unit> units;
  for (std::size_t ci = 0; ci < config.cases.size(); ++ci) {
    const CaseSpec& spec = config.cases[ci];
    prepared.push_back(prepare(spec, ci, config.seed));
    const bool any_classical =
        std::any_of(spec.theorems.begin(), spec.theorems.end(), is_classical);
    for (double q : spec.qs) {
      if (any_classical) units.push_back({ci, q, {1.0, 1.0}, true});
      for (double alpha : spec.alphas) {
        for (double m : spec.ms) units.push_back({ci, q, {alpha, m}, false});
      }
    }
  }

  std::vector<UnitResult> results(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      results[i] = run_unit(config, units[i], prepared[units[i].case_index]);
    }
  };
  const unsigned jobs =
      std::min<unsigned>(config.jobs, static_cast<unsigned>(units.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteResult out;
  double max_t = 0.0;
  double min_t = std::numeric_limits<double>::infinity();
  for (auto& r : results) {
    for (auto& rep : r.reports) {
      if (!rep.report.holds) {
        ++out.violations;
      } else if (rep.report.rhs > 0.0) {
        max_t = std::max(max_t, rep.report.tightness);
        min_t = std::min(min_t, rep.report.tightness);
      }
      out.reports.push_back(std::move(rep));
    }
    out.hypothesis_rejections += r.rejections.size();
    for (auto& rej : r.rejections) out.rejections.push_back(std::move(rej));
    for (auto& err : r.errors) out.errors.push_back(std::move(err));
  }
  out.max_tightness = max_t;
  out.min_tightness = std::isfinite(min_t) ? min_t : 0.0;
  out.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

SuiteResult run_and_write(const SuiteConfig& config) {
  SuiteResult result = run_suite(config);
  write_reports(config, result);
  return result;
}

}  // namespace hhbound
