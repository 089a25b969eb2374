#pragma once

// End-to-end verification: builds admissible cases, gates them on the
// convexity hypothesis, compares oracle left-hand sides with closed-form
// right-hand sides and persists the reports.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hhbound/bounds.hpp"
#include "hhbound/convexity.hpp"
#include "hhbound/core.hpp"

namespace hhbound {

/// One family pair on one interval, expanded over the x, q and (alpha, m)
/// lists and the requested theorems.
struct CaseSpec {
  RealFunction f;
  RealFunction g;
  Interval interval;
  /// Right end of [0, b_star]; 0 selects b / min(m).
  double b_star = 0.0;
  /// Explicit x values; used when non-empty.
  std::vector<double> xs;
  /// Equally spaced sweep when `xs` is empty.
  int x_points = 21;
  /// Extra seeded uniform x draws appended to the sweep.
  int x_random = 0;
  std::vector<double> qs{1.0};
  std::vector<double> alphas{1.0};
  std::vector<double> ms{1.0};
  std::vector<TheoremId> theorems{TheoremId::T21, TheoremId::T22};
};

struct SuiteConfig {
  std::string name = "suite";
  std::vector<CaseSpec> cases;
  std::uint64_t seed = 20240521;
  unsigned jobs = 1;
  std::filesystem::path output_dir = "reports";
  GridSpec grid;
};

void validate_config(const SuiteConfig& config);

/// A BoundReport together with the case coordinates it was computed for.
struct CaseReport {
  std::string family_f;
  std::string family_g;
  Interval interval;
  double x = 0.0;
  double q = 1.0;
  ConvexityParams params;
  BoundReport report;
};

struct HypothesisRejection {
  std::string family_f;
  std::string family_g;
  Interval interval;
  double q = 1.0;
  ConvexityParams params;
  TheoremId theorem = TheoremId::T21;
  Witness witness;
};

struct CaseError {
  std::string family_f;
  std::string family_g;
  std::string message;
};

struct SuiteResult {
  std::vector<CaseReport> reports;
  std::vector<HypothesisRejection> rejections;
  std::vector<CaseError> errors;
  std::size_t violations = 0;
  std::size_t hypothesis_rejections = 0;
  double max_tightness = 0.0;
  double min_tightness = 0.0;
  std::chrono::duration<double> wall_time{0.0};
};

struct VerifyOutcome {
  /// Empty when the hypothesis check rejected the case.
  std::optional<BoundReport> report;
  Verdict hypothesis;
};

/// Gates on check_hypothesis, then compares the oracle LHS with the
/// closed-form RHS of `theorem`.
VerifyOutcome verify_case(const BoundCase& c, TheoremId theorem,
                          const GridSpec& grid = {});

/// Evaluates an already-admitted case without re-running the gate.
BoundReport evaluate_case(const BoundCase& c, TheoremId theorem);

/// Builds a validated case; g_sup comes from bound_sup.
BoundCase build_case(const RealFunction& f, const RealFunction& g,
                     const Interval& iv, double b_star, double x, double q,
                     const ConvexityParams& params);

/// verify_case at x = a + k (b - a) / (n - 1), k = 0..n-1, in x order.
/// Points that fail the gate or raise an error are left out.
std::vector<BoundReport> sweep_x(const BoundCase& base, int n_points,
                                 TheoremId theorem, const GridSpec& grid = {});

/// Largest |section-2 bound - classical bound| over `n_cases` seeded draws
/// of (x, q, |f'(a)|, |f'(b)|) at alpha = m = 1, across the pairs
/// T21/T13, T22/T14, C21/C11 and C22/C12.
double reduction_check(const Interval& iv, int n_cases, std::uint64_t seed);

SuiteResult run_suite(const SuiteConfig& config);

/// Runs the suite and writes `<name>.csv` and `<name>.json` into the
/// output directory.
SuiteResult run_and_write(const SuiteConfig& config);

}  // namespace hhbound
