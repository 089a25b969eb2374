// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hhbound/bounds.hpp"
#include "hhbound/convexity.hpp"
#include "hhbound/harness.hpp"
#include "hhbound/quadrature.hpp"
#include "hhbound/report.hpp"

using namespace hhbound;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kConstRelTol = 1e-9;
constexpr double kConstSeconds = 10.0;
constexpr double kResidualTol = 1e-7;
constexpr double kEnvelopeTol = 1e-10;
constexpr double kReductionTol = 1e-12;
constexpr double kSpotTol = 1e-9;
constexpr double kMainSeconds = 300.0;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Local recursive adaptive Simpson, kept separate from the library's
// global scheme so the constants are checked against an unrelated path.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 1e-15, 60);
}

void criterion_constants() {
  const auto start = Clock::now();
  double worst_m = 0, worst_a = 0;
  int checks = 0;
  for (const Interval iv : {make_interval(0, 1), make_interval(2, 5)}) {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      for (int k = 0; k <= 10; ++k) {
        const double x = iv.a + iv.length() * k / 10.0;
        auto w = [&](double t) { return std::pow((iv.b - t) / iv.length(), alpha); };
        const double m_ref = simpson([&](double t) { return (x - t) * w(t); }, iv.a, x) +
                             simpson([&](double t) { return (t - x) * w(t); }, x, iv.b);
        const double a_ref = simpson([&](double t) { return (t - iv.a) * w(t); }, iv.a, x) +
                             simpson([&](double t) { return (iv.b - t) * w(t); }, x, iv.b);
        worst_m = std::max(worst_m, std::abs(constant_M(iv, x, alpha) - m_ref) / m_ref);
        worst_a = std::max(worst_a, std::abs(constant_A(iv, x, alpha) - a_ref) / a_ref);
        ++checks;
      }
    }
  }
  const double secs = seconds_since(start);
  const bool ok = checks == 88 && worst_m <= kConstRelTol && worst_a <= kConstRelTol &&
                  secs < kConstSeconds;
  report(1, "closed-form constants", ok,
         std::to_string(checks) + " checks each, max rel dev M " + fmt("%.3g", worst_m) +
             ", A " + fmt("%.3g", worst_a) + ", " + fmt("%.2f s", secs));
}

void criterion_identities() {
  const Interval iv = make_interval(0, 1);
  double worst11 = 0, worst12 = 0, worst_env = -1;
  int cases = 0;
  for (const char* f : {"monomial:2", "monomial:3", "exp", "affine:1:2"}) {
    for (const char* g : {"const:1", "affine:0:1", "sin"}) {
      const RealFunction gf = parse_function(g);
      const double sup = sup_norm(gf, iv);
      for (int k = 0; k < 20; ++k) {
        const double x = k / 19.0;
        const BoundCase c = build_case(parse_function(f), gf, iv, 1.0, x, 1.0, {1, 1});
        worst11 = std::max(worst11, residual_lemma11(c).value);
        worst12 = std::max(worst12, residual_lemma12(c).value);
        for (int i = 0; i <= 1000; ++i) {
          const double t = i / 1000.0;
          const StepWeight sw = step_weight(gf, iv, x, t);
          worst_env = std::max(worst_env, std::abs(sw.sg) - sup * sw.s);
        }
        ++cases;
      }
    }
  }
  const bool ok = cases == 240 && worst11 <= kResidualTol && worst12 <= kResidualTol &&
                  worst_env <= kEnvelopeTol;
  report(2, "kernel identities", ok,
         std::to_string(cases) + " cases, max residual " + fmt("%.3g", worst11) + " / " +
             fmt("%.3g", worst12) + ", envelope excess " + fmt("%.3g", worst_env));
}

void criterion_reductions() {
  const double d1 = reduction_check(make_interval(0, 1), 100, 20240521);
  const double d2 = reduction_check(make_interval(2, 5), 100, 20240522);
  const double worst = std::max(d1, d2);
  report(3, "reductions at alpha = m = 1", worst <= kReductionTol,
         "4 pairs x 100 seeded cases x 2 intervals, max deviation " + fmt("%.3g", worst));
}

bool covers_minimum(const SuiteConfig& config) {
  std::set<std::string> fs_, gs;
  std::set<double> qs, alphas, ms;
  bool sweep21 = false;
  for (const CaseSpec& c : config.cases) {
    if (c.interval.a != 0.0 || c.interval.b != 1.0) continue;
    fs_.insert(c.f.spec());
    gs.insert(c.g.spec());
    qs.insert(c.qs.begin(), c.qs.end());
    alphas.insert(c.alphas.begin(), c.alphas.end());
    ms.insert(c.ms.begin(), c.ms.end());
    sweep21 = sweep21 || (c.xs.empty() && c.x_points >= 21);
  }
  auto has_fn = [](const std::set<std::string>& set, std::initializer_list<const char*> want) {
    return std::all_of(want.begin(), want.end(),
                       [&](const char* v) { return set.count(parse_function(v).spec()) > 0; });
  };
  auto has = [](const std::set<double>& set, std::initializer_list<double> want) {
    return std::all_of(want.begin(), want.end(), [&](double v) { return set.count(v) > 0; });
  };
  return sweep21 && has_fn(fs_, {"monomial:2", "monomial:3", "exp"}) &&
         has_fn(gs, {"const:1", "affine:0:1", "poly:0:1:-1", "sin"}) &&
         has(qs, {1.0, 1.5, 2.0, 3.0}) && has(alphas, {0.25, 0.5, 0.75, 1.0}) &&
         has(ms, {0.25, 0.5, 0.75, 1.0});
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_main(const fs::path& work) {
  SuiteConfig config = load_config(HHBOUND_BUNDLED_SUITE);
  config.jobs = 1;
  config.output_dir = work / "run1";

  const auto start = Clock::now();
  const SuiteResult first = run_and_write(config);
  const double secs = seconds_since(start);
  std::size_t main_reports = 0;
  for (const auto& r : first.reports) {
    if (r.report.theorem == TheoremId::T21 || r.report.theorem == TheoremId::T22) ++main_reports;
  }
  const bool coverage = covers_minimum(config);
  const bool ok4 = coverage && first.violations == 0 && first.errors.empty() &&
                   main_reports > 0 && secs < kMainSeconds;
  report(4, "main inequality suite", ok4,
         std::to_string(first.reports.size()) + " reports (" + std::to_string(main_reports) +
             " T21/T22), " + std::to_string(first.violations) + " violations, " +
             std::to_string(first.hypothesis_rejections) + " hypothesis rejections, " +
             std::to_string(first.errors.size()) + " errors, coverage " +
             (coverage ? "ok" : "MISSING") + ", " + fmt("%.1f s", secs) + " single-threaded");
}

// Re-runs the bundled suite and compares with the files criterion 4 wrote.
void criterion_determinism(const fs::path& work) {
  SuiteConfig config = load_config(HHBOUND_BUNDLED_SUITE);
  config.jobs = 1;
  config.output_dir = work / "run2";
  run_and_write(config);
  bool same = true;
  std::size_t bytes = 0;
  for (const std::string ext : {".csv", ".json"}) {
    const std::string a = slurp(work / "run1" / (config.name + ext));
    const std::string b = slurp(work / "run2" / (config.name + ext));
    same = same && !a.empty() && a == b;
    bytes += a.size();
  }
  report(7, "determinism", same,
         std::string(same ? "byte-identical" : "reports differ") + " CSV/JSON across two runs (" +
             std::to_string(bytes) + " bytes)");
}

void criterion_spot_checks() {
  const Interval iv = make_interval(0, 1);
  const RealFunction f = parse_function("monomial:2");
  const RealFunction g = parse_function("const:1");
  const BoundCase mid = build_case(f, g, iv, 1.0, 0.5, 1.0, {1, 1});
  const auto t21 = verify_case(mid, TheoremId::T21).report;
  const auto t22 = verify_case(mid, TheoremId::T22).report;
  BoundCase left = mid;
  left.x = iv.a;
  const auto eq = verify_case(left, TheoremId::T21).report;
  const bool ok = t21 && t22 && eq && std::abs(t21->lhs - 1.0 / 6.0) <= kSpotTol &&
                  t21->rhs == 0.25 && std::abs(t22->lhs - 1.0 / 12.0) <= kSpotTol &&
                  t22->rhs == 0.25 && std::abs(eq->tightness - 1.0) <= kSpotTol && eq->holds;
  std::string detail = "missing report";
  if (t21 && t22 && eq) {
    detail = "T21 lhs " + fmt("%.17g", t21->lhs) + " rhs " + fmt("%.17g", t21->rhs) +
             "; T22 lhs " + fmt("%.17g", t22->lhs) + " rhs " + fmt("%.17g", t22->rhs) +
             "; x=a tightness " + fmt("%.17g", eq->tightness) +
             (eq->holds ? " holds" : " FAILS");
  }
  report(5, "known-value spot checks", ok, detail);
}

// Plain convexity written straight from the chord inequality.
bool chord_convex(const RealFunction& f, double lo, double hi, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double y = lo + (hi - lo) * j / (n - 1);
        const double t = static_cast<double>(k) / (n - 1);
        const double rhs = t * f(x) + (1 - t) * f(y);
        if (f(t * x + (1 - t) * y) - rhs > 1e-12 * (1 + std::abs(rhs))) return false;
      }
    }
  }
  return true;
}

void criterion_convexity() {
  const DomainSpec unit = make_domain(1.0);
  const bool square = check_alpha_m_convex(parse_function("monomial:2"), unit, {1, 1}).holds;

  const RealFunction neg = parse_function("negmonomial:2");
  const Verdict v = check_alpha_m_convex(neg, unit, {1, 1});
  bool witness_ok = false;
  if (!v.holds && v.witness) {
    const Witness& w = *v.witness;
    const double gap = neg(w.t * w.x + (1 - w.t) * w.y) - (w.t * neg(w.x) + (1 - w.t) * neg(w.y));
    witness_ok = gap > 0.0 && std::abs(gap - w.gap) <= 1e-12;
  }

  // One representative per registered family, convex and non-convex alike.
  const char* registry[] = {"const:1",      "affine:1:-2",      "monomial:2",
                            "monomial:3",   "monomial:0.5",     "monomial:1.5:2",
                            "negmonomial:2", "negmonomial:3",   "poly:0:1:-1",
                            "poly:1:-3:3",  "poly:0:0:0:-1:1",  "exp:1:1",
                            "exp:-2:1",     "exp:1:-1",         "sin:1:1",
                            "sin:6:1",      "cos:1:1",          "cos:3:-1",
                            "pwl:0:1:0.5:0:1:1", "pwl:0:0:0.5:1:1:0",
                            "pwslope:0:0:0.5:1:1:3", "pwslope:0:0:0.5:1:1:0"};
  int agree = 0, total = 0;
  std::string mismatches;
  for (const char* s : registry) {
    const RealFunction f = parse_function(s);
    const bool mine = check_alpha_m_convex(f, unit, {1, 1}).holds;
    const bool plain = chord_convex(f, 0.0, 1.0, 51);
    ++total;
    if (mine == plain) {
      ++agree;
    } else {
      mismatches += std::string(" ") + s;
    }
  }
  std::set<std::string> covered;
  for (const char* s : registry) covered.insert(std::string(parse_function(s).family_id()));
  const bool all_families = covered.size() == family_ids().size();
  const bool ok = square && witness_ok && agree == total && all_families;
  report(6, "convexity checker", ok,
         std::string("x^2 ") + (square ? "certified" : "REJECTED") + ", -x^2 witness " +
             (witness_ok ? "reproduces" : "INVALID") + ", " + std::to_string(agree) + "/" +
             std::to_string(total) + " verdicts agree over " + std::to_string(covered.size()) +
             " families" + mismatches);
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "hhbound_acceptance";
  fs::remove_all(work);
  try {
    criterion_constants();
    criterion_identities();
    criterion_reductions();
    criterion_main(work);
    criterion_spot_checks();
    criterion_convexity();
    criterion_determinism(work);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    ++failures;
  }
  fs::remove_all(work);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
