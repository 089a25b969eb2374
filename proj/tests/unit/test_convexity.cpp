#include <cmath>
#include <vector>

#include "doctest.h"
#include "hhbound/convexity.hpp"

using namespace hhbound;

namespace {

// Plain convexity on a grid, written directly from the chord inequality.
bool chord_convex(const RealFunction& f, double lo, double hi, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double y = lo + (hi - lo) * j / (n - 1);
        const double t = static_cast<double>(k) / (n - 1);
        const double lhs = f(t * x + (1 - t) * y);
        const double rhs = t * f(x) + (1 - t) * f(y);
        if (lhs - rhs > 1e-12 * (1 + std::abs(rhs))) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("grid specs") {
  CHECK_NOTHROW(validate_grid({2, 2, 2}));
  CHECK_THROWS_AS(validate_grid({1, 5, 5}), InvalidArgument);
  const GridSpec r = refine({51, 11, 3});
  CHECK(r.nx == 101);
  CHECK(r.ny == 21);
  CHECK(r.nt == 5);
  const auto xs = linspace(0.0, 1.0, 5);
  CHECK(xs.size() == 5);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == 1.0);
  CHECK(xs[2] == 0.5);
}

TEST_CASE("class membership examples") {
  const DomainSpec unit = make_domain(1.0);
  CHECK(check_alpha_m_convex(parse_function("monomial:2"), unit, {1, 1}).holds);
  CHECK(check_alpha_m_convex(parse_function("monomial:2"), unit, {1, 0.5}).holds);
  CHECK(check_alpha_m_convex(parse_function("exp"), unit, {1, 1}).holds);
  CHECK(check_alpha_m_convex(parse_function("const:1"), unit, {0.5, 1}).holds);

  const Verdict concave = check_alpha_m_convex(parse_function("negmonomial:2"), unit, {1, 1});
  REQUIRE_FALSE(concave.holds);
  REQUIRE(concave.witness.has_value());
  CHECK(concave.witness->gap > 0.0);

  CHECK_THROWS_AS(check_alpha_m_convex(parse_function("monomial:2"), unit, {1.5, 1}),
                  InvalidArgument);
}

TEST_CASE("witnesses reproduce the violation") {
  const char* specs[] = {"negmonomial:2", "sin:3", "cos:2", "monomial:0.5",
                         "poly:0:1:-1", "negmonomial:3"};
  const ConvexityParams params[] = {{1, 1}, {0.5, 1}, {1, 0.5}, {0.25, 0.75}};
  for (const char* s : specs) {
    const RealFunction f = parse_function(s);
    for (const ConvexityParams& p : params) {
      const Verdict v = check_alpha_m_convex(f, make_domain(1.0), p, {21, 21, 21});
      if (v.holds) continue;
      REQUIRE(v.witness.has_value());
      const Witness& w = *v.witness;
      // Recompute from the definition, independently of class_gap.
      const double z = w.t * w.x + p.m * (1 - w.t) * w.y;
      const double ta = std::pow(w.t, p.alpha);
      const double gap = f(z) - (ta * f(w.x) + p.m * (1 - ta) * f(w.y));
      CAPTURE(s);
      CHECK(gap > 0.0);
      CHECK(gap == doctest::Approx(w.gap).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha = m = 1 agrees with a direct chord check") {
  for (const std::string& id : {"const:2", "affine:1:-1", "monomial:2", "monomial:3",
                                "monomial:0.5", "negmonomial:2", "poly:0:1:-1",
                                "poly:1:-3:3", "exp", "exp:-1:-1", "sin", "cos:3",
                                "pwl:0:1:0.5:0:1:1", "pwl:0:0:0.5:1:1:0"}) {
    const RealFunction f = parse_function(id);
    CAPTURE(id);
    CHECK(check_alpha_m_convex(f, make_domain(1.0), {1, 1}, {21, 21, 21}).holds ==
          chord_convex(f, 0.0, 1.0, 21));
  }
}

TEST_CASE("grid refinement never reverses a failure") {
  const RealFunction f = parse_function("sin:5");
  GridSpec grid{11, 11, 11};
  bool failed = false;
  for (int k = 0; k < 3; ++k, grid = refine(grid)) {
    const bool holds = check_alpha_m_convex(f, make_domain(1.0), {1, 1}, grid).holds;
    if (failed) CHECK_FALSE(holds);
    failed = failed || !holds;
  }
  CHECK(failed);
}

TEST_CASE("sweep ties prefer the lexicographically smallest triple") {
  auto flat_bump = [](double) { return 0.0; };
  const double xs[] = {0.0, 1.0};
  const double ts[] = {0.5};
  // Every triple has gap 0 -> holds, no witness.
  CHECK(sweep_class(flat_bump, {1, 1}, xs, xs, ts).holds);

  auto neg = [](double t) { return -t * t; };
  const double xs2[] = {1.0, 0.0};
  const Verdict v = sweep_class(neg, {1, 1}, xs2, xs2, ts);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->x == 0.0);
  CHECK(v.witness->y == 1.0);
}

TEST_CASE("hypothesis check") {
  const auto pair = make_pair(parse_function("monomial:3"), make_domain(2.0));
  const Interval iv = make_interval(0.0, 1.0);
  CHECK(check_hypothesis(pair, 1.0, {1, 1}, iv).holds);
  CHECK(check_hypothesis(pair, 2.0, {1, 0.5}, iv).holds);
  CHECK_THROWS_AS(check_hypothesis(pair, 1.0, {1, 0.25}, iv), DomainError);

  // |f'| = 1.5 sqrt(t) is concave.
  const auto root = make_pair(parse_function("monomial:1.5"), make_domain(1.0));
  const Verdict v = check_hypothesis(root, 1.0, {1, 1}, iv);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
}

TEST_CASE("region classification") {
  const double alphas[] = {0.5, 1.0};
  const double ms[] = {0.0, 0.5, 1.0};
  const auto cells = classify_region(parse_function("monomial:2"), make_domain(1.0),
                                     alphas, ms, {21, 21, 21});
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].alpha == 0.5);
  CHECK(cells[0].m == 0.0);
  CHECK(cells[1].m == 0.5);
  CHECK(cells[3].alpha == 1.0);
  for (const auto& c : cells) CHECK(c.verdict.holds == !c.verdict.witness.has_value());
  CHECK(cells[5].verdict.holds);
}

TEST_CASE("Hermite-Hadamard sandwich") {
  const HermiteHadamard hh = check_hh(parse_function("monomial:2"), make_interval(0.0, 1.0));
  CHECK(hh.holds);
  CHECK(hh.lower == 0.25);
  CHECK(hh.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(hh.upper == 0.5);

  CHECK_FALSE(check_hh(parse_function("negmonomial:2"), make_interval(0.0, 1.0)).holds);

  // Every family certified convex at alpha = m = 1 satisfies the sandwich.
  for (const char* s : {"monomial:2", "monomial:3", "exp", "exp:-2:1", "affine:1:2",
                        "poly:1:-3:3", "cos:1:-1"}) {
    const RealFunction f = parse_function(s);
    if (!check_alpha_m_convex(f, make_domain(1.0), {1, 1}).holds) continue;
    CAPTURE(s);
    CHECK(check_hh(f, make_interval(0.0, 1.0)).holds);
    CHECK(check_hh(f, make_interval(0.2, 0.9)).holds);
  }
}
