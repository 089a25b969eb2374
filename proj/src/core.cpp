#include "hhbound/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hhbound {

namespace {

constexpr int kDerivativeGrid = 1000;

bool in_unit(double v, bool open_at_zero) {
  return open_at_zero ? (v > 0.0 && v <= 1.0) : (v >= 0.0 && v <= 1.0);
}

}  // namespace

Interval make_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("interval endpoints must be finite");
  }
  if (a == b) throw InvalidArgument("degenerate interval: a == b");
  if (a > b) throw InvalidArgument("reversed interval endpoints: a > b");
  return Interval{a, b};
}

DomainSpec make_domain(double b_star) {
  if (!std::isfinite(b_star) || !(b_star > 0.0)) {
    throw InvalidArgument("b_star must be finite and > 0");
  }
  return DomainSpec{b_star};
}

void validate_for_definition(const ConvexityParams& params) {
  if (!in_unit(params.alpha, false) || !in_unit(params.m, false)) {
    throw InvalidArgument("(alpha, m) must lie in [0,1]^2");
  }
}

void validate_for_bounds(const ConvexityParams& params) {
  if (!in_unit(params.alpha, true) || !in_unit(params.m, true)) {
    throw InvalidArgument("(alpha, m) must lie in (0,1]^2 for bound evaluation");
  }
}

double DifferentiablePair::value(double t) const {
  if (t < 0.0 || t > domain.b_star) {
    throw DomainError("t = " + format_real(t) + " outside [0, b_star]");
  }
  return f(t);
}

double DifferentiablePair::derivative(double t) const {
  if (t < 0.0 || t > domain.b_star) {
    throw DomainError("t = " + format_real(t) + " outside [0, b_star]");
  }
  return f_prime(t);
}

double derivative_mismatch(const DifferentiablePair& pair, const Interval& iv) {
  const double h = 1e-6 * iv.length();
  // Central differences cannot resolve a singular higher derivative at an
  // end (t^1.5 at 0), so the grid stays a thin margin inside [a, b].
  const double margin = 1e-3 * iv.length();
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kDerivativeGrid; ++i) {
    const double t =
        iv.a + margin + (iv.length() - 2.0 * margin) * i / (kDerivativeGrid - 1);
    const double fd = (pair.f(t + h) - pair.f(t - h)) / (2.0 * h);
    const double exact = pair.f_prime(t);
    worst = std::max(worst, std::abs(exact - fd) - 1e-4 * (1.0 + std::abs(exact)));
  }
  return worst;
}

DifferentiablePair make_pair(const RealFunction& f, DomainSpec domain) {
  DifferentiablePair pair{f, derivative(f), make_domain(domain.b_star)};
  if (!f.smooth()) {
    throw InvalidArgument(f.spec() + " is not differentiable on its domain");
  }
  const Interval whole{std::max(0.0, f.domain_lo()),
                       std::min(domain.b_star, f.domain_hi())};
  if (!(whole.a < whole.b) || whole.a > 0.0 || whole.b < domain.b_star) {
    throw InvalidArgument(f.spec() + " is not defined on all of [0, b_star]");
  }
  if (derivative_mismatch(pair, whole) > 0.0) {
    throw InvalidArgument("derivative of " + f.spec() +
                          " disagrees with finite differences");
  }
  return pair;
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T13: return "T13";
    case TheoremId::T14: return "T14";
    case TheoremId::C11: return "C11";
    case TheoremId::C12: return "C12";
    case TheoremId::T21: return "T21";
    case TheoremId::T22: return "T22";
    case TheoremId::C21: return "C21";
    case TheoremId::C22: return "C22";
  }
  return "?";
}

TheoremId parse_theorem(std::string_view text) {
  for (auto id : {TheoremId::T13, TheoremId::T14, TheoremId::C11, TheoremId::C12,
                  TheoremId::T21, TheoremId::T22, TheoremId::C21, TheoremId::C22}) {
    if (to_string(id) == text) return id;
  }
  throw InvalidArgument("unknown theorem id '" + std::string(text) + "'");
}

bool uses_endpoint_lhs(TheoremId id) {
  return id == TheoremId::T13 || id == TheoremId::T21 || id == TheoremId::C11 ||
         id == TheoremId::C21;
}

bool is_corollary(TheoremId id) {
  return id == TheoremId::C11 || id == TheoremId::C12 || id == TheoremId::C21 ||
         id == TheoremId::C22;
}

bool is_classical(TheoremId id) {
  return id == TheoremId::T13 || id == TheoremId::T14 || id == TheoremId::C11 ||
         id == TheoremId::C12;
}

void validate_case(const BoundCase& c) {
  const Interval& iv = c.interval;
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b) || !(iv.a < iv.b)) {
    throw InvalidArgument("case interval is not a valid [a, b] with a < b");
  }
  if (!(iv.a <= c.x && c.x <= iv.b)) {
    throw InvalidArgument("case x = " + format_real(c.x) + " outside [a, b]");
  }
  if (!(c.q >= 1.0) || !std::isfinite(c.q)) {
    throw InvalidArgument("case q must be a finite real >= 1");
  }
  validate_for_definition(c.params);
  if (iv.a < 0.0 || iv.b > c.pair.domain.b_star) {
    throw InvalidArgument("case interval is not inside [0, b_star]");
  }
  if (c.params.m > 0.0 && iv.b / c.params.m > c.pair.domain.b_star) {
    throw InvalidArgument("b/m = " + format_real(iv.b / c.params.m) +
                          " exceeds b_star = " +
                          format_real(c.pair.domain.b_star));
  }
  double sampled = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i == 1000 ? iv.b : iv.a + iv.length() * i / 1000.0;
    sampled = std::max(sampled, std::abs(c.g(t)));
  }
  if (!(c.g_sup >= sampled)) {
    throw InvalidArgument("g_sup = " + format_real(c.g_sup) +
                          " is below the sampled sup |g| = " +
                          format_real(sampled));
  }
}

BoundCase make_case(const DifferentiablePair& pair, const RealFunction& g,
                    const Interval& iv, double x, double q,
                    const ConvexityParams& params, double g_sup) {
  BoundCase c{pair, g, iv, x, q, params, g_sup};
  validate_case(c);
  return c;
}

BoundReport make_report(TheoremId theorem, double lhs, double lhs_error,
                        double rhs) {
  BoundReport r;
  r.theorem = theorem;
  r.lhs = lhs;
  r.rhs = rhs;
  r.lhs_error = lhs_error;
  r.slack = rhs - lhs;
  if (rhs > 0.0) {
    r.tightness = lhs / rhs;
  } else {
    r.tightness = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double tol = std::max(1e-9, 1e-9 * std::abs(rhs)) + lhs_error;
  r.holds = lhs <= rhs + tol;
  return r;
}

double power(double r, double e) {
  if (e == 0.0) return 1.0;
  if (r == 0.0) return 0.0;
  return std::pow(r, e);
}

}  // namespace hhbound
