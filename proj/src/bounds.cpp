#include "hhbound/bounds.hpp"

#include <cmath>

namespace hhbound {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1]");
  }
}

void check_x(const Interval& iv, double x) {
  if (!(iv.a <= x && x <= iv.b)) {
    throw InvalidArgument("x = " + format_real(x) + " outside [a, b]");
  }
}

void check_inputs(const BoundInputs& in) {
  check_x(in.interval, in.x);
  validate_for_bounds(in.params);
  if (!(in.q >= 1.0)) throw InvalidArgument("q must be >= 1");
  if (!(in.g_sup >= 0.0)) throw InvalidArgument("g_sup must be >= 0");
}

void check_midpoint(const BoundInputs& in) {
  const double mid = in.interval.midpoint();
  if (std::abs(in.x - mid) > 1e-12 * std::max(1.0, std::abs(mid))) {
    throw InvalidArgument("corollary bounds need x = (a + b) / 2");
  }
}

// g_sup * S^{(q-1)/q} * (wa |f'(a)|^q + wf |f'(far)|^q)^{1/q}
double power_mean_shape(const BoundInputs& in, double weight_a,
                        double weight_far) {
  const double q = in.q;
  const double total = moment_total(in.interval, in.x);
  const double brace = weight_a * power(in.deriv_a, q) +
                       weight_far * power(in.deriv_far, q);
  return in.g_sup * power(total, (q - 1.0) / q) * power(brace, 1.0 / q);
}

// g_sup [1/((alpha+1)(alpha+2))]^{1/q} (b-a)^2 / 4^{1-1/q} [...]^{1/q}
double corollary_shape(const BoundInputs& in, double coeff_a,
                       double coeff_far) {
  const double q = in.q;
  const double alpha = in.params.alpha;
  const double len = in.interval.length();
  const double bracket = coeff_a * power(in.deriv_a, q) +
                         in.params.m * coeff_far * power(in.deriv_far, q);
  return in.g_sup * power(1.0 / ((alpha + 1.0) * (alpha + 2.0)), 1.0 / q) *
         len * len / power(4.0, 1.0 - 1.0 / q) * power(bracket, 1.0 / q);
}

}  // namespace

double moment_total(const Interval& iv, double x) {
  const double left = x - iv.a;
  const double right = iv.b - x;
  return 0.5 * (left * left + right * right);
}

double constant_M(const Interval& iv, double x, double alpha) {
  check_alpha(alpha);
  check_x(iv, x);
  const double a = iv.a;
  const double b = iv.b;
  const double len = b - a;
  const double num = power(len, alpha + 1.0) * (2.0 * x - b - a + alpha * (x - a)) +
                     2.0 * power(b - x, alpha + 2.0);
  return num / ((alpha + 1.0) * (alpha + 2.0) * power(len, alpha));
}

double constant_A(const Interval& iv, double x, double alpha) {
  check_alpha(alpha);
  check_x(iv, x);
  const double a = iv.a;
  const double b = iv.b;
  const double len = b - a;
  const double num =
      power(len, alpha + 2.0) +
      power(b - x, alpha + 1.0) * ((a - x) * (2.0 + alpha) + alpha * (b - x));
  return num / ((alpha + 1.0) * (alpha + 2.0) * power(len, alpha));
}

std::string_view to_string(ProofIntegralId id) {
  switch (id) {
    case ProofIntegralId::T21_WEIGHTED_ALPHA: return "T21_WEIGHTED_ALPHA";
    case ProofIntegralId::T21_COMPLEMENT: return "T21_COMPLEMENT";
    case ProofIntegralId::T22_LEFT_ALPHA: return "T22_LEFT_ALPHA";
    case ProofIntegralId::T22_RIGHT_ALPHA: return "T22_RIGHT_ALPHA";
    case ProofIntegralId::T22_RIGHT_COMPLEMENT: return "T22_RIGHT_COMPLEMENT";
    case ProofIntegralId::T22_LEFT_COMPLEMENT: return "T22_LEFT_COMPLEMENT";
    case ProofIntegralId::S_TOTAL: return "S_TOTAL";
  }
  return "?";
}

double proof_integral(ProofIntegralId id, const Interval& iv, double x,
                      double alpha) {
  check_alpha(alpha);
  check_x(iv, x);
  const double a = iv.a;
  const double b = iv.b;
  const double len = b - a;
  const double denom = power(len, alpha) * (alpha + 1.0) * (alpha + 2.0);
  const double left_alpha =
      (power(len, alpha + 2.0) +
       power(b - x, alpha + 1.0) * (2.0 * a - b - x + alpha * (a - x))) /
      denom;
  const double right_alpha =
      power(b - x, alpha + 2.0) / (power(len, alpha) * (alpha + 2.0));
  switch (id) {
    case ProofIntegralId::T21_WEIGHTED_ALPHA:
      return constant_M(iv, x, alpha);
    case ProofIntegralId::T21_COMPLEMENT:
      return moment_total(iv, x) - constant_M(iv, x, alpha);
    case ProofIntegralId::T22_LEFT_ALPHA:
      return left_alpha;
    case ProofIntegralId::T22_RIGHT_ALPHA:
      return right_alpha;
    case ProofIntegralId::T22_RIGHT_COMPLEMENT:
      return 0.5 * (b - x) * (b - x) - right_alpha;
    case ProofIntegralId::T22_LEFT_COMPLEMENT:
      return 0.5 * (x - a) * (x - a) - left_alpha;
    case ProofIntegralId::S_TOTAL:
      return moment_total(iv, x);
  }
  throw InvalidArgument("unknown proof integral id");
}

double rhs_theorem21(const BoundInputs& in) {
  check_inputs(in);
  const double M = constant_M(in.interval, in.x, in.params.alpha);
  const double total = moment_total(in.interval, in.x);
  return power_mean_shape(in, M, in.params.m * (total - M));
}

double rhs_theorem22(const BoundInputs& in) {
  check_inputs(in);
  const double A = constant_A(in.interval, in.x, in.params.alpha);
  const double total = moment_total(in.interval, in.x);
  return power_mean_shape(in, A, in.params.m * (total - A));
}

double rhs_corollary21(const BoundInputs& in) {
  check_inputs(in);
  check_midpoint(in);
  const double alpha = in.params.alpha;
  const double p = std::pow(2.0, alpha);
  return corollary_shape(in, (alpha * p + 1.0) / (2.0 * p),
                         (p * (alpha * alpha + alpha + 2.0) - 2.0) / (4.0 * p));
}

double rhs_corollary22(const BoundInputs& in) {
  check_inputs(in);
  check_midpoint(in);
  const double alpha = in.params.alpha;
  const double p = std::pow(2.0, alpha);
  return corollary_shape(in, (2.0 * p - 1.0) / (2.0 * p),
                         (p * (alpha * alpha + 3.0 * alpha - 2.0) + 2.0) / (4.0 * p));
}

double rhs_theorem13(const BoundInputs& in) {
  check_inputs(in);
  const double a = in.interval.a;
  const double b = in.interval.b;
  const double x = in.x;
  const double l = x - a;
  const double r = b - x;
  const double six_len = 6.0 * (b - a);
  return power_mean_shape(in, (l * l * (3.0 * b - x - 2.0 * a) + r * r * r) / six_len,
                          (l * l * l + r * r * (2.0 * b + x - 3.0 * a)) / six_len);
}

double rhs_theorem14(const BoundInputs& in) {
  check_inputs(in);
  const double a = in.interval.a;
  const double b = in.interval.b;
  const double x = in.x;
  const double l = x - a;
  const double r = b - x;
  const double six_len = 6.0 * (b - a);
  return power_mean_shape(
      in, (l * l * (3.0 * b - a - 2.0 * x) + 2.0 * r * r * r) / six_len,
      (2.0 * l * l * l + r * r * (b + 2.0 * x - 3.0 * a)) / six_len);
}

double rhs_classical_symmetric(const BoundInputs& in) {
  check_inputs(in);
  check_midpoint(in);
  const double q = in.q;
  const double len = in.interval.length();
  const double mean = 0.5 * (power(in.deriv_a, q) + power(in.deriv_far, q));
  return in.g_sup * 0.25 * len * len * power(mean, 1.0 / q);
}

double rhs_for(TheoremId id, const BoundInputs& in) {
  switch (id) {
    case TheoremId::T13: return rhs_theorem13(in);
    case TheoremId::T14: return rhs_theorem14(in);
    case TheoremId::C11:
    case TheoremId::C12: return rhs_classical_symmetric(in);
    case TheoremId::T21: return rhs_theorem21(in);
    case TheoremId::T22: return rhs_theorem22(in);
    case TheoremId::C21: return rhs_corollary21(in);
    case TheoremId::C22: return rhs_corollary22(in);
  }
  throw InvalidArgument("unknown theorem id");
}

BoundInputs inputs_for(TheoremId id, const BoundCase& c) {
  BoundInputs in;
  in.interval = c.interval;
  in.x = c.x;
  in.q = c.q;
  in.params = c.params;
  in.g_sup = c.g_sup;
  in.deriv_a = std::abs(c.pair.derivative(c.interval.a));
  if (is_classical(id)) {
    in.params = ConvexityParams{1.0, 1.0};
    in.deriv_far = std::abs(c.pair.derivative(c.interval.b));
  } else {
    validate_for_bounds(c.params);
    in.deriv_far = std::abs(c.pair.derivative(c.interval.b / c.params.m));
  }
  return in;
}

bool is_symmetric(const RealFunction& g, const Interval& iv) {
  for (int i = 0; i <= 100; ++i) {
    const double s = 0.5 * iv.length() * i / 100.0;
    if (std::abs(g(iv.a + s) - g(iv.b - s)) > 1e-10) return false;
  }
  return true;
}

namespace {

double evaluate(TheoremId id, const BoundCase& c) {
  validate_case(c);
  if ((id == TheoremId::C11 || id == TheoremId::C21) &&
      !is_symmetric(c.g, c.interval)) {
    throw InvalidArgument("g is not symmetric about (a + b) / 2");
  }
  return rhs_for(id, inputs_for(id, c));
}

}  // namespace

double bound_theorem21(const BoundCase& c) { return evaluate(TheoremId::T21, c); }
double bound_theorem22(const BoundCase& c) { return evaluate(TheoremId::T22, c); }
double bound_corollary21(const BoundCase& c) { return evaluate(TheoremId::C21, c); }
double bound_corollary22(const BoundCase& c) { return evaluate(TheoremId::C22, c); }
double bound_theorem13(const BoundCase& c) { return evaluate(TheoremId::T13, c); }
double bound_theorem14(const BoundCase& c) { return evaluate(TheoremId::T14, c); }

double bound_classical_symmetric(const BoundCase& c, TheoremId which) {
  if (which != TheoremId::C11 && which != TheoremId::C12) {
    throw InvalidArgument("classical symmetric bound is C11 or C12");
  }
  return evaluate(which, c);
}

double bound_for(TheoremId id, const BoundCase& c) { return evaluate(id, c); }

}  // namespace hhbound
