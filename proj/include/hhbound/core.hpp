#pragma once

// Domain types shared by every hhbound module: intervals, convexity
// parameters, differentiable pairs, bound cases and bound reports.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hhbound/registry.hpp"

namespace hhbound {

/// Raised when an input violates a type invariant or an operation precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a function is evaluated outside its declared domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed integration domain [a, b] with a < b, both finite.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double t) const { return a <= t && t <= b; }
};

Interval make_interval(double a, double b);

/// Admissible domain [0, b_star] on which f and its derivative live.
struct DomainSpec {
  double b_star = 1.0;
};

DomainSpec make_domain(double b_star);

struct ConvexityParams {
  double alpha = 1.0;
  double m = 1.0;
};

/// Accepts (alpha, m) in [0,1]^2, the range of the class definition.
void validate_for_definition(const ConvexityParams& params);
/// Accepts (alpha, m) in (0,1]^2, the range required by the bound theorems.
void validate_for_bounds(const ConvexityParams& params);

/// f together with its registry derivative, restricted to [0, b_star].
struct DifferentiablePair {
  RealFunction f;
  RealFunction f_prime;
  DomainSpec domain;

  double value(double t) const;
  double derivative(double t) const;
};

/// Builds the pair from the registry derivative of `f` and checks it
/// against central differences on [0, b_star].
DifferentiablePair make_pair(const RealFunction& f, DomainSpec domain);

/// Largest violation of |f' - FD(f)| <= 1e-4 (1 + |f'|) on a 1000-point
/// grid spanning `iv` minus a 1e-3 (b - a) margin at each end, with step
/// 1e-6 (b - a). Non-positive means agreement.
double derivative_mismatch(const DifferentiablePair& pair, const Interval& iv);

enum class TheoremId : std::uint8_t { T13, T14, C11, C12, T21, T22, C21, C22 };

std::string_view to_string(TheoremId id);
TheoremId parse_theorem(std::string_view text);

/// Theorems whose left-hand side is the endpoint (trapezoid-type) expression.
bool uses_endpoint_lhs(TheoremId id);
/// Corollaries fix x at the midpoint.
bool is_corollary(TheoremId id);
/// Theorems of the classical (plain convexity) family.
bool is_classical(TheoremId id);

struct BoundCase {
  DifferentiablePair pair;
  RealFunction g;
  Interval interval;
  double x = 0.0;
  double q = 1.0;
  ConvexityParams params;
  double g_sup = 0.0;
};

/// Validates every BoundCase invariant; throws InvalidArgument with a
/// diagnostic naming the first violated field.
void validate_case(const BoundCase& bound_case);

BoundCase make_case(const DifferentiablePair& pair, const RealFunction& g,
                    const Interval& iv, double x, double q,
                    const ConvexityParams& params, double g_sup);

struct BoundReport {
  TheoremId theorem = TheoremId::T21;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tightness = 0.0;
  double lhs_error = 0.0;
  bool holds = true;
};

/// holds <=> lhs <= rhs + max(1e-9, 1e-9 |rhs|) + lhs_error.
BoundReport make_report(TheoremId theorem, double lhs, double lhs_error,
                        double rhs);

/// r^e with the conventions r^0 = 1 (including r = 0) and 0^e = 0 for e > 0.
double power(double r, double e);

}  // namespace hhbound
