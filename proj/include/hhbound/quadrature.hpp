#pragma once

// Numerical oracle: globally adaptive Simpson quadrature, sup-norm
// estimation, the two left-hand-side expressions and the residuals of the
// two kernel identities.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "hhbound/core.hpp"

namespace hhbound {

/// Raised when the adaptive scheme exhausts its panel budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kDefaultPanelBudget = std::size_t{1} << 20;

using Integrand = std::function<double(double)>;

/// Integrates `f` over the piecewise range given by increasing `nodes`
/// (at least two). Each piece starts with four Simpson panels; the panel
/// with the largest Richardson error estimate is bisected until the summed
/// estimate is <= max(abs_tol, rel_tol |value|). The returned value carries
/// the Richardson correction. Kinks of the integrand belong in `nodes`.
IntegralResult integrate(const Integrand& f, std::span<const double> nodes,
                         double abs_tol, double rel_tol,
                         std::size_t max_panels = kDefaultPanelBudget);

/// Signed integral over [lo, hi]; lo > hi flips the sign, lo == hi gives 0.
IntegralResult integrate(const Integrand& f, double lo, double hi,
                         double abs_tol, double rel_tol,
                         std::size_t max_panels = kDefaultPanelBudget);

IntegralResult integrate(const RealFunction& fn, const Interval& iv,
                         double abs_tol, double rel_tol);

struct SupEstimate {
  double value = 0.0;
  double argmax = 0.0;
  /// Every scan sample of |g| had the same value.
  bool constant_magnitude = false;
};

/// Dense 10001-point scan of |g| followed by successive parabolic
/// refinement inside the bracket of the best sample.
SupEstimate estimate_sup(const Integrand& g, const Interval& iv);

double sup_norm(const RealFunction& g, const Interval& iv);

/// Relative inflation applied to sampled sup estimates before they enter a
/// right-hand side.
inline constexpr double kSupSafetyFactor = 1.0 + 1e-6;

/// sup_norm inflated by kSupSafetyFactor unless |g| is constant on the scan.
double bound_sup(const RealFunction& g, const Interval& iv);

/// Signed integral of g from x to t. kernel_K(x, t) = -kernel_K(t, x)
/// holds bit-exactly.
double kernel_K(const RealFunction& g, const Interval& iv, double x, double t);

struct StepWeight {
  double sg = 0.0;  ///< S_g(t)
  double s = 0.0;   ///< S(t)
};

/// Left branch for t < x, right branch for t >= x.
StepWeight step_weight(const RealFunction& g, const Interval& iv, double x,
                       double t);

/// |f(a) int_a^x g + f(b) int_x^b g - int_a^b f g|, with the oracle error.
IntegralResult lhs_endpoint(const BoundCase& c);
/// |f(x) int_a^b g - int_a^b f g|, with the oracle error.
IntegralResult lhs_point(const BoundCase& c);

struct Residual {
  double value = 0.0;  ///< |LHS - RHS|
  double lhs = 0.0;
  double rhs = 0.0;
  double error_estimate = 0.0;  ///< combined oracle error of both sides
};

Residual residual_lemma11(const BoundCase& c);
Residual residual_lemma12(const BoundCase& c);

/// Cumulative integral G(t) = int_a^t g tabulated on equally spaced nodes
/// and read back with cubic Hermite interpolation (G' = g is exact).
class Antiderivative {
 public:
  Antiderivative(const RealFunction& g, const Interval& iv,
                 std::size_t nodes = 4097);

  double operator()(double t) const;

 private:
  RealFunction g_;
  Interval iv_;
  double h_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

}  // namespace hhbound
