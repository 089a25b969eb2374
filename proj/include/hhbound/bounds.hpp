#pragma once

// Closed-form right-hand sides of the weighted trapezoid / midpoint error
// bounds, for (alpha, m)-convex |f'|^q and for the classical convex case.
//
// Notation used throughout:
//   w(t)  = ((b - t) / (b - a))^alpha
//   S     = ((x - a)^2 + (b - x)^2) / 2      total absolute moment about x
//   M     = int_a^b |t - x| w(t) dt
//   A     = int_a^x (t - a) w(t) dt + int_x^b (b - t) w(t) dt

#include <cstdint>
#include <string_view>

#include "hhbound/core.hpp"

namespace hhbound {

double moment_total(const Interval& iv, double x);
double constant_M(const Interval& iv, double x, double alpha);
double constant_A(const Interval& iv, double x, double alpha);

enum class ProofIntegralId : std::uint8_t {
  T21_WEIGHTED_ALPHA,    ///< int_a^b |t-x| w(t) dt
  T21_COMPLEMENT,        ///< int_a^b |t-x| (1 - w(t)) dt
  T22_LEFT_ALPHA,        ///< int_a^x (t-a) w(t) dt
  T22_RIGHT_ALPHA,       ///< int_x^b (b-t) w(t) dt
  T22_RIGHT_COMPLEMENT,  ///< int_x^b (b-t) (1 - w(t)) dt
  T22_LEFT_COMPLEMENT,   ///< int_a^x (t-a) (1 - w(t)) dt
  S_TOTAL,               ///< int_a^b S(t) dt
};

inline constexpr ProofIntegralId kAllProofIntegrals[] = {
    ProofIntegralId::T21_WEIGHTED_ALPHA,   ProofIntegralId::T21_COMPLEMENT,
    ProofIntegralId::T22_LEFT_ALPHA,       ProofIntegralId::T22_RIGHT_ALPHA,
    ProofIntegralId::T22_RIGHT_COMPLEMENT, ProofIntegralId::T22_LEFT_COMPLEMENT,
    ProofIntegralId::S_TOTAL};

std::string_view to_string(ProofIntegralId id);

/// Closed form of the proof-internal integral `id`.
double proof_integral(ProofIntegralId id, const Interval& iv, double x,
                      double alpha);

/// Everything a right-hand side depends on. `deriv_a` is |f'(a)|;
/// `deriv_far` is |f'(b/m)| for the (alpha, m) bounds and |f'(b)| for the
/// classical ones.
struct BoundInputs {
  Interval interval;
  double x = 0.0;
  double q = 1.0;
  ConvexityParams params;
  double g_sup = 1.0;
  double deriv_a = 0.0;
  double deriv_far = 0.0;
};

double rhs_theorem21(const BoundInputs& in);
double rhs_theorem22(const BoundInputs& in);
double rhs_corollary21(const BoundInputs& in);
double rhs_corollary22(const BoundInputs& in);
double rhs_theorem13(const BoundInputs& in);
double rhs_theorem14(const BoundInputs& in);
/// Shared right-hand side of the classical weighted trapezoid (C11) and
/// weighted midpoint (C12) inequalities.
double rhs_classical_symmetric(const BoundInputs& in);

double rhs_for(TheoremId id, const BoundInputs& in);

/// Reads |f'(a)| and |f'(b/m)| (or |f'(b)|) from the case.
BoundInputs inputs_for(TheoremId id, const BoundCase& c);

/// g(a + s) == g(b - s) at 101 points to 1e-10.
bool is_symmetric(const RealFunction& g, const Interval& iv);

double bound_theorem21(const BoundCase& c);
double bound_theorem22(const BoundCase& c);
double bound_corollary21(const BoundCase& c);
double bound_corollary22(const BoundCase& c);
double bound_theorem13(const BoundCase& c);
double bound_theorem14(const BoundCase& c);
double bound_classical_symmetric(const BoundCase& c, TheoremId which);

/// Dispatches on the theorem id, enforcing each theorem's preconditions.
double bound_for(TheoremId id, const BoundCase& c);

}  // namespace hhbound
