#pragma once

// Registry of the built-in parametric function families.
//
// Families are addressed by a short id and a list of real shape parameters,
// written on the command line as `name:p1:p2:...`:
//
//   const:c              c
//   affine:c0:c1         c0 + c1 t
//   monomial:p[:c]       c t^p              (p >= 0; t >= 0 unless p is integral)
//   negmonomial:p        -t^p
//   poly:c0:c1:...       c0 + c1 t + c2 t^2 + ...
//   exp[:c[:k]]          k exp(c t)
//   sin[:w[:k]]          k sin(w t)
//   cos[:w[:k]]          k cos(w t)
//   pwl:t0:v0:t1:v1:...  piecewise linear through (t_i, v_i), domain [t0, tn]
//   pwslope:t0:v0:...    slopes of the matching pwl (right-continuous)

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhbound {

struct Family;

class RealFunction {
 public:
  RealFunction();

  std::string_view family_id() const;
  const std::vector<double>& params() const { return params_; }

  /// Evaluates the family at t. Throws DomainError outside the declared
  /// domain or if the value is not finite.
  double operator()(double t) const;

  /// Declared domain of the family (may be unbounded).
  double domain_lo() const;
  double domain_hi() const;

  /// False for the piecewise families, whose derivatives jump.
  bool smooth() const;

  /// Canonical `name:p1:p2` rendering with shortest round-trip reals.
  std::string spec() const;

  friend bool operator==(const RealFunction& lhs, const RealFunction& rhs);

 private:
  friend RealFunction make_function(std::string_view, std::vector<double>);
  friend RealFunction derivative(const RealFunction&);
  RealFunction(const Family* family, std::vector<double> params);

  const Family* family_;
  std::vector<double> params_;
};

/// Looks up `family_id`, fills default parameters and validates them.
/// Throws InvalidArgument on an unknown family or bad parameter list.
RealFunction make_function(std::string_view family_id,
                           std::vector<double> params);

/// Parses the `name:p1:p2:...` syntax.
RealFunction parse_function(std::string_view text);

double registry_eval(const RealFunction& fn, double t);

/// Exact derivative family of `fn`.
RealFunction derivative(const RealFunction& fn);

/// Ids of all registered families, in registration order.
std::vector<std::string> family_ids();

/// Shortest decimal string that round-trips to `value`.
std::string format_real(double value);

}  // namespace hhbound
