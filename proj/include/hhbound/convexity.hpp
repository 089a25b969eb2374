#pragma once

// Grid-based membership checks for the (alpha, m)-convex class and the
// Hermite-Hadamard sanity check.
//
// A "holds" verdict means no counterexample was found on the grid; a
// "fails" verdict always carries a witness triple that reproduces the
// violation when re-evaluated.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hhbound/core.hpp"

namespace hhbound {

struct GridSpec {
  int nx = 51;
  int ny = 51;
  int nt = 51;
};

void validate_grid(const GridSpec& grid);

/// Grid with every spacing halved; contains the original grid points.
GridSpec refine(const GridSpec& grid);

struct Witness {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  /// f(tx + m(1-t)y) - [t^alpha f(x) + m(1 - t^alpha) f(y)]
  double gap = 0.0;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
};

/// Gap of the defining inequality at one triple.
double class_gap(const std::function<double(double)>& fn,
                 const ConvexityParams& params, double x, double y, double t);

/// Sweeps every (x, y, t) of the given sample sets. The worst witness is the
/// maximal gap; among equal gaps the lexicographically smallest triple wins.
Verdict sweep_class(const std::function<double(double)>& fn,
                    const ConvexityParams& params, std::span<const double> xs,
                    std::span<const double> ys, std::span<const double> ts);

/// Equally spaced samples of [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int n);

Verdict check_alpha_m_convex(const RealFunction& fn, const DomainSpec& domain,
                             const ConvexityParams& params,
                             const GridSpec& grid = {});

/// Checks that t -> |f'(t)|^q is (alpha, m)-convex with x and y sampled on
/// [a, b]. The y samples also include b/m, the point at which the bound
/// theorems apply the class inequality. Throws DomainError if a sample or a
/// combination leaves [0, b_star].
Verdict check_hypothesis(const DifferentiablePair& pair, double q,
                         const ConvexityParams& params, const Interval& iv,
                         const GridSpec& grid = {});

struct RegionCell {
  double alpha = 0.0;
  double m = 0.0;
  Verdict verdict;
};

/// One verdict per (alpha, m), alpha-major.
std::vector<RegionCell> classify_region(const RealFunction& fn,
                                        const DomainSpec& domain,
                                        std::span<const double> alpha_grid,
                                        std::span<const double> m_grid,
                                        const GridSpec& grid = {});

struct HermiteHadamard {
  bool holds = true;
  double lower = 0.0;  ///< f((a+b)/2)
  double mean = 0.0;   ///< integral mean of f over [a, b]
  double upper = 0.0;  ///< (f(a) + f(b)) / 2
};

HermiteHadamard check_hh(const RealFunction& fn, const Interval& iv);

}  // namespace hhbound
