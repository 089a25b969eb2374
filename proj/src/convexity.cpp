#include "hhbound/convexity.hpp"

#include <cmath>
#include <tuple>

#include "hhbound/quadrature.hpp"

namespace hhbound {

namespace {

constexpr double kClassTol = 1e-12;
constexpr double kHhTol = 1e-9;

bool violates(double gap, double rhs) {
  return gap > kClassTol * (1.0 + std::abs(rhs));
}

}  // namespace

void validate_grid(const GridSpec& grid) {
  if (grid.nx < 2 || grid.ny < 2 || grid.nt < 2) {
    throw InvalidArgument("grid sample counts must be >= 2");
  }
}

GridSpec refine(const GridSpec& grid) {
  return {2 * grid.nx - 1, 2 * grid.ny - 1, 2 * grid.nt - 1};
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

double class_gap(const std::function<double(double)>& fn,
                 const ConvexityParams& params, double x, double y, double t) {
  const double ta = power(t, params.alpha);
  return fn(t * x + params.m * (1.0 - t) * y) -
         (ta * fn(x) + params.m * (1.0 - ta) * fn(y));
}

Verdict sweep_class(const std::function<double(double)>& fn,
                    const ConvexityParams& params, std::span<const double> xs,
                    std::span<const double> ys, std::span<const double> ts) {
  std::vector<double> fx(xs.size());
  std::vector<double> fy(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = fn(xs[i]);
  for (std::size_t j = 0; j < ys.size(); ++j) fy[j] = fn(ys[j]);

  Verdict verdict;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      for (double t : ts) {
        const double ta = power(t, params.alpha);
        const double rhs = ta * fx[i] + params.m * (1.0 - ta) * fy[j];
        const double gap = fn(t * xs[i] + params.m * (1.0 - t) * ys[j]) - rhs;
        if (!violates(gap, rhs)) continue;
        const Witness w{xs[i], ys[j], t, gap};
        if (!verdict.witness) {
          verdict.witness = w;
          continue;
        }
        const Witness& best = *verdict.witness;
        if (gap > best.gap ||
            (gap == best.gap &&
             std::tie(w.x, w.y, w.t) < std::tie(best.x, best.y, best.t))) {
          verdict.witness = w;
        }
      }
    }
  }
  verdict.holds = !verdict.witness.has_value();
  return verdict;
}

Verdict check_alpha_m_convex(const RealFunction& fn, const DomainSpec& domain,
                             const ConvexityParams& params,
                             const GridSpec& grid) {
  validate_for_definition(params);
  validate_grid(grid);
  make_domain(domain.b_star);
  const auto xs = linspace(0.0, domain.b_star, grid.nx);
  const auto ys = linspace(0.0, domain.b_star, grid.ny);
  const auto ts = linspace(0.0, 1.0, grid.nt);
  return sweep_class([&fn](double v) { return fn(v); }, params, xs, ys, ts);
}

Verdict check_hypothesis(const DifferentiablePair& pair, double q,
                         const ConvexityParams& params, const Interval& iv,
                         const GridSpec& grid) {
  if (!(q >= 1.0)) throw InvalidArgument("hypothesis check needs q >= 1");
  validate_for_definition(params);
  validate_grid(grid);
  const double b_star = pair.domain.b_star;
  if (iv.a < 0.0 || iv.b > b_star) {
    throw DomainError("interval leaves [0, b_star]");
  }
  const auto xs = linspace(iv.a, iv.b, grid.nx);
  auto ys = linspace(iv.a, iv.b, grid.ny);
  if (params.m > 0.0 && params.m < 1.0) {
    const double far = iv.b / params.m;
    if (far > b_star) {
      throw DomainError("b/m = " + format_real(far) + " leaves [0, b_star]");
    }
    ys.push_back(far);
  }
  const auto ts = linspace(0.0, 1.0, grid.nt);
  // tx + m(1-t)y stays in [0, max(x, m y)] for nonnegative samples, and
  // m y <= b whenever y <= b/m, so every combination is inside [0, b_star].
  auto h = [&pair, q](double t) {
    return power(std::abs(pair.derivative(t)), q);
  };
  return sweep_class(h, params, xs, ys, ts);
}

std::vector<RegionCell> classify_region(const RealFunction& fn,
                                        const DomainSpec& domain,
                                        std::span<const double> alpha_grid,
                                        std::span<const double> m_grid,
                                        const GridSpec& grid) {
  std::vector<RegionCell> cells;
  cells.reserve(alpha_grid.size() * m_grid.size());
  for (double alpha : alpha_grid) {
    for (double m : m_grid) {
      const ConvexityParams params{alpha, m};
      cells.push_back({alpha, m, check_alpha_m_convex(fn, domain, params, grid)});
    }
  }
  return cells;
}

HermiteHadamard check_hh(const RealFunction& fn, const Interval& iv) {
  const IntegralResult integral = integrate(fn, iv, 1e-12, 1e-12);
  HermiteHadamard out;
  out.lower = fn(iv.midpoint());
  out.mean = integral.value / iv.length();
  out.upper = 0.5 * (fn(iv.a) + fn(iv.b));
  const double slack = kHhTol + integral.error_estimate / iv.length();
  out.holds = out.lower <= out.mean + slack && out.mean <= out.upper + slack;
  return out;
}

}  // namespace hhbound
