#include "hhbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hhbound {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kInitialPanels = 4;
constexpr int kSupScan = 10000;
constexpr int kSupRefinements = 40;

// Oracle tolerances for the left-hand sides and identity residuals.
constexpr double kLhsTol = 1e-10;
constexpr double kKernelAbsTol = 1e-13;
constexpr double kKernelRelTol = 1e-12;
constexpr double kIdentityLhsTol = 1e-12;
constexpr double kOuterAbsTol = 1e-8;
constexpr double kOuterRelTol = 1e-10;

struct Panel {
  double lo;
  double hi;
  double f[5];  // lo, quarter, mid, three-quarter, hi
  double value;
  double error;
};

// Bisection order: largest error first, ties broken by position.
struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.lo > rhs.lo;
  }
};

void finish_panel(Panel& p) {
  const double h = p.hi - p.lo;
  const double coarse = h / 6.0 * (p.f[0] + 4.0 * p.f[2] + p.f[4]);
  const double fine =
      h / 12.0 * (p.f[0] + 4.0 * p.f[1] + 2.0 * p.f[2] + 4.0 * p.f[3] + p.f[4]);
  p.value = fine + (fine - coarse) / 15.0;
  p.error = std::abs(fine - coarse) / 15.0;
}

class PanelQueue {
 public:
  PanelQueue(const Integrand& f, std::size_t max_panels)
      : f_(f), max_panels_(max_panels) {}

  void seed(double lo, double hi) {
    const double step = (hi - lo) / kInitialPanels;
    double left = lo;
    double f_left = eval(lo);
    for (int k = 1; k <= kInitialPanels; ++k) {
      const double right = k == kInitialPanels ? hi : lo + step * k;
      const double f_right = eval(right);
      push(make(left, right, f_left, eval(0.5 * (left + right)), f_right));
      left = right;
      f_left = f_right;
    }
  }

  IntegralResult run(double abs_tol, double rel_tol) {
    while (true) {
      if (running_error_ <= target(abs_tol, rel_tol)) {
        resum();
        if (running_error_ <= target(abs_tol, rel_tol)) break;
      }
      Panel worst = heap_.top();
      const double mid = 0.5 * (worst.lo + worst.hi);
      if (!(worst.lo < 0.5 * (worst.lo + mid)) ||
          !(0.5 * (mid + worst.hi) < worst.hi)) {
        throw ConvergenceError("adaptive quadrature cannot bisect a panel further");
      }
      if (heap_.size() + 1 > max_panels_) {
        throw ConvergenceError("adaptive quadrature exceeded its panel budget");
      }
      heap_.pop();
      running_value_ -= worst.value;
      running_error_ -= worst.error;
      push(make(worst.lo, mid, worst.f[0], worst.f[1], worst.f[2]));
      push(make(mid, worst.hi, worst.f[2], worst.f[3], worst.f[4]));
    }
    return IntegralResult{running_value_, running_error_, evaluations_};
  }

 private:
  double eval(double t) {
    ++evaluations_;
    return f_(t);
  }

  Panel make(double lo, double hi, double f_lo, double f_mid, double f_hi) {
    Panel p{lo, hi, {f_lo, eval(lo + 0.25 * (hi - lo)), f_mid,
                     eval(lo + 0.75 * (hi - lo)), f_hi}, 0.0, 0.0};
    finish_panel(p);
    return p;
  }

  void push(const Panel& p) {
    running_value_ += p.value;
    running_error_ += p.error;
    magnitude_ += std::abs(p.value);
    heap_.push(p);
  }

  // Estimates below the rounding floor of the panel sum count as converged.
  double target(double abs_tol, double rel_tol) const {
    return std::max({abs_tol, rel_tol * std::abs(running_value_),
                     64.0 * kEps * magnitude_});
  }

  void resum() {
    auto copy = heap_;
    double value = 0.0;
    double error = 0.0;
    double magnitude = 0.0;
    std::vector<Panel> panels;
    panels.reserve(copy.size());
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.lo < r.lo; });
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
      magnitude += std::abs(p.value);
    }
    running_value_ = value;
    running_error_ = error;
    magnitude_ = magnitude;
  }

  const Integrand& f_;
  std::size_t max_panels_;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap_;
  double running_value_ = 0.0;
  double running_error_ = 0.0;
  double magnitude_ = 0.0;
  std::size_t evaluations_ = 0;
};

void check_tolerances(double abs_tol, double rel_tol) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw InvalidArgument("quadrature tolerances must be > 0");
  }
}

}  // namespace

IntegralResult integrate(const Integrand& f, std::span<const double> nodes,
                         double abs_tol, double rel_tol,
                         std::size_t max_panels) {
  check_tolerances(abs_tol, rel_tol);
  if (nodes.size() < 2) {
    throw InvalidArgument("integrate needs at least two nodes");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || (i > 0 && nodes[i] < nodes[i - 1])) {
      throw InvalidArgument("integration nodes must be finite and increasing");
    }
  }
  PanelQueue queue(f, max_panels);
  bool any = false;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i] < nodes[i + 1]) {
      queue.seed(nodes[i], nodes[i + 1]);
      any = true;
    }
  }
  if (!any) return {};
  return queue.run(abs_tol, rel_tol);
}

IntegralResult integrate(const Integrand& f, double lo, double hi,
                         double abs_tol, double rel_tol,
                         std::size_t max_panels) {
  if (lo == hi) {
    check_tolerances(abs_tol, rel_tol);
    return {};
  }
  if (lo > hi) {
    IntegralResult r = integrate(f, hi, lo, abs_tol, rel_tol, max_panels);
    r.value = -r.value;
    return r;
  }
  const double nodes[] = {lo, hi};
  return integrate(f, std::span<const double>(nodes), abs_tol, rel_tol,
                   max_panels);
}

IntegralResult integrate(const RealFunction& fn, const Interval& iv,
                         double abs_tol, double rel_tol) {
  return integrate([&fn](double t) { return fn(t); }, iv.a, iv.b, abs_tol,
                   rel_tol);
}

SupEstimate estimate_sup(const Integrand& g, const Interval& iv) {
  const double h = iv.length() / kSupScan;
  auto node = [&](int i) { return i == kSupScan ? iv.b : iv.a + h * i; };
  std::vector<double> samples(kSupScan + 1);
  int best = 0;
  for (int i = 0; i <= kSupScan; ++i) {
    samples[i] = std::abs(g(node(i)));
    if (samples[i] > samples[best]) best = i;
  }
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  SupEstimate out{samples[best], node(best), *lo_it == *hi_it};
  if (out.constant_magnitude) return out;

  // Bracket (l, c, r) around the best sample, best value kept at c.
  int ic = std::clamp(best, 1, kSupScan - 1);
  double l = node(ic - 1), c = node(ic), r = node(ic + 1);
  double fl = samples[ic - 1], fc = samples[ic], fr = samples[ic + 1];
  for (int iter = 0; iter < kSupRefinements; ++iter) {
    const double num = (c - l) * (c - l) * (fc - fr) - (c - r) * (c - r) * (fc - fl);
    const double den = (c - l) * (fc - fr) - (c - r) * (fc - fl);
    if (den == 0.0) break;
    const double v = c - 0.5 * num / den;
    if (!(v > l && v < r) || v == c) break;
    const double fv = std::abs(g(v));
    if (fv > out.value) {
      out.value = fv;
      out.argmax = v;
    }
    if (fv >= fc) {
      if (v < c) {
        r = c; fr = fc;
      } else {
        l = c; fl = fc;
      }
      c = v; fc = fv;
    } else if (v < c) {
      l = v; fl = fv;
    } else {
      r = v; fr = fv;
    }
    if (r - l <= 4.0 * kEps * std::max(std::abs(l), std::abs(r))) break;
  }
  return out;
}

double sup_norm(const RealFunction& g, const Interval& iv) {
  return estimate_sup([&g](double t) { return g(t); }, iv).value;
}

double bound_sup(const RealFunction& g, const Interval& iv) {
  const SupEstimate est = estimate_sup([&g](double t) { return g(t); }, iv);
  return est.constant_magnitude ? est.value : est.value * kSupSafetyFactor;
}

double kernel_K(const RealFunction& g, const Interval& iv, double x, double t) {
  (void)iv;
  if (x == t) return 0.0;
  auto fn = [&g](double s) { return g(s); };
  if (t < x) return -integrate(fn, t, x, kKernelAbsTol, kKernelRelTol).value;
  return integrate(fn, x, t, kKernelAbsTol, kKernelRelTol).value;
}

StepWeight step_weight(const RealFunction& g, const Interval& iv, double x,
                       double t) {
  if (!iv.contains(t) || !iv.contains(x)) {
    throw InvalidArgument("step_weight needs a <= x, t <= b");
  }
  auto fn = [&g](double s) { return g(s); };
  if (t < x) {
    return {integrate(fn, iv.a, t, kKernelAbsTol, kKernelRelTol).value,
            t - iv.a};
  }
  return {-integrate(fn, t, iv.b, kKernelAbsTol, kKernelRelTol).value,
          iv.b - t};
}

namespace {

// Signed endpoint expression, one integrand on each side of x.
IntegralResult endpoint_expression(const BoundCase& c, double tol) {
  const auto& f = c.pair.f;
  const auto& g = c.g;
  const double fa = f(c.interval.a);
  const double fb = f(c.interval.b);
  const IntegralResult left = integrate(
      [&](double t) { return (fa - f(t)) * g(t); }, c.interval.a, c.x,
      0.5 * tol, tol);
  const IntegralResult right = integrate(
      [&](double t) { return (fb - f(t)) * g(t); }, c.x, c.interval.b,
      0.5 * tol, tol);
  return {left.value + right.value, left.error_estimate + right.error_estimate,
          left.evaluations + right.evaluations};
}

IntegralResult point_expression(const BoundCase& c, double tol) {
  const auto& f = c.pair.f;
  const auto& g = c.g;
  const double fx = f(c.x);
  const double nodes[] = {c.interval.a, c.x, c.interval.b};
  return integrate([&](double t) { return (fx - f(t)) * g(t); },
                   std::span<const double>(nodes), tol, tol);
}

}  // namespace

IntegralResult lhs_endpoint(const BoundCase& c) {
  IntegralResult r = endpoint_expression(c, kLhsTol);
  r.value = std::abs(r.value);
  return r;
}

IntegralResult lhs_point(const BoundCase& c) {
  IntegralResult r = point_expression(c, kLhsTol);
  r.value = std::abs(r.value);
  return r;
}

Antiderivative::Antiderivative(const RealFunction& g, const Interval& iv,
                               std::size_t nodes)
    : g_(g), iv_(iv), h_(iv.length() / static_cast<double>(nodes - 1)) {
  if (nodes < 2) throw InvalidArgument("antiderivative table needs >= 2 nodes");
  values_.resize(nodes);
  slopes_.resize(nodes);
  auto fn = [&g](double s) { return g(s); };
  values_[0] = 0.0;
  slopes_[0] = g(iv.a);
  double prev = iv.a;
  for (std::size_t i = 1; i < nodes; ++i) {
    const double t = i + 1 == nodes ? iv.b : iv.a + h_ * static_cast<double>(i);
    values_[i] = values_[i - 1] + integrate(fn, prev, t, 1e-16, 1e-14).value;
    slopes_[i] = g(t);
    prev = t;
  }
}

double Antiderivative::operator()(double t) const {
  if (t <= iv_.a) return values_.front();
  if (t >= iv_.b) return values_.back();
  const double pos = (t - iv_.a) / h_;
  const std::size_t i =
      std::min(static_cast<std::size_t>(pos), values_.size() - 2);
  const double s = pos - static_cast<double>(i);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * values_[i] + h10 * h_ * slopes_[i] + h01 * values_[i + 1] +
         h11 * h_ * slopes_[i + 1];
}

Residual residual_lemma11(const BoundCase& c) {
  validate_case(c);
  const IntegralResult lhs = endpoint_expression(c, kIdentityLhsTol);
  const auto& fp = c.pair.f_prime;
  const double nodes[] = {c.interval.a, c.x, c.interval.b};
  IntegralResult rhs;
  if (c.g.smooth()) {
    const Antiderivative G(c.g, c.interval);
    const double gx = G(c.x);
    rhs = integrate([&](double t) { return (G(t) - gx) * fp(t); },
                    std::span<const double>(nodes), kOuterAbsTol, kOuterRelTol);
  } else {
    rhs = integrate(
        [&](double t) { return kernel_K(c.g, c.interval, c.x, t) * fp(t); },
        std::span<const double>(nodes), kOuterAbsTol, kOuterRelTol);
  }
  return {std::abs(lhs.value - rhs.value), lhs.value, rhs.value,
          lhs.error_estimate + rhs.error_estimate};
}

Residual residual_lemma12(const BoundCase& c) {
  validate_case(c);
  const IntegralResult lhs = point_expression(c, kIdentityLhsTol);
  const auto& fp = c.pair.f_prime;
  const double a = c.interval.a;
  const double b = c.interval.b;
  IntegralResult left;
  IntegralResult right;
  if (c.g.smooth()) {
    const Antiderivative G(c.g, c.interval);
    const double total = G(b);
    left = integrate([&](double t) { return G(t) * fp(t); }, a, c.x,
                     kOuterAbsTol, kOuterRelTol);
    right = integrate([&](double t) { return (G(t) - total) * fp(t); }, c.x, b,
                      kOuterAbsTol, kOuterRelTol);
  } else {
    auto fn = [&c](double s) { return c.g(s); };
    left = integrate(
        [&](double t) {
          return integrate(fn, a, t, kKernelAbsTol, kKernelRelTol).value * fp(t);
        },
        a, c.x, kOuterAbsTol, kOuterRelTol);
    right = integrate(
        [&](double t) {
          return -integrate(fn, t, b, kKernelAbsTol, kKernelRelTol).value * fp(t);
        },
        c.x, b, kOuterAbsTol, kOuterRelTol);
  }
  const double rhs = left.value + right.value;
  return {std::abs(lhs.value - rhs), lhs.value, rhs,
          lhs.error_estimate + left.error_estimate + right.error_estimate};
}

}  // namespace hhbound
