#include "hhbound/registry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "hhbound/core.hpp"

namespace hhbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Params = std::span<const double>;

bool is_integral(double p) { return std::floor(p) == p; }

double pwl_eval(Params p, double t) {
  const std::size_t knots = p.size() / 2;
  for (std::size_t i = 0; i + 1 < knots; ++i) {
    const double t0 = p[2 * i];
    const double t1 = p[2 * i + 2];
    if (t <= t1 || i + 2 == knots) {
      const double w = (t - t0) / (t1 - t0);
      return (1.0 - w) * p[2 * i + 1] + w * p[2 * i + 3];
    }
  }
  return p[1];
}

double pwl_slope(Params p, double t) {
  const std::size_t knots = p.size() / 2;
  for (std::size_t i = 0; i + 1 < knots; ++i) {
    const double t1 = p[2 * i + 2];
    if (t < t1 || i + 2 == knots) {
      return (p[2 * i + 3] - p[2 * i + 1]) / (t1 - p[2 * i]);
    }
  }
  return 0.0;
}

std::vector<double> poly_derivative(Params p) {
  std::vector<double> out;
  for (std::size_t k = 1; k < p.size(); ++k) {
    out.push_back(static_cast<double>(k) * p[k]);
  }
  if (out.empty()) out.push_back(0.0);
  return out;
}

void check_pwl(Params p) {
  if (p.size() < 4 || p.size() % 2 != 0) {
    throw InvalidArgument("piecewise-linear family needs at least two (t, v) knots");
  }
  for (std::size_t i = 2; i < p.size(); i += 2) {
    if (!(p[i] > p[i - 2])) {
      throw InvalidArgument("piecewise-linear knots must be strictly increasing");
    }
  }
}

}  // namespace

struct Family {
  std::string_view id;
  std::size_t min_params;
  std::size_t max_params;  // 0 means unbounded
  std::vector<double> defaults;
  bool smooth;
  double (*eval)(Params, double);
  RealFunction (*derive)(Params);
  double (*lo)(Params);
  double (*hi)(Params);
  void (*check)(Params);
};

namespace {

double unbounded_lo(Params) { return -kInf; }
double unbounded_hi(Params) { return kInf; }
double monomial_lo(Params p) { return is_integral(p[0]) ? -kInf : 0.0; }
double knot_lo(Params p) { return p[0]; }
double knot_hi(Params p) { return p[p.size() - 2]; }
void no_check(Params) {}

void check_monomial(Params p) {
  if (p[0] < 0.0) throw InvalidArgument("monomial exponent must be >= 0");
}

const std::vector<Family>& families() {
  static const std::vector<Family> table = [] {
    std::vector<Family> t;
    t.push_back({"const", 0, 1, {1.0}, true,
                 [](Params p, double) { return p[0]; },
                 [](Params) { return make_function("const", {0.0}); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"affine", 0, 2, {0.0, 1.0}, true,
                 [](Params p, double x) { return p[0] + p[1] * x; },
                 [](Params p) { return make_function("const", {p[1]}); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"monomial", 1, 2, {1.0, 1.0}, true,
                 [](Params p, double x) {
                   return p[0] == 0.0 ? p[1] : p[1] * std::pow(x, p[0]);
                 },
                 [](Params p) {
                   if (p[0] == 0.0) return make_function("const", {0.0});
                   return make_function("monomial", {p[0] - 1.0, p[0] * p[1]});
                 },
                 monomial_lo, unbounded_hi, check_monomial});
    t.push_back({"negmonomial", 1, 1, {2.0}, true,
                 [](Params p, double x) {
                   return p[0] == 0.0 ? -1.0 : -std::pow(x, p[0]);
                 },
                 [](Params p) {
                   if (p[0] == 0.0) return make_function("const", {0.0});
                   return make_function("monomial", {p[0] - 1.0, -p[0]});
                 },
                 monomial_lo, unbounded_hi, check_monomial});
    t.push_back({"poly", 1, 0, {0.0}, true,
                 [](Params p, double x) {
                   double acc = 0.0;
                   for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
                   return acc;
                 },
                 [](Params p) { return make_function("poly", poly_derivative(p)); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"exp", 0, 2, {1.0, 1.0}, true,
                 [](Params p, double x) { return p[1] * std::exp(p[0] * x); },
                 [](Params p) { return make_function("exp", {p[0], p[0] * p[1]}); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"sin", 0, 2, {1.0, 1.0}, true,
                 [](Params p, double x) { return p[1] * std::sin(p[0] * x); },
                 [](Params p) { return make_function("cos", {p[0], p[0] * p[1]}); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"cos", 0, 2, {1.0, 1.0}, true,
                 [](Params p, double x) { return p[1] * std::cos(p[0] * x); },
                 [](Params p) { return make_function("sin", {p[0], -p[0] * p[1]}); },
                 unbounded_lo, unbounded_hi, no_check});
    t.push_back({"pwl", 4, 0, {}, false, pwl_eval,
                 [](Params p) {
                   return make_function("pwslope", {p.begin(), p.end()});
                 },
                 knot_lo, knot_hi, check_pwl});
    t.push_back({"pwslope", 4, 0, {}, false, pwl_slope,
                 [](Params) -> RealFunction {
                   throw InvalidArgument("pwslope has no derivative in the registry");
                 },
                 knot_lo, knot_hi, check_pwl});
    return t;
  }();
  return table;
}

const Family* find_family(std::string_view id) {
  for (const auto& fam : families()) {
    if (fam.id == id) return &fam;
  }
  return nullptr;
}

}  // namespace

RealFunction::RealFunction() : RealFunction(find_family("const"), {0.0}) {}

RealFunction::RealFunction(const Family* family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {}

std::string_view RealFunction::family_id() const { return family_->id; }

double RealFunction::operator()(double t) const {
  if (!(t >= domain_lo() && t <= domain_hi())) {
    throw DomainError("t = " + format_real(t) + " outside the domain of " +
                      spec());
  }
  const double v = family_->eval(params_, t);
  if (!std::isfinite(v)) {
    throw DomainError(spec() + " is not finite at t = " + format_real(t));
  }
  return v;
}

double RealFunction::domain_lo() const { return family_->lo(params_); }
double RealFunction::domain_hi() const { return family_->hi(params_); }
bool RealFunction::smooth() const { return family_->smooth; }

std::string RealFunction::spec() const {
  std::string out(family_->id);
  for (double p : params_) {
    out += ':';
    out += format_real(p);
  }
  return out;
}

bool operator==(const RealFunction& lhs, const RealFunction& rhs) {
  return lhs.family_ == rhs.family_ && lhs.params_ == rhs.params_;
}

RealFunction make_function(std::string_view family_id,
                           std::vector<double> params) {
  const Family* fam = find_family(family_id);
  if (fam == nullptr) {
    throw InvalidArgument("unknown function family '" + std::string(family_id) +
                          "'");
  }
  if (params.size() < fam->min_params ||
      (fam->max_params != 0 && params.size() > fam->max_params)) {
    throw InvalidArgument("wrong number of parameters for family '" +
                          std::string(family_id) + "'");
  }
  for (std::size_t k = params.size(); k < fam->defaults.size(); ++k) {
    params.push_back(fam->defaults[k]);
  }
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw InvalidArgument("non-finite parameter for family '" +
                            std::string(family_id) + "'");
    }
  }
  fam->check(params);
  return RealFunction(fam, std::move(params));
}

RealFunction parse_function(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  std::vector<double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    double v = 0.0;
    const auto* first = parts[i].data();
    const auto* last = first + parts[i].size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw InvalidArgument("bad parameter '" + std::string(parts[i]) +
                            "' in function spec '" + std::string(text) + "'");
    }
    params.push_back(v);
  }
  return make_function(parts[0], std::move(params));
}

double registry_eval(const RealFunction& fn, double t) { return fn(t); }

RealFunction derivative(const RealFunction& fn) {
  return fn.family_->derive(fn.params_);
}

std::vector<std::string> family_ids() {
  std::vector<std::string> ids;
  for (const auto& fam : families()) ids.emplace_back(fam.id);
  return ids;
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace hhbound
