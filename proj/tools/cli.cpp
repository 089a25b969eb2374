#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hhbound/bounds.hpp"
#include "hhbound/convexity.hpp"
#include "hhbound/harness.hpp"
#include "hhbound/quadrature.hpp"
#include "hhbound/report.hpp"

namespace hhbound::cli {

namespace {

constexpr double kResidualTol = 1e-7;
constexpr double kEnvelopeTol = 1e-10;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::optional<std::string> f;
  std::optional<std::string> g;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> x;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> m;
  std::optional<double> b_star;
  std::optional<std::string> theorem;
  std::optional<std::string> out;
  std::optional<unsigned> jobs;
  std::optional<int> grid;
  std::string name = "verify";
  std::vector<double> alpha_grid{1.0};
  std::vector<double> m_grid{0.0, 0.5, 1.0};
};

std::string g17(double v) { return format_g17(v); }

std::optional<std::uint64_t> seed_from_env() {
  const char* text = std::getenv("HHBOUND_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0') {
    throw UsageError("HHBOUND_SEED must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

GridSpec grid_from(const Flags& flags, GridSpec grid = {}) {
  if (flags.grid) grid = GridSpec{*flags.grid, *flags.grid, *flags.grid};
  return grid;
}

SuiteConfig inline_config(const Flags& fl) {
  const bool complete = fl.f && fl.g && fl.a && fl.b && fl.x && fl.q &&
                        fl.alpha && fl.m && fl.theorem;
  if (!complete) {
    throw UsageError(
        "verify needs --config or all of --f --g --a --b --x --q --alpha --m "
        "--theorem");
  }
  SuiteConfig config;
  config.name = fl.name;
  CaseSpec spec;
  spec.f = parse_function(*fl.f);
  spec.g = parse_function(*fl.g);
  spec.interval = make_interval(*fl.a, *fl.b);
  spec.xs = {*fl.x};
  spec.qs = {*fl.q};
  spec.alphas = {*fl.alpha};
  spec.ms = {*fl.m};
  spec.theorems = {parse_theorem(*fl.theorem)};
  if (fl.b_star) spec.b_star = *fl.b_star;
  config.cases.push_back(std::move(spec));
  return config;
}

// Inline flags override the matching field of every case.
void apply_overrides(SuiteConfig& config, const Flags& fl) {
  for (auto& spec : config.cases) {
    if (fl.f) spec.f = parse_function(*fl.f);
    if (fl.g) spec.g = parse_function(*fl.g);
    if (fl.a || fl.b) {
      spec.interval = make_interval(fl.a.value_or(spec.interval.a),
                                    fl.b.value_or(spec.interval.b));
    }
    if (fl.x) spec.xs = {*fl.x};
    if (fl.q) spec.qs = {*fl.q};
    if (fl.alpha) spec.alphas = {*fl.alpha};
    if (fl.m) spec.ms = {*fl.m};
    if (fl.b_star) spec.b_star = *fl.b_star;
    if (fl.theorem) spec.theorems = {parse_theorem(*fl.theorem)};
  }
}

int cmd_verify(const Flags& fl, std::ostream& out, std::ostream& err) {
  SuiteConfig config;
  const bool from_file = !fl.config_path.empty();
  if (from_file) {
    config = load_config(fl.config_path);
    apply_overrides(config, fl);
  } else {
    config = inline_config(fl);
  }
  config.grid = grid_from(fl, config.grid);
  if (fl.jobs) config.jobs = *fl.jobs;
  if (fl.out) config.output_dir = *fl.out;
  if (auto seed = seed_from_env()) config.seed = *seed;
  validate_config(config);

  const SuiteResult result = run_suite(config);
  write_reports(config, result);

  if (!from_file) {
    for (const auto& r : result.reports) {
      out << to_string(r.report.theorem) << " x=" << g17(r.x)
          << " lhs=" << g17(r.report.lhs) << " rhs=" << g17(r.report.rhs)
          << " tightness=" << g17(r.report.tightness)
          << " holds=" << (r.report.holds ? "true" : "false") << '\n';
    }
    for (const auto& r : result.rejections) {
      out << to_string(r.theorem) << " hypothesis rejected: witness x="
          << g17(r.witness.x) << " y=" << g17(r.witness.y)
          << " t=" << g17(r.witness.t) << " gap=" << g17(r.witness.gap) << '\n';
    }
  }
  for (const auto& e : result.errors) {
    err << "case error (" << e.family_f << ", " << e.family_g
        << "): " << e.message << '\n';
  }
  out << "reports=" << result.reports.size()
      << " violations=" << result.violations
      << " hypothesis_rejections=" << result.hypothesis_rejections
      << " errors=" << result.errors.size()
      << " max_tightness=" << g17(result.max_tightness)
      << " seed=" << config.seed << '\n';
  out << "wrote " << (config.output_dir / (config.name + ".csv")).string()
      << " and " << (config.output_dir / (config.name + ".json")).string() << '\n';
  err << "wall time " << result.wall_time.count() << " s\n";
  return result.violations == 0 ? kExitOk : kExitFailed;
}

int cmd_classify(const Flags& fl, std::ostream& out, std::ostream&) {
  if (!fl.f) throw UsageError("classify needs --f");
  const RealFunction fn = parse_function(*fl.f);
  const DomainSpec domain = make_domain(fl.b_star.value_or(1.0));
  const GridSpec grid = grid_from(fl);
  const auto cells =
      classify_region(fn, domain, fl.alpha_grid, fl.m_grid, grid);

  std::ostringstream csv;
  csv << "alpha,m,holds,witness_x,witness_y,witness_t,gap\n";
  for (const auto& cell : cells) {
    csv << g17(cell.alpha) << ',' << g17(cell.m) << ','
        << (cell.verdict.holds ? "true" : "false");
    if (cell.verdict.witness) {
      const Witness& w = *cell.verdict.witness;
      csv << ',' << g17(w.x) << ',' << g17(w.y) << ',' << g17(w.t) << ','
          << g17(w.gap);
    } else {
      csv << ",,,,";
    }
    csv << '\n';
  }
  const std::filesystem::path path =
      fl.out ? std::filesystem::path(*fl.out)
             : std::filesystem::path("reports") / "classify.csv";
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << csv.str()) || !file.flush()) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << csv.str();
  return kExitOk;
}

int cmd_constants(const Flags& fl, std::ostream& out, std::ostream&) {
  if (!fl.alpha) throw UsageError("constants needs --alpha");
  const double alpha = *fl.alpha;
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw UsageError("--alpha must lie in (0, 1]");
  }
  const Interval iv = make_interval(fl.a.value_or(0.0), fl.b.value_or(1.0));
  const double x = fl.x.value_or(iv.midpoint());
  if (!iv.contains(x)) throw UsageError("--x must lie in [a, b]");

  auto w = [&](double t) { return power((iv.b - t) / iv.length(), alpha); };
  const double nodes[] = {iv.a, x, iv.b};
  const double M = constant_M(iv, x, alpha);
  const double A = constant_A(iv, x, alpha);
  const double M_oracle =
      integrate([&](double t) { return std::abs(t - x) * w(t); },
                std::span<const double>(nodes), 1e-14, 1e-13)
          .value;
  const double A_oracle =
      integrate([&](double t) { return (t - iv.a) * w(t); }, iv.a, x, 1e-14, 1e-13)
          .value +
      integrate([&](double t) { return (iv.b - t) * w(t); }, x, iv.b, 1e-14, 1e-13)
          .value;
  auto rel = [](double closed, double oracle) {
    return std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-300);
  };
  out << "M=" << g17(M) << " oracle=" << g17(M_oracle)
      << " rel_dev=" << g17(rel(M, M_oracle)) << '\n';
  out << "A=" << g17(A) << " oracle=" << g17(A_oracle)
      << " rel_dev=" << g17(rel(A, A_oracle)) << '\n';
  return kExitOk;
}

int cmd_identities(const Flags& fl, std::ostream& out, std::ostream&) {
  if (!fl.f || !fl.g) throw UsageError("identities needs --f and --g");
  const Interval iv = make_interval(fl.a.value_or(0.0), fl.b.value_or(1.0));
  const double x = fl.x.value_or(iv.midpoint());
  const RealFunction f = parse_function(*fl.f);
  const RealFunction g = parse_function(*fl.g);
  const BoundCase c = build_case(f, g, iv, fl.b_star.value_or(iv.b), x, 1.0,
                                 ConvexityParams{1.0, 1.0});
  const Residual r11 = residual_lemma11(c);
  const Residual r12 = residual_lemma12(c);
  const double sup = sup_norm(g, iv);
  double envelope = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double t = i == 1000 ? iv.b : iv.a + iv.length() * i / 1000.0;
    const StepWeight sw = step_weight(g, iv, x, t);
    envelope = std::max(envelope, std::abs(sw.sg) - sup * sw.s);
  }
  out << "residual_lemma11=" << g17(r11.value) << '\n';
  out << "residual_lemma12=" << g17(r12.value) << '\n';
  out << "envelope_max=" << g17(envelope) << '\n';
  const bool ok = r11.value <= kResidualTol && r12.value <= kResidualTol &&
                  envelope <= kEnvelopeTol;
  out << (ok ? "identities hold" : "identities FAILED") << '\n';
  return ok ? kExitOk : kExitFailed;
}

void add_case_flags(CLI::App* sub, Flags& fl) {
  sub->add_option("--f", fl.f, "function family spec for f, e.g. monomial:2");
  sub->add_option("--g", fl.g, "function family spec for g, e.g. const:1");
  sub->add_option("--a", fl.a, "left endpoint a");
  sub->add_option("--b", fl.b, "right endpoint b");
  sub->add_option("--x", fl.x, "split point x in [a, b]");
  sub->add_option("--bstar", fl.b_star, "right end of the domain [0, b*]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Weighted trapezoid / midpoint error bounds for (alpha, m)-convex functions",
               "hhbound"};
  app.require_subcommand(1);
  Flags fl;

  auto* verify = app.add_subcommand("verify", "run a bound suite or a single inline case");
  verify->add_option("--config", fl.config_path, "suite config (JSON)");
  add_case_flags(verify, fl);
  verify->add_option("--q", fl.q, "power-mean exponent q >= 1");
  verify->add_option("--alpha", fl.alpha, "alpha in (0, 1]");
  verify->add_option("--m", fl.m, "m in (0, 1]");
  verify->add_option("--theorem", fl.theorem, "T13 T14 C11 C12 T21 T22 C21 C22");
  verify->add_option("--out", fl.out, "report directory (default ./reports)");
  verify->add_option("--name", fl.name, "report file stem for inline runs");
  verify->add_option("--jobs", fl.jobs, "parallel case workers");
  verify->add_option("--grid", fl.grid, "hypothesis grid samples per axis");

  auto* classify = app.add_subcommand("classify", "(alpha, m) region where f is in the class");
  classify->add_option("--f", fl.f, "function family spec");
  classify->add_option("--bstar", fl.b_star, "domain [0, b*] (default 1)");
  classify->add_option("--alpha", fl.alpha_grid, "alpha grid (default 1)");
  classify->add_option("--m", fl.m_grid, "m grid (default 0 0.5 1)");
  classify->add_option("--grid", fl.grid, "samples per axis (default 51)");
  classify->add_option("--out", fl.out, "CSV path (default ./reports/classify.csv)");

  auto* constants = app.add_subcommand("constants", "closed-form M and A against the oracle");
  constants->add_option("--a", fl.a, "left endpoint (default 0)");
  constants->add_option("--b", fl.b, "right endpoint (default 1)");
  constants->add_option("--x", fl.x, "split point (default midpoint)");
  constants->add_option("--alpha", fl.alpha, "alpha in (0, 1]");

  auto* identities = app.add_subcommand("identities", "kernel identity residuals and envelope");
  add_case_flags(identities, fl);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(fl, out, err);
    if (classify->parsed()) return cmd_classify(fl, out, err);
    if (constants->parsed()) return cmd_constants(fl, out, err);
    return cmd_identities(fl, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hhbound::cli
