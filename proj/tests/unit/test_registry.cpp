#include <cmath>
#include <random>

#include "doctest.h"
#include "hhbound/core.hpp"
#include "hhbound/registry.hpp"

using namespace hhbound;

TEST_CASE("family values") {
  CHECK(parse_function("const:2.5")(7.0) == 2.5);
  CHECK(parse_function("const")(0.3) == 1.0);
  CHECK(parse_function("affine:1:2")(0.25) == 1.5);
  CHECK(parse_function("monomial:2")(3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(parse_function("monomial:3:2")(2.0) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(parse_function("negmonomial:2")(3.0) == doctest::Approx(-9.0).epsilon(1e-15));
  CHECK(parse_function("poly:1:0:3")(2.0) == 13.0);
  CHECK(parse_function("exp")(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(parse_function("exp:2:3")(0.5) == doctest::Approx(3.0 * std::exp(1.0)).epsilon(1e-15));
  CHECK(parse_function("sin")(0.5) == doctest::Approx(std::sin(0.5)).epsilon(1e-15));
  CHECK(parse_function("cos:2")(0.5) == doctest::Approx(std::cos(1.0)).epsilon(1e-15));
  const RealFunction tent = parse_function("pwl:0:0:1:1:2:0");
  CHECK(tent(0.5) == 0.5);
  CHECK(tent(1.5) == 0.5);
  CHECK(tent(1.0) == 1.0);
}

TEST_CASE("domains are enforced") {
  const RealFunction root = parse_function("monomial:0.5");
  CHECK(root(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(root(-1.0), DomainError);
  CHECK(parse_function("monomial:2")(-2.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(parse_function("pwl:0:0:1:1")(1.5), DomainError);
  CHECK_THROWS_AS(parse_function("exp:1000")(1000.0), DomainError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_function("nosuch"), InvalidArgument);
  CHECK_THROWS_AS(parse_function("affine:1:x"), InvalidArgument);
  CHECK_THROWS_AS(parse_function(""), InvalidArgument);
  CHECK_THROWS_AS(parse_function("pwl:1:0:0:1"), InvalidArgument);
  CHECK_THROWS_AS(parse_function("monomial:-1"), InvalidArgument);
}

TEST_CASE("spec round trip") {
  for (const char* text : {"const:1", "affine:0:1", "monomial:2", "poly:0:1:-1",
                           "exp:1:1", "sin:1:1", "pwl:0:0:0.3:1:1:0.2"}) {
    const RealFunction f = parse_function(text);
    CHECK(parse_function(f.spec()) == f);
  }
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("every family is listed") {
  const auto ids = family_ids();
  for (const char* id : {"const", "affine", "monomial", "negmonomial", "poly",
                         "exp", "sin", "cos", "pwl", "pwslope"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
}

TEST_CASE("registry derivatives agree with central differences on random intervals") {
  std::mt19937_64 gen(7);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const char* specs[] = {"const:3",     "affine:1:-2", "monomial:2", "monomial:3:0.5",
                         "monomial:1.5", "negmonomial:2", "poly:1:-2:0.5:0.25",
                         "exp:0.7:2",   "sin:3:1",     "cos:2:-1.5"};
  for (const char* s : specs) {
    const DifferentiablePair pair = make_pair(parse_function(s), make_domain(4.0));
    for (int k = 0; k < 20; ++k) {
      const double a = 0.01 + 3.0 * unit();
      const double b = a + 0.05 + (4.0 - 0.06 - a) * unit();
      CAPTURE(s);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(derivative_mismatch(pair, make_interval(a, b)) <= 0.0);
    }
  }
}

TEST_CASE("non-smooth and out-of-domain pairs are rejected") {
  CHECK_THROWS_AS(make_pair(parse_function("pwl:0:0:1:1:2:0"), make_domain(2.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(make_pair(parse_function("pwl:0:0:1:1"), make_domain(2.0)),
                  InvalidArgument);
}
