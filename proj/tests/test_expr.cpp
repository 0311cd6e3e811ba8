#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "epatlas/expr.hpp"
#include "epatlas/field.hpp"

using namespace epatlas;
using namespace epatlas::expr;

namespace {

Complex ev(const std::string& src,
           const std::map<std::string, Complex>& bindings = {}) {
  return evaluate(parse(src), bindings);
}

}  // namespace

TEST_CASE("literals and arithmetic precedence") {
  CHECK(ev("42") == Complex(42.0, 0.0));
  CHECK(ev("1.5e-3") == Complex(1.5e-3, 0.0));
  CHECK(ev("1+2*3") == Complex(7.0, 0.0));
  CHECK(ev("(1+2)*3") == Complex(9.0, 0.0));
  CHECK(ev("6/4") == Complex(1.5, 0.0));
  CHECK(ev("2*3^2") == Complex(18.0, 0.0));
  CHECK(ev("2^3^2") == Complex(512.0, 0.0));  // right-associative
  CHECK(ev("-2^2") == Complex(-4.0, 0.0));    // unary minus binds looser
  CHECK(ev("1-2-3") == Complex(-4.0, 0.0));   // left-associative
  CHECK(ev("8/4/2") == Complex(1.0, 0.0));
}

TEST_CASE("imaginary unit") {
  CHECK(ev("i*i") == Complex(-1.0, 0.0));
  CHECK(ev("2+3*i") == Complex(2.0, 3.0));
  CHECK(std::abs(ev("(1+i)^2") - Complex(0.0, 2.0)) < 1e-15);
}

TEST_CASE("function calls") {
  const Complex z(0.7, -1.3);
  const std::map<std::string, Complex> b{{"z", z}};
  CHECK(std::abs(ev("sin(z)", b) - std::sin(z)) < 1e-15);
  CHECK(std::abs(ev("cos(z)", b) - std::cos(z)) < 1e-15);
  CHECK(std::abs(ev("exp(z)", b) - std::exp(z)) < 1e-14);
  CHECK(std::abs(ev("sqrt(z)", b) - std::sqrt(z)) < 1e-15);
  CHECK(ev("conj(z)", b) == std::conj(z));
  CHECK(ev("re(z)", b) == Complex(z.real(), 0.0));
  CHECK(ev("im(z)", b) == Complex(z.imag(), 0.0));
}

TEST_CASE("free identifiers") {
  auto ids = free_identifiers(parse("a*k_x + sin(b) - a"));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  CHECK(ids == std::vector<std::string>{"a", "b", "k_x"});
  CHECK(free_identifiers(parse("1 + i")).empty());
}

TEST_CASE("print/parse round trip") {
  const char* corpus[] = {
      "1+2*3",
      "-(a+b)^3",
      "sin(k_x)*cos(k_y) - i*exp(-k_z)",
      "conj(a)*a + re(b)/im(b)",
      "2^3^2 - k_x/(1+k_y)",
      "sqrt(alpha^2 + sin(k_x)^2)",
  };
  for (const char* src : corpus) {
    CAPTURE(src);
    Ast one = parse(src);
    Ast two = parse(print(one));
    CHECK(equal(one, two));
  }
}

TEST_CASE("parse errors carry an offset") {
  CHECK_THROWS_AS(parse("1+*2"), ParseError);
  CHECK_THROWS_AS(parse("sin("), ParseError);
  CHECK_THROWS_AS(parse("(1+2"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 $ 2"), ParseError);
  try {
    parse("1+*2");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(!e.expected.empty());
  }
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(ev("missing + 1"), EvalError);
  try {
    ev("a + b*c", {{"b", 1.0}});
  } catch (const EvalError& e) {
    CHECK(!e.unbound.empty());
  }
  CHECK_THROWS_AS(ev("1/0"), EvalError);  // non-finite result
}

TEST_CASE("field from entries") {
  HamiltonianField f = field_from_entries(
      {{"0", "k_x + a"}, {"conj(k_x + a)", "0"}}, {{"a", Complex(0.0, 1.0)}});
  CHECK(f.dim == 2);
  CHECK(f.momenta == std::vector<std::string>{"k_x"});
  Matrix H = f({0.5});
  CHECK(std::abs(H(0, 1) - Complex(0.5, 1.0)) < 1e-15);
  CHECK(std::abs(H(1, 0) - Complex(0.5, -1.0)) < 1e-15);
  CHECK(std::abs(H(0, 0)) == 0.0);

  CHECK_THROWS(field_from_entries({{"0", "mystery"}, {"0", "0"}}, {}));
}

TEST_CASE("field from coefficients") {
  HamiltonianField f = field_from_coefficients(
      BasisFamily::Pauli, "0", {"k_x", "0", "1"}, {});
  Matrix H = f({0.3});
  CHECK(std::abs(H(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(H(1, 1) + 1.0) < 1e-15);
  CHECK(std::abs(H(0, 1) - 0.3) < 1e-15);
  CHECK(std::abs(H(1, 0) - 0.3) < 1e-15);
}
