#include <doctest.h>

#include "fermidyn/hamiltonian.hpp"
#include "test_helpers.hpp"

using namespace fermidyn;
using namespace fermidyn::testing;

namespace {

OperatorTerm term(ComplexScalar literal, std::string parameter,
                  std::vector<ModeFactor> factors) {
  OperatorTerm t;
  t.literal = literal;
  t.parameter = std::move(parameter);
  t.factors = std::move(factors);
  return t;
}

constexpr auto Lower = FactorKind::Lower;
constexpr auto Raise = FactorKind::Raise;
constexpr auto Number = FactorKind::Number;

}  // namespace

TEST_CASE("parse expands h.c. inside a group") {
  const OperatorExpression expr = parse("lambda*(c'(2)*c(1) + h.c.)");
  REQUIRE(expr.terms.size() == 2);
  CHECK(expr.terms[0] == term(1.0, "lambda", {{Raise, 2}, {Lower, 1}}));
  CHECK(expr.terms[1] == term(1.0, "lambda", {{Raise, 1}, {Lower, 2}}));
}

TEST_CASE("parse simple forms") {
  const OperatorExpression one = parse("omega*n(1)");
  REQUIRE(one.terms.size() == 1);
  CHECK(one.terms[0] == term(1.0, "omega", {{Number, 1}}));

  const OperatorExpression square = parse("c(1)*c(1)");
  REQUIRE(square.terms.size() == 1);
  CHECK(square.terms[0] == term(1.0, "", {{Lower, 1}, {Lower, 1}}));

  const OperatorExpression numeric = parse("2.5*c'(3)*c(2) - 0.5*n(1)");
  REQUIRE(numeric.terms.size() == 2);
  CHECK(numeric.terms[0] == term(2.5, "", {{Raise, 3}, {Lower, 2}}));
  CHECK(numeric.terms[1] == term(-0.5, "", {{Number, 1}}));

  const OperatorExpression imag = parse("i*lambda*c'(1)*c(2)");
  REQUIRE(imag.terms.size() == 1);
  CHECK(imag.terms[0] == term(ComplexScalar(0.0, 1.0), "lambda", {{Raise, 1}, {Lower, 2}}));
}

TEST_CASE("h.c. after a closed group") {
  const OperatorExpression plus = parse("(c'(1)*c(2)) + h.c.");
  REQUIRE(plus.terms.size() == 2);
  CHECK(plus.terms[1] == term(1.0, "", {{Raise, 2}, {Lower, 1}}));

  const OperatorExpression tight = parse("(c'(1)*c(2)) h.c.");
  CHECK(tight == plus);

  // A group tail conjugates every summand of the group, in order.
  const OperatorExpression multi = parse("(c'(1)*c(2) - i*n(3)) + h.c.");
  REQUIRE(multi.terms.size() == 4);
  CHECK(multi.terms[2] == term(1.0, "", {{Raise, 2}, {Lower, 1}}));
  CHECK(multi.terms[3] == term(ComplexScalar(0.0, 1.0), "", {{Number, 3}}));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("c(1) $"), ParseError);
  CHECK_THROWS_AS(parse("c(1)+*"), ParseError);
  CHECK_THROWS_AS(parse("d(3)"), ParseError);
  CHECK_THROWS_AS(parse("q'(1)"), ParseError);
  CHECK_THROWS_AS(parse("n'(1)"), ParseError);
  CHECK_THROWS_AS(parse("c(0)"), ParseError);
  CHECK_THROWS_AS(parse("c(-1)"), ParseError);
  CHECK_THROWS_AS(parse("c(1.5)"), ParseError);
  CHECK_THROWS_AS(parse("h.c."), ParseError);
  CHECK_THROWS_AS(parse("c(1) + h.c."), ParseError);       // no group to conjugate
  CHECK_THROWS_AS(parse("(c(1) - h.c.)"), ParseError);     // must be added
  CHECK_THROWS_AS(parse("(h.c. + c(1))"), ParseError);     // nothing precedes it
  CHECK_THROWS_AS(parse("lambda*(c(1)) * n(1)"), ParseError);
  CHECK_THROWS_AS(parse("lambda c(1)"), ParseError);
  CHECK_THROWS_AS(parse("lambda*(mu*c(1))*"), ParseError);
  CHECK_THROWS_AS(parse("2*lambda*c(1)"), ParseError);  // one coefficient atom per term

  try {
    parse("c'(2)*c(1) + d(3)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 13);
    CHECK(std::string(e.what()).find("unknown function name 'd'") != std::string::npos);
  }

  try {
    parse("lambda*(mu*c(1))");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("two named parameters") != std::string::npos);
  }
}

TEST_CASE("render round-trips") {
  for (const char* text : {
           "lambda*(c'(2)*c(1) + h.c.)",
           "omega*n(1)",
           "c(1)*c(1)",
           "2.5*c'(3)*c(2) - 0.5*n(1)",
           "i*lambda*c'(1)*c(2)",
           "omega*(n(1) + n(2) + n(3)) + lambda*(c'(1)*c'(2)*c(3) + h.c.)",
           "-lambda*c(1)",
           "(c'(1)*c(2) - i*n(3)) + h.c.",
           "0.1*(lambda*c'(1)*c(2) + h.c.)",
       }) {
    const OperatorExpression expr = parse(text);
    const std::string rendered = render(expr);
    const OperatorExpression reparsed = parse(rendered);
    CHECK(reparsed.terms == expr.terms);
  }
}

TEST_CASE("assemble reproduces published matrices") {
  const ModeOperatorSet ops2 = build_operators(FermionicSystem(2));

  OperatorExpression exchange = parse("lambda*(c(2)*c'(1) + h.c.)");
  exchange.parameters["lambda"] = 1.0;
  CHECK(max_diff(assemble(exchange, ops2), printed_h_two_mode_exchange(1.0)) == 0.0);

  OperatorExpression gated = parse("lambda*(c'(1)*n(2) + n(2)*c(1))");
  gated.parameters["lambda"] = 1.0;
  CHECK(max_diff(assemble(gated, ops2), printed_h_gated_exchange(1.0)) == 0.0);

  const ModeOperatorSet ops3 = build_operators(FermionicSystem(3));
  OperatorExpression pair = parse("lambda*(c'(1)*c'(2)*c(3) + c'(3)*c(2)*c(1))");
  pair.parameters["lambda"] = 1.0;
  CHECK(max_diff(assemble(pair, ops3), printed_h_pair_exchange(1.0)) == 0.0);

  OperatorExpression hopping =
      parse("lambda*(c(2)*c'(1) + c(3)*c'(1) + c(3)*c'(2) + h.c.)");
  hopping.parameters["lambda"] = 1.0;
  CHECK(max_diff(assemble(hopping, ops3), printed_h_three_mode_exchange(1.0)) == 0.0);
}

TEST_CASE("assemble agrees with the dense product route") {
  // The column-walk fast path must coincide with literal matrix products.
  const ModeOperatorSet ops = build_operators(FermionicSystem(3));
  OperatorExpression expr =
      parse("0.7*c'(1)*n(2)*c(3) + i*mu*c(3)*c'(2) - 1.5*n(1)*n(3) + c(2)");
  expr.parameters["mu"] = -0.3;

  ComplexMatrix dense = ComplexMatrix::Zero(8, 8);
  for (const OperatorTerm& t : expr.terms) {
    ComplexScalar coeff = t.literal;
    if (!t.parameter.empty()) coeff *= expr.parameters.at(t.parameter);
    ComplexMatrix product = ComplexMatrix::Identity(8, 8);
    for (const ModeFactor& f : t.factors) {
      const std::size_t j = static_cast<std::size_t>(f.mode - 1);
      const ComplexMatrix& m = f.kind == FactorKind::Lower    ? ops.lowering[j]
                               : f.kind == FactorKind::Raise ? ops.raising[j]
                                                             : ops.number[j];
      product = matmul(product, m);
    }
    dense += coeff * product;
  }
  CHECK(max_diff(assemble(expr, ops), dense) == 0.0);
}

TEST_CASE("assemble error paths") {
  const ModeOperatorSet ops = build_operators(FermionicSystem(2));
  OperatorExpression unbound = parse("lambda*n(1)");
  CHECK_THROWS_AS(assemble(unbound, ops), std::invalid_argument);

  OperatorExpression excess = parse("c(3)");
  CHECK_THROWS_AS(assemble(excess, ops), std::invalid_argument);

  const OperatorExpression nilpotent = parse("c(1)*c(1)");
  CHECK(max_abs(assemble(nilpotent, ops)) == 0.0);
}

TEST_CASE("assemble is linear in coefficients") {
  const ModeOperatorSet ops = build_operators(FermionicSystem(2));
  OperatorExpression expr = parse("lambda*(c(2)*c'(1) + h.c.) + 0.25*n(1)");
  expr.parameters["lambda"] = 0.8;
  OperatorExpression doubled = parse("2*(lambda*(c(2)*c'(1) + h.c.)) + 0.5*n(1)");
  doubled.parameters["lambda"] = 0.8;
  CHECK(max_diff(assemble(doubled, ops), 2.0 * assemble(expr, ops)) <= 1e-15);
}

TEST_CASE("expression plus its conjugate assembles Hermitian") {
  const ModeOperatorSet ops = build_operators(FermionicSystem(3));
  for (const char* text : {
           "(c'(1)*c(2) + i*c'(2)*c'(3) + 0.3*n(1)*c(2)) + h.c.",
           "(i*lambda*c(1)*c(2)*c(3)) + h.c.",
           "(0.25*c'(3)*n(2)*c(1)) h.c.",
       }) {
    OperatorExpression expr = parse(text);
    expr.parameters["lambda"] = 1.7;
    const HermiticityReport report = check_hermitian(assemble(expr, ops));
    CHECK(report.is_hermitian);
    CHECK(report.max_deviation <= 1e-14);
  }
}

TEST_CASE("hermiticity check") {
  CHECK(check_hermitian(printed_h_three_mode_exchange(1.0)).is_hermitian);
  CHECK(check_hermitian(printed_h_three_mode_exchange(1.0)).max_deviation == 0.0);

  const ModeOperatorSet ops = build_operators(FermionicSystem(2));
  OperatorExpression lone = parse("lambda*c(1)");
  lone.parameters["lambda"] = 0.7;
  const HermiticityReport report = check_hermitian(assemble(lone, ops));
  CHECK(!report.is_hermitian);
  CHECK(report.max_deviation == doctest::Approx(0.7).epsilon(1e-15));

  const ModeOperatorSet ops3 = build_operators(FermionicSystem(3));
  OperatorExpression field =
      parse("omega*(n(1) + n(2) + n(3)) + lambda*(c'(1)*c'(2)*c(3) + h.c.)");
  field.parameters["omega"] = 1.0;
  field.parameters["lambda"] = 0.1;
  CHECK(check_hermitian(assemble(field, ops3)).is_hermitian);

  CHECK_THROWS_AS(check_hermitian(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("unbound parameter listing") {
  OperatorExpression expr = parse("lambda*n(1) + mu*n(2) + lambda*n(2)");
  CHECK(expr.unbound_parameters() == std::vector<std::string>{"lambda", "mu"});
  expr.parameters["lambda"] = 1.0;
  CHECK(expr.unbound_parameters() == std::vector<std::string>{"mu"});
  CHECK(expr.max_mode() == 2);
}
