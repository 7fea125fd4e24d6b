#ifndef FERMIDYN_HAMILTONIAN_HPP
#define FERMIDYN_HAMILTONIAN_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fermidyn/core.hpp"
#include "fermidyn/fermion.hpp"

namespace fermidyn {

// Textual Hamiltonian grammar (ASCII only):
//
//   expr      := term (("+"|"-") term)*
//   term      := factorseq | number "*" factorseq | ident "*" factorseq
//              | "i" "*" term
//   factorseq := factor ("*" factor)* | "(" expr ")" ("+"? "h.c.")?
//   factor    := "c" "(" int ")" | "c'" "(" int ")" | "n" "(" int ")"
//
// c(j) is the lowering operator of mode j, c'(j) its adjoint, n(j) the
// number operator. "h.c." adds the adjoint of the preceding parenthesized
// group; it is also accepted as the final summand inside a group, where it
// conjugates everything written before it, so that
// "lambda*(c'(2)*c(1) + h.c.)" is lambda*(c'(2)*c(1) + c'(1)*c(2)).
// Whitespace is insignificant; mode indices are 1-based decimal integers.

enum class FactorKind { Lower, Raise, Number };

struct ModeFactor {
  FactorKind kind;
  int mode;  // 1-based

  bool operator==(const ModeFactor&) const = default;
};

// One summand: literal * value(parameter) * product of factors, written
// order preserved (operators do not commute). The literal carries signs and
// factors of i; a term references at most one named parameter.
struct OperatorTerm {
  ComplexScalar literal{1.0, 0.0};
  std::string parameter;  // empty when the coefficient is purely literal
  std::vector<ModeFactor> factors;

  bool operator==(const OperatorTerm&) const = default;
};

struct OperatorExpression {
  std::vector<OperatorTerm> terms;
  std::map<std::string, double> parameters;  // bindings, may be set after parse

  // Largest mode index referenced by any factor (0 for the empty expression).
  int max_mode() const;
  // Referenced parameter names with no binding, in first-use order.
  std::vector<std::string> unbound_parameters() const;

  bool operator==(const OperatorExpression&) const = default;
};

// Parses the grammar above. h.c. groups are expanded during parsing, so the
// resulting term list is concrete. Throws ParseError with the offending
// offset on lexical errors, syntax errors, unknown function names, and
// non-positive mode indices.
OperatorExpression parse(std::string_view text);

// Canonical text form; render(parse(t)) reparses to an identical AST.
std::string render(const OperatorExpression& expr);

// Sum of coefficient * left-to-right factor products, exactly as written.
// No normal-ordering is applied. Throws std::invalid_argument on unbound
// parameters or mode indices exceeding the operator set.
ComplexMatrix assemble(const OperatorExpression& expr, const ModeOperatorSet& ops);

struct HermiticityReport {
  bool is_hermitian = false;
  double max_deviation = 0.0;  // max |H - H^dag| entry
};

inline constexpr double kHermiticityTolerance = 1e-12;

// Throws ShapeError for non-square input.
HermiticityReport check_hermitian(const ComplexMatrix& h,
                                  double tolerance = kHermiticityTolerance);

}  // namespace fermidyn

#endif  // FERMIDYN_HAMILTONIAN_HPP
