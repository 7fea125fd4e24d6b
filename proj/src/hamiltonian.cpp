#include "fermidyn/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fermidyn {

namespace {

enum class TokenKind { Number, Ident, Plus, Minus, Star, LParen, RParen, Quote, Hc, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::size_t position = 0;
  std::string text;         // Ident
  double value = 0.0;       // Number
  bool is_integer = false;  // Number without '.' or exponent
  long int_value = 0;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    Token tok;
    tok.position = pos;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      bool has_dot = false, has_exp = false;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end < text.size() && text[end] == '.') {
        has_dot = true;
        ++end;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < text.size() && (text[exp] == '+' || text[exp] == '-')) ++exp;
        if (exp < text.size() && std::isdigit(static_cast<unsigned char>(text[exp]))) {
          has_exp = true;
          end = exp;
          while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        }
      }
      tok.kind = TokenKind::Number;
      const char* first = text.data() + pos;
      const char* last = text.data() + end;
      auto res = std::from_chars(first, last, tok.value);
      if (res.ec != std::errc{} || res.ptr != last) {
        throw ParseError("malformed number", pos);
      }
      tok.is_integer = !has_dot && !has_exp;
      if (tok.is_integer) {
        auto ires = std::from_chars(first, last, tok.int_value);
        if (ires.ec != std::errc{}) tok.is_integer = false;
      }
      pos = end;
    } else if (is_ident_start(c)) {
      std::size_t end = pos;
      while (end < text.size() && is_ident_char(text[end])) ++end;
      tok.text.assign(text.substr(pos, end - pos));
      // "h.c." is one token; identifiers cannot contain dots.
      if (tok.text == "h" && text.substr(end, 3) == ".c.") {
        tok.kind = TokenKind::Hc;
        pos = end + 3;
      } else {
        tok.kind = TokenKind::Ident;
        pos = end;
      }
    } else {
      switch (c) {
        case '+': tok.kind = TokenKind::Plus; break;
        case '-': tok.kind = TokenKind::Minus; break;
        case '*': tok.kind = TokenKind::Star; break;
        case '(': tok.kind = TokenKind::LParen; break;
        case ')': tok.kind = TokenKind::RParen; break;
        case '\'': tok.kind = TokenKind::Quote; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", pos);
      }
      ++pos;
    }
    tokens.push_back(std::move(tok));
  }
  Token end_tok;
  end_tok.kind = TokenKind::End;
  end_tok.position = text.size();
  tokens.push_back(std::move(end_tok));
  return tokens;
}

OperatorTerm adjoint_term(const OperatorTerm& term) {
  OperatorTerm out;
  out.literal = std::conj(term.literal);
  out.parameter = term.parameter;
  out.factors.reserve(term.factors.size());
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    ModeFactor f = *it;
    if (f.kind == FactorKind::Lower) {
      f.kind = FactorKind::Raise;
    } else if (f.kind == FactorKind::Raise) {
      f.kind = FactorKind::Lower;
    }
    out.factors.push_back(f);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  std::vector<OperatorTerm> run() {
    std::vector<OperatorTerm> terms = parse_expr(false);
    if (peek().kind != TokenKind::End) {
      throw ParseError("unexpected trailing input", peek().position);
    }
    return terms;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(cursor_ + ahead, tokens_.size() - 1)];
  }

  const Token& advance() { return tokens_[cursor_++]; }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) {
      throw ParseError("expected " + what, peek().position);
    }
    return advance();
  }

  std::vector<OperatorTerm> parse_expr(bool inside_group) {
    std::vector<OperatorTerm> terms;
    double sign = 1.0;
    if (peek().kind == TokenKind::Minus) {  // leading sign accepted
      advance();
      sign = -1.0;
    }
    append_signed(terms, parse_term(), sign);
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const bool minus = advance().kind == TokenKind::Minus;
      if (peek().kind == TokenKind::Hc) {
        // Final-summand form "(A + h.c.)": conjugates everything written
        // before it inside the enclosing group.
        if (minus) {
          throw ParseError("h.c. must be added, not subtracted", peek().position);
        }
        if (!inside_group || terms.empty()) {
          throw ParseError("h.c. is only allowed after a parenthesized group",
                           peek().position);
        }
        advance();
        append_adjoints(terms, 0, terms.size());
        continue;
      }
      append_signed(terms, parse_term(), minus ? -1.0 : 1.0);
    }
    return terms;
  }

  std::vector<OperatorTerm> parse_term() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Number: {
        const double value = advance().value;
        expect(TokenKind::Star, "'*' after coefficient");
        std::vector<OperatorTerm> terms = parse_factorseq();
        for (OperatorTerm& t : terms) t.literal *= value;
        return terms;
      }
      case TokenKind::Ident: {
        if (tok.text == "c" || tok.text == "n") {
          return parse_factorseq();
        }
        if (tok.text == "i" && peek(1).kind == TokenKind::Star) {
          advance();
          advance();
          std::vector<OperatorTerm> terms = parse_term();
          for (OperatorTerm& t : terms) t.literal *= ComplexScalar(0.0, 1.0);
          return terms;
        }
        if (peek(1).kind == TokenKind::LParen || peek(1).kind == TokenKind::Quote) {
          throw ParseError("unknown function name '" + tok.text + "'", tok.position);
        }
        const std::string name = advance().text;
        expect(TokenKind::Star, "'*' after parameter '" + name + "'");
        std::vector<OperatorTerm> terms = parse_factorseq();
        for (OperatorTerm& t : terms) {
          if (!t.parameter.empty()) {
            throw ParseError("term references two named parameters ('" + t.parameter +
                                 "' and '" + name + "')",
                             tok.position);
          }
          t.parameter = name;
        }
        return terms;
      }
      case TokenKind::LParen:
        return parse_factorseq();
      default:
        throw ParseError("expected a term", tok.position);
    }
  }

  std::vector<OperatorTerm> parse_factorseq() {
    if (peek().kind == TokenKind::LParen) {
      advance();
      std::vector<OperatorTerm> terms = parse_expr(true);
      expect(TokenKind::RParen, "')'");
      // Optional tail "(expr) h.c." or "(expr) + h.c.".
      if (peek().kind == TokenKind::Hc) {
        advance();
        append_adjoints(terms, 0, terms.size());
      } else if (peek().kind == TokenKind::Plus && peek(1).kind == TokenKind::Hc) {
        advance();
        advance();
        append_adjoints(terms, 0, terms.size());
      }
      return terms;
    }
    OperatorTerm term;
    term.factors.push_back(parse_factor());
    while (peek().kind == TokenKind::Star) {
      advance();
      term.factors.push_back(parse_factor());
    }
    return {term};
  }

  ModeFactor parse_factor() {
    const Token& tok = peek();
    if (tok.kind != TokenKind::Ident) {
      throw ParseError("expected an operator factor", tok.position);
    }
    if (tok.text != "c" && tok.text != "n") {
      throw ParseError("unknown function name '" + tok.text + "'", tok.position);
    }
    const std::string name = advance().text;
    FactorKind kind = (name == "c") ? FactorKind::Lower : FactorKind::Number;
    if (peek().kind == TokenKind::Quote) {
      if (name != "c") {
        throw ParseError("unknown function name 'n''", peek().position);
      }
      advance();
      kind = FactorKind::Raise;
    }
    expect(TokenKind::LParen, "'('");
    const Token& index = peek();
    if (index.kind != TokenKind::Number || !index.is_integer) {
      throw ParseError("expected a mode index", index.position);
    }
    if (index.int_value < 1) {
      throw ParseError("mode index must be positive", index.position);
    }
    const int mode = static_cast<int>(advance().int_value);
    expect(TokenKind::RParen, "')'");
    return ModeFactor{kind, mode};
  }

  static void append_signed(std::vector<OperatorTerm>& dest, std::vector<OperatorTerm> src,
                            double sign) {
    for (OperatorTerm& t : src) {
      t.literal *= sign;
      dest.push_back(std::move(t));
    }
  }

  static void append_adjoints(std::vector<OperatorTerm>& terms, std::size_t begin,
                              std::size_t end) {
    terms.reserve(terms.size() + (end - begin));
    for (std::size_t k = begin; k < end; ++k) {
      terms.push_back(adjoint_term(terms[k]));
    }
  }
};

std::string format_literal(double x) {
  char buffer[32];
  auto res = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, res.ptr);
}

}  // namespace

int OperatorExpression::max_mode() const {
  int max = 0;
  for (const OperatorTerm& t : terms) {
    for (const ModeFactor& f : t.factors) max = std::max(max, f.mode);
  }
  return max;
}

std::vector<std::string> OperatorExpression::unbound_parameters() const {
  std::vector<std::string> missing;
  for (const OperatorTerm& t : terms) {
    if (t.parameter.empty() || parameters.count(t.parameter)) continue;
    if (std::find(missing.begin(), missing.end(), t.parameter) == missing.end()) {
      missing.push_back(t.parameter);
    }
  }
  return missing;
}

OperatorExpression parse(std::string_view text) {
  OperatorExpression expr;
  expr.terms = Parser(text).run();
  return expr;
}

std::string render(const OperatorExpression& expr) {
  std::string out;
  for (std::size_t k = 0; k < expr.terms.size(); ++k) {
    const OperatorTerm& term = expr.terms[k];
    ComplexScalar literal = term.literal;
    if (literal.real() != 0.0 && literal.imag() != 0.0) {
      throw std::invalid_argument("render: literal with both real and imaginary parts");
    }
    bool negative = literal.real() < 0.0 || literal.imag() < 0.0;
    if (negative) literal = -literal;

    std::string body;
    std::string factors;
    for (const ModeFactor& f : term.factors) {
      if (!factors.empty()) factors += "*";
      switch (f.kind) {
        case FactorKind::Lower: factors += "c(" + std::to_string(f.mode) + ")"; break;
        case FactorKind::Raise: factors += "c'(" + std::to_string(f.mode) + ")"; break;
        case FactorKind::Number: factors += "n(" + std::to_string(f.mode) + ")"; break;
      }
    }
    const bool imaginary = literal.imag() != 0.0;
    const double magnitude = imaginary ? literal.imag() : literal.real();
    if (imaginary) body += "i*";
    if (magnitude != 1.0) {
      // A scale and a parameter must nest as "scale*(param*factors)" to stay
      // inside the grammar (a term takes a single coefficient atom).
      if (!term.parameter.empty()) {
        body += format_literal(magnitude) + "*(" + term.parameter + "*" + factors + ")";
      } else {
        body += format_literal(magnitude) + "*" + factors;
      }
    } else if (!term.parameter.empty()) {
      body += term.parameter + "*" + factors;
    } else {
      body += factors;
    }

    if (k == 0) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
  }
  return out;
}

namespace {

// Mode operators carry at most one nonzero per column, so a factor acts on
// basis vectors as e_m -> val[m] * e_row[m] (row -1 when the column is
// zero). Term products then cost O(dim) instead of a dense matmul each.
struct ColumnAction {
  std::vector<Index> row;
  std::vector<ComplexScalar> val;
  bool valid = false;
};

ColumnAction extract_column_action(const ComplexMatrix& m) {
  ColumnAction action;
  const Index dim = m.rows();
  action.row.assign(static_cast<std::size_t>(dim), -1);
  action.val.assign(static_cast<std::size_t>(dim), ComplexScalar{});
  for (Index col = 0; col < dim; ++col) {
    for (Index r = 0; r < dim; ++r) {
      if (m(r, col) == ComplexScalar{}) continue;
      if (action.row[static_cast<std::size_t>(col)] != -1) return action;  // two nonzeros
      action.row[static_cast<std::size_t>(col)] = r;
      action.val[static_cast<std::size_t>(col)] = m(r, col);
    }
  }
  action.valid = true;
  return action;
}

const ComplexMatrix& factor_matrix(const ModeFactor& f, const ModeOperatorSet& ops) {
  if (f.mode > ops.n_modes()) {
    throw std::invalid_argument("assemble: mode index " + std::to_string(f.mode) +
                                " exceeds the " + std::to_string(ops.n_modes()) +
                                "-mode system");
  }
  const std::size_t j = static_cast<std::size_t>(f.mode - 1);
  switch (f.kind) {
    case FactorKind::Lower: return ops.lowering[j];
    case FactorKind::Raise: return ops.raising[j];
    default: return ops.number[j];
  }
}

}  // namespace

ComplexMatrix assemble(const OperatorExpression& expr, const ModeOperatorSet& ops) {
  if (ops.n_modes() == 0) {
    throw std::invalid_argument("assemble: empty operator set");
  }
  const Index dim = ops.dimension();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);

  std::map<std::pair<int, int>, ColumnAction> actions;  // (kind, mode) -> action
  auto action_for = [&](const ModeFactor& f) -> const ColumnAction& {
    const std::pair<int, int> key{static_cast<int>(f.kind), f.mode};
    auto it = actions.find(key);
    if (it == actions.end()) {
      it = actions.emplace(key, extract_column_action(factor_matrix(f, ops))).first;
    }
    return it->second;
  };

  for (const OperatorTerm& term : expr.terms) {
    ComplexScalar coeff = term.literal;
    if (!term.parameter.empty()) {
      auto it = expr.parameters.find(term.parameter);
      if (it == expr.parameters.end()) {
        throw std::invalid_argument("assemble: unbound parameter '" + term.parameter + "'");
      }
      coeff *= it->second;
    }

    bool sparse_ok = true;
    for (const ModeFactor& f : term.factors) {
      if (!action_for(f).valid) {
        sparse_ok = false;
        break;
      }
    }

    if (sparse_ok) {
      // Walk every basis vector through the factors, rightmost first.
      for (Index m = 0; m < dim; ++m) {
        Index idx = m;
        ComplexScalar val = coeff;
        for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
          const ColumnAction& action = action_for(*it);
          const Index next = action.row[static_cast<std::size_t>(idx)];
          if (next == -1) {
            idx = -1;
            break;
          }
          val *= action.val[static_cast<std::size_t>(idx)];
          idx = next;
        }
        if (idx != -1) h(idx, m) += val;
      }
    } else {
      ComplexMatrix product = ComplexMatrix::Identity(dim, dim);
      bool first = true;
      for (const ModeFactor& f : term.factors) {
        const ComplexMatrix& m = factor_matrix(f, ops);
        if (first) {
          product = m;
          first = false;
        } else {
          product = product * m;
        }
      }
      h.noalias() += coeff * product;
    }
  }
  require_finite(h, "assemble");
  return h;
}

HermiticityReport check_hermitian(const ComplexMatrix& h, double tolerance) {
  if (h.rows() != h.cols()) {
    throw ShapeError("check_hermitian: matrix is not square");
  }
  HermiticityReport report;
  report.max_deviation = max_abs(h - h.adjoint());
  report.is_hermitian = report.max_deviation <= tolerance;
  return report;
}

}  // namespace fermidyn
