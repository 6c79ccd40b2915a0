#include "bjq/obslang.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <vector>

#include "bjq/quantize.hpp"

namespace bjq {

ParseError::ParseError(std::size_t column, const std::string& what)
    : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column) {}

namespace {

// Bounds both nesting and operator chains, so evaluation recursion stays shallow.
constexpr std::size_t kMaxDepth = 2000;
constexpr unsigned kMaxExponent = 64;
constexpr std::size_t kMaxTerms = 20000;

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E'))
        throw ParseError(j + 1, "floating-point literals are not supported; use p/q");
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: {
        std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                             : "\\x" + std::to_string(static_cast<unsigned>(c));
        throw ParseError(col, "unexpected character '" + shown + "'");
      }
    }
    out.push_back({k, std::string(1, static_cast<char>(c)), col});
    ++i;
  }
  out.push_back({Tok::end, "", s.size() + 1});
  return out;
}

struct Node {
  enum class Kind { number, imag, hbar, var, builtin, neg, add, sub, mul, div, pow };
  Kind kind;
  std::size_t column;
  Rational value;         // number, div denominator
  unsigned exponent = 0;  // pow
  bool is_p = false;      // var
  bool is_operator = false;
  std::size_t index = 0;  // var, 0-based
  std::string name;       // builtin
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, std::size_t col) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->column = col;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  NodePtr parse() {
    NodePtr e = expr(0);
    if (peek().kind != Tok::end) {
      if (peek().kind == Tok::ident || peek().kind == Tok::number || peek().kind == Tok::lparen)
        throw ParseError(peek().column, "missing '*': implicit multiplication is not allowed");
      throw ParseError(peek().column, "unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }

  void guard(std::size_t depth) const {
    if (depth > kMaxDepth) throw ParseError(peek().column, "expression nested too deeply");
  }

  NodePtr expr(std::size_t depth) {
    guard(depth);
    NodePtr lhs = term(depth + 1);
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      guard(++depth);
      const Token& op = next();
      NodePtr n = make(op.kind == Tok::plus ? Node::Kind::add : Node::Kind::sub, op.column);
      n->lhs = std::move(lhs);
      n->rhs = term(depth + 1);
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr term(std::size_t depth) {
    guard(depth);
    NodePtr lhs = unary(depth + 1);
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      guard(++depth);
      const Token& op = next();
      if (op.kind == Tok::slash) {
        const Token& d = next();
        if (d.kind != Tok::number)
          throw ParseError(d.column, "division is only allowed by an integer literal");
        Rational den(mpz_class(d.text, 10));
        if (sgn(den) == 0) throw ParseError(d.column, "division by zero");
        NodePtr n = make(Node::Kind::div, op.column);
        n->lhs = std::move(lhs);
        n->value = den;
        lhs = std::move(n);
        continue;
      }
      NodePtr n = make(Node::Kind::mul, op.column);
      n->lhs = std::move(lhs);
      n->rhs = unary(depth + 1);
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr unary(std::size_t depth) {
    guard(depth);
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      const Token& op = next();
      NodePtr inner = unary(depth + 1);
      if (op.kind == Tok::plus) return inner;
      NodePtr n = make(Node::Kind::neg, op.column);
      n->lhs = std::move(inner);
      return n;
    }
    return power(depth + 1);
  }

  NodePtr power(std::size_t depth) {
    NodePtr base = primary(depth + 1);
    if (peek().kind != Tok::caret) return base;
    const Token& op = next();
    const Token& e = next();
    if (e.kind == Tok::minus) throw ParseError(e.column, "exponent must be a non-negative integer");
    if (e.kind != Tok::number) throw ParseError(e.column, "exponent must be an integer literal");
    if (e.text.size() > 3 || std::stoul(e.text) > kMaxExponent)
      throw ParseError(e.column, "exponent exceeds " + std::to_string(kMaxExponent));
    if (peek().kind == Tok::caret)
      throw ParseError(peek().column, "chained exponents need parentheses");
    NodePtr n = make(Node::Kind::pow, op.column);
    n->lhs = std::move(base);
    n->exponent = static_cast<unsigned>(std::stoul(e.text));
    return n;
  }

  NodePtr primary(std::size_t depth) {
    guard(depth);
    const Token& t = next();
    switch (t.kind) {
      case Tok::number: {
        NodePtr n = make(Node::Kind::number, t.column);
        n->value = Rational(mpz_class(t.text, 10));
        return n;
      }
      case Tok::ident: return identifier(t);
      case Tok::lparen: {
        NodePtr inner = expr(depth + 1);
        if (peek().kind != Tok::rparen) throw ParseError(peek().column, "expected ')'");
        next();
        return inner;
      }
      case Tok::end: throw ParseError(t.column, "unexpected end of input");
      default: throw ParseError(t.column, "unexpected '" + t.text + "'");
    }
  }

  static NodePtr identifier(const Token& t) {
    const std::string& s = t.text;
    if (s == "i") return make(Node::Kind::imag, t.column);
    if (s == "hbar") return make(Node::Kind::hbar, t.column);
    if (is_builtin(s)) {
      NodePtr n = make(Node::Kind::builtin, t.column);
      n->name = s;
      n->is_operator = builtin_is_operator(s);
      return n;
    }
    const char head = s[0];
    const bool var_head = head == 'x' || head == 'p' || head == 'X' || head == 'P';
    if (var_head && (s.size() == 1 || (s.size() == 2 && s[1] >= '1' && s[1] <= '9'))) {
      NodePtr n = make(Node::Kind::var, t.column);
      n->is_p = head == 'p' || head == 'P';
      n->is_operator = head == 'X' || head == 'P';
      n->index = s.size() == 1 ? 0 : static_cast<std::size_t>(s[1] - '1');
      return n;
    }
    throw ParseError(t.column, "unknown identifier '" + s + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Scan {
  const Node* classical = nullptr;
  const Node* op = nullptr;
  std::size_t dof = 0;
};

void scan(const Node& n, Scan& s) {
  if (n.kind == Node::Kind::var || n.kind == Node::Kind::builtin) {
    const Node*& first = n.is_operator ? s.op : s.classical;
    if (!first) first = &n;
    s.dof = std::max(s.dof, n.kind == Node::Kind::var ? n.index + 1 : builtin_dof(n.name));
  }
  if (n.lhs) scan(*n.lhs, s);
  if (n.rhs) scan(*n.rhs, s);
}

Scan analyse(const Node& root) {
  Scan s;
  scan(root, s);
  if (s.classical && s.op) {
    const Node* later = s.classical->column > s.op->column ? s.classical : s.op;
    throw ParseError(later->column, "expression mixes classical (x, p) and operator (X, P) variables");
  }
  return s;
}

template <class Alg>
void check_size(const Alg& a) {
  if (a.terms().size() > kMaxTerms) throw SemanticError("expression expands to too many terms");
}

template <class Alg>
Alg evaluate(const Node& n, std::size_t dofs) {
  switch (n.kind) {
    case Node::Kind::number: return Alg(dofs, HCoeff(n.value));
    case Node::Kind::imag: return Alg(dofs, HCoeff::i());
    case Node::Kind::hbar: return Alg(dofs, HCoeff::hbar());
    case Node::Kind::var: return n.is_p ? Alg::p(dofs, n.index) : Alg::x(dofs, n.index);
    case Node::Kind::builtin: {
      try {
        return std::get<Alg>(builtin(n.name, dofs));
      } catch (const DimensionError& e) {
        throw SemanticError(e.what());
      }
    }
    case Node::Kind::neg: return -evaluate<Alg>(*n.lhs, dofs);
    case Node::Kind::add: return evaluate<Alg>(*n.lhs, dofs) + evaluate<Alg>(*n.rhs, dofs);
    case Node::Kind::sub: return evaluate<Alg>(*n.lhs, dofs) - evaluate<Alg>(*n.rhs, dofs);
    case Node::Kind::mul: {
      Alg a = evaluate<Alg>(*n.lhs, dofs);
      Alg b = evaluate<Alg>(*n.rhs, dofs);
      if (a.terms().size() * b.terms().size() > 50 * kMaxTerms)
        throw SemanticError("expression expands to too many terms");
      Alg out = a * b;
      check_size(out);
      return out;
    }
    case Node::Kind::div: {
      Rational inv = 1 / n.value;
      return evaluate<Alg>(*n.lhs, dofs) * HCoeff(inv);
    }
    case Node::Kind::pow: {
      const Alg base = evaluate<Alg>(*n.lhs, dofs);
      Alg out(dofs, HCoeff(1));
      for (unsigned k = 0; k < n.exponent; ++k) {
        if (out.terms().size() * base.terms().size() > 50 * kMaxTerms)
          throw SemanticError("expression expands to too many terms");
        out = out * base;
        check_size(out);
      }
      return out;
    }
  }
  throw std::logic_error("unhandled expression node");
}

std::size_t resolve_dof(std::size_t inferred, std::size_t requested) {
  if (requested == 0) return std::max<std::size_t>(inferred, 1);
  if (requested < inferred)
    throw SemanticError("expression uses " + std::to_string(inferred) +
                        " degrees of freedom but n = " + std::to_string(requested) + " was requested");
  return requested;
}

// One printed summand: value * [i] * hbar^k * monomial.
struct Atom {
  const Exponents* mono;
  unsigned hbar_power;
  bool imaginary;
  Rational value;
};

template <class Terms>
std::string print_terms(const Terms& terms, std::size_t n, bool upper) {
  if (terms.empty()) return "0";
  std::vector<const typename Terms::value_type*> order;
  for (const auto& t : terms) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return graded_before(a->first, b->first); });
  std::vector<Atom> atoms;
  for (const auto* t : order)
    for (const auto& [k, g] : t->second.terms()) {
      if (sgn(g.re) != 0) atoms.push_back({&t->first, k, false, g.re});
      if (sgn(g.im) != 0) atoms.push_back({&t->first, k, true, g.im});
    }

  const char xs = upper ? 'X' : 'x', ps = upper ? 'P' : 'p';
  auto var = [&](char base, std::size_t j, unsigned power) {
    std::string s(1, base);
    if (n > 1) s += std::to_string(j + 1);
    if (power > 1) s += "^" + std::to_string(power);
    return s;
  };

  std::string out;
  bool first = true;
  for (const Atom& a : atoms) {
    const bool negative = sgn(a.value) < 0;
    const Rational mag = abs(a.value);
    std::vector<std::string> factors;
    if (mag != 1) factors.push_back(mag.get_str());
    if (a.imaginary) factors.emplace_back("i");
    if (a.hbar_power == 1) factors.emplace_back("hbar");
    if (a.hbar_power > 1) factors.push_back("hbar^" + std::to_string(a.hbar_power));
    for (std::size_t j = 0; j < n; ++j)
      if (a.mono->x(j)) factors.push_back(var(xs, j, a.mono->x(j)));
    for (std::size_t j = 0; j < n; ++j)
      if (a.mono->p(j)) factors.push_back(var(ps, j, a.mono->p(j)));
    if (factors.empty()) factors.emplace_back("1");
    std::string body;
    for (std::size_t f = 0; f < factors.size(); ++f) body += (f ? "*" : "") + factors[f];
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

}  // namespace

ExprKind expression_kind(std::string_view text) {
  NodePtr root = Parser(text).parse();
  Scan s = analyse(*root);
  if (s.op) return ExprKind::operator_;
  if (s.classical) return ExprKind::classical;
  return ExprKind::constant;
}

PhasePoly parse_classical(std::string_view text, std::size_t n) {
  NodePtr root = Parser(text).parse();
  Scan s = analyse(*root);
  if (s.op) throw SemanticError("expected a classical expression (x, p), found operator '" +
                                (s.op->kind == Node::Kind::builtin ? s.op->name : std::string("X/P")) + "'");
  return evaluate<PhasePoly>(*root, resolve_dof(s.dof, n));
}

NormalOp parse_operator(std::string_view text, std::size_t n) {
  NodePtr root = Parser(text).parse();
  Scan s = analyse(*root);
  if (s.classical)
    throw SemanticError("expected an operator expression (X, P), found classical '" +
                        (s.classical->kind == Node::Kind::builtin ? s.classical->name
                                                                  : std::string("x/p")) +
                        "'");
  return evaluate<NormalOp>(*root, resolve_dof(s.dof, n));
}

std::string print_canonical(const PhasePoly& a) { return print_terms(a.terms(), a.dof(), false); }
std::string print_canonical(const NormalOp& a) { return print_terms(a.terms(), a.dof(), true); }

}  // namespace bjq
