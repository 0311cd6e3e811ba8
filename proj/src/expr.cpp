#include "epatlas/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace epatlas::expr {

namespace {

const std::set<std::string> kFunctions = {"sin", "cos", "exp", "sqrt",
                                          "conj", "re",  "im"};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

Ast make(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

Ast make_num(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Number;
  n->value = v;
  return n;
}

Ast make_unary(NodeKind kind, Ast operand) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(operand);
  return n;
}

Ast make_binary(NodeKind kind, Ast lhs, Ast rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct Token {
  enum Type { Number, Ident, Op, End } type;
  size_t offset;
  double value = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::End;
      tok_.text = "<end>";
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = 0;
      double v;
      try {
        v = std::stod(src_.substr(pos_), &end);
      } catch (const std::exception&) {
        throw ParseError(pos_, "malformed numeric literal", {"number"});
      }
      tok_.type = Token::Number;
      tok_.value = v;
      tok_.text = src_.substr(pos_, end);
      pos_ += end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.type = Token::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_.type = Token::Op;
      tok_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'",
                     {"number", "identifier", "operator", "("});
  }

  const std::string& src_;
  size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Ast run() {
    Ast e = expression();
    const Token& t = lex_.peek();
    if (t.type != Token::End)
      throw ParseError(t.offset, "trailing input after expression",
                       {"+", "-", "*", "/", "^", "<end>"});
    return e;
  }

 private:
  [[noreturn]] void fail(const Token& t, std::vector<std::string> expected) {
    throw ParseError(t.offset, "unexpected token '" + t.text + "'; expected one of: " + join(expected),
                     std::move(expected));
  }

  bool accept_op(const char* op) {
    const Token& t = lex_.peek();
    if (t.type == Token::Op && t.text == op) {
      lex_.take();
      return true;
    }
    return false;
  }

  void expect_op(const char* op) {
    const Token& t = lex_.peek();
    if (t.type != Token::Op || t.text != op) fail(t, {op});
    lex_.take();
  }

  Ast expression() {
    Ast lhs = term();
    for (;;) {
      if (accept_op("+"))
        lhs = make_binary(NodeKind::Add, lhs, term());
      else if (accept_op("-"))
        lhs = make_binary(NodeKind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Ast term() {
    Ast lhs = unary();
    for (;;) {
      if (accept_op("*"))
        lhs = make_binary(NodeKind::Mul, lhs, unary());
      else if (accept_op("/"))
        lhs = make_binary(NodeKind::Div, lhs, unary());
      else
        return lhs;
    }
  }

  Ast unary() {
    if (accept_op("-")) return make_unary(NodeKind::Neg, unary());
    if (accept_op("+")) return unary();
    return power();
  }

  Ast power() {
    Ast base = atom();
    const Token& t = lex_.peek();
    if (t.type == Token::Op && t.text == "^") {
      size_t at = t.offset;
      lex_.take();
      long e = exponent(at);
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Pow;
      n->exponent = e;
      n->lhs = base;
      return n;
    }
    return base;
  }

  // Exponents are constant integers; a chain a^2^3 nests to the right,
  // i.e. a^(2^3).
  long exponent(size_t op_offset) {
    bool neg = false;
    while (true) {
      if (accept_op("-")) {
        neg = !neg;
        continue;
      }
      if (accept_op("+")) continue;
      break;
    }
    const Token& t = lex_.peek();
    long v;
    if (t.type == Token::Number) {
      double d = t.value;
      if (d != std::floor(d))
        throw ParseError(t.offset, "non-integer exponent", {"integer"});
      lex_.take();
      v = static_cast<long>(d);
    } else if (t.type == Token::Op && t.text == "(") {
      lex_.take();
      v = exponent(t.offset);
      expect_op(")");
    } else {
      throw ParseError(op_offset, "exponent must be a constant integer",
                       {"integer"});
    }
    if (neg) v = -v;
    const Token& nxt = lex_.peek();
    if (nxt.type == Token::Op && nxt.text == "^") {
      lex_.take();
      long e = exponent(nxt.offset);
      if (e < 0 || (v == 0 && e == 0))
        throw ParseError(nxt.offset, "exponent chain must stay integral",
                         {"integer"});
      long r = 1;
      for (long i = 0; i < e; ++i) r *= v;
      v = r;
    }
    return v;
  }

  Ast atom() {
    const Token& t = lex_.peek();
    if (t.type == Token::Number) return make_num(lex_.take().value);
    if (t.type == Token::Ident) {
      Token id = lex_.take();
      if (id.text == "i") return make(NodeKind::ImagUnit);
      if (kFunctions.count(id.text)) {
        expect_op("(");
        Ast arg = expression();
        expect_op(")");
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Call;
        n->name = id.text;
        n->lhs = arg;
        return n;
      }
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::Identifier;
      n->name = id.text;
      return n;
    }
    if (t.type == Token::Op && t.text == "(") {
      lex_.take();
      Ast e = expression();
      expect_op(")");
      return e;
    }
    fail(t, {"number", "identifier", "i", "function", "("});
  }

  Lexer lex_;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void collect_idents(const Ast& ast, std::set<std::string>& out) {
  if (!ast) return;
  if (ast->kind == NodeKind::Identifier) out.insert(ast->name);
  collect_idents(ast->lhs, out);
  collect_idents(ast->rhs, out);
}

Complex int_pow(Complex base, long e) {
  if (e < 0) return 1.0 / int_pow(base, -e);
  Complex r{1.0, 0.0};
  Complex b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

ParseError::ParseError(size_t offset_, const std::string& message,
                       std::vector<std::string> expected_)
    : EpAtlasError("parse error at byte " + std::to_string(offset_) + ": " + message),
      offset(offset_),
      expected(std::move(expected_)) {}

EvalError::EvalError(const std::string& message, std::vector<std::string> unbound_)
    : EpAtlasError(message), unbound(std::move(unbound_)) {}

Ast parse(const std::string& src) { return Parser(src).run(); }

std::string print(const Ast& ast) {
  switch (ast->kind) {
    case NodeKind::Number:
      return fmt_double(ast->value);
    case NodeKind::ImagUnit:
      return "i";
    case NodeKind::Identifier:
      return ast->name;
    case NodeKind::Neg:
      return "-(" + print(ast->lhs) + ")";
    case NodeKind::Add:
      return "(" + print(ast->lhs) + " + " + print(ast->rhs) + ")";
    case NodeKind::Sub:
      return "(" + print(ast->lhs) + " - " + print(ast->rhs) + ")";
    case NodeKind::Mul:
      return "(" + print(ast->lhs) + " * " + print(ast->rhs) + ")";
    case NodeKind::Div:
      return "(" + print(ast->lhs) + " / " + print(ast->rhs) + ")";
    case NodeKind::Pow: {
      std::string e = std::to_string(ast->exponent);
      if (ast->exponent < 0) e = "(" + e + ")";
      return "(" + print(ast->lhs) + ")^" + e;
    }
    case NodeKind::Call:
      return ast->name + "(" + print(ast->lhs) + ")";
  }
  throw EpAtlasError("print: corrupt AST");
}

bool equal(const Ast& a, const Ast& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number:
      return a->value == b->value;
    case NodeKind::ImagUnit:
      return true;
    case NodeKind::Identifier:
      return a->name == b->name;
    case NodeKind::Pow:
      return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    case NodeKind::Call:
      return a->name == b->name && equal(a->lhs, b->lhs);
    case NodeKind::Neg:
      return equal(a->lhs, b->lhs);
    default:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

std::vector<std::string> free_identifiers(const Ast& ast) {
  std::set<std::string> s;
  collect_idents(ast, s);
  return {s.begin(), s.end()};
}

Complex evaluate(const Ast& ast, const std::map<std::string, Complex>& bindings) {
  std::set<std::string> idents;
  collect_idents(ast, idents);
  std::vector<std::string> unbound;
  for (const auto& id : idents)
    if (!bindings.count(id)) unbound.push_back(id);
  if (!unbound.empty())
    throw EvalError("unbound identifiers: " + join(unbound), unbound);

  struct Eval {
    const std::map<std::string, Complex>& env;
    Complex operator()(const Ast& n) const {
      switch (n->kind) {
        case NodeKind::Number: return Complex(n->value, 0.0);
        case NodeKind::ImagUnit: return I;
        case NodeKind::Identifier: return env.at(n->name);
        case NodeKind::Neg: return -(*this)(n->lhs);
        case NodeKind::Add: return (*this)(n->lhs) + (*this)(n->rhs);
        case NodeKind::Sub: return (*this)(n->lhs) - (*this)(n->rhs);
        case NodeKind::Mul: return (*this)(n->lhs) * (*this)(n->rhs);
        case NodeKind::Div: return (*this)(n->lhs) / (*this)(n->rhs);
        case NodeKind::Pow: return int_pow((*this)(n->lhs), n->exponent);
        case NodeKind::Call: {
          Complex a = (*this)(n->lhs);
          if (n->name == "sin") return std::sin(a);
          if (n->name == "cos") return std::cos(a);
          if (n->name == "exp") return std::exp(a);
          if (n->name == "sqrt") return std::sqrt(a);
          if (n->name == "conj") return std::conj(a);
          if (n->name == "re") return Complex(a.real(), 0.0);
          if (n->name == "im") return Complex(a.imag(), 0.0);
          throw EvalError("unknown function: " + n->name);
        }
      }
      throw EvalError("evaluate: corrupt AST");
    }
  } ev{bindings};

  Complex v = ev(ast);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError("expression evaluated to a non-finite value");
  return v;
}

}  // namespace epatlas::expr
