#include "itp/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace itp::expr {

namespace {

constexpr std::size_t kMaxInput = 64 * 1024;
constexpr int kMaxDepth = 10000;

const std::array<std::string_view, 4> kVariables = {"x1", "x2", "x3", "r"};
const std::array<std::string_view, 5> kFunctions = {"sin", "cos", "exp", "sqrt", "abs"};

struct Token {
  enum Kind { Number, Ident, Op, LParen, RParen, End } kind;
  double number = 0.0;
  std::string text;
  char op = 0;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) {
      t.kind = Token::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      t.kind = Token::Ident;
      t.text.assign(src_.substr(start, pos_ - start));
      return t;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        t.kind = Token::Op;
        t.op = c;
        ++pos_;
        return t;
      case '(':
        t.kind = Token::LParen;
        ++pos_;
        return t;
      case ')':
        t.kind = Token::RParen;
        ++pos_;
        return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

 private:
  Token lex_number() {
    const std::size_t start = pos_;
    bool seen_dot = false;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      throw ParseError("malformed number", start);
    // optional exponent part
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to something else; not a scientific suffix
      }
    }
    Token t;
    t.kind = Token::Number;
    t.offset = start;
    t.text.assign(src_.substr(start, pos_ - start));
    t.number = std::strtod(t.text.c_str(), nullptr);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  Ast parse_all() {
    Ast a = parse_sum(0);
    if (cur_.kind != Token::End) throw ParseError("trailing input", cur_.offset);
    return a;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void check_depth(int depth) const {
    if (depth > kMaxDepth) throw ParseError("expression nesting too deep", cur_.offset);
  }

  Ast parse_sum(int depth) {
    check_depth(depth);
    Ast left = parse_product(depth + 1);
    while (cur_.kind == Token::Op && (cur_.op == '+' || cur_.op == '-')) {
      const char op = cur_.op;
      advance();
      Ast right = parse_product(depth + 1);
      Ast node;
      node.kind = NodeKind::Binary;
      node.op = op;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Ast parse_product(int depth) {
    check_depth(depth);
    Ast left = parse_unary(depth + 1);
    while (cur_.kind == Token::Op && (cur_.op == '*' || cur_.op == '/')) {
      const char op = cur_.op;
      advance();
      Ast right = parse_unary(depth + 1);
      Ast node;
      node.kind = NodeKind::Binary;
      node.op = op;
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      left = std::move(node);
    }
    return left;
  }

  Ast parse_unary(int depth) {
    check_depth(depth);
    if (cur_.kind == Token::Op && cur_.op == '-') {
      advance();
      Ast node;
      node.kind = NodeKind::Negate;
      node.children.push_back(parse_unary(depth + 1));
      return node;
    }
    if (cur_.kind == Token::Op && cur_.op == '+') {  // unary plus is a no-op
      advance();
      return parse_unary(depth + 1);
    }
    return parse_power(depth + 1);
  }

  Ast parse_power(int depth) {
    check_depth(depth);
    Ast base = parse_atom(depth + 1);
    if (cur_.kind == Token::Op && cur_.op == '^') {
      const std::size_t at = cur_.offset;
      advance();
      // right associative: the exponent may itself contain ^, but it must
      // fold to a constant nonnegative integer
      Ast expAst = parse_power(depth + 1);
      Complex v;
      try {
        v = eval(expAst, {});
      } catch (const EvalError&) {
        throw ParseError("exponent must be a constant integer", at);
      }
      const double rounded = std::round(v.real());
      if (std::abs(v.imag()) > 1e-9 || std::abs(v.real() - rounded) > 1e-9 || rounded < 0.0)
        throw ParseError("exponent must be a nonnegative integer", at);
      Ast node;
      node.kind = NodeKind::Power;
      node.exponent = static_cast<long>(rounded);
      node.children.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Ast parse_atom(int depth) {
    check_depth(depth);
    switch (cur_.kind) {
      case Token::Number: {
        Ast node;
        node.kind = NodeKind::Number;
        node.number = cur_.number;
        advance();
        return node;
      }
      case Token::Ident: {
        const std::string name = cur_.text;
        const std::size_t at = cur_.offset;
        advance();
        if (name == "i") {
          Ast node;
          node.kind = NodeKind::ImaginaryUnit;
          return node;
        }
        if (is_known_variable(name)) {
          Ast node;
          node.kind = NodeKind::Variable;
          node.name = name;
          return node;
        }
        for (auto fn : kFunctions) {
          if (name == fn) {
            if (cur_.kind != Token::LParen)
              throw ParseError("expected '(' after function '" + name + "'", cur_.offset);
            advance();
            Ast arg = parse_sum(depth + 1);
            if (cur_.kind != Token::RParen) throw ParseError("expected ')'", cur_.offset);
            advance();
            Ast node;
            node.kind = NodeKind::Call;
            node.name = name;
            node.children.push_back(std::move(arg));
            return node;
          }
        }
        throw ParseError("unknown identifier '" + name + "'", at);
      }
      case Token::LParen: {
        advance();
        Ast inner = parse_sum(depth + 1);
        if (cur_.kind != Token::RParen) throw ParseError("expected ')'", cur_.offset);
        advance();
        return inner;
      }
      default:
        throw ParseError("expected a value", cur_.offset);
    }
  }

  Lexer lex_;
  Token cur_;
};

Complex ipow(Complex base, long n) {
  Complex acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace

ParseError::ParseError(const std::string& msg, std::size_t at)
    : std::runtime_error("syntax error at offset " + std::to_string(at) + ": " + msg),
      offset(at) {}

bool is_known_variable(std::string_view name) {
  for (auto v : kVariables)
    if (name == v) return true;
  return false;
}

Ast parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty expression", 0);
  if (text.size() > kMaxInput) throw ParseError("expression longer than 64 KiB", kMaxInput);
  return Parser(text).parse_all();
}

Complex eval(const Ast& ast, const std::map<std::string, Complex>& bindings) {
  switch (ast.kind) {
    case NodeKind::Number:
      return Complex(ast.number, 0.0);
    case NodeKind::ImaginaryUnit:
      return Complex(0.0, 1.0);
    case NodeKind::Variable: {
      auto it = bindings.find(ast.name);
      if (it == bindings.end()) throw EvalError("unbound variable '" + ast.name + "'");
      return it->second;
    }
    case NodeKind::Negate:
      return -eval(ast.children[0], bindings);
    case NodeKind::Binary: {
      const Complex a = eval(ast.children[0], bindings);
      const Complex b = eval(ast.children[1], bindings);
      switch (ast.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b == Complex(0.0, 0.0)) throw EvalError("division by zero");
          return a / b;
      }
      throw EvalError("corrupt AST: bad operator");
    }
    case NodeKind::Call: {
      const Complex a = eval(ast.children[0], bindings);
      if (ast.name == "sin") return std::sin(a);
      if (ast.name == "cos") return std::cos(a);
      if (ast.name == "exp") return std::exp(a);
      if (ast.name == "sqrt") {
        // principal branch; flush -0 imag so real negatives land on the
        // upper side of the cut
        const Complex z = a.imag() == 0.0 ? Complex(a.real(), 0.0) : a;
        return std::sqrt(z);
      }
      if (ast.name == "abs") return Complex(std::abs(a), 0.0);
      throw EvalError("corrupt AST: bad call");
    }
    case NodeKind::Power:
      return ipow(eval(ast.children[0], bindings), ast.exponent);
  }
  throw EvalError("corrupt AST");
}

std::string to_string(const Ast& ast) {
  switch (ast.kind) {
    case NodeKind::Number: {
      char buf[44];
      // negatives are wrapped so a following ^ cannot re-bind them
      if (std::signbit(ast.number))
        std::snprintf(buf, sizeof(buf), "(%.17g)", ast.number);
      else
        std::snprintf(buf, sizeof(buf), "%.17g", ast.number);
      return buf;
    }
    case NodeKind::ImaginaryUnit:
      return "i";
    case NodeKind::Variable:
      return ast.name;
    case NodeKind::Negate:
      return "(-" + to_string(ast.children[0]) + ")";
    case NodeKind::Binary:
      return "(" + to_string(ast.children[0]) + ast.op + to_string(ast.children[1]) + ")";
    case NodeKind::Call:
      return ast.name + "(" + to_string(ast.children[0]) + ")";
    case NodeKind::Power:
      return "(" + to_string(ast.children[0]) + "^" + std::to_string(ast.exponent) + ")";
  }
  return "";
}

}  // namespace itp::expr
