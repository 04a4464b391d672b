#ifndef ITP_EXPR_HPP
#define ITP_EXPR_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace itp::expr {

using Complex = std::complex<double>;

enum class NodeKind { Number, ImaginaryUnit, Variable, Negate, Binary, Call, Power };

/// Value-semantic AST.  Power keeps its exponent as a nonnegative integer
/// folded at parse time, so "2^3^2" becomes pow(2, 9).
struct Ast {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::string name;  // Variable / Call
  char op = 0;       // Binary: one of + - * /
  long exponent = 0;
  std::vector<Ast> children;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t at);
  std::size_t offset;
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Precedence: ^  >  unary -  >  * /  >  + -.  +,-,*,/ associate left,
// ^ associates right.  Inputs are capped at 64 KiB and a fixed nesting
// depth so parsing is total.
Ast parse(std::string_view text);

Complex eval(const Ast& ast, const std::map<std::string, Complex>& bindings);

/// Fully parenthesized printout; eval(parse(to_string(a))) == eval(a) exactly.
std::string to_string(const Ast& ast);

bool is_known_variable(std::string_view name);

}  // namespace itp::expr

#endif
