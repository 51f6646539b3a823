#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "meanscale/errors.hpp"

namespace meanscale::expr {

// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          // right-associative
//   atom   := number | 'u' | ident '(' expr (',' expr)? ')' | '(' expr ')'
// Functions: exp, log, sqrt, abs (one argument) and pow (two arguments).

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Exp, Log, Sqrt, Abs, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Number, Variable, Negate, Binary, Call };
  Kind kind = Kind::Number;
  double number = 0.0;  // Number
  BinaryOp op{};        // Binary
  FuncId func{};        // Call
  NodePtr lhs;          // Negate/Call argument, Binary lhs
  NodePtr rhs;          // Binary rhs, second argument of pow(x, y)
};

/// Parsed single-variable expression in the variable `u`. Immutable; copies
/// share the tree.
class ExprAst {
 public:
  /// Parses `text`; throws SyntaxError (with byte offset) or
  /// UnknownIdentifier.
  static ExprAst parse(std::string_view text);

  /// Evaluates at u. Every domain violation and every non-finite
  /// intermediate surfaces as DomainError; the result is always finite.
  double eval(double u) const;

  /// Re-parseable text form; parsing it yields a structurally equal tree.
  std::string str() const;

  bool structurally_equal(const ExprAst& other) const;

  const NodePtr& root() const noexcept { return root_; }

  explicit ExprAst(NodePtr root) : root_(std::move(root)) {}

 private:
  NodePtr root_;
};

inline ExprAst parse(std::string_view text) { return ExprAst::parse(text); }
inline double eval(const ExprAst& ast, double u) { return ast.eval(u); }
inline std::string to_string(const ExprAst& ast) { return ast.str(); }

}  // namespace meanscale::expr
