#include "meanscale/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace meanscale::expr {

namespace {

NodePtr number_node(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->number = v;
  return n;
}

NodePtr variable_node() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  return n;
}

NodePtr negate_node(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Negate;
  n->lhs = std::move(a);
  return n;
}

NodePtr binary_node(BinaryOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Binary;
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr call_node(FuncId f, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Call;
  n->func = f;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // expr := term (('+'|'-') term)*
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+'))
        lhs = binary_node(BinaryOp::Add, lhs, parse_term());
      else if (eat('-'))
        lhs = binary_node(BinaryOp::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  // term := factor (('*'|'/') factor)*
  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (eat('*'))
        lhs = binary_node(BinaryOp::Mul, lhs, parse_factor());
      else if (eat('/'))
        lhs = binary_node(BinaryOp::Div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  // factor := '-' factor | power
  NodePtr parse_factor() {
    if (eat('-')) return negate_node(parse_factor());
    return parse_power();
  }

  // power := atom ('^' factor)?   -- right-associative via the factor branch
  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (eat('^')) return binary_node(BinaryOp::Pow, base, parse_factor());
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("expected an operand", pos_);
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first)
      throw SyntaxError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return number_node(value);
  }

  NodePtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "u") return variable_node();

    static constexpr std::array<std::pair<std::string_view, FuncId>, 5>
        kFuncs{{{"exp", FuncId::Exp},
                {"log", FuncId::Log},
                {"sqrt", FuncId::Sqrt},
                {"abs", FuncId::Abs},
                {"pow", FuncId::Pow}}};
    for (const auto& [fname, id] : kFuncs) {
      if (name != fname) continue;
      if (!eat('('))
        throw SyntaxError("expected '(' after function name", pos_);
      NodePtr first_arg = parse_expr();
      NodePtr second_arg;
      if (eat(',')) {
        if (id != FuncId::Pow)
          throw SyntaxError("function takes a single argument", pos_);
        second_arg = parse_expr();
      } else if (id == FuncId::Pow) {
        throw SyntaxError("pow takes two arguments", pos_);
      }
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return call_node(id, std::move(first_arg), std::move(second_arg));
    }
    throw UnknownIdentifier("unknown identifier '" + std::string(name) +
                            "' (at offset " + std::to_string(start) + ")");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double checked(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite result");
  return v;
}

double real_pow(double base, double exponent) {
  if (base == 0.0) {
    if (exponent < 0.0) throw DomainError("zero raised to a negative power");
    return exponent == 0.0 ? 1.0 : 0.0;
  }
  if (base < 0.0) {
    // stay within real arithmetic: negative base needs an integer exponent
    if (std::nearbyint(exponent) != exponent)
      throw DomainError("fractional power of a negative base");
  }
  return checked(std::pow(base, exponent));
}

double eval_node(const Node& n, double u) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.number;
    case Node::Kind::Variable:
      return u;
    case Node::Kind::Negate:
      return -eval_node(*n.lhs, u);
    case Node::Kind::Binary: {
      const double a = eval_node(*n.lhs, u);
      const double b = eval_node(*n.rhs, u);
      switch (n.op) {
        case BinaryOp::Add:
          return checked(a + b);
        case BinaryOp::Sub:
          return checked(a - b);
        case BinaryOp::Mul:
          return checked(a * b);
        case BinaryOp::Div:
          if (b == 0.0) throw DomainError("division by zero");
          return checked(a / b);
        case BinaryOp::Pow:
          return real_pow(a, b);
      }
      break;
    }
    case Node::Kind::Call: {
      const double a = eval_node(*n.lhs, u);
      switch (n.func) {
        case FuncId::Exp:
          return checked(std::exp(a));
        case FuncId::Log:
          if (a <= 0.0) throw DomainError("log of a non-positive value");
          return checked(std::log(a));
        case FuncId::Sqrt:
          if (a < 0.0) throw DomainError("sqrt of a negative value");
          return std::sqrt(a);
        case FuncId::Abs:
          return std::abs(a);
        case FuncId::Pow:
          return real_pow(a, eval_node(*n.rhs, u));
      }
      break;
    }
  }
  throw DomainError("malformed expression node");
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Binary:
      switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div:
          return 2;
        case BinaryOp::Pow:
          return 4;
      }
      return 1;
    case Node::Kind::Negate:
      return 3;
    default:
      return 5;  // atoms never need parentheses
  }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n.number);
      out += buf;
      return;
    }
    case Node::Kind::Variable:
      out += 'u';
      return;
    case Node::Kind::Negate:
      out += '-';
      print_child(*n.lhs, 3, out);
      return;
    case Node::Kind::Binary: {
      const int prec = precedence(n);
      const char* op = nullptr;
      switch (n.op) {
        case BinaryOp::Add:
          op = " + ";
          break;
        case BinaryOp::Sub:
          op = " - ";
          break;
        case BinaryOp::Mul:
          op = "*";
          break;
        case BinaryOp::Div:
          op = "/";
          break;
        case BinaryOp::Pow:
          op = "^";
          break;
      }
      if (n.op == BinaryOp::Pow) {
        // right-associative; the exponent slot also admits unary minus
        print_child(*n.lhs, prec + 1, out);
        out += op;
        print_child(*n.rhs, 3, out);
      } else {
        print_child(*n.lhs, prec, out);
        out += op;
        print_child(*n.rhs, prec + 1, out);
      }
      return;
    }
    case Node::Kind::Call: {
      switch (n.func) {
        case FuncId::Exp:
          out += "exp(";
          break;
        case FuncId::Log:
          out += "log(";
          break;
        case FuncId::Sqrt:
          out += "sqrt(";
          break;
        case FuncId::Abs:
          out += "abs(";
          break;
        case FuncId::Pow:
          out += "pow(";
          break;
      }
      print_node(*n.lhs, out);
      if (n.rhs) {
        out += ", ";
        print_node(*n.rhs, out);
      }
      out += ')';
      return;
    }
  }
}

bool nodes_equal(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::Number:
      return a->number == b->number;
    case Node::Kind::Variable:
      return true;
    case Node::Kind::Negate:
      return nodes_equal(a->lhs, b->lhs);
    case Node::Kind::Binary:
      return a->op == b->op && nodes_equal(a->lhs, b->lhs) &&
             nodes_equal(a->rhs, b->rhs);
    case Node::Kind::Call:
      return a->func == b->func && nodes_equal(a->lhs, b->lhs) &&
             nodes_equal(a->rhs, b->rhs);
  }
  return false;
}

}  // namespace

ExprAst ExprAst::parse(std::string_view text) {
  if (text.empty()) throw SyntaxError("empty expression", 0);
  return ExprAst(Parser(text).run());
}

double ExprAst::eval(double u) const { return eval_node(*root_, u); }

std::string ExprAst::str() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool ExprAst::structurally_equal(const ExprAst& other) const {
  return nodes_equal(root_, other.root_);
}

}  // namespace meanscale::expr
