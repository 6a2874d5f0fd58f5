#include "aplab/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace aplab {

struct Expr::Node {
  enum class Op {
    Const, Var, Add, Sub, Mul, Div, Pow, Neg,
    Exp, Sin, Cos, Abs, Sqrt, Floor, Sign, Re, Im,
    CmpLe, CmpLt, CmpGe, CmpGt, CmpEq
  };
  Op op;
  complexd value;  // Const
  int var = 0;     // Var (0-based)
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(complexd v) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Const;
  n->value = v;
  return n;
}

NodePtr make_node(Node::Op op, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at position " + std::to_string(pos) + ": " +
                                what);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip();
      if (eat('+'))
        lhs = make_node(Node::Op::Add, lhs, parse_term());
      else if (eat('-'))
        lhs = make_node(Node::Op::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip();
      if (eat('*'))
        lhs = make_node(Node::Op::Mul, lhs, parse_factor());
      else if (eat('/'))
        lhs = make_node(Node::Op::Div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    skip();
    if (eat('^')) return make_node(Node::Op::Pow, base, parse_factor());
    return base;
  }

  NodePtr parse_unary() {
    skip();
    if (eat('-')) return make_node(Node::Op::Neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_primary();
  }

  NodePtr parse_comparison_bracket() {
    NodePtr lhs = parse_expr();
    skip();
    Node::Op op;
    if (pos + 1 < s.size() && s[pos] == '<' && s[pos + 1] == '=') {
      op = Node::Op::CmpLe;
      pos += 2;
    } else if (pos + 1 < s.size() && s[pos] == '>' && s[pos + 1] == '=') {
      op = Node::Op::CmpGe;
      pos += 2;
    } else if (pos + 1 < s.size() && s[pos] == '=' && s[pos + 1] == '=') {
      op = Node::Op::CmpEq;
      pos += 2;
    } else if (pos < s.size() && s[pos] == '<') {
      op = Node::Op::CmpLt;
      ++pos;
    } else if (pos < s.size() && s[pos] == '>') {
      op = Node::Op::CmpGt;
      ++pos;
    } else {
      fail("expected comparison inside [...]");
    }
    NodePtr rhs = parse_expr();
    if (!eat(']')) fail("expected ]");
    return make_node(op, lhs, rhs);
  }

  NodePtr parse_primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = parse_expr();
      if (!eat(')')) fail("expected )");
      return e;
    }
    if (c == '[') {
      ++pos;
      return parse_comparison_bracket();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = pos;
      while (end < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' || s[end] == 'e' ||
              s[end] == 'E' || ((s[end] == '+' || s[end] == '-') && (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      const double v = std::stod(s.substr(pos, end - pos));
      pos = end;
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos;
      while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])))) ++end;
      const std::string name = s.substr(pos, end - pos);
      pos = end;
      if (name == "i") return make_const(complexd(0, 1));
      if (name == "pi") return make_const(std::numbers::pi);
      if (name.size() == 2 && name[0] == 't' && name[1] >= '1' && name[1] <= '4') {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::Var;
        n->var = name[1] - '1';
        return n;
      }
      static const std::vector<std::pair<std::string, Node::Op>> funcs = {
          {"exp", Node::Op::Exp},     {"sin", Node::Op::Sin},   {"cos", Node::Op::Cos},
          {"abs", Node::Op::Abs},     {"sqrt", Node::Op::Sqrt}, {"floor", Node::Op::Floor},
          {"sign", Node::Op::Sign},   {"re", Node::Op::Re},     {"im", Node::Op::Im}};
      for (const auto& [fname, op] : funcs) {
        if (name == fname) {
          if (!eat('(')) fail("expected ( after " + name);
          NodePtr arg = parse_expr();
          if (!eat(')')) fail("expected )");
          return make_node(op, arg);
        }
      }
      fail("unknown identifier: " + name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

complexd eval_node(const Node& n, const Pt& t) {
  using Op = Node::Op;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var:
      if (n.var >= t.size()) throw std::invalid_argument("expression uses t" + std::to_string(n.var + 1) + " beyond the domain dimension");
      return t[n.var];
    case Op::Add: return eval_node(*n.a, t) + eval_node(*n.b, t);
    case Op::Sub: return eval_node(*n.a, t) - eval_node(*n.b, t);
    case Op::Mul: return eval_node(*n.a, t) * eval_node(*n.b, t);
    case Op::Div: return eval_node(*n.a, t) / eval_node(*n.b, t);
    case Op::Pow: return std::pow(eval_node(*n.a, t), eval_node(*n.b, t));
    case Op::Neg: return -eval_node(*n.a, t);
    case Op::Exp: return std::exp(eval_node(*n.a, t));
    case Op::Sin: return std::sin(eval_node(*n.a, t));
    case Op::Cos: return std::cos(eval_node(*n.a, t));
    case Op::Abs: return std::abs(eval_node(*n.a, t));
    case Op::Sqrt: return std::sqrt(eval_node(*n.a, t));
    case Op::Floor: return std::floor(eval_node(*n.a, t).real());
    case Op::Sign: {
      const double x = eval_node(*n.a, t).real();
      return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
    }
    case Op::Re: return eval_node(*n.a, t).real();
    case Op::Im: return eval_node(*n.a, t).imag();
    case Op::CmpLe: return eval_node(*n.a, t).real() <= eval_node(*n.b, t).real() ? 1.0 : 0.0;
    case Op::CmpLt: return eval_node(*n.a, t).real() < eval_node(*n.b, t).real() ? 1.0 : 0.0;
    case Op::CmpGe: return eval_node(*n.a, t).real() >= eval_node(*n.b, t).real() ? 1.0 : 0.0;
    case Op::CmpGt: return eval_node(*n.a, t).real() > eval_node(*n.b, t).real() ? 1.0 : 0.0;
    default: return eval_node(*n.a, t).real() == eval_node(*n.b, t).real() ? 1.0 : 0.0;
  }
}

int max_var_node(const Node& n) {
  int m = n.op == Node::Op::Var ? n.var + 1 : 0;
  if (n.a) m = std::max(m, max_var_node(*n.a));
  if (n.b) m = std::max(m, max_var_node(*n.b));
  return m;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p(text);
  Expr e;
  e.root_ = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  e.text_ = text;
  return e;
}

complexd Expr::evaluate(const Pt& t) const { return eval_node(*root_, t); }

int Expr::max_variable() const { return max_var_node(*root_); }

Field expr_field(const Expr& e, const Domain& dom) {
  if (e.max_variable() > dom.dimension())
    throw std::invalid_argument("expression uses more variables than the domain dimension");
  Field f;
  f.domain = dom;
  Expr copy = e;
  f.eval = [copy](const Pt& t, const Pt&) { return CVal(copy.evaluate(t)); };
  return f;
}

}  // namespace aplab
