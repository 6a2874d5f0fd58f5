#ifndef APLAB_EXPR_HPP
#define APLAB_EXPR_HPP

#include <memory>
#include <string>

#include "aplab/core.hpp"

// Tiny complex-valued expression grammar over t1..t4 for the command line:
// +, -, *, /, ^, exp, sin, cos, abs, sqrt, floor, sign, re, im, the constants
// i and pi, and Iverson brackets [a <= b] for indicators / piecewise pieces.

namespace aplab {

class Expr {
 public:
  static Expr parse(const std::string& text);  // throws std::invalid_argument

  complexd evaluate(const Pt& t) const;
  int max_variable() const;  // highest t-index used (1-based), 0 when constant
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// Field backed by a parsed expression on the given domain.
Field expr_field(const Expr& e, const Domain& dom);

}  // namespace aplab

#endif  // APLAB_EXPR_HPP
