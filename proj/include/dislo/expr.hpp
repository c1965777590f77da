#ifndef DISLO_EXPR_HPP_
#define DISLO_EXPR_HPP_

#include <memory>
#include <string>
#include <string_view>

#include "dislo/linalg3.hpp"

namespace dislo {

// Small arithmetic expression grammar for scenario configuration:
// +, -, *, /, ^ (power), sin, cos, exp, sqrt of the chart coordinates
// y1, y2, y3 and the time variable t.
class Expr {
 public:
  static Expr parse(std::string_view text);

  double eval(const Vec3& y, double t = 0.0) const;
  const std::string& text() const { return text_; }

  Expr();
  Expr(const Expr&);
  Expr(Expr&&) noexcept;
  Expr& operator=(const Expr&);
  Expr& operator=(Expr&&) noexcept;
  ~Expr();

  struct Node;  // opaque AST node, defined in the implementation file

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace dislo

#endif  // DISLO_EXPR_HPP_
