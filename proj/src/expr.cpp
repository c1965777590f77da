#include "dislo/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "dislo/error.hpp"

namespace dislo {

namespace {

enum class Op {
  kConst,
  kVarY1,
  kVarY2,
  kVarY3,
  kVarT,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kSin,
  kCos,
  kExp,
  kSqrt,
};

}  // namespace

struct Expr::Node {
  Op op = Op::kConst;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(const Vec3& y, double t) const {
    switch (op) {
      case Op::kConst: return value;
      case Op::kVarY1: return y[0];
      case Op::kVarY2: return y[1];
      case Op::kVarY3: return y[2];
      case Op::kVarT: return t;
      case Op::kAdd: return lhs->eval(y, t) + rhs->eval(y, t);
      case Op::kSub: return lhs->eval(y, t) - rhs->eval(y, t);
      case Op::kMul: return lhs->eval(y, t) * rhs->eval(y, t);
      case Op::kDiv: return lhs->eval(y, t) / rhs->eval(y, t);
      case Op::kPow: return std::pow(lhs->eval(y, t), rhs->eval(y, t));
      case Op::kNeg: return -lhs->eval(y, t);
      case Op::kSin: return std::sin(lhs->eval(y, t));
      case Op::kCos: return std::cos(lhs->eval(y, t));
      case Op::kExp: return std::exp(lhs->eval(y, t));
      case Op::kSqrt: return std::sqrt(lhs->eval(y, t));
    }
    throw Error("corrupt expression node");
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr,
                  double value = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->value = value;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = sum();
    skip_ws();
    if (pos_ != s_.size())
      fail("unexpected trailing input '" + std::string(s_.substr(pos_)) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr sum() {
    NodePtr e = term();
    for (;;) {
      if (accept('+'))
        e = make_node(Op::kAdd, e, term());
      else if (accept('-'))
        e = make_node(Op::kSub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (accept('*'))
        e = make_node(Op::kMul, e, factor());
      else if (accept('/'))
        e = make_node(Op::kDiv, e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_node(Op::kNeg, factor());
    NodePtr base = primary();
    if (accept('^')) return make_node(Op::kPow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = sum();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t end = pos_;
    while (end < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
            s_[end] == 'e' || s_[end] == 'E' ||
            ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
             (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    const std::string tok(s_.substr(pos_, end - pos_));
    try {
      const double v = std::stod(tok);
      pos_ = end;
      return make_node(Op::kConst, nullptr, nullptr, v);
    } catch (const std::exception&) {
      fail("bad number '" + tok + "'");
    }
  }

  NodePtr identifier() {
    std::size_t end = pos_;
    while (end < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      ++end;
    const std::string name(s_.substr(pos_, end - pos_));
    pos_ = end;
    if (name == "y1") return make_node(Op::kVarY1);
    if (name == "y2") return make_node(Op::kVarY2);
    if (name == "y3") return make_node(Op::kVarY3);
    if (name == "t") return make_node(Op::kVarT);
    if (name == "pi") return make_node(Op::kConst, nullptr, nullptr, M_PI);
    Op fn;
    if (name == "sin")
      fn = Op::kSin;
    else if (name == "cos")
      fn = Op::kCos;
    else if (name == "exp")
      fn = Op::kExp;
    else if (name == "sqrt")
      fn = Op::kSqrt;
    else
      fail("unknown identifier '" + name + "'");
    if (!accept('(')) fail("expected '(' after '" + name + "'");
    NodePtr arg = sum();
    if (!accept(')')) fail("missing ')' after argument of '" + name + "'");
    return make_node(fn, arg);
  }
};

}  // namespace

Expr::Expr() = default;
Expr::Expr(const Expr&) = default;
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(const Expr&) = default;
Expr& Expr::operator=(Expr&&) noexcept = default;
Expr::~Expr() = default;

Expr Expr::parse(std::string_view text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

double Expr::eval(const Vec3& y, double t) const {
  if (!root_) throw Error("evaluating empty expression");
  return root_->eval(y, t);
}

}  // namespace dislo
