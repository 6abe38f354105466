#include "revzeta/expr.hpp"

#include <cctype>
#include <numbers>
#include <sstream>

#include "revzeta/error.hpp"

namespace revzeta {

namespace {

bool is_const(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

}  // namespace

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  return Expr(std::move(n));
}

Expr Expr::cutoff(double lo, double hi, const Expr& body) {
  if (body.is_constant() && body.constant_value() == 0.0) return body;
  auto n = std::make_shared<Node>();
  n->op = Op::Cutoff;
  n->lo = lo;
  n->hi = hi;
  n->a = body.node_;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, const Expr& a, const Expr& b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return -b;
  return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return -b;
  if (is_const(b, -1.0)) return -a;
  return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() / b.constant_value());
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.node_->op == Expr::Op::Neg) return a.child(0);
  return Expr::make(Expr::Op::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (base.is_constant() && exponent.is_constant())
    return Expr::constant(std::pow(base.constant_value(), exponent.constant_value()));
  if (is_const(exponent, 0.0)) return Expr::constant(1.0);
  if (is_const(exponent, 1.0)) return base;
  return Expr::make(Expr::Op::Pow, base, exponent);
}

#define REVZETA_UNARY(name, op)                                                  \
  Expr name(const Expr& a) {                                                     \
    if (a.is_constant()) return Expr::constant(std::name(a.constant_value()));   \
    return Expr::make(Expr::Op::op, a);                                          \
  }
REVZETA_UNARY(sin, Sin)
REVZETA_UNARY(cos, Cos)
REVZETA_UNARY(sinh, Sinh)
REVZETA_UNARY(cosh, Cosh)
REVZETA_UNARY(exp, Exp)
REVZETA_UNARY(log, Log)
REVZETA_UNARY(sqrt, Sqrt)
#undef REVZETA_UNARY

Expr Expr::derivative() const {
  const Expr a = node_->a ? child(0) : Expr::constant(0.0);
  const Expr b = node_->b ? child(1) : Expr::constant(0.0);
  switch (node_->op) {
    case Op::Const: return constant(0.0);
    case Op::Var: return constant(1.0);
    case Op::Add: return a.derivative() + b.derivative();
    case Op::Sub: return a.derivative() - b.derivative();
    case Op::Mul: return a.derivative() * b + a * b.derivative();
    case Op::Div: return (a.derivative() * b - a * b.derivative()) / (b * b);
    case Op::Neg: return -a.derivative();
    case Op::Pow:
      if (b.is_constant()) {
        const double c = b.constant_value();
        return constant(c) * pow(a, constant(c - 1.0)) * a.derivative();
      }
      return *this * (b.derivative() * log(a) + b * a.derivative() / a);
    case Op::Sin: return cos(a) * a.derivative();
    case Op::Cos: return -(sin(a) * a.derivative());
    case Op::Sinh: return cosh(a) * a.derivative();
    case Op::Cosh: return sinh(a) * a.derivative();
    case Op::Exp: return *this * a.derivative();
    case Op::Log: return a.derivative() / a;
    case Op::Sqrt: return a.derivative() / (constant(2.0) * *this);
    case Op::Cutoff: return cutoff(node_->lo, node_->hi, a.derivative());
  }
  return constant(0.0);
}

std::string Expr::to_string() const {
  std::ostringstream os;
  os.precision(17);
  const auto bin = [&](const char* sym) {
    os << '(' << child(0).to_string() << ' ' << sym << ' ' << child(1).to_string() << ')';
  };
  const auto fn = [&](const char* name) { os << name << '(' << child(0).to_string() << ')'; };
  switch (node_->op) {
    case Op::Const: os << node_->value; break;
    case Op::Var: os << 'x'; break;
    case Op::Add: bin("+"); break;
    case Op::Sub: bin("-"); break;
    case Op::Mul: bin("*"); break;
    case Op::Div: bin("/"); break;
    case Op::Pow: bin("^"); break;
    case Op::Neg: os << "(-" << child(0).to_string() << ')'; break;
    case Op::Sin: fn("sin"); break;
    case Op::Cos: fn("cos"); break;
    case Op::Sinh: fn("sinh"); break;
    case Op::Cosh: fn("cosh"); break;
    case Op::Exp: fn("exp"); break;
    case Op::Log: fn("log"); break;
    case Op::Sqrt: fn("sqrt"); break;
    case Op::Cutoff:
      os << "cutoff[" << node_->lo << ',' << node_->hi << "](" << child(0).to_string() << ')';
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'x' | 'pi' | 'e' | name '(' expr ')' | '(' expr ')'

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ConfigError,
                "expression '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = lhs * unary();
      else if (accept('/')) lhs = lhs / unary();
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, unary());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "x") return Expr::variable();
      if (name == "pi") return Expr::constant(std::numbers::pi);
      if (name == "e") return Expr::constant(std::numbers::e);
      if (!accept('(')) fail("expected '(' after function name");
      Expr arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (name == "sin") return sin(arg);
      if (name == "cos") return cos(arg);
      if (name == "sinh") return sinh(arg);
      if (name == "cosh") return cosh(arg);
      if (name == "exp") return exp(arg);
      if (name == "log") return log(arg);
      if (name == "sqrt") return sqrt(arg);
      fail("unknown function '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    const std::string rest(s_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return Expr::constant(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace revzeta
