#pragma once

// Small immutable expression trees in one real variable x.
//
// Profiles and bumps are built from these so that every derivative the
// pipeline needs is exact: symbolically via derivative(), or to any order
// at a point by evaluating on Jet<T>.

#include <cmath>
#include <memory>
#include <string>
#include <string_view>

#include "revzeta/jet.hpp"

namespace revzeta {

class Expr {
 public:
  enum class Op {
    Const, Var, Add, Sub, Mul, Div, Neg, Pow,
    Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt,
    Cutoff,  // body on the open interval (lo, hi), zero elsewhere
  };

  Expr() : Expr(constant(0.0)) {}
  static Expr constant(double value);
  static Expr variable();
  /// Restricts `body` to the open interval (lo, hi). Non-finite values of
  /// the body (0 * inf at the edges of a smooth bump) evaluate to zero.
  static Expr cutoff(double lo, double hi, const Expr& body);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, const Expr& exponent);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sinh(const Expr& a);
  friend Expr cosh(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sqrt(const Expr& a);

  Expr derivative() const;

  bool is_constant() const { return node_->op == Op::Const; }
  /// Meaningful only when is_constant().
  double constant_value() const { return node_->value; }

  double operator()(double x) const { return eval(x); }

  template <class T>
  T eval(const T& x) const { return eval_node(*node_, x); }

  std::string to_string() const;

 private:
  struct Node {
    Op op = Op::Const;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, const Expr& a, const Expr& b = Expr(nullptr));
  Expr child(int i) const { return Expr(i == 0 ? node_->a : node_->b); }

  template <class T>
  static T eval_node(const Node& n, const T& x);

  std::shared_ptr<const Node> node_;
};

/// Parses +, -, *, /, ^, unary minus, parentheses, numbers, x, pi, e and
/// the functions sin cos sinh cosh exp log sqrt. Throws Error(ConfigError).
Expr parse_expr(std::string_view text);

namespace detail {

inline double primal(double x) { return x; }
inline double primal(const Dual& x) { return x.v; }
template <class T> double primal(const Jet<T>& x) { return primal(x.value()); }

inline double constant_like(double, double v) { return v; }
inline Dual constant_like(const Dual&, double v) { return Dual(v); }
template <class T> Jet<T> constant_like(const Jet<T>& like, double v) {
  return Jet<T>(like.order(), T(v));
}

inline Dual pow_const(const Dual& a, double c) { return pow(a, c); }
inline double pow_const(double a, double c) { return std::pow(a, c); }
template <class T> Jet<T> pow_const(const Jet<T>& a, double c) { return pow(a, c); }

inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const Dual& x) { return isfinite(x); }
template <class T> bool finite(const Jet<T>& x) { return x.all_finite(); }

}  // namespace detail

template <class T>
T Expr::eval_node(const Node& n, const T& x) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  switch (n.op) {
    case Op::Const: return detail::constant_like(x, n.value);
    case Op::Var: return x;
    case Op::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Op::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Op::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Op::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Op::Neg: return -eval_node(*n.a, x);
    case Op::Pow:
      if (n.b->op == Op::Const) return detail::pow_const(eval_node(*n.a, x), n.b->value);
      return exp(eval_node(*n.b, x) * log(eval_node(*n.a, x)));
    case Op::Sin: return sin(eval_node(*n.a, x));
    case Op::Cos: return cos(eval_node(*n.a, x));
    case Op::Sinh: return sinh(eval_node(*n.a, x));
    case Op::Cosh: return cosh(eval_node(*n.a, x));
    case Op::Exp: return exp(eval_node(*n.a, x));
    case Op::Log: return log(eval_node(*n.a, x));
    case Op::Sqrt: return sqrt(eval_node(*n.a, x));
    case Op::Cutoff: {
      const double p = detail::primal(x);
      if (!(p > n.lo && p < n.hi)) return detail::constant_like(x, 0.0);
      T r = eval_node(*n.a, x);
      if (!detail::finite(r)) return detail::constant_like(x, 0.0);
      return r;
    }
  }
  return detail::constant_like(x, 0.0);
}

}  // namespace revzeta
