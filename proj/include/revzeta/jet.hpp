#pragma once

// Forward-mode differentiation types.
//
// Dual carries a value and its first derivative with respect to the
// perturbation amplitude. Jet<T> carries truncated Taylor coefficients in x,
// c[j] = f^(j)(x0) / j!, with scalar type T (double or Dual), so that
// Jet<Dual> tracks x-derivatives and the epsilon-derivative at once.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>

namespace revzeta {

struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit promotion
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    const double q = v / o.v;
    d = (d - q * o.d) / o.v;
    v = q;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

inline Dual exp(const Dual& a) { const double e = std::exp(a.v); return {e, e * a.d}; }
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sqrt(const Dual& a) { const double s = std::sqrt(a.v); return {s, a.d / (2.0 * s)}; }
inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sinh(const Dual& a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Dual cosh(const Dual& a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }
inline Dual pow(const Dual& a, double c) {
  const double p = std::pow(a.v, c);
  return {p, c == 0.0 ? 0.0 : c * std::pow(a.v, c - 1.0) * a.d};
}
inline bool isfinite(const Dual& a) { return std::isfinite(a.v) && std::isfinite(a.d); }

template <class T>
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;
  explicit Jet(int order) : order_(order) { assert(order >= 0 && order <= kMaxOrder); }
  Jet(int order, T value) : Jet(order) { c_[0] = value; }

  /// Independent variable x expanded about x0.
  static Jet variable(int order, T x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = T(1.0);
    return j;
  }

  int order() const { return order_; }
  const T& operator[](int i) const { return c_[i]; }
  T& operator[](int i) { return c_[i]; }
  const T& value() const { return c_[0]; }

  /// i-th derivative (not the Taylor coefficient).
  T derivative_value(int i) const {
    double fact = 1.0;
    for (int j = 2; j <= i; ++j) fact *= j;
    return c_[i] * T(fact);
  }

  /// d/dx of the truncated series; loses one order.
  Jet derivative() const {
    assert(order_ >= 1);
    Jet r(order_ - 1);
    for (int j = 0; j < order_; ++j) r.c_[j] = c_[j + 1] * T(double(j + 1));
    return r;
  }

  Jet truncated(int order) const {
    Jet r(std::min(order, order_));
    for (int j = 0; j <= r.order_; ++j) r.c_[j] = c_[j];
    return r;
  }

  bool all_finite() const {
    using std::isfinite;
    for (int j = 0; j <= order_; ++j)
      if (!isfinite(c_[j])) return false;
    return true;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int j = 0; j <= order_; ++j) c_[j] += o.c_[j];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int j = 0; j <= order_; ++j) c_[j] -= o.c_[j];
    return *this;
  }

 private:
  int order_ = 0;
  std::array<T, kMaxOrder + 1> c_{};
};

template <class T> Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <class T> Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <class T> Jet<T> operator-(const Jet<T>& a) {
  Jet<T> r(a.order());
  for (int j = 0; j <= a.order(); ++j) r[j] = -a[j];
  return r;
}
template <class T> Jet<T> operator+(Jet<T> a, const T& s) { a[0] += s; return a; }
template <class T> Jet<T> operator+(const T& s, Jet<T> a) { a[0] += s; return a; }
template <class T> Jet<T> operator-(Jet<T> a, const T& s) { a[0] -= s; return a; }
template <class T> Jet<T> operator-(const T& s, const Jet<T>& a) { return (-a) + s; }
template <class T> Jet<T> operator*(Jet<T> a, const T& s) {
  for (int j = 0; j <= a.order(); ++j) a[j] *= s;
  return a;
}
template <class T> Jet<T> operator*(const T& s, Jet<T> a) { return a * s; }
template <class T> Jet<T> operator/(Jet<T> a, const T& s) {
  for (int j = 0; j <= a.order(); ++j) a[j] /= s;
  return a;
}

template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    T acc(0.0);
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(std::min(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    T acc = a[k];
    for (int j = 0; j < k; ++j) acc -= r[j] * b[k - j];
    r[k] = acc / b[0];
  }
  return r;
}

template <class T> Jet<T> operator/(const T& s, const Jet<T>& b) {
  return Jet<T>(b.order(), s) / b;
}

template <class T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  Jet<T> r(a.order());
  r[0] = exp(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T acc(0.0);
    for (int j = 1; j <= k; ++j) acc += T(double(j)) * a[j] * r[k - j];
    r[k] = acc / T(double(k));
  }
  return r;
}

template <class T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  Jet<T> r(a.order());
  r[0] = log(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T acc(0.0);
    for (int j = 1; j < k; ++j) acc += T(double(j)) * r[j] * a[k - j];
    r[k] = (a[k] - acc / T(double(k))) / a[0];
  }
  return r;
}

namespace detail {
template <class T>
Jet<T> ipow(Jet<T> base, int n) {
  Jet<T> r(base.order(), T(1.0));
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}
}  // namespace detail

/// a^c for constant c. Small integer exponents use repeated products so a
/// zero base is handled exactly.
template <class T>
Jet<T> pow(const Jet<T>& a, double c) {
  using std::pow;
  if (c == std::floor(c) && std::abs(c) <= 16.0) {
    const int n = static_cast<int>(c);
    if (n >= 0) return detail::ipow(a, n);
    return T(1.0) / detail::ipow(a, -n);
  }
  Jet<T> r(a.order());
  r[0] = pow(a[0], c);
  for (int k = 1; k <= a.order(); ++k) {
    T acc(0.0);
    for (int j = 1; j <= k; ++j)
      acc += T((c + 1.0) * j - k) * a[j] * r[k - j];
    r[k] = acc / (T(double(k)) * a[0]);
  }
  return r;
}

template <class T> Jet<T> sqrt(const Jet<T>& a) { return pow(a, 0.5); }

namespace detail {
// Paired recurrences: (sin, cos) when sign = -1, (sinh, cosh) when sign = +1.
template <class T>
void trig_pair(const Jet<T>& a, Jet<T>& s, Jet<T>& c, double sign) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  s = Jet<T>(a.order());
  c = Jet<T>(a.order());
  if (sign < 0) {
    s[0] = sin(a[0]);
    c[0] = cos(a[0]);
  } else {
    s[0] = sinh(a[0]);
    c[0] = cosh(a[0]);
  }
  for (int k = 1; k <= a.order(); ++k) {
    T as(0.0), ac(0.0);
    for (int j = 1; j <= k; ++j) {
      as += T(double(j)) * a[j] * c[k - j];
      ac += T(double(j)) * a[j] * s[k - j];
    }
    s[k] = as / T(double(k));
    c[k] = T(sign) * ac / T(double(k));
  }
}
}  // namespace detail

template <class T> Jet<T> sin(const Jet<T>& a) { Jet<T> s, c; detail::trig_pair(a, s, c, -1.0); return s; }
template <class T> Jet<T> cos(const Jet<T>& a) { Jet<T> s, c; detail::trig_pair(a, s, c, -1.0); return c; }
template <class T> Jet<T> sinh(const Jet<T>& a) { Jet<T> s, c; detail::trig_pair(a, s, c, 1.0); return s; }
template <class T> Jet<T> cosh(const Jet<T>& a) { Jet<T> s, c; detail::trig_pair(a, s, c, 1.0); return c; }

template <class T> bool isfinite(const Jet<T>& a) { return a.all_finite(); }

}  // namespace revzeta
