#include "revzeta/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "revzeta/error.hpp"

namespace revzeta {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
    throw Error(ErrorKind::ConfigError, "quadrature tolerances must be positive");
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
};

Panel gk15(const RealFn& fn, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = fn(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = fn(c - dx) + fn(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  return {lo, hi, kron, std::abs(kron - gauss)};
}

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

[[noreturn]] void quad_fail(double lo, double hi, double value, double err, const QuadratureSpec& spec) {
  std::ostringstream os;
  os.precision(6);
  os << "subdivision limit " << spec.max_subdivisions << " reached on [" << lo << ", " << hi
     << "], value " << value << ", error " << err << " > tolerance max(" << spec.abs_tol << ", "
     << spec.rel_tol << "*|value|)";
  throw Error(ErrorKind::QuadratureFailure, os.str());
}

}  // namespace

QuadResult adaptive_quad(const RealFn& fn, double lo, double hi, const QuadratureSpec& spec) {
  const std::array<double, 2> pts = {lo, hi};
  return adaptive_quad(fn, pts, spec);
}

QuadResult adaptive_quad(const RealFn& fn, std::span<const double> points, const QuadratureSpec& spec) {
  spec.validate();
  if (points.size() < 2) throw Error(ErrorKind::ConfigError, "quadrature needs two limits");
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  double total = 0.0;
  double err = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    Panel p = gk15(fn, points[i], points[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
    ++panels;
  }
  if (panels == 0) return {0.0, 0.0};
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (panels >= spec.max_subdivisions) quad_fail(points.front(), points.back(), total, err, spec);
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gk15(fn, worst.lo, mid);
    const Panel right = gk15(fn, mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    if (!std::isfinite(total)) quad_fail(points.front(), points.back(), total, err, spec);
  }
  // Re-sum in positional order so the result does not carry the running
  // update's rounding history.
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  CompensatedSum v, e;
  for (const Panel& p : all) {
    v.add(p.value);
    e.add(p.error);
  }
  return {v.value(), e.value()};
}

namespace {

struct VecPanel {
  double lo, hi;
  std::vector<double> value, error;
  double key;
};

VecPanel gk15_vec(const VecFn& fn, int dim, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  std::vector<double> buf(dim), kron(dim), gauss(dim);
  fn(c, buf);
  for (int i = 0; i < dim; ++i) {
    kron[i] = buf[i] * kWgk[7];
    gauss[i] = buf[i] * kWg[3];
  }
  std::vector<double> buf2(dim);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fn(c - dx, buf);
    fn(c + dx, buf2);
    for (int i = 0; i < dim; ++i) {
      const double s = buf[i] + buf2[i];
      kron[i] += kWgk[j] * s;
      if (j % 2 == 1) gauss[i] += kWg[j / 2] * s;
    }
  }
  VecPanel p{lo, hi, std::vector<double>(dim), std::vector<double>(dim), 0.0};
  for (int i = 0; i < dim; ++i) {
    p.value[i] = kron[i] * h;
    p.error[i] = std::abs(kron[i] - gauss[i]) * h;
    p.key = std::max(p.key, p.error[i]);
  }
  return p;
}

}  // namespace

VecQuadResult adaptive_quad_vec(const VecFn& fn, int dim, std::span<const double> points,
                                const QuadratureSpec& spec) {
  spec.validate();
  auto cmp = [](const VecPanel& a, const VecPanel& b) { return a.key < b.key; };
  std::priority_queue<VecPanel, std::vector<VecPanel>, decltype(cmp)> heap(cmp);
  std::vector<double> total(dim, 0.0), err(dim, 0.0);
  int panels = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    VecPanel p = gk15_vec(fn, dim, points[i], points[i + 1]);
    for (int j = 0; j < dim; ++j) {
      total[j] += p.value[j];
      err[j] += p.error[j];
    }
    heap.push(std::move(p));
    ++panels;
  }
  auto converged = [&] {
    for (int j = 0; j < dim; ++j)
      if (err[j] > std::max(spec.abs_tol, spec.rel_tol * std::abs(total[j]))) return false;
    return true;
  };
  while (panels > 0 && !converged()) {
    if (panels >= spec.max_subdivisions) {
      double worst = 0.0;
      for (double e : err) worst = std::max(worst, e);
      quad_fail(points.front(), points.back(), total[0], worst, spec);
    }
    VecPanel w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.lo + w.hi);
    VecPanel l = gk15_vec(fn, dim, w.lo, mid);
    VecPanel r = gk15_vec(fn, dim, mid, w.hi);
    for (int j = 0; j < dim; ++j) {
      total[j] += l.value[j] + r.value[j] - w.value[j];
      err[j] += l.error[j] + r.error[j] - w.error[j];
    }
    heap.push(std::move(l));
    heap.push(std::move(r));
    ++panels;
  }
  std::vector<VecPanel> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const VecPanel& a, const VecPanel& b) { return a.lo < b.lo; });
  VecQuadResult out{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  for (int j = 0; j < dim; ++j) {
    CompensatedSum v, e;
    for (const VecPanel& p : all) {
      v.add(p.value[j]);
      e.add(p.error[j]);
    }
    out.value[j] = v.value();
    out.error[j] = e.value();
  }
  return out;
}

QuadResult improper_quad(const RealFn& fn, const QuadratureSpec& spec, const ImproperOptions& opts) {
  if (opts.check_decay) {
    double prev = std::numeric_limits<double>::infinity();
    for (double du : {1e3, 1e4, 1e5}) {
      const double v = std::abs(fn(opts.lo + du));
      if (!std::isfinite(v) || (v > prev) || (v == prev && v != 0.0)) {
        std::ostringstream os;
        os << "|f| not decreasing beyond u = " << opts.lo + 1e3;
        throw Error(ErrorKind::NonDecayDetected, os.str());
      }
      prev = v;
    }
  }
  const RealFn mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double u = opts.lo + opts.scale * t / one_minus;
    const double v = fn(u);
    if (v == 0.0) return 0.0;
    return v * opts.scale / (one_minus * one_minus);
  };
  return adaptive_quad(mapped, 0.0, 1.0, spec);
}

namespace {

struct GLRule {
  std::vector<double> x, w;
};

GLRule make_gl(int n) {
  GLRule r{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

const GLRule& gl_rule(int n) {
  static std::mutex mu;
  static std::map<int, GLRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

}  // namespace

double gauss_legendre(const RealFn& fn, double lo, double hi, int n) {
  const GLRule& r = gl_rule(n);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  CompensatedSum s;
  for (int i = 0; i < n; ++i) s.add(r.w[i] * fn(c + h * r.x[i]));
  return s.value() * h;
}

SeriesResult series_with_tail(const std::function<double(int)>& term,
                              const std::function<double(int)>& tail, const SeriesOptions& opts) {
  if (opts.K_cap < 1 || !(opts.target_tol > 0.0))
    throw Error(ErrorKind::ConfigError, "series needs K_cap >= 1 and a positive tolerance");
  CompensatedSum sum;
  double last_tail = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= opts.K_cap; ++k) {
    const double t = term(k);
    sum.add(t);
    const bool gate = std::abs(t) <= opts.gate * opts.target_tol;
    if (k >= opts.K_min && (gate || k == opts.K_cap)) {
      last_tail = tail(k);
      if (last_tail <= opts.target_tol) return {sum.value(), k, last_tail};
    }
  }
  std::ostringstream os;
  os << "tail bound " << last_tail << " above " << opts.target_tol << " at K_cap = " << opts.K_cap;
  throw Error(ErrorKind::TailBoundUnmet, os.str());
}

double tail_integral_estimate(const RealFn& h, double K, const TailOptions& opts) {
  double total = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  double lo = K;
  while (lo < K * opts.max_factor) {
    const double hi = 2.0 * lo;
    const double part = gauss_legendre([&](double kappa) { return std::abs(h(kappa)); }, lo, hi, 8);
    total += part;
    if (part <= opts.abs_floor) return total + opts.abs_floor;
    if (part <= opts.rel_stop * total || part == 0.0) {
      const double r = prev > 0.0 ? part / prev : 0.0;
      if (r < 1.0) return total + part * r / (1.0 - r);
    }
    prev = part;
    lo = hi;
  }
  return std::numeric_limits<double>::infinity();
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0)) throw Error(ErrorKind::ConfigError, "hurwitz_zeta needs s > 1, a > 0");
  constexpr int kN = 12;
  // B_{2j} / (2j)!
  constexpr std::array<double, 7> kB = {1.0 / 12.0,        -1.0 / 720.0,       1.0 / 30240.0,
                                        -1.0 / 1209600.0,  1.0 / 47900160.0,   -691.0 / 1307674368000.0,
                                        1.0 / 74724249600.0};
  CompensatedSum sum;
  for (int n = 0; n < kN; ++n) sum.add(std::pow(n + a, -s));
  const double x = kN + a;
  sum.add(std::pow(x, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(x, -s));
  double fac = s;  // s (s+1) ... (s + 2j - 2)
  double xp = std::pow(x, -s - 1.0);
  for (std::size_t j = 0; j < kB.size(); ++j) {
    sum.add(kB[j] * fac * xp);
    fac *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    xp /= x * x;
  }
  return sum.value();
}

}  // namespace revzeta
