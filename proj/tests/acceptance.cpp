// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "revzeta/config.hpp"
#include "revzeta/cylinder.hpp"
#include "revzeta/radial.hpp"
#include "revzeta/speczeta.hpp"
#include "revzeta/sweep.hpp"

using namespace revzeta;

namespace {

int failures = 0;

void report(int id, const char* what, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" threw: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ok) ++failures;
  std::printf("criterion %d %s: %s [%s] (%.1f s)\n", id, ok ? "PASS" : "FAIL", what, detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

// c-grid strictly inside (a + delta, b - delta).
std::vector<double> inner_grid(double a, double b, double delta, int n) {
  const double margin = 0.02 * (b - a);
  std::vector<double> out;
  const double lo = a + delta + margin, hi = b - delta - margin;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

RunConfig fig_a_config(double delta, int jobs) {
  RunConfig rc;
  rc.alpha = 1.0;
  rc.a = 0.0;
  rc.b = 1.0;
  rc.delta = delta;
  rc.c_grid = inner_grid(0.0, 1.0, delta, 9);
  rc.zeta.target_tol = 1e-6;
  rc.zeta.jobs = jobs;
  rc.validate();
  return rc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const ProfileSpec cyl = make_constant_profile(1.0, 0.0, 1.0);
  const ProfileSpec lin = make_expression_profile(parse_expr("1 + x/4"), 0.0, 1.0);
  const ProfileSpec ch = make_expression_profile(parse_expr("cosh(x - 0.5)"), 0.0, 1.0);

  report(1, "A1 residue cancellation", [&](std::string& d) {
    double worst = 0.0, worst_d = 0.0;
    const BumpSpec g = make_gaussian_bump(0.5, 0.2);
    for (const ProfileSpec* p : {&cyl, &lin, &ch}) {
      const ATerms t = a_terms_energy(*p);
      worst = std::max(worst, std::abs(t.A0.at(1).residue + t.Aneq.at(1).residue));
      const auto m = delta_a_terms(*p, g);
      worst_d = std::max(worst_d, std::abs(m.at("ResA0_1") + m.at("ResAneq_1")));
    }
    d = "max |sum| " + num(worst) + ", d/deps " + num(worst_d);
    return worst < 1e-10 && worst_d < 1e-10;
  });

  report(2, "closed forms vs radial ODE", [&](std::string& d) {
    const CylinderConfig cfg{1.0, 0.0, 1.0};
    double worst_x = 0.0;
    for (double lam : {0.1, 1.0, 10.0, 50.0})
      for (int k = 0; k <= 20; ++k) {
        const LogScaledValue x = solve_X(RadialProblem{cyl, static_cast<double>(k), lam});
        const double ref = k == 0 ? log_closed_X0(cfg, lam) : log_closed_Xk(cfg, k, lam / k);
        worst_x = std::max(worst_x, std::abs(std::expm1(x.log_magnitude - ref)));
      }
    const BumpSpec g = make_gaussian_bump(0.4, 0.2);
    double worst_r = 0.0;
    for (int k : {0, 2, 8})
      for (double s : {0.5, 2.0, 10.0}) {
        const double lam = k == 0 ? s : s * k;
        const double ode = solve_perturbation_ratio(RadialProblem{cyl, static_cast<double>(k), lam}, g).ratio;
        const double ref = k == 0 ? ratio0(cfg, g, s) : ratiok(cfg, g, k, s);
        worst_r = std::max(worst_r, std::abs(ode - ref) / std::abs(ref));
      }
    d = "X rel " + num(worst_x) + ", ratio rel " + num(worst_r);
    return worst_x < 1e-8 && worst_r < 1e-7;
  });

  report(3, "pipeline vs direct eigenvalue sum", [&](std::string& d) {
    double worst = 0.0;
    for (double L : {1.0, 2.0})
      for (int s : {2, 3}) {
        const CylinderConfig cfg{1.0, 0.0, L};
        const DirectZetaResult direct = eigenvalue_zeta_direct(cfg, s, 1e-9);
        const PipelineZetaResult pipe = zeta_pipeline_at_integer_s(cfg, s, 40);
        worst = std::max(worst, std::abs(pipe.value - direct.value));
      }
    d = "max abs diff " + num(worst);
    return worst < 1e-6;
  });

  report(4, "finite-difference oracle for delta E", [&](std::string& d) {
    const CylinderConfig cfg{1.0, 0.0, 1.0};
    const BumpSpec g = make_gaussian_bump(0.5, 0.3);
    SpecZetaOptions o;
    o.K_fixed = 30;
    o.lambda_max = 100.0;
    o.quad.abs_tol = o.quad.rel_tol = 1e-11;
    const FiniteDifferenceResult fd = finite_difference_energy_derivative(cfg, g, {1e-2, 5e-3, 2.5e-3}, o);
    const double de = delta_energy_cylinder(cfg, g).delta_E;
    const double rel = std::abs(fd.estimate - de) / std::abs(de);
    d = "dE " + num(de) + ", rel " + num(rel) + ", order " + num(fd.observed_order);
    return rel < 1e-3 && std::abs(fd.observed_order - 2.0) <= 0.2;
  });

  report(5, "(a) [0,1] negative, edge beats centre", [&](std::string& d) {
    bool ok = true;
    for (double delta : {0.3, 0.1}) {
      RunConfig rc = fig_a_config(delta, 1);
      const std::vector<SweepRow> rows = run_delta_sweep(rc);
      double worst = -1e300;
      for (const SweepRow& r : rows) worst = std::max(worst, r.delta_E);
      const double centre = energy_change_at(rc, 0.5).delta_E;
      const bool edge = std::abs(rows.front().delta_E) > std::abs(centre);
      d += "delta " + num(delta) + ": max " + num(worst) + ", |edge c=" + num(rows.front().c) + "| " +
           num(std::abs(rows.front().delta_E)) + " vs |centre| " + num(std::abs(centre)) + "; ";
      ok = ok && worst < 0.0 && edge;
    }
    return ok;
  });

  auto long_sweep = [](double L, double delta) {
    RunConfig rc;
    rc.b = L;
    rc.delta = delta;
    rc.c_grid = inner_grid(0.0, L / 2, delta, 12);
    rc.c_grid.front() = delta + 0.05;
    rc.c_grid.push_back(L / 2);
    rc.zeta.target_tol = 1e-6;
    rc.validate();
    return run_delta_sweep(rc);
  };

  report(5, "(b) [0,20] sign change", [&](std::string& d) {
    bool ok = true;
    for (double delta : {0.3, 0.1}) {
      const auto rows = long_sweep(20.0, delta);
      bool neg = false, pos = false;
      for (const SweepRow& r : rows) (r.delta_E < 0 ? neg : pos) = true;
      d += "delta " + num(delta) + ": first " + num(rows.front().delta_E) + ", middle " + num(rows.back().delta_E) +
           "; ";
      ok = ok && neg && pos;
    }
    return ok;
  });

  report(5, "(c) [0,100] positive in the middle", [&](std::string& d) {
    bool ok = true;
    for (double delta : {0.3, 0.1}) {
      const double e = delta_energy_cylinder({1.0, 0.0, 100.0}, make_gaussian_bump(50.0, delta)).delta_E;
      d += "delta " + num(delta) + ": dE(50) " + num(e) + "; ";
      ok = ok && e > 0.0;
    }
    return ok;
  });

  report(5, "(d) mixed bump odd about the centre", [&](std::string& d) {
    const CylinderConfig cfg{1.0, 0.0, 1.0};
    const double delta = 0.3;
    double peak = 0.0, asym = 0.0;
    for (double c : inner_grid(0.0, 1.0, delta, 7)) {
      const double e1 = delta_energy_cylinder(cfg, make_mixed_gaussian_bump(c, delta)).delta_E;
      const double e2 = delta_energy_cylinder(cfg, make_mixed_gaussian_bump(1.0 - c, delta)).delta_E;
      peak = std::max({peak, std::abs(e1), std::abs(e2)});
      asym = std::max(asym, std::abs(e1 + e2));
    }
    const double mid = delta_energy_cylinder(cfg, make_mixed_gaussian_bump(0.5, delta)).delta_E;
    d = "|dE(0.5)|/max " + num(std::abs(mid) / peak) + ", max |dE(c)+dE(1-c)| " + num(asym);
    return std::abs(mid) < 1e-6 * peak && asym < 1e-8;
  });

  report(6, "WKB subtraction decay", [&](std::string& d) {
    // Cylinder: the exact remainder is log(1 - exp(-2 lambda)), below double
    // rounding of log X for lambda >= 20, so it must stay within solver noise.
    // The slope is measured where the remainder is algebraic.
    const std::vector<double> lams = geometric(20.0, 200.0, 8);
    double cyl_worst = 0.0;
    for (double l : lams) cyl_worst = std::max(cyl_worst, std::abs(z0_subtracted_integrand(cyl, l)) / l);
    std::vector<double> z0, zk;
    for (double l : lams) {
      z0.push_back(z0_subtracted_integrand(ch, l));
      zk.push_back(zneq_subtracted_integrand(ch, 2.0, l));
    }
    const double s0 = loglog_slope(lams, z0), sk = loglog_slope(lams, zk);
    d = "cylinder |R|/lambda " + num(cyl_worst) + "; cosh profile slope Z0 " + num(s0) + ", k=2 in u " + num(sk);
    return cyl_worst < 1e-11 && s0 <= -2.7 && sk <= -2.7;
  });

  report(7, "consolidation identity", [&](std::string& d) {
    double worst = 0.0;
    for (const ProfileSpec* p : {&lin, &ch})
      for (double c : {0.5, 0.4}) {
        const BumpSpec g = make_gaussian_bump(c, 0.2);
        const auto m = delta_a_terms(*p, g);
        const ConsolidatedIntegrals ci = consolidated_integrals(*p, g);
        const double fin = m.at("A0_0") + m.at("Aneq_0") + m.at("A0_2") + m.at("FPAneq_2");
        worst = std::max({worst, std::abs(m.at("A0_-1") - ci.arclength), std::abs(m.at("Aneq_-1") - ci.zeta_prime),
                          std::abs(fin - ci.finite_part)});
      }
    d = "max family mismatch " + num(worst);
    return worst < 1e-8;
  });

  report(8, "sweep CSVs independent of worker count", [&](std::string& d) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "revzeta_acceptance";
    fs::create_directories(dir);
    bool same = true;
    for (double delta : {0.3, 0.1}) {
      const fs::path one = dir / "jobs1.csv", many = dir / "jobs4.csv";
      emit_csv(run_delta_sweep(fig_a_config(delta, 1)), one.string());
      emit_csv(run_delta_sweep(fig_a_config(delta, 4)), many.string());
      const std::string a = slurp(one), b = slurp(many);
      same = same && !a.empty() && a == b;
      d += "delta " + num(delta) + ": " + std::to_string(a.size()) + " bytes " + (a == b ? "identical" : "differ") +
           "; ";
    }
    return same;
  });

  std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
