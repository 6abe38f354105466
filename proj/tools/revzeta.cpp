// revzeta: spectral zeta quantities of Dirichlet Laplacians on surfaces of
// revolution, driven by a key = value config.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revzeta/config.hpp"
#include "revzeta/cylinder.hpp"
#include "revzeta/error.hpp"
#include "revzeta/profile.hpp"
#include "revzeta/speczeta.hpp"
#include "revzeta/sweep.hpp"

using namespace revzeta;

namespace {

int verbosity = 0;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigError:
    case ErrorKind::PositivityViolation:
      return 2;
    case ErrorKind::IoError:
      return 4;
    default:
      return 3;
  }
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in CSVs
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes `text` to `path`, or to stdout when path is empty.
void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void log_decomposition(const ZetaDecomposition& d) {
  if (verbosity < 1) return;
  for (const auto& [i, t] : d.a_terms.A0)
    std::cerr << "  A0[" << i << "] finite " << fmt(t.finite_part) << " residue " << fmt(t.residue) << "\n";
  for (const auto& [i, t] : d.a_terms.Aneq)
    std::cerr << "  Aneq[" << i << "] finite " << fmt(t.finite_part) << " residue " << fmt(t.residue) << "\n";
  std::cerr << "  Z0 " << fmt(d.Z0) << "\n  Zneq " << fmt(d.Zneq) << " (K = " << d.K_used
            << ", tail " << fmt(d.tail_bound) << ")\n";
  for (const auto& [name, e] : d.error_budget) std::cerr << "  error " << name << " " << fmt(e) << "\n";
}

std::string decomposition_csv(const ZetaDecomposition& d, const std::vector<std::pair<std::string, double>>& head) {
  std::string s = "term,value\n";
  for (const auto& [k, v] : head) s += k + "," + fmt(v) + "\n";
  for (const auto& [i, t] : d.a_terms.A0) {
    s += "A0[" + std::to_string(i) + "]," + fmt(t.finite_part) + "\n";
    if (t.residue != 0.0) s += "ResA0[" + std::to_string(i) + "]," + fmt(t.residue) + "\n";
  }
  for (const auto& [i, t] : d.a_terms.Aneq) {
    s += "Aneq[" + std::to_string(i) + "]," + fmt(t.finite_part) + "\n";
    if (t.residue != 0.0) s += "ResAneq[" + std::to_string(i) + "]," + fmt(t.residue) + "\n";
  }
  s += "Z0," + fmt(d.Z0) + "\nZneq," + fmt(d.Zneq) + "\nK_used," + std::to_string(d.K_used) + "\n";
  return s;
}

int cmd_validate(const RunConfig& rc) {
  const ProfileSpec p = rc.profile();
  const ProfileReport pr = validate_profile(p);
  std::cerr << pr.summary() << "\n";
  if (!pr.positive) {
    std::ostringstream os;
    os << "profile not positive (min f = " << pr.min_f << ")";
    throw Error(ErrorKind::PositivityViolation, os.str());
  }
  if (!pr.ok()) throw Error(ErrorKind::ConfigError, "derivative expressions inconsistent with f");
  double eps_max = 0.0;
  for (double e : rc.epsilon_grid) eps_max = std::max(eps_max, std::abs(e));
  for (double c : rc.c_grid) {
    const BumpSpec bump = rc.bump(c);
    const BumpReport br = validate_bump(bump, rc.a, rc.b);
    if (!br.ok())
      throw Error(ErrorKind::ConfigError, "bump at c = " + fmt(c) + " does not vanish at its edges (max " +
                                              fmt(br.max_edge_value) + ")");
    perturbed_profile(p, bump, eps_max);
    perturbed_profile(p, bump, -eps_max);
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_determinant(const RunConfig& rc) {
  const ZetaDecomposition d = functional_determinant(rc.profile(), rc.zeta);
  log_decomposition(d);
  write_out(rc.output_path,
            decomposition_csv(d, {{"zeta_prime_0", d.value()}, {"log_det", -d.value()}}));
  return 0;
}

int cmd_energy(const RunConfig& rc) {
  const ZetaDecomposition d = casimir_energy(rc.profile(), rc.zeta);
  log_decomposition(d);
  if (std::abs(d.residue()) > 1e-10)
    std::cerr << "warning: residue " << fmt(d.residue()) << " is not zero; the energy is not finite\n";
  write_out(rc.output_path, decomposition_csv(d, {{"energy", d.value()}, {"residue", d.residue()}}));
  return 0;
}

int cmd_sweep(const RunConfig& rc) {
  const std::vector<SweepRow> rows = run_delta_sweep(rc);
  if (verbosity >= 1) {
    // Per-term ledger for the first grid point.
    const EnergyChangeResult r = energy_change_at(rc, rc.c_grid.front());
    std::cerr << "  terms at c = " << fmt(rc.c_grid.front()) << "\n";
    for (const auto& [name, v] : r.term_breakdown) std::cerr << "    " << name << " " << fmt(v) << "\n";
  }
  if (rc.output_path.empty()) {
    std::cout << format_csv(rows);
    return 0;
  }
  emit_csv(rows, rc.output_path);
  if (rc.gnuplot) write_out(rc.output_path + ".gp", gnuplot_script(rc.output_path));
  return 0;
}

int cmd_oracle(const RunConfig& rc) {
  if (!rc.is_cylinder()) throw Error(ErrorKind::ConfigError, "oracle-compare needs a constant profile");
  const CylinderConfig cyl = rc.cylinder();
  const DirectZetaResult direct = eigenvalue_zeta_direct(cyl, rc.oracle_s, 1e-8, 0, 0, rc.zeta.jobs);
  const PipelineZetaResult pipe = zeta_pipeline_at_integer_s(cyl, rc.oracle_s, rc.oracle_K, rc.zeta.ode, rc.zeta.jobs);
  const double diff = std::abs(pipe.value - direct.value);
  std::string s = "quantity,value\n";
  s += "s," + std::to_string(rc.oracle_s) + "\n";
  s += "direct," + fmt(direct.value) + "\n";
  s += "direct_error_bound," + fmt(direct.error_bound) + "\n";
  s += "pipeline," + fmt(pipe.value) + "\n";
  s += "pipeline_tail," + fmt(pipe.tail) + "\n";
  s += "abs_difference," + fmt(diff) + "\n";
  write_out(rc.output_path, s);
  if (!(diff < rc.oracle_tol)) {
    std::cerr << "oracle mismatch " << fmt(diff) << " above " << fmt(rc.oracle_tol) << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral zeta functions on surfaces of revolution"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  int jobs = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--set", sets, "override key=value (repeatable)");
    sub->add_option("--out", out_path, "output path");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", verbosity, "per-term ledger on stderr (repeat for more)");
  };
  CLI::App* validate = app.add_subcommand("validate", "check profile, derivatives and bumps");
  CLI::App* determinant = app.add_subcommand("determinant", "zeta'(0) and the log-determinant");
  CLI::App* energy = app.add_subcommand("energy", "Casimir energy zeta(-1/2) and its residue");
  CLI::App* sweep = app.add_subcommand("delta-sweep", "energy change over bump positions (CSV)");
  CLI::App* oracle = app.add_subcommand("oracle-compare", "contour pipeline vs direct eigenvalue sum");
  for (CLI::App* s : {validate, determinant, energy, sweep, oracle}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    KeyValues kv;
    if (!config_path.empty()) kv = load_key_values(config_path);
    apply_overrides(kv, sets);
    if (jobs > 0) kv["jobs"] = std::to_string(jobs);
    if (!out_path.empty()) kv["output"] = out_path;
    const RunConfig rc = make_run_config(kv);
    if (*validate) return cmd_validate(rc);
    if (*determinant) return cmd_determinant(rc);
    if (*energy) return cmd_energy(rc);
    if (*sweep) return cmd_sweep(rc);
    if (*oracle) return cmd_oracle(rc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
