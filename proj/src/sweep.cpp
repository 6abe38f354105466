#include "revzeta/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "revzeta/error.hpp"
#include "revzeta/parallel.hpp"

namespace revzeta {

EnergyChangeResult energy_change_at(const RunConfig& rc, double c) {
  const BumpSpec bump = rc.bump(c);
  const bool closed = rc.route == Route::Cylinder || (rc.route == Route::Auto && rc.is_cylinder());
  if (closed) return delta_energy_cylinder(rc.cylinder(), bump, rc.zeta);
  return delta_energy(rc.profile(), bump, rc.zeta);
}

std::vector<SweepRow> run_delta_sweep(const RunConfig& rc) {
  const int n = static_cast<int>(rc.c_grid.size());
  std::vector<SweepRow> rows(n);
  RunConfig inner = rc;
  inner.zeta.jobs = 1;
  parallel_for(n, rc.zeta.jobs, [&](int i) {
    const EnergyChangeResult r = energy_change_at(inner, rc.c_grid[i]);
    rows[i] = {rc.c_grid[i], r.delta_E, r.error_estimate(), r.K_used};
  });
  return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = "c,delta_E,err_estimate,K_used\n";
  char buf[128];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", r.c, r.delta_E, r.err_estimate, r.K_used);
    out += buf;
  }
  return out;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << format_csv(rows);
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "c,delta_E,err_estimate,K_used")
    throw Error(ErrorKind::IoError, "'" + path + "' lacks the sweep header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRow r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &r.c, &r.delta_E, &r.err_estimate, &r.K_used) != 4)
      throw Error(ErrorKind::IoError, "malformed row in '" + path + "': " + line);
    rows.push_back(r);
  }
  return rows;
}

std::string gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key off\n"
     << "set xlabel 'c'\n"
     << "set ylabel 'delta E'\n"
     << "plot '" << csv_path << "' using 1:2 every ::1 with linespoints\n";
  return os.str();
}

}  // namespace revzeta
