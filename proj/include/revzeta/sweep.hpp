#pragma once

// Bump-position sweeps of the energy change and their CSV output.

#include <string>
#include <vector>

#include "revzeta/config.hpp"
#include "revzeta/speczeta.hpp"

namespace revzeta {

struct SweepRow {
  double c = 0.0;
  double delta_E = 0.0;
  double err_estimate = 0.0;
  int K_used = 0;
};

/// Delta E for one bump position, routed per the config.
EnergyChangeResult energy_change_at(const RunConfig& rc, double c);

/// Grid points run concurrently (rc.zeta.jobs workers, one job each inside);
/// rows come back in grid order.
std::vector<SweepRow> run_delta_sweep(const RunConfig& rc);

/// Header `c,delta_E,err_estimate,K_used`, 17 significant digits.
std::string format_csv(const std::vector<SweepRow>& rows);
/// Throws Error(IoError) when the file cannot be written.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_csv(const std::string& path);

/// Gnuplot script plotting delta_E against c from `csv_path`.
std::string gnuplot_script(const std::string& csv_path);

}  // namespace revzeta
