#pragma once

// Flat key = value run configuration.
//
//   # comment
//   profile.kind = constant            # or expression
//   profile.alpha = 1
//   profile.f = 1 + x/4                # expression profiles; fp/fpp optional
//   interval.a = 0
//   interval.b = 1
//   bump.kind = gaussian               # gaussian | mixed
//   bump.c = 0.5                       # or bump.c_grid = lo:hi:n / list
//   bump.delta = 0.3
//
// Unknown keys are rejected so typos surface as config errors.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revzeta/cylinder.hpp"
#include "revzeta/profile.hpp"
#include "revzeta/speczeta.hpp"

namespace revzeta {

using KeyValues = std::map<std::string, std::string>;

/// Parses the text of a config file. Throws Error(ConfigError) with the line
/// number on malformed lines or duplicate keys.
KeyValues parse_key_values(const std::string& text);

/// Reads a file (IoError when unreadable) and parses it.
KeyValues load_key_values(const std::string& path);

/// Applies "key=value" overrides on top of `kv`.
void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides);

enum class ProfileKind { Constant, Expression };
enum class BumpKind { Gaussian, Mixed };
enum class Route { Auto, Cylinder, Generic };

struct RunConfig {
  ProfileKind profile_kind = ProfileKind::Constant;
  double alpha = 1.0;
  std::string f_src, fp_src, fpp_src;
  double a = 0.0, b = 1.0;

  BumpKind bump_kind = BumpKind::Gaussian;
  double delta = 0.3;
  std::vector<double> c_grid{0.5};
  std::vector<double> epsilon_grid{1e-2, 5e-3, 2.5e-3};

  SpecZetaOptions zeta;
  Route route = Route::Auto;

  int oracle_s = 2;
  int oracle_K = 40;
  double oracle_tol = 1e-6;

  std::string output_path;
  bool gnuplot = false;

  /// Grid and interval checks (c-grid inside (a + delta, b - delta), ...).
  void validate() const;
  ProfileSpec profile() const;
  BumpSpec bump(double c) const;
  bool is_cylinder() const { return profile_kind == ProfileKind::Constant; }
  CylinderConfig cylinder() const { return {alpha, a, b}; }
};

RunConfig make_run_config(const KeyValues& kv);

/// "lo:hi:n" (n evenly spaced points, ends included) or a comma list.
std::vector<double> parse_grid(const std::string& s);

}  // namespace revzeta
