#include "revzeta/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "revzeta/error.hpp"

namespace revzeta {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  const auto r = std::from_chars(first, last, out);
  if (r.ec != std::errc() || r.ptr != last) throw Error(ErrorKind::ConfigError, key + ": not a number: '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigError, key + ": not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorKind::ConfigError, key + ": expected true/false, got '" + v + "'");
}

const std::set<std::string> kKnownKeys = {
    "profile.kind", "profile.alpha", "profile.f", "profile.fp", "profile.fpp",
    "interval.a", "interval.b",
    "bump.kind", "bump.c", "bump.c_grid", "bump.delta",
    "epsilon_grid",
    "quad.abs_tol", "quad.rel_tol", "quad.max_subdivisions",
    "ode.rel_tol",
    "series.target_tol", "series.K_cap", "series.K_fixed", "series.lambda_max",
    "route",
    "oracle.s", "oracle.K", "oracle.tol",
    "output", "gnuplot", "jobs",
};

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << n << ": expected key = value";
      throw Error(ErrorKind::ConfigError, os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << "line " << n << ": empty key";
      throw Error(ErrorKind::ConfigError, os.str());
    }
    if (!kv.emplace(key, value).second) {
      std::ostringstream os;
      os << "line " << n << ": duplicate key '" << key << "'";
      throw Error(ErrorKind::ConfigError, os.str());
    }
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_overrides(KeyValues& kv, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || trim(o.substr(0, eq)).empty())
      throw Error(ErrorKind::ConfigError, "--set expects key=value, got '" + o + "'");
    kv[trim(o.substr(0, eq))] = trim(o.substr(eq + 1));
  }
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::istringstream in(s);
    std::string lo, hi, n;
    std::getline(in, lo, ':');
    std::getline(in, hi, ':');
    std::getline(in, n);
    const double a = to_double("grid", trim(lo)), b = to_double("grid", trim(hi));
    const int m = to_int("grid", trim(n));
    if (m < 1) throw Error(ErrorKind::ConfigError, "grid needs at least one point");
    if (m == 1) return {a};
    for (int i = 0; i < m; ++i) out.push_back(a + (b - a) * i / (m - 1));
    return out;
  }
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("grid", item));
  }
  if (out.empty()) throw Error(ErrorKind::ConfigError, "empty grid");
  return out;
}

RunConfig make_run_config(const KeyValues& kv) {
  for (const auto& [k, v] : kv)
    if (!kKnownKeys.count(k)) throw Error(ErrorKind::ConfigError, "unknown key '" + k + "'");
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    const auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  RunConfig rc;
  if (auto v = get("profile.kind")) {
    if (*v == "constant") rc.profile_kind = ProfileKind::Constant;
    else if (*v == "expression") rc.profile_kind = ProfileKind::Expression;
    else throw Error(ErrorKind::ConfigError, "profile.kind must be constant or expression");
  }
  if (auto v = get("profile.alpha")) rc.alpha = to_double("profile.alpha", *v);
  if (auto v = get("profile.f")) rc.f_src = *v;
  if (auto v = get("profile.fp")) rc.fp_src = *v;
  if (auto v = get("profile.fpp")) rc.fpp_src = *v;
  if (auto v = get("interval.a")) rc.a = to_double("interval.a", *v);
  if (auto v = get("interval.b")) rc.b = to_double("interval.b", *v);
  if (auto v = get("bump.kind")) {
    if (*v == "gaussian") rc.bump_kind = BumpKind::Gaussian;
    else if (*v == "mixed") rc.bump_kind = BumpKind::Mixed;
    else throw Error(ErrorKind::ConfigError, "bump.kind must be gaussian or mixed");
  }
  if (auto v = get("bump.delta")) rc.delta = to_double("bump.delta", *v);
  if (get("bump.c") && get("bump.c_grid")) throw Error(ErrorKind::ConfigError, "give bump.c or bump.c_grid, not both");
  if (auto v = get("bump.c")) rc.c_grid = {to_double("bump.c", *v)};
  if (auto v = get("bump.c_grid")) rc.c_grid = parse_grid(*v);
  if (auto v = get("epsilon_grid")) rc.epsilon_grid = parse_grid(*v);
  if (auto v = get("quad.abs_tol")) rc.zeta.quad.abs_tol = to_double("quad.abs_tol", *v);
  if (auto v = get("quad.rel_tol")) rc.zeta.quad.rel_tol = to_double("quad.rel_tol", *v);
  if (auto v = get("quad.max_subdivisions")) rc.zeta.quad.max_subdivisions = to_int("quad.max_subdivisions", *v);
  if (auto v = get("ode.rel_tol")) rc.zeta.ode.rel_tol = to_double("ode.rel_tol", *v);
  if (auto v = get("series.target_tol")) rc.zeta.target_tol = to_double("series.target_tol", *v);
  if (auto v = get("series.K_cap")) rc.zeta.K_cap = to_int("series.K_cap", *v);
  if (auto v = get("series.K_fixed")) rc.zeta.K_fixed = to_int("series.K_fixed", *v);
  if (auto v = get("series.lambda_max")) rc.zeta.lambda_max = to_double("series.lambda_max", *v);
  if (auto v = get("jobs")) rc.zeta.jobs = to_int("jobs", *v);
  if (auto v = get("route")) {
    if (*v == "auto") rc.route = Route::Auto;
    else if (*v == "cylinder") rc.route = Route::Cylinder;
    else if (*v == "generic") rc.route = Route::Generic;
    else throw Error(ErrorKind::ConfigError, "route must be auto, cylinder or generic");
  }
  if (auto v = get("oracle.s")) rc.oracle_s = to_int("oracle.s", *v);
  if (auto v = get("oracle.K")) rc.oracle_K = to_int("oracle.K", *v);
  if (auto v = get("oracle.tol")) rc.oracle_tol = to_double("oracle.tol", *v);
  if (auto v = get("output")) rc.output_path = *v;
  if (auto v = get("gnuplot")) rc.gnuplot = to_bool("gnuplot", *v);
  rc.validate();
  return rc;
}

void RunConfig::validate() const {
  if (!(b > a)) throw Error(ErrorKind::ConfigError, "interval needs b > a");
  if (profile_kind == ProfileKind::Constant && !(alpha > 0.0))
    throw Error(ErrorKind::ConfigError, "profile.alpha must be positive");
  if (profile_kind == ProfileKind::Expression && f_src.empty())
    throw Error(ErrorKind::ConfigError, "expression profile needs profile.f");
  if (fp_src.empty() != fpp_src.empty())
    throw Error(ErrorKind::ConfigError, "give both profile.fp and profile.fpp or neither");
  if (!(delta > 0.0)) throw Error(ErrorKind::ConfigError, "bump.delta must be positive");
  if (c_grid.empty()) throw Error(ErrorKind::ConfigError, "empty c grid");
  for (double c : c_grid)
    if (!(c - delta > a && c + delta < b)) {
      std::ostringstream os;
      os << "bump centre " << c << " with delta " << delta << " leaves (" << a << ", " << b << ")";
      throw Error(ErrorKind::ConfigError, os.str());
    }
  if (epsilon_grid.empty()) throw Error(ErrorKind::ConfigError, "empty epsilon grid");
  if (route == Route::Cylinder && profile_kind != ProfileKind::Constant)
    throw Error(ErrorKind::ConfigError, "route = cylinder needs a constant profile");
  if (oracle_s < 2) throw Error(ErrorKind::ConfigError, "oracle.s must be at least 2");
  zeta.validate();
}

ProfileSpec RunConfig::profile() const {
  if (profile_kind == ProfileKind::Constant) return make_constant_profile(alpha, a, b);
  if (fp_src.empty()) return make_expression_profile(parse_expr(f_src), a, b);
  return make_expression_profile(parse_expr(f_src), parse_expr(fp_src), parse_expr(fpp_src), a, b);
}

BumpSpec RunConfig::bump(double c) const {
  return bump_kind == BumpKind::Mixed ? make_mixed_gaussian_bump(c, delta) : make_gaussian_bump(c, delta);
}

}  // namespace revzeta
