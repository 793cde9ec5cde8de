#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "closedform.hpp"
#include "entanglement.hpp"
#include "lattice.hpp"
#include "state.hpp"

namespace toricneg {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr int kDefaultMaxQubits = 24;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Frozen example settings, addressable by name.

inline std::vector<int> column_edges(const Lattice& lat, std::vector<int> xs) {
  std::vector<int> out;
  for (int x : xs)
    for (int y = 0; y < lat.Ly; ++y) {
      out.push_back(lat.h(x, y));
      out.push_back(lat.v(x, y));
    }
  return out;
}

inline Setting generate_setting(const std::string& name) {
  auto cols = [](const Lattice& lat, std::vector<int> xs) {
    return column_edges(lat, std::move(xs));
  };
  if (name == "fig6-a") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A"] = cols(s.lat, {0, 1});
    s.regions["B"] = cols(s.lat, {2, 3});
    return s;
  }
  if (name == "fig6-b") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A"] = cols(s.lat, {0});
    s.regions["B"] = cols(s.lat, {1, 2, 3});
    return s;
  }
  if (name == "fig6-c") {
    Setting s{build_torus(4, 2), {}};
    std::vector<int> A = cols(s.lat, {0, 1, 2});
    A.erase(std::find(A.begin(), A.end(), s.lat.h(1, 0)));
    s.regions["A"] = A;
    s.regions["B"] = cols(s.lat, {3});
    s.regions["C"] = {s.lat.h(1, 0)};
    return s;
  }
  if (name == "fig6-d") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A"] = cols(s.lat, {0, 1});
    s.regions["B"] = cols(s.lat, {2});
    s.regions["C"] = cols(s.lat, {3});
    return s;
  }
  if (name == "fig6-e") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A1"] = cols(s.lat, {0});
    s.regions["B1"] = cols(s.lat, {2});
    s.regions["C"] = cols(s.lat, {1, 3});
    return s;
  }
  if (name == "fig6-f") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A"] = cols(s.lat, {0});
    s.regions["B"] = cols(s.lat, {2});
    s.regions["C"] = cols(s.lat, {1, 3});
    return s;
  }
  if (name == "fig6-g") {
    Setting s{build_torus(4, 2), {}};
    s.regions["A"] = {s.lat.h(0, 0)};
    s.regions["B"] = {s.lat.h(2, 0)};
    return s;
  }
  throw ConfigError("generate_setting: unknown setting '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON ingestion.

inline Lattice lattice_from_json(const json& j) {
  std::string topo = j.at("topology").get<std::string>();
  int Lx = j.at("Lx").get<int>(), Ly = j.at("Ly").get<int>();
  if (topo == "torus") return build_torus(Lx, Ly);
  if (topo == "planar") return build_planar(Lx, Ly);
  throw ConfigError("config: unknown topology '" + topo + "'");
}

inline Setting setting_from_json(const json& j) {
  if (j.contains("setting")) return generate_setting(j.at("setting").get<std::string>());
  Setting s{lattice_from_json(j), {}};
  for (const auto& [label, edges] : j.at("regions").items()) {
    std::vector<int> es;
    for (const auto& e : edges) es.push_back(e.get<int>());
    std::set<int> uniq(es.begin(), es.end());
    if (uniq.size() != es.size())
      throw ConfigError("config: duplicate edge in region " + label);
    for (int e : es)
      if (e < 0 || e >= s.lat.n) throw ConfigError("config: edge id out of range");
    s.regions[label] = es;
  }
  return s;
}

inline std::array<Complex, 4> coefficients_from_json(const json& j) {
  std::array<Complex, 4> c = {Complex(1), Complex(0), Complex(1), Complex(0)};
  if (!j.contains("coefficients")) return c;  // default: psi0 sectors
  const auto& cj = j.at("coefficients");
  if (cj.size() != 4) throw ConfigError("config: coefficients must have 4 entries");
  for (size_t i = 0; i < 4; ++i) {
    if (cj[i].is_number()) {
      c[i] = Complex(cj[i].get<double>(), 0);
    } else {
      c[i] = Complex(cj[i].at(0).get<double>(), cj[i].at(1).get<double>());
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Oracle router.

struct OracleResult {
  double log_negativity = 0;
  double min_pt_eigenvalue = std::nan("");  // only set on mixed-state paths
  bool pure_shortcut = false;
  bool projected = false;
  int kept_qubits = 0;
};

inline std::pair<std::string, std::string> setting_pair_labels(const Setting& s) {
  auto has = [&](const char* k) { return s.regions.count(k) > 0; };
  if (has("A") && has("B")) return {"A", "B"};
  if (has("A1") && has("B1")) return {"A1", "B1"};
  if (has("A") && has("B1")) return {"A", "B1"};
  throw ConfigError("setting: need region pair (A,B), (A1,B1) or (A,B1)");
}

inline StateVector setting_state(const Setting& s, const std::array<Complex, 4>& c) {
  if (s.lat.topology == Topology::Planar) return flux_sector_state(s.lat);
  return generic_state(s.lat, c);
}

inline OracleResult compute_log_negativity(const Setting& s,
                                           const std::array<Complex, 4>& c,
                                           int max_qubits = kDefaultMaxQubits) {
  if (s.lat.n > max_qubits)
    throw ConfigError("oracle: lattice exceeds the qubit budget");
  auto [la, lb] = setting_pair_labels(s);
  const auto& A = s.regions.at(la);
  const auto& B = s.regions.at(lb);
  StateVector psi = setting_state(s, c);
  OracleResult r;
  r.kept_qubits = static_cast<int>(A.size() + B.size());
  if (r.kept_qubits == s.lat.n) {
    r.pure_shortcut = true;
    r.log_negativity = log_negativity_pure(psi, s.lat.n, A);
    return r;
  }
  r.projected = r.kept_qubits > kDenseKeptPreferred;
  NegativityResult nr = log_negativity(psi, s.lat.n, A, B);
  r.log_negativity = nr.log_negativity;
  r.min_pt_eigenvalue = nr.min_eigenvalue;
  return r;
}

// ---------------------------------------------------------------------------
// Sweep harness.

struct SweepRowSpec {
  std::string id;
  std::string setting_name;
};

struct SweepConfig {
  int schema_version = kSchemaVersion;
  std::string name;
  std::array<Complex, 4> coefficients;
  std::vector<SweepRowSpec> rows;
};

inline SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig cfg;
  cfg.schema_version = j.at("schema_version").get<int>();
  if (cfg.schema_version != kSchemaVersion)
    throw ConfigError("config: unsupported schema_version");
  cfg.name = j.at("name").get<std::string>();
  cfg.coefficients = coefficients_from_json(j);
  for (const auto& row : j.at("rows")) {
    cfg.rows.push_back(
        {row.at("id").get<std::string>(), row.at("setting").get<std::string>()});
  }
  if (cfg.rows.empty()) throw ConfigError("config: sweep has no rows");
  return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  in >> j;
  return sweep_config_from_json(j);
}

struct ComparisonRow {
  std::string id;
  std::string setting_name;
  std::string setting_class;
  int n_qubits = 0;
  int kept_qubits = 0;
  double predicted = 0;
  double computed = 0;
  double abs_error = 0;
  double min_pt_eigenvalue = std::nan("");
  bool long_range_destroyed = false;
  bool pass = false;
};

inline ComparisonRow run_row(const std::string& id, const std::string& setting_name,
                             const std::array<Complex, 4>& c, double tolerance,
                             int max_qubits) {
  Setting s = generate_setting(setting_name);
  Classification cl = classify(s);
  OracleResult orc = compute_log_negativity(s, c, max_qubits);
  ComparisonRow row;
  row.id = id;
  row.setting_name = setting_name;
  row.setting_class = to_string(cl.cls);
  row.n_qubits = s.lat.n;
  row.kept_qubits = orc.kept_qubits;
  row.predicted = predict_log_negativity(cl, c);
  row.computed = orc.log_negativity;
  row.abs_error = std::fabs(row.predicted - row.computed);
  row.min_pt_eigenvalue = orc.min_pt_eigenvalue;
  row.long_range_destroyed = cl.long_range_destroyed;
  row.pass = row.abs_error <= tolerance;
  return row;
}

inline std::vector<ComparisonRow> run_sweep(const SweepConfig& cfg, double tolerance,
                                            int max_qubits = kDefaultMaxQubits) {
  std::vector<ComparisonRow> rows;
  for (const auto& spec : cfg.rows)
    rows.push_back(run_row(spec.id, spec.setting_name, cfg.coefficients, tolerance,
                           max_qubits));
  return rows;
}

// ---------------------------------------------------------------------------
// Emission. Numbers are written with 12 significant digits (glibc %g applies
// round-half-even at the last retained digit).

inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline void write_sweep_csv(const std::string& path,
                            const std::vector<ComparisonRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << "id,setting,setting_class,n_qubits,kept_qubits,predicted,computed,"
         "abs_error,min_pt_eigenvalue,long_range_destroyed,pass\n";
  for (const auto& r : rows) {
    out << r.id << ',' << r.setting_name << ',' << r.setting_class << ','
        << r.n_qubits << ',' << r.kept_qubits << ',' << format_sig12(r.predicted)
        << ',' << format_sig12(r.computed) << ',' << format_sig12(r.abs_error) << ','
        << (std::isnan(r.min_pt_eigenvalue) ? std::string("")
                                            : format_sig12(r.min_pt_eigenvalue))
        << ',' << (r.long_range_destroyed ? "true" : "false") << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

inline json sweep_to_json(const SweepConfig& cfg,
                          const std::vector<ComparisonRow>& rows) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = cfg.name;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json rj;
    rj["id"] = r.id;
    rj["setting"] = r.setting_name;
    rj["setting_class"] = r.setting_class;
    rj["n_qubits"] = r.n_qubits;
    rj["kept_qubits"] = r.kept_qubits;
    rj["predicted"] = r.predicted;
    rj["computed"] = r.computed;
    rj["abs_error"] = r.abs_error;
    if (!std::isnan(r.min_pt_eigenvalue))
      rj["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
    rj["long_range_destroyed"] = r.long_range_destroyed;
    rj["pass"] = r.pass;
    j["rows"].push_back(rj);
  }
  return j;
}

}  // namespace toricneg
