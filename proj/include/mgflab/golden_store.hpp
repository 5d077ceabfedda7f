#pragma once

// Reference values kept in a tab-separated text file:
//   density  quantity  log_value  tolerance  source  note
// `source` is "quoted" for exact values stated with the construction and "oracle"
// for values produced by mgflab::oracle. Divergent values are written as
// the token "divergent".

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgflab/log_value.hpp"
#include "mgflab/oracle.hpp"

namespace mgflab {

struct GoldenEntry {
  std::string density;
  std::string quantity;
  LogValue value;
  double tolerance = 0.0;  // absolute, log scale
  std::string source;      // "quoted" or "oracle"
  std::string note;
};

inline std::string format_log_value(const LogValue& v) {
  if (v.is_divergent()) return "divergent";
  if (v.is_zero()) return "zero";
  std::ostringstream s;
  s.precision(17);
  s << v.log();
  return s.str();
}

inline LogValue parse_log_value(const std::string& text) {
  if (text == "divergent") return LogValue::divergent();
  if (text == "zero") return LogValue::zero();
  std::size_t used = 0;
  const double x = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad log value: " + text);
  return LogValue::from_log(x);
}

class GoldenStore {
 public:
  static std::string default_path() {
    if (const char* env = std::getenv("MGF_GOLDEN_PATH"); env && *env) return env;
#ifdef MGFLAB_DEFAULT_GOLDEN_PATH
    return MGFLAB_DEFAULT_GOLDEN_PATH;
#else
    return "goldens/goldens.tsv";
#endif
  }

  static GoldenStore load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden store: " + path);
    GoldenStore store;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, '\t')) f.push_back(field);
      if (f.size() < 5 || f.size() > 6)
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 5 or 6 tab-separated fields");
      if (f[4] != "quoted" && f[4] != "oracle")
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": source must be 'quoted' or 'oracle'");
      store.entries_.push_back({f[0], f[1], parse_log_value(f[2]), std::stod(f[3]), f[4], f.size() > 5 ? f[5] : ""});
    }
    return store;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write golden store: " + path);
    out << "# mgflab golden values (log scale)\n";
    out << "# density\tquantity\tlog_value\ttolerance\tsource\tnote\n";
    for (const auto& e : entries_) {
      std::ostringstream tol;
      tol.precision(3);
      tol << e.tolerance;
      out << e.density << '\t' << e.quantity << '\t' << format_log_value(e.value) << '\t' << tol.str() << '\t'
          << e.source << '\t' << e.note << '\n';
    }
  }

  const GoldenEntry* find(const std::string& density, const std::string& quantity) const {
    for (const auto& e : entries_)
      if (e.density == density && e.quantity == quantity) return &e;
    return nullptr;
  }

  const GoldenEntry& at(const std::string& density, const std::string& quantity) const {
    if (const GoldenEntry* e = find(density, quantity)) return *e;
    throw std::out_of_range("no golden entry for " + density + " / " + quantity);
  }

  const std::vector<GoldenEntry>& entries() const { return entries_; }
  void add(GoldenEntry e) { entries_.push_back(std::move(e)); }

  /// Fresh store: quoted values verbatim, everything else from the oracle.
  static GoldenStore generate() {
    GoldenStore s;
    const double log_e_pi = 1.0 + std::log(std::numbers::pi);
    const std::string trap = "1-D trapezoid over the marginal, long double, step 1/256";
    s.add({"bn", "log_mgf(0,1)", LogValue::from_log(log_e_pi), 1e-8, "quoted", "G(0,1) = e*pi"});
    s.add({"bn", "log_mgf(0,0)", LogValue::from_log(oracle::bn_log_mass()), 1e-8, "oracle",
           "log total mass; 1-D trapezoid on [-40,40], long double, step 1/512"});
    s.add({"bn", "log_mass_2d", LogValue::from_log(oracle::bn_log_mgf_2d(0.0, 0.0)), 1e-8, "oracle",
           "nested 2-D trapezoid over the density"});
    const double pts[][2] = {{0.3, 0.5}, {-1.5, 0.8}, {2.0, 0.0}, {0.0, 0.9}, {1.0, 0.5}, {0.9999, 0.9999}};
    for (const auto& p : pts) {
      std::ostringstream q;
      q << "log_mgf(" << p[0] << "," << p[1] << ")";
      s.add({"bn", q.str(), LogValue::from_log(oracle::bn_log_mgf(p[0], p[1])), 1e-8, "oracle", trap});
    }
    s.add({"bn", "log_mgf(0.5,1)", LogValue::divergent(), 0.0, "quoted", "(u1,1) with u1 != 0 lies outside V"});
    s.add({"bn⊗bn", "log_mgf(0,1,0,1)", LogValue::from_log(2.0 * log_e_pi), 1e-8, "quoted", "(e*pi)^2"});
    s.add({"bn⊗bn", "log_mgf(0,0,0,1)", LogValue::from_log(oracle::bn_log_mass() + log_e_pi), 1e-8, "oracle",
           "log mass + log(e*pi)"});
    return s;
  }

 private:
  std::vector<GoldenEntry> entries_;
};

}  // namespace mgflab
