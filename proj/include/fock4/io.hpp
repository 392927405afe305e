#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock4/poincare.hpp"
#include "fock4/position_rep.hpp"
#include "fock4/second_quant.hpp"
#include "fock4/tensor4.hpp"

namespace fock4::io {

inline constexpr int kFormatVersion = 1;

/// Malformed input: bad JSON, missing keys, duplicate records. Distinct from
/// domain violations (values outside the configured cutoff), which surface
/// as std::out_of_range.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-width-free, round-trip-exact float formatting shared by all CSV
/// output, so repeated runs are byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// StateVector: JSON array of {modes:[N1,N2,N3,N4], re, im}. Unlisted basis
// states are zero; listing the same mode tuple twice is an error.

inline std::string save_state_vector(const StateVector& state) {
  std::string out = "[\n";
  bool first = true;
  for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
    const cplx c = state.coeffs[i];
    if (c == cplx(0.0, 0.0)) continue;
    const auto n = unflatten_index(i, state.cutoff.mode_dim());
    nlohmann::json rec;
    rec["modes"] = n;
    rec["re"] = c.real();
    rec["im"] = c.imag();
    if (!first) out += ",\n";
    out += rec.dump();
    first = false;
  }
  out += "\n]\n";
  return out;
}

namespace detail {

/// 1-based line of the k-th (0-based) record, located through its "modes"
/// key. Each record carries exactly one, so this finds duplicates in any
/// formatting that keeps records in document order.
inline int line_of_record(const std::string& text, std::size_t k) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    pos = text.find("\"modes\"", pos);
    if (pos == std::string::npos) return -1;
    if (i < k) ++pos;
  }
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() +
                                                           static_cast<std::ptrdiff_t>(pos),
                                         '\n'));
}

}  // namespace detail

inline StateVector load_state_vector(const std::string& text, Cutoff cutoff) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw FormatError("state file root must be a JSON array of records");
  }
  StateVector state(cutoff);
  std::vector<bool> seen(space_dim(cutoff), false);
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& rec = doc[k];
    if (!rec.is_object() || !rec.contains("modes") || !rec.contains("re") ||
        !rec.contains("im") || !rec["modes"].is_array() ||
        rec["modes"].size() != 4 || !rec["re"].is_number() ||
        !rec["im"].is_number()) {
      throw FormatError("record " + std::to_string(k) +
                        " must be {modes:[4 ints], re, im}");
    }
    std::array<int, 4> n{};
    for (int m = 0; m < 4; ++m) {
      if (!rec["modes"][static_cast<std::size_t>(m)].is_number_integer()) {
        throw FormatError("record " + std::to_string(k) +
                          ": modes must be integers");
      }
      n[static_cast<std::size_t>(m)] = rec["modes"][static_cast<std::size_t>(m)].get<int>();
    }
    for (int c : n) {
      if (c < 0 || c > cutoff.n_max) {
        throw std::out_of_range("record " + std::to_string(k) +
                                ": occupation exceeds cutoff n_max=" +
                                std::to_string(cutoff.n_max));
      }
    }
    const std::size_t idx = flat_index(n, cutoff.mode_dim());
    if (seen[idx]) {
      throw FormatError("duplicate mode tuple [" + std::to_string(n[0]) + "," +
                        std::to_string(n[1]) + "," + std::to_string(n[2]) +
                        "," + std::to_string(n[3]) + "] at line " +
                        std::to_string(detail::line_of_record(text, k)));
    }
    seen[idx] = true;
    state.coeffs[idx] = cplx(rec["re"].get<double>(), rec["im"].get<double>());
  }
  return state;
}

// ---------------------------------------------------------------------------
// Algebra audit report.

inline nlohmann::json audit_relation_json(const AuditRelation& r) {
  nlohmann::json row;
  row["relation"] = r.sector;
  row["lhs"] = r.lhs;
  row["rhs"] = r.rhs;
  row["signature"] = r.signature;
  row["best_sign"] = r.best_sign;
  row["residual"] = r.residual;
  row["margin"] = r.margin;
  row["cutoff"] = r.n_max;
  return row;
}

inline std::string save_audit_reports(
    const std::vector<AlgebraAuditReport>& reports) {
  nlohmann::json doc;
  doc["format_version"] = kFormatVersion;
  doc["audits"] = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& report : reports) {
    nlohmann::json audit;
    audit["signature"] = report.signature.label();
    audit["cutoff"] = report.cutoff.n_max;
    audit["margin"] = report.margin;
    audit["relations"] = nlohmann::json::array();
    for (const auto& r : report.relations) {
      audit["relations"].push_back(audit_relation_json(r));
    }
    for (const auto& f : audit_gate_failures(report)) {
      failures.push_back("signature " + report.signature.label() + ": " + f);
    }
    doc["audits"].push_back(audit);
  }
  doc["failures"] = failures;
  doc["pass"] = failures.empty();
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Wavefunction grid: CSV `x,y,z,t,re,im`, row-major over the axes, plus a
// JSON metadata sidecar.

inline std::string save_wavefunction_csv(const WavefunctionGrid& grid) {
  std::string out;
  out += "# format_version " + std::to_string(kFormatVersion) + "\n";
  out += "x,y,z,t,re,im\n";
  for (std::size_t i = 0; i < grid.samples.size(); ++i) {
    const SpacetimePoint p = grid.grid.point(i);
    out += format_double(p.x) + "," + format_double(p.y) + "," +
           format_double(p.z) + "," + format_double(p.t) + "," +
           format_double(grid.samples[i].real()) + "," +
           format_double(grid.samples[i].imag()) + "\n";
  }
  return out;
}

inline nlohmann::json grid_spec_json(const GridSpec& grid) {
  nlohmann::json axes = nlohmann::json::array();
  for (int a = 0; a < 4; ++a) {
    const auto& ax = grid.axes[static_cast<std::size_t>(a)];
    nlohmann::json j;
    j["axis"] = mode_label(ModeBasis::spacetime, a);
    j["sampled"] = ax.sampled;
    if (ax.sampled) {
      j["min"] = ax.min;
      j["max"] = ax.max;
      j["steps"] = ax.steps;
    } else {
      j["fixed"] = ax.fixed;
    }
    axes.push_back(j);
  }
  return axes;
}

struct WavefunctionMetadata {
  Cutoff cutoff;
  GridSpec grid;
  double coefficient_norm_sq;
  bool has_parseval = false;
  int quadrature_order = 0;
  double parseval_coefficient_norm_sq = 0.0;
  double parseval_quadrature_norm_sq = 0.0;
};

inline std::string save_wavefunction_metadata(const WavefunctionMetadata& m) {
  nlohmann::json doc;
  doc["format_version"] = kFormatVersion;
  doc["cutoff"] = m.cutoff.n_max;
  doc["grid"] = grid_spec_json(m.grid);
  doc["coefficient_norm_sq"] = m.coefficient_norm_sq;
  if (m.has_parseval) {
    doc["parseval"]["quadrature_order"] = m.quadrature_order;
    doc["parseval"]["coefficient_norm_sq"] = m.parseval_coefficient_norm_sq;
    doc["parseval"]["quadrature_norm_sq"] = m.parseval_quadrature_norm_sq;
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Propagator table: CSV `x,y,z,t,x2,y2,z2,t2,delta` with a trailing summary
// of the worst disagreement between the two evaluation routes.

inline std::string save_propagator_csv(const std::vector<PropagatorValue>& rows,
                                       double max_abs_discrepancy) {
  std::string out;
  out += "# format_version " + std::to_string(kFormatVersion) + "\n";
  out += "x,y,z,t,x2,y2,z2,t2,delta\n";
  for (const auto& r : rows) {
    out += format_double(r.x.x) + "," + format_double(r.x.y) + "," +
           format_double(r.x.z) + "," + format_double(r.x.t) + "," +
           format_double(r.x2.x) + "," + format_double(r.x2.y) + "," +
           format_double(r.x2.z) + "," + format_double(r.x2.t) + "," +
           format_double(r.delta.real()) + "\n";
  }
  out += "# max_abs_discrepancy " + format_double(max_abs_discrepancy) + "\n";
  return out;
}

/// Points file: one pair per line, eight whitespace-separated reals
/// x y z t x2 y2 z2 t2. Blank lines and lines starting with # are skipped.
inline std::vector<std::pair<SpacetimePoint, SpacetimePoint>>
load_point_pairs(const std::string& text) {
  std::vector<std::pair<SpacetimePoint, SpacetimePoint>> pairs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::array<double, 8> v{};
    for (int i = 0; i < 8; ++i) {
      if (!(ls >> v[static_cast<std::size_t>(i)])) {
        throw FormatError("points file line " + std::to_string(line_no) +
                          ": expected 8 reals");
      }
    }
    pairs.push_back({{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}});
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// FieldState: JSON list of {occupations:[{modes:[...], count}], re, im}.

inline std::string save_field_state(const FieldState& state) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& [occ, coeff] : state.terms) {
    nlohmann::json rec;
    rec["occupations"] = nlohmann::json::array();
    for (const auto& [mode, count] : occ.entries) {
      nlohmann::json e;
      e["modes"] = state.modes.occupation_of(mode).counts;
      e["count"] = count;
      rec["occupations"].push_back(e);
    }
    rec["re"] = coeff.real();
    rec["im"] = coeff.imag();
    doc.push_back(rec);
  }
  return doc.dump(2) + "\n";
}

inline FieldState load_field_state(const std::string& text, FieldModeSet modes,
                                   int particle_cap) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field state is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw FormatError("field state root must be an array");
  FieldState state{modes, particle_cap, {}};
  for (const auto& rec : doc) {
    if (!rec.is_object() || !rec.contains("occupations") ||
        !rec.contains("re") || !rec.contains("im") ||
        !rec["occupations"].is_array() || !rec["re"].is_number() ||
        !rec["im"].is_number()) {
      throw FormatError("field record must be {occupations, re, im}");
    }
    OccupationMap occ;
    for (const auto& e : rec["occupations"]) {
      if (!e.is_object() || !e.contains("modes") || !e.contains("count") ||
          !e["modes"].is_array() || e["modes"].size() != 4 ||
          !e["count"].is_number_integer() || e["count"].get<int>() < 1) {
        throw FormatError(
            "occupation entry must be {modes:[4 ints], count >= 1}");
      }
      std::array<int, 4> n{};
      for (int m = 0; m < 4; ++m) {
        if (!e["modes"][static_cast<std::size_t>(m)].is_number_integer()) {
          throw FormatError("occupation modes must be integers");
        }
        n[static_cast<std::size_t>(m)] =
            e["modes"][static_cast<std::size_t>(m)].get<int>();
      }
      const ModeOccupation mo{n, ModeBasis::spacetime};
      if (!mo.within(modes.per_mode_max)) {
        throw std::out_of_range("field mode label outside the mode set");
      }
      occ = occ.with_delta(static_cast<std::uint32_t>(modes.label_of(mo)),
                           e["count"].get<int>());
    }
    if (occ.total() > particle_cap) {
      throw std::out_of_range("field record exceeds the particle cap");
    }
    if (state.terms.count(occ) != 0) {
      throw FormatError("duplicate occupation map in field state");
    }
    state.terms[occ] = cplx(rec["re"].get<double>(), rec["im"].get<double>());
  }
  return state;
}

}  // namespace fock4::io
