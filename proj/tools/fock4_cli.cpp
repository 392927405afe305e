// fock4 command-line driver: algebra audits, wavefunction rendering, and
// propagator tables over the truncated four-mode space.
//
// Exit codes: 0 success, 2 input error, 3 domain violation, 4 tolerance
// failure.

#include <array>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fock4/io.hpp"
#include "fock4/poincare.hpp"
#include "fock4/position_rep.hpp"
#include "fock4/second_quant.hpp"

namespace {

struct AuditConfig {
  int cutoff = 4;
  int margin = 2;
  std::string signature;  // empty = audit both
  std::string out;
};

struct WavefunctionConfig {
  int cutoff = 4;
  std::string state_path;
  std::string out;
  std::array<std::string, 4> grid_flags;  // "min:max:steps" per axis
  std::array<double, 4> fixed_values{0.0, 0.0, 0.0, 0.0};
  bool parseval = false;
  int quadrature_order = 0;  // 0 = pick n_max + 1
};

struct PropagatorConfig {
  int cutoff = 2;  // per-mode bound of the mode-label set; 0 is allowed
  int particle_cap = 1;
  std::string points_path;
  int random_pairs = 0;
  double range = 2.0;
  std::uint64_t seed = 1;
  std::string out;
};

fock4::GridSpec parse_grid(const WavefunctionConfig& cfg) {
  fock4::GridSpec grid;
  for (int axis = 0; axis < 4; ++axis) {
    const std::string& flag = cfg.grid_flags[static_cast<std::size_t>(axis)];
    if (!flag.empty()) {
      double lo = 0.0, hi = 0.0;
      int steps = 0;
      if (std::sscanf(flag.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3) {
        throw fock4::io::FormatError("grid flag must be min:max:steps, got " + flag);
      }
      try {
        grid.sample_axis(axis, lo, hi, steps);
      } catch (const std::invalid_argument& e) {
        throw fock4::io::FormatError(e.what());
      }
    } else {
      grid.fix_axis(axis, cfg.fixed_values[static_cast<std::size_t>(axis)]);
    }
  }
  return grid;
}

int run_audit(const AuditConfig& cfg) {
  if (cfg.margin < 2) {
    std::cerr << "audit requires --margin >= 2 (boost generators reach two "
                 "layers into the boundary)\n";
    return 2;
  }
  if (cfg.cutoff < 2 || cfg.margin >= cfg.cutoff) {
    std::cerr << "audit requires --cutoff > --margin\n";
    return 2;
  }
  std::vector<fock4::MetricSignature> signatures;
  if (cfg.signature.empty()) {
    signatures = {fock4::MetricSignature::plus_minus(),
                  fock4::MetricSignature::minus_plus()};
  } else {
    signatures = {fock4::MetricSignature::from_label(cfg.signature)};
  }

  const fock4::Cutoff cutoff(cfg.cutoff);
  const fock4::PoincareGenerators gens = fock4::build_generators(cutoff);
  std::vector<fock4::AlgebraAuditReport> reports;
  bool pass = true;
  for (const auto& sig : signatures) {
    reports.push_back(fock4::audit_algebra(gens, sig, cfg.margin));
    pass = pass && fock4::audit_gate_failures(reports.back()).empty();
  }
  fock4::io::atomic_write(cfg.out, fock4::io::save_audit_reports(reports));
  std::cout << "audit report written to " << cfg.out
            << (pass ? " (pass)" : " (FAIL)") << "\n";
  return pass ? 0 : 4;
}

int run_wavefunction(const WavefunctionConfig& cfg) {
  const fock4::Cutoff cutoff(cfg.cutoff);
  const int q = cfg.quadrature_order == 0 ? cutoff.n_max + 1 : cfg.quadrature_order;
  if (cfg.parseval && q < cutoff.n_max + 1) {
    std::cerr << "--quadrature-order must be >= cutoff + 1\n";
    return 2;
  }
  const fock4::StateVector state = fock4::io::load_state_vector(
      fock4::io::read_file(cfg.state_path), cutoff);
  const fock4::GridSpec grid = parse_grid(cfg);
  const fock4::WavefunctionGrid rendered = fock4::synthesize(state, grid);

  fock4::io::WavefunctionMetadata meta{cutoff, grid, state.norm_sq()};
  if (cfg.parseval) {
    const auto [coeff_sq, quad_sq] = fock4::parseval_check(state, q);
    meta.has_parseval = true;
    meta.quadrature_order = q;
    meta.parseval_coefficient_norm_sq = coeff_sq;
    meta.parseval_quadrature_norm_sq = quad_sq;
  }
  fock4::io::atomic_write(cfg.out, fock4::io::save_wavefunction_csv(rendered));
  fock4::io::atomic_write(cfg.out + ".meta.json",
                          fock4::io::save_wavefunction_metadata(meta));
  std::cout << "wavefunction written to " << cfg.out << " ("
            << rendered.samples.size() << " points)\n";
  return 0;
}

int run_propagator(const PropagatorConfig& cfg) {
  if (cfg.cutoff < 0) {
    std::cerr << "--cutoff must be >= 0 for the propagator mode set\n";
    return 2;
  }
  if (cfg.particle_cap < 1) {
    std::cerr << "--particle-cap must be >= 1\n";
    return 2;
  }
  if (cfg.points_path.empty() && cfg.random_pairs <= 0) {
    std::cerr << "either --points FILE or --random-pairs K is required\n";
    return 2;
  }

  std::vector<std::pair<fock4::SpacetimePoint, fock4::SpacetimePoint>> pairs;
  if (!cfg.points_path.empty()) {
    pairs = fock4::io::load_point_pairs(fock4::io::read_file(cfg.points_path));
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-cfg.range, cfg.range);
    for (int i = 0; i < cfg.random_pairs; ++i) {
      fock4::SpacetimePoint a{dist(rng), dist(rng), dist(rng), dist(rng)};
      fock4::SpacetimePoint b{dist(rng), dist(rng), dist(rng), dist(rng)};
      pairs.push_back({a, b});
    }
  }

  const fock4::FieldModeSet modes(cfg.cutoff);
  std::vector<fock4::PropagatorValue> rows;
  double max_disc = 0.0;
  for (const auto& [a, b] : pairs) {
    const auto direct = fock4::propagator_direct(a, b, modes);
    const auto vev = fock4::propagator_vev(a, b, modes, cfg.particle_cap);
    max_disc = std::max(max_disc, std::abs(direct.delta - vev.delta));
    rows.push_back(direct);
  }
  fock4::io::atomic_write(cfg.out, fock4::io::save_propagator_csv(rows, max_disc));
  std::cout << "propagator table written to " << cfg.out << " (" << rows.size()
            << " pairs, max |direct - vev| = "
            << fock4::io::format_double(max_disc) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated four-mode Fock space: algebra audits, wavefunction "
               "rendering, propagator tables"};
  app.require_subcommand(1);

  AuditConfig audit_cfg;
  auto* audit = app.add_subcommand(
      "audit", "Measure every generator commutation relation and write a JSON report");
  audit->add_option("--cutoff", audit_cfg.cutoff, "Per-mode cutoff n_max");
  audit->add_option("--margin", audit_cfg.margin, "Interior margin (>= 2)");
  audit->add_option("--signature", audit_cfg.signature,
                    "Metric signature, +--- or -+++ (default: audit both)");
  audit->add_option("--out", audit_cfg.out, "Output JSON path")->required();

  WavefunctionConfig wf_cfg;
  auto* wf = app.add_subcommand(
      "wavefunction", "Render a tensor-space state on a space-time grid as CSV");
  wf->add_option("--cutoff", wf_cfg.cutoff, "Per-mode cutoff n_max");
  wf->add_option("--state", wf_cfg.state_path, "State JSON file")->required();
  wf->add_option("--out", wf_cfg.out, "Output CSV path")->required();
  wf->add_option("--grid-x", wf_cfg.grid_flags[0], "Sample x as min:max:steps");
  wf->add_option("--grid-y", wf_cfg.grid_flags[1], "Sample y as min:max:steps");
  wf->add_option("--grid-z", wf_cfg.grid_flags[2], "Sample z as min:max:steps");
  wf->add_option("--grid-t", wf_cfg.grid_flags[3], "Sample t as min:max:steps");
  wf->add_option("--fix-x", wf_cfg.fixed_values[0], "Fix x (default 0)");
  wf->add_option("--fix-y", wf_cfg.fixed_values[1], "Fix y (default 0)");
  wf->add_option("--fix-z", wf_cfg.fixed_values[2], "Fix z (default 0)");
  wf->add_option("--fix-t", wf_cfg.fixed_values[3], "Fix t (default 0)");
  wf->add_flag("--parseval", wf_cfg.parseval,
               "Include a quadrature norm check in the metadata sidecar");
  wf->add_option("--quadrature-order", wf_cfg.quadrature_order,
                 "Gauss-Hermite order for --parseval (default cutoff + 1)");

  PropagatorConfig prop_cfg;
  auto* prop = app.add_subcommand(
      "propagator", "Evaluate Delta(X, X') both ways and write a CSV table");
  prop->add_option("--cutoff", prop_cfg.cutoff,
                   "Per-mode bound of the mode-label set (>= 0)");
  prop->add_option("--particle-cap", prop_cfg.particle_cap,
                   "Field-space particle cap (>= 1)");
  prop->add_option("--points", prop_cfg.points_path,
                   "Point-pair file: 8 reals per line");
  prop->add_option("--random-pairs", prop_cfg.random_pairs,
                   "Generate K seeded random point pairs instead of --points");
  prop->add_option("--range", prop_cfg.range,
                   "Coordinate range for random pairs (default 2)");
  prop->add_option("--seed", prop_cfg.seed, "Random seed (default 1)");
  prop->add_option("--out", prop_cfg.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (audit->parsed()) return run_audit(audit_cfg);
    if (wf->parsed()) return run_wavefunction(wf_cfg);
    if (prop->parsed()) return run_propagator(prop_cfg);
  } catch (const fock4::io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const fock4::NormLeakError& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
