#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fock4/tensor4.hpp"

namespace fock4 {

/// Orthonormal Hermite functions phi_n(x), the oscillator eigenfunctions
/// with unit L^2 norm:
///
///   phi_0(x)     = pi^(-1/4) exp(-x^2/2)
///   phi_{n+1}(x) = sqrt(2/(n+1)) x phi_n(x) - sqrt(n/(n+1)) phi_{n-1}(x)
///
/// The Gaussian is folded into the recurrence, so values stay O(1) and no
/// factorial is ever formed; the evaluation is stable well past n = 512.
class HermiteEvaluator {
 public:
  explicit HermiteEvaluator(int max_order) : max_order_(max_order) {
    if (max_order < 0) {
      throw std::invalid_argument("hermite max order must be >= 0");
    }
  }

  int max_order() const { return max_order_; }

  double phi(int n, double x) const {
    if (n < 0 || n > max_order_) {
      throw std::out_of_range("hermite order out of range: " +
                              std::to_string(n));
    }
    return phi_unchecked(n, x);
  }

  /// phi_0..phi_max_order at one point, sharing a single recurrence pass.
  std::vector<double> phi_all(double x) const {
    std::vector<double> out(static_cast<std::size_t>(max_order_) + 1);
    double p0 = ground(x);
    out[0] = p0;
    if (max_order_ == 0) return out;
    double p1 = std::sqrt(2.0) * x * p0;
    out[1] = p1;
    for (int n = 1; n < max_order_; ++n) {
      const double p2 = std::sqrt(2.0 / (n + 1)) * x * p1 -
                        std::sqrt(static_cast<double>(n) / (n + 1)) * p0;
      out[static_cast<std::size_t>(n) + 1] = p2;
      p0 = p1;
      p1 = p2;
    }
    return out;
  }

  static double phi_unchecked(int n, double x) {
    double p0 = ground(x);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
      const double p2 = std::sqrt(2.0 / (k + 1)) * x * p1 -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  }

 private:
  static double ground(double x) {
    static const double root4_pi_inv =
        1.0 / std::pow(std::numbers::pi, 0.25);
    return root4_pi_inv * std::exp(-0.5 * x * x);
  }

  int max_order_;
};

struct SpacetimePoint {
  double x, y, z, t;

  double component(int axis) const {
    const std::array<double, 4> v{x, y, z, t};
    return v[static_cast<std::size_t>(axis)];
  }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
           std::isfinite(t);
  }
};

/// phi_N(X) = phi_{N_x}(x) phi_{N_y}(y) phi_{N_z}(z) phi_{N_t}(t).
inline double phi_product(const ModeOccupation& occ, const SpacetimePoint& p,
                          const HermiteEvaluator& herm) {
  double v = 1.0;
  for (int axis = 0; axis < kNumModes; ++axis) {
    v *= herm.phi(occ.counts[static_cast<std::size_t>(axis)],
                  p.component(axis));
  }
  return v;
}

/// Rectangular evaluation grid. Each axis is either sampled over an
/// inclusive [min, max] range or pinned to a fixed value.
struct GridSpec {
  struct Axis {
    bool sampled = false;
    double min = 0.0;
    double max = 0.0;
    int steps = 1;
    double fixed = 0.0;
  };

  std::array<Axis, 4> axes;  // order x, y, z, t

  static GridSpec all_fixed(const SpacetimePoint& p) {
    GridSpec g;
    for (int a = 0; a < 4; ++a) g.axes[static_cast<std::size_t>(a)].fixed = p.component(a);
    return g;
  }

  GridSpec& sample_axis(int axis, double min, double max, int steps) {
    if (!(min < max) || steps < 2) {
      throw std::invalid_argument("grid axis needs min < max and steps >= 2");
    }
    auto& ax = axes[static_cast<std::size_t>(axis)];
    ax = {true, min, max, steps, 0.0};
    return *this;
  }

  GridSpec& fix_axis(int axis, double value) {
    axes[static_cast<std::size_t>(axis)] = {false, 0.0, 0.0, 1, value};
    return *this;
  }

  int axis_count(int axis) const {
    const auto& ax = axes[static_cast<std::size_t>(axis)];
    return ax.sampled ? ax.steps : 1;
  }

  double axis_value(int axis, int i) const {
    const auto& ax = axes[static_cast<std::size_t>(axis)];
    if (!ax.sampled) return ax.fixed;
    return ax.min + (ax.max - ax.min) * static_cast<double>(i) /
                        static_cast<double>(ax.steps - 1);
  }

  std::size_t total_points() const {
    std::size_t n = 1;
    for (int a = 0; a < 4; ++a) n *= static_cast<std::size_t>(axis_count(a));
    return n;
  }

  /// Point for a flat row-major index (x slowest, t fastest).
  SpacetimePoint point(std::size_t flat) const {
    std::array<int, 4> ix{};
    for (int a = 3; a >= 0; --a) {
      const auto n = static_cast<std::size_t>(axis_count(a));
      ix[static_cast<std::size_t>(a)] = static_cast<int>(flat % n);
      flat /= n;
    }
    return {axis_value(0, ix[0]), axis_value(1, ix[1]), axis_value(2, ix[2]),
            axis_value(3, ix[3])};
  }
};

struct WavefunctionGrid {
  GridSpec grid;
  Cutoff cutoff;
  std::vector<cplx> samples;  // row-major, same axis order as GridSpec
};

/// Psi(X) = sum_N c(N) phi_N(X) at every grid point. Linear in the state.
/// Per point the sum runs over the nonzero coefficients in flat-index order,
/// so results do not depend on how the points are scheduled.
inline WavefunctionGrid synthesize(const StateVector& state,
                                   const GridSpec& grid) {
  const int n_max = state.cutoff.n_max;
  const HermiteEvaluator herm(n_max);

  // Nonzero coefficients, in flat order.
  std::vector<std::pair<std::array<int, 4>, cplx>> terms;
  for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
    if (state.coeffs[i] != cplx(0.0, 0.0)) {
      terms.push_back({unflatten_index(i, state.cutoff.mode_dim()),
                       state.coeffs[i]});
    }
  }

  // phi tables per axis: value of phi_n at each sampled position.
  std::array<std::vector<std::vector<double>>, 4> table;
  for (int a = 0; a < 4; ++a) {
    const int count = grid.axis_count(a);
    auto& tab = table[static_cast<std::size_t>(a)];
    tab.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      tab[static_cast<std::size_t>(i)] = herm.phi_all(grid.axis_value(a, i));
    }
  }

  WavefunctionGrid out{grid, state.cutoff, {}};
  out.samples.assign(grid.total_points(), cplx(0.0, 0.0));
  const auto nx = static_cast<std::size_t>(grid.axis_count(0));
  const auto ny = static_cast<std::size_t>(grid.axis_count(1));
  const auto nz = static_cast<std::size_t>(grid.axis_count(2));
  const auto nt = static_cast<std::size_t>(grid.axis_count(3));
  std::size_t flat = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < nz; ++k) {
        for (std::size_t l = 0; l < nt; ++l, ++flat) {
          cplx acc(0.0, 0.0);
          for (const auto& [n, c] : terms) {
            acc += c * (table[0][i][static_cast<std::size_t>(n[0])] *
                        table[1][j][static_cast<std::size_t>(n[1])] *
                        table[2][k][static_cast<std::size_t>(n[2])] *
                        table[3][l][static_cast<std::size_t>(n[3])]);
          }
          out.samples[flat] = acc;
        }
      }
    }
  }
  return out;
}

/// Gauss-Hermite rule of order q, stored with the Gaussian absorbed into the
/// weights: sum_i weight[i] g(node[i]) integrates g exactly whenever
/// g(x) = p(x) exp(-x^2) with deg p <= 2q - 1. Keeping the weights in this
/// form avoids exp(x^2) factors entirely.
struct QuadratureRule {
  int order;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline QuadratureRule gauss_hermite(int q) {
  if (q < 1) throw std::invalid_argument("quadrature order must be >= 1");
  const HermiteEvaluator herm(q);

  // Newton on phi_q, positive roots found largest-first with the usual
  // asymptotic starting guesses; phi_q'(x) = sqrt(2q) phi_{q-1} - x phi_q.
  std::vector<double> roots;
  const int half = q / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * q + 1.0) -
          1.85575 * std::pow(2.0 * q + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(q), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[static_cast<std::size_t>(i) - 2];
    }
    for (int it = 0; it < 100; ++it) {
      const double pq = herm.phi(q, z);
      const double pqm = herm.phi(q - 1, z);
      const double dpq = std::sqrt(2.0 * q) * pqm - z * pq;
      const double dz = pq / dpq;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    roots.push_back(z);
  }

  QuadratureRule rule{q, {}, {}};
  for (int i = 0; i < half; ++i) {
    rule.nodes.push_back(-roots[static_cast<std::size_t>(i)]);
  }
  if (q % 2 == 1) rule.nodes.push_back(0.0);
  for (int i = half - 1; i >= 0; --i) {
    rule.nodes.push_back(roots[static_cast<std::size_t>(i)]);
  }

  // Reciprocal Christoffel sum over phi_0..phi_{q-1}.
  const HermiteEvaluator lower(q - 1);
  for (double x : rule.nodes) {
    const auto vals = lower.phi_all(x);
    double s = 0.0;
    for (double v : vals) s += v * v;
    rule.weights.push_back(1.0 / s);
  }
  return rule;
}

/// Returns (sum_N |c(N)|^2, integral of |Psi|^2 over d^4X by tensor-product
/// quadrature). The two agree for states within the cutoff whenever the
/// rule is sharp enough, which is the numerical content of the coefficient /
/// wavefunction correspondence.
inline std::pair<double, double> parseval_check(const StateVector& state,
                                                int quadrature_order) {
  const int n_max = state.cutoff.n_max;
  if (quadrature_order < n_max + 1) {
    throw std::invalid_argument(
        "parseval: quadrature order must be >= n_max + 1");
  }
  const QuadratureRule rule = gauss_hermite(quadrature_order);
  const HermiteEvaluator herm(n_max);

  std::vector<std::pair<std::array<int, 4>, cplx>> terms;
  for (std::size_t i = 0; i < state.coeffs.size(); ++i) {
    if (state.coeffs[i] != cplx(0.0, 0.0)) {
      terms.push_back({unflatten_index(i, state.cutoff.mode_dim()),
                       state.coeffs[i]});
    }
  }

  const auto nq = static_cast<std::size_t>(rule.order);
  std::vector<std::vector<double>> phi_at_node(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    phi_at_node[i] = herm.phi_all(rule.nodes[i]);
  }

  double quad = 0.0;
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t k = 0; k < nq; ++k) {
        for (std::size_t l = 0; l < nq; ++l) {
          cplx psi(0.0, 0.0);
          for (const auto& [n, c] : terms) {
            psi += c * (phi_at_node[i][static_cast<std::size_t>(n[0])] *
                        phi_at_node[j][static_cast<std::size_t>(n[1])] *
                        phi_at_node[k][static_cast<std::size_t>(n[2])] *
                        phi_at_node[l][static_cast<std::size_t>(n[3])]);
          }
          quad += rule.weights[i] * rule.weights[j] * rule.weights[k] *
                  rule.weights[l] * std::norm(psi);
        }
      }
    }
  }
  return {state.norm_sq(), quad};
}

}  // namespace fock4
