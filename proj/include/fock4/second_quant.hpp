#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "fock4/position_rep.hpp"
#include "fock4/tensor4.hpp"

namespace fock4 {

/// The set of field modes: every occupation four-tuple with components
/// <= per_mode_max. Unlike the tensor-space Cutoff this bound may be zero
/// (a single mode, the vacuum label).
struct FieldModeSet {
  int per_mode_max;

  explicit FieldModeSet(int m) : per_mode_max(m) {
    if (m < 0) throw std::invalid_argument("per-mode bound must be >= 0");
  }

  std::size_t dims_per_mode() const {
    return static_cast<std::size_t>(per_mode_max) + 1;
  }

  std::size_t count() const {
    const std::size_t k = dims_per_mode();
    return k * k * k * k;
  }

  ModeOccupation occupation_of(std::size_t label) const {
    return {unflatten_index(label, dims_per_mode()), ModeBasis::spacetime};
  }

  std::size_t label_of(const ModeOccupation& occ) const {
    return flat_index(occ.counts, dims_per_mode());
  }

  friend bool operator==(const FieldModeSet&, const FieldModeSet&) = default;
};

/// Sparse occupation function: mode label -> particle count, stored sorted
/// by label with zero counts removed, so equality is structural.
struct OccupationMap {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  int total() const {
    int t = 0;
    for (const auto& [m, c] : entries) t += static_cast<int>(c);
    return t;
  }

  std::uint32_t count(std::uint32_t mode) const {
    for (const auto& [m, c] : entries) {
      if (m == mode) return c;
    }
    return 0;
  }

  OccupationMap with_delta(std::uint32_t mode, int delta) const {
    OccupationMap out;
    out.entries.reserve(entries.size() + 1);
    bool placed = false;
    for (const auto& [m, c] : entries) {
      if (m == mode) {
        const int nc = static_cast<int>(c) + delta;
        if (nc < 0) throw std::out_of_range("occupation would become negative");
        if (nc > 0) out.entries.push_back({m, static_cast<std::uint32_t>(nc)});
        placed = true;
      } else {
        if (!placed && m > mode && delta > 0) {
          out.entries.push_back({mode, static_cast<std::uint32_t>(delta)});
          placed = true;
        }
        out.entries.push_back({m, c});
      }
    }
    if (!placed) {
      if (delta < 0) throw std::out_of_range("occupation would become negative");
      if (delta > 0) out.entries.push_back({mode, static_cast<std::uint32_t>(delta)});
    }
    return out;
  }

  friend bool operator==(const OccupationMap&, const OccupationMap&) = default;
  friend auto operator<=>(const OccupationMap& a, const OccupationMap& b) {
    return a.entries <=> b.entries;
  }
};

/// Sparse superposition over field basis states |N> (normalized number
/// states per mode). Keys are canonical OccupationMaps, so iteration order
/// and equality are deterministic.
struct FieldState {
  FieldModeSet modes;
  int particle_cap;
  std::map<OccupationMap, cplx> terms;

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [k, v] : terms) s += std::norm(v);
    return s;
  }

  void prune() {
    for (auto it = terms.begin(); it != terms.end();) {
      it = it->second == cplx(0.0, 0.0) ? terms.erase(it) : std::next(it);
    }
  }
};

inline FieldState field_vacuum(FieldModeSet modes, int particle_cap) {
  if (particle_cap < 0) throw std::invalid_argument("particle cap must be >= 0");
  FieldState s{modes, particle_cap, {}};
  s.terms[OccupationMap{}] = cplx(1.0, 0.0);
  return s;
}

namespace detail {

inline void check_mode(const FieldState& s, std::size_t mode) {
  if (mode >= s.modes.count()) {
    throw std::out_of_range("field mode label outside the mode set");
  }
}

}  // namespace detail

/// c^dag(N): bosonic creation with the sqrt(count+1) factor. Creating past
/// the particle cap is an error, not a silent truncation.
inline FieldState create_particle(std::size_t mode, const FieldState& state) {
  detail::check_mode(state, mode);
  FieldState out{state.modes, state.particle_cap, {}};
  for (const auto& [occ, coeff] : state.terms) {
    if (occ.total() + 1 > state.particle_cap) {
      throw std::out_of_range("particle cap exceeded");
    }
    const auto c = occ.count(static_cast<std::uint32_t>(mode));
    out.terms[occ.with_delta(static_cast<std::uint32_t>(mode), 1)] +=
        coeff * std::sqrt(static_cast<double>(c) + 1.0);
  }
  out.prune();
  return out;
}

/// c(N): bosonic annihilation with the sqrt(count) factor; kills terms where
/// the mode is unoccupied.
inline FieldState annihilate_particle(std::size_t mode, const FieldState& state) {
  detail::check_mode(state, mode);
  FieldState out{state.modes, state.particle_cap, {}};
  for (const auto& [occ, coeff] : state.terms) {
    const auto c = occ.count(static_cast<std::uint32_t>(mode));
    if (c == 0) continue;
    out.terms[occ.with_delta(static_cast<std::uint32_t>(mode), -1)] +=
        coeff * std::sqrt(static_cast<double>(c));
  }
  out.prune();
  return out;
}

inline cplx field_inner_product(const FieldState& lhs, const FieldState& rhs) {
  if (!(lhs.modes == rhs.modes)) {
    throw std::invalid_argument("field inner product: mode set mismatch");
  }
  // Iterate the smaller map; keys are canonical.
  const FieldState& small = lhs.terms.size() <= rhs.terms.size() ? lhs : rhs;
  const FieldState& large = lhs.terms.size() <= rhs.terms.size() ? rhs : lhs;
  const bool small_is_lhs = &small == &lhs;
  cplx s(0.0, 0.0);
  for (const auto& [occ, v] : small.terms) {
    auto it = large.terms.find(occ);
    if (it == large.terms.end()) continue;
    s += small_is_lhs ? std::conj(v) * it->second : std::conj(it->second) * v;
  }
  return s;
}

/// The field operator at a point:
///   Psi(X)      |Phi> = sum_N phi_N(X) c(N)     |Phi>
///   Psi^dag(X)  |Phi> = sum_N phi_N(X) c^dag(N) |Phi>
/// phi_N is real, so the daggered variant conjugates nothing; the flag keeps
/// the operator/adjoint contract explicit.
inline FieldState apply_field_operator(const SpacetimePoint& point,
                                       const FieldState& state, bool daggered) {
  if (!point.finite()) {
    throw std::invalid_argument("field operator point must be finite");
  }
  const HermiteEvaluator herm(state.modes.per_mode_max);
  FieldState out{state.modes, state.particle_cap, {}};
  if (daggered) {
    for (const auto& [occ, coeff] : state.terms) {
      if (occ.total() + 1 > state.particle_cap) {
        throw std::out_of_range("particle cap exceeded");
      }
      for (std::size_t mode = 0; mode < state.modes.count(); ++mode) {
        const double amp = phi_product(state.modes.occupation_of(mode), point, herm);
        if (amp == 0.0) continue;
        const auto c = occ.count(static_cast<std::uint32_t>(mode));
        out.terms[occ.with_delta(static_cast<std::uint32_t>(mode), 1)] +=
            coeff * amp * std::sqrt(static_cast<double>(c) + 1.0);
      }
    }
  } else {
    for (const auto& [occ, coeff] : state.terms) {
      for (const auto& [mode, c] : occ.entries) {
        const double amp = phi_product(state.modes.occupation_of(mode), point, herm);
        if (amp == 0.0) continue;
        out.terms[occ.with_delta(mode, -1)] +=
            coeff * amp * std::sqrt(static_cast<double>(c));
      }
    }
  }
  out.prune();
  return out;
}

struct PropagatorValue {
  cplx delta;
  SpacetimePoint x;
  SpacetimePoint x2;
  int per_mode_max;
};

/// Delta(X, X') as the literal mode sum  sum_N phi_N(X) phi_N(X') over every
/// label in the mode set, accumulated in flat label order.
inline PropagatorValue propagator_direct(const SpacetimePoint& x,
                                         const SpacetimePoint& x2,
                                         FieldModeSet modes) {
  if (!x.finite() || !x2.finite()) {
    throw std::invalid_argument("propagator points must be finite");
  }
  const HermiteEvaluator herm(modes.per_mode_max);
  std::array<std::vector<double>, 4> left, right;
  for (int axis = 0; axis < 4; ++axis) {
    left[static_cast<std::size_t>(axis)] = herm.phi_all(x.component(axis));
    right[static_cast<std::size_t>(axis)] = herm.phi_all(x2.component(axis));
  }
  double sum = 0.0;
  for (std::size_t label = 0; label < modes.count(); ++label) {
    const auto n = unflatten_index(label, modes.dims_per_mode());
    double term = 1.0;
    for (int axis = 0; axis < 4; ++axis) {
      const auto ni = static_cast<std::size_t>(n[static_cast<std::size_t>(axis)]);
      term *= left[static_cast<std::size_t>(axis)][ni] *
              right[static_cast<std::size_t>(axis)][ni];
    }
    sum += term;
  }
  return {cplx(sum, 0.0), x, x2, modes.per_mode_max};
}

/// Delta(X, X') = <0| Psi(X) Psi^dag(X') |0>, computed operationally through
/// the field machinery: build the two one-particle states Psi^dag|0> and
/// take their inner product. Independent of the mode-sum path above.
inline PropagatorValue propagator_vev(const SpacetimePoint& x,
                                      const SpacetimePoint& x2,
                                      FieldModeSet modes, int particle_cap = 1) {
  if (particle_cap < 1) {
    throw std::invalid_argument("propagator_vev requires particle cap >= 1");
  }
  const FieldState vac = field_vacuum(modes, particle_cap);
  const FieldState bra_side = apply_field_operator(x, vac, true);
  const FieldState ket_side = apply_field_operator(x2, vac, true);
  return {field_inner_product(bra_side, ket_side), x, x2, modes.per_mode_max};
}

}  // namespace fock4
