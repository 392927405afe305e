#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fock4/fock.hpp"
#include "fock4/sparse.hpp"

namespace fock4 {

inline constexpr int kNumModes = 4;

/// The four-mode space carries two interchangeable mode labelings. The
/// underlying storage and index map are identical; the basis tag is pure
/// metadata.
enum class ModeBasis { spinor, spacetime };

inline const char* mode_label(ModeBasis basis, int mode) {
  static constexpr const char* spinor[] = {"a", "b", "c", "d"};
  static constexpr const char* spacetime[] = {"x", "y", "z", "t"};
  return basis == ModeBasis::spinor ? spinor[mode] : spacetime[mode];
}

struct ModeId {
  int index;  // 0..3, mode 0 is slowest in the flat order
  ModeBasis basis;

  ModeId(int i, ModeBasis b) : index(i), basis(b) {
    if (i < 0 || i >= kNumModes) {
      throw std::invalid_argument("mode index must be in 0..3");
    }
  }
};

/// Occupation-number four-tuple labeling a tensor-space basis state.
struct ModeOccupation {
  std::array<int, kNumModes> counts;
  ModeBasis basis = ModeBasis::spacetime;

  bool within(int n_max) const {
    for (int c : counts) {
      if (c < 0 || c > n_max) return false;
    }
    return true;
  }

  int total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

  friend bool operator==(const ModeOccupation& a, const ModeOccupation& b) {
    return a.counts == b.counts;
  }
};

// Flat index map: row-major with mode 0 slowest and mode 3 fastest.
// `dims_per_mode` is n_max + 1. The map is the published storage order for
// every file format, so it must never change.

inline std::size_t flat_index(const std::array<int, kNumModes>& counts,
                              std::size_t dims_per_mode) {
  std::size_t idx = 0;
  for (int m = 0; m < kNumModes; ++m) {
    const int c = counts[m];
    if (c < 0 || static_cast<std::size_t>(c) >= dims_per_mode) {
      throw std::out_of_range("occupation exceeds cutoff");
    }
    idx = idx * dims_per_mode + static_cast<std::size_t>(c);
  }
  return idx;
}

inline std::array<int, kNumModes> unflatten_index(std::size_t idx,
                                                  std::size_t dims_per_mode) {
  std::array<int, kNumModes> counts{};
  for (int m = kNumModes - 1; m >= 0; --m) {
    counts[m] = static_cast<int>(idx % dims_per_mode);
    idx /= dims_per_mode;
  }
  if (idx != 0) throw std::out_of_range("flat index exceeds space dimension");
  return counts;
}

inline std::size_t index(const ModeOccupation& occ, Cutoff cutoff) {
  return flat_index(occ.counts, cutoff.mode_dim());
}

inline ModeOccupation deindex(std::size_t idx, Cutoff cutoff,
                              ModeBasis basis = ModeBasis::spacetime) {
  return {unflatten_index(idx, cutoff.mode_dim()), basis};
}

inline std::size_t space_dim(Cutoff cutoff) {
  const std::size_t k = cutoff.mode_dim();
  return k * k * k * k;
}

/// Complex coefficients c(N) over the flattened tensor-space basis.
struct StateVector {
  Cutoff cutoff;
  std::vector<cplx> coeffs;

  explicit StateVector(Cutoff c)
      : cutoff(c), coeffs(space_dim(c), cplx(0.0, 0.0)) {}

  cplx& at(const ModeOccupation& occ) { return coeffs[index(occ, cutoff)]; }
  cplx at(const ModeOccupation& occ) const {
    return coeffs[index(occ, cutoff)];
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }
};

inline StateVector vacuum_state(Cutoff cutoff) {
  StateVector v(cutoff);
  v.coeffs[0] = cplx(1.0, 0.0);
  return v;
}

/// Unit coordinate vector at index(occ). The same state is reachable by
/// applying lifted creators to the vacuum with 1/sqrt(N!) normalization;
/// tests hold the two constructions together.
inline StateVector build_basis_state(const ModeOccupation& occ,
                                     Cutoff cutoff) {
  if (!occ.within(cutoff.n_max)) {
    throw std::out_of_range("occupation exceeds cutoff");
  }
  StateVector v(cutoff);
  v.coeffs[index(occ, cutoff)] = cplx(1.0, 0.0);
  return v;
}

/// <lhs|rhs> = sum_N conj(d(N)) c(N); conjugate-linear in lhs.
inline cplx inner_product(const StateVector& lhs, const StateVector& rhs) {
  if (lhs.cutoff != rhs.cutoff) {
    throw std::invalid_argument("inner product: cutoff mismatch");
  }
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs.size(); ++i) {
    s += std::conj(lhs.coeffs[i]) * rhs.coeffs[i];
  }
  return s;
}

/// Sparse linear operator on the full four-mode space. When the operator is
/// a single-mode lift, `factors` records which kind sits on which mode.
struct FourModeOperator {
  Cutoff cutoff;
  SparseMatrix matrix;
  std::optional<std::array<LadderKind, kNumModes>> factors;
};

inline FourModeOperator four_mode_identity(Cutoff cutoff) {
  return {cutoff, SparseMatrix::identity(space_dim(cutoff)),
          std::array<LadderKind, kNumModes>{
              LadderKind::identity, LadderKind::identity, LadderKind::identity,
              LadderKind::identity}};
}

/// Kronecker lift I (x) ... (x) op (x) ... (x) I placing `op` on `mode`.
inline FourModeOperator lift(const LadderMatrix& op, ModeId mode,
                             Cutoff cutoff) {
  if (op.cutoff != cutoff) {
    throw std::invalid_argument("lift: operator cutoff does not match space cutoff");
  }
  const std::size_t k = cutoff.mode_dim();
  const std::size_t dim = space_dim(cutoff);
  std::size_t stride = 1;
  for (int m = kNumModes - 1; m > mode.index; --m) stride *= k;

  // Column offsets of the single-mode entries, grouped by single-mode row.
  std::vector<std::vector<std::pair<std::ptrdiff_t, cplx>>> mode_rows(k);
  op.matrix.for_each_entry([&](std::size_t r, std::size_t c, cplx v) {
    mode_rows[r].push_back({(static_cast<std::ptrdiff_t>(c) -
                             static_cast<std::ptrdiff_t>(r)) *
                                static_cast<std::ptrdiff_t>(stride),
                            v});
  });

  std::vector<SparseMatrix::Triplet> t;
  t.reserve(dim);
  for (std::size_t row = 0; row < dim; ++row) {
    const std::size_t n_mode = (row / stride) % k;
    for (const auto& [diff, v] : mode_rows[n_mode]) {
      const std::size_t col =
          static_cast<std::size_t>(static_cast<std::ptrdiff_t>(row) + diff);
      t.push_back({row, col, v});
    }
  }

  std::array<LadderKind, kNumModes> factors{
      LadderKind::identity, LadderKind::identity, LadderKind::identity,
      LadderKind::identity};
  factors[static_cast<std::size_t>(mode.index)] = op.kind;
  return {cutoff, SparseMatrix::from_triplets(dim, std::move(t)), factors};
}

/// 0/1 diagonal selecting states with every mode occupation <= n_max - margin.
inline FourModeOperator interior_projector4(Cutoff cutoff, int margin) {
  if (margin < 0 || margin >= cutoff.n_max) {
    throw std::invalid_argument("interior margin must satisfy 0 <= margin < n_max");
  }
  const std::size_t dim = space_dim(cutoff);
  const int keep = cutoff.n_max - margin;
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto counts = unflatten_index(i, cutoff.mode_dim());
    bool inside = true;
    for (int c : counts) inside = inside && (c <= keep);
    if (inside) t.push_back({i, i, cplx(1.0, 0.0)});
  }
  return {cutoff, SparseMatrix::from_triplets(dim, std::move(t)), std::nullopt};
}

inline StateVector apply(const FourModeOperator& op, const StateVector& state) {
  if (op.cutoff != state.cutoff) {
    throw std::invalid_argument("apply: cutoff mismatch");
  }
  StateVector out(state.cutoff);
  op.matrix.apply(std::span<const cplx>(state.coeffs),
                  std::span<cplx>(out.coeffs));
  return out;
}

/// Interior-projected deviation P (A - B) P, measured as the largest entry
/// magnitude. This is the residual all algebra checks report.
inline double interior_residual(const SparseMatrix& a, const SparseMatrix& b,
                                Cutoff cutoff, int margin) {
  const auto p = interior_projector4(cutoff, margin).matrix;
  return (p * (a - b) * p).max_abs();
}

}  // namespace fock4
