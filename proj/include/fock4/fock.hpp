#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fock4/sparse.hpp"

namespace fock4 {

/// Largest occupation number retained per mode. The single-mode space has
/// dimension n_max + 1.
struct Cutoff {
  int n_max;

  explicit Cutoff(int n) : n_max(n) {
    if (n < 1) {
      throw std::invalid_argument("cutoff must satisfy n_max >= 1, got " +
                                  std::to_string(n));
    }
  }

  std::size_t mode_dim() const { return static_cast<std::size_t>(n_max) + 1; }

  friend bool operator==(const Cutoff&, const Cutoff&) = default;
};

enum class LadderKind { annihilate, create, number, identity };

inline const char* to_string(LadderKind k) {
  switch (k) {
    case LadderKind::annihilate: return "annihilate";
    case LadderKind::create: return "create";
    case LadderKind::number: return "number";
    case LadderKind::identity: return "identity";
  }
  return "?";
}

/// Single-mode operator on the truncated occupation space.
///
/// Matrix elements are the exact ladder values: <N-1|a|N> = sqrt(N) and
/// <N+1|a^dag|N> = sqrt(N+1). Truncation is a hard cutoff: a^dag annihilates
/// |n_max>, so [a, a^dag] = 1 holds on occupations below n_max and picks up
/// a single -n_max deviation on the diagonal at N = n_max.
struct LadderMatrix {
  LadderKind kind;
  Cutoff cutoff;
  SparseMatrix matrix;
};

inline LadderMatrix make_ladder(LadderKind kind, Cutoff cutoff) {
  const std::size_t dim = cutoff.mode_dim();
  std::vector<SparseMatrix::Triplet> t;
  switch (kind) {
    case LadderKind::annihilate:
      for (std::size_t n = 1; n < dim; ++n) {
        t.push_back({n - 1, n, cplx(std::sqrt(static_cast<double>(n)), 0.0)});
      }
      break;
    case LadderKind::create:
      for (std::size_t n = 0; n + 1 < dim; ++n) {
        t.push_back(
            {n + 1, n, cplx(std::sqrt(static_cast<double>(n + 1)), 0.0)});
      }
      break;
    case LadderKind::number:
      for (std::size_t n = 1; n < dim; ++n) {
        t.push_back({n, n, cplx(static_cast<double>(n), 0.0)});
      }
      break;
    case LadderKind::identity:
      return {kind, cutoff, SparseMatrix::identity(dim)};
  }
  return {kind, cutoff, SparseMatrix::from_triplets(dim, std::move(t))};
}

/// Diagonal 0/1 matrix selecting occupation numbers <= n_max - margin.
/// Operator identities that truncation breaks at the boundary hold exactly
/// on the range of this projector.
inline LadderMatrix interior_projector(Cutoff cutoff, int margin) {
  if (margin < 0 || margin >= cutoff.n_max) {
    throw std::invalid_argument("interior margin must satisfy 0 <= margin < n_max");
  }
  const std::size_t keep = cutoff.mode_dim() - static_cast<std::size_t>(margin);
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t n = 0; n < keep; ++n) {
    t.push_back({n, n, cplx(1.0, 0.0)});
  }
  return {LadderKind::identity, cutoff,
          SparseMatrix::from_triplets(cutoff.mode_dim(), std::move(t))};
}

}  // namespace fock4
