#pragma once

// Brute-force dense complex matrix arithmetic used as an independent check
// on the sparse implementation. Everything here is written against plain
// row-major vectors with triple loops; only to_dense() is shared with the
// code under test. Test-scale dimensions only.

#include <complex>
#include <cstddef>
#include <vector>

#include "fock4/sparse.hpp"

namespace oracle {

using fock4::cplx;

struct Dense {
  std::size_t dim = 0;
  std::vector<cplx> v;  // row-major dim*dim

  cplx& at(std::size_t r, std::size_t c) { return v[r * dim + c]; }
  cplx at(std::size_t r, std::size_t c) const { return v[r * dim + c]; }
};

inline Dense zeros(std::size_t dim) {
  return {dim, std::vector<cplx>(dim * dim, cplx(0.0, 0.0))};
}

inline Dense identity(std::size_t dim) {
  Dense m = zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cplx(1.0, 0.0);
  return m;
}

inline Dense from_sparse(const fock4::SparseMatrix& s) {
  return {s.dim(), s.to_dense()};
}

inline Dense mul(const Dense& a, const Dense& b) {
  Dense m = zeros(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < a.dim; ++j) {
        m.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return m;
}

inline Dense add(const Dense& a, const Dense& b) {
  Dense m = a;
  for (std::size_t i = 0; i < m.v.size(); ++i) m.v[i] += b.v[i];
  return m;
}

inline Dense sub(const Dense& a, const Dense& b) {
  Dense m = a;
  for (std::size_t i = 0; i < m.v.size(); ++i) m.v[i] -= b.v[i];
  return m;
}

inline Dense scale(cplx s, const Dense& a) {
  Dense m = a;
  for (auto& x : m.v) x *= s;
  return m;
}

inline Dense dagger(const Dense& a) {
  Dense m = zeros(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      m.at(i, j) = std::conj(a.at(j, i));
    }
  }
  return m;
}

inline Dense commutator(const Dense& a, const Dense& b) {
  return sub(mul(a, b), mul(b, a));
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense m = zeros(a.dim * b.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      const cplx aij = a.at(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.dim; ++k) {
        for (std::size_t l = 0; l < b.dim; ++l) {
          m.at(i * b.dim + k, j * b.dim + l) = aij * b.at(k, l);
        }
      }
    }
  }
  return m;
}

inline double max_abs(const Dense& a) {
  double m = 0.0;
  for (const auto& x : a.v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  return max_abs(sub(a, b));
}

/// Largest entry magnitude over a leading sub-block (rows and columns below
/// `keep`), the single-mode analogue of an interior restriction.
inline double max_abs_block(const Dense& a, std::size_t keep) {
  double m = 0.0;
  for (std::size_t i = 0; i < keep; ++i) {
    for (std::size_t j = 0; j < keep; ++j) {
      m = std::max(m, std::abs(a.at(i, j)));
    }
  }
  return m;
}

/// Dense exp(A) by scaling-and-squaring with a Taylor core.
inline Dense expm(const Dense& a) {
  double norm1 = 0.0;
  for (std::size_t j = 0; j < a.dim; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim; ++i) s += std::abs(a.at(i, j));
    norm1 = std::max(norm1, s);
  }
  int squarings = 0;
  double scale_factor = 1.0;
  while (norm1 * scale_factor > 0.5) {
    scale_factor *= 0.5;
    ++squarings;
  }
  const Dense as = scale(cplx(scale_factor, 0.0), a);
  Dense result = identity(a.dim);
  Dense term = identity(a.dim);
  for (int k = 1; k <= 40; ++k) {
    term = scale(cplx(1.0 / k, 0.0), mul(term, as));
    result = add(result, term);
    if (max_abs(term) < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

inline std::vector<cplx> apply(const Dense& a, const std::vector<cplx>& x) {
  std::vector<cplx> y(a.dim, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      y[i] += a.at(i, j) * x[j];
    }
  }
  return y;
}

}  // namespace oracle
