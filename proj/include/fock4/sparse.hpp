#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fock4 {

using cplx = std::complex<double>;

/// Square sparse matrix in CSR form with sorted, unique column indices per
/// row. All arithmetic keeps rows sorted, so every operation is
/// deterministic: the same inputs always produce the same entry order and
/// the same floating-point results.
class SparseMatrix {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
  };

  explicit SparseMatrix(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0) {}

  static SparseMatrix identity(std::size_t dim) {
    SparseMatrix m(dim);
    m.col_.resize(dim);
    m.val_.assign(dim, cplx(1.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
      m.col_[i] = static_cast<std::uint32_t>(i);
      m.row_ptr_[i + 1] = i + 1;
    }
    return m;
  }

  static SparseMatrix diagonal(std::vector<cplx> values) {
    SparseMatrix m(values.size());
    std::vector<Triplet> t;
    t.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      t.push_back({i, i, values[i]});
    }
    return from_triplets(values.size(), t);
  }

  /// Duplicate (row, col) pairs are summed; exact zeros are dropped.
  static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> t) {
    for (const auto& e : t) {
      if (e.row >= dim || e.col >= dim) {
        throw std::invalid_argument("sparse triplet index out of range");
      }
    }
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(dim);
    m.col_.reserve(t.size());
    m.val_.reserve(t.size());
    std::size_t i = 0;
    for (std::size_t row = 0; row < dim; ++row) {
      while (i < t.size() && t[i].row == row) {
        cplx v = t[i].value;
        std::size_t col = t[i].col;
        ++i;
        while (i < t.size() && t[i].row == row && t[i].col == col) {
          v += t[i].value;
          ++i;
        }
        if (v != cplx(0.0, 0.0)) {
          m.col_.push_back(static_cast<std::uint32_t>(col));
          m.val_.push_back(v);
        }
      }
      m.row_ptr_[row + 1] = m.col_.size();
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return val_.size(); }

  cplx coeff(std::size_t row, std::size_t col) const {
    auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
    if (it == last || *it != col) return cplx(0.0, 0.0);
    return val_[static_cast<std::size_t>(it - col_.begin())];
  }

  /// y = A x
  void apply(std::span<const cplx> x, std::span<cplx> y) const {
    if (x.size() != dim_ || y.size() != dim_) {
      throw std::invalid_argument("sparse apply: vector size mismatch");
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        acc += val_[k] * x[col_[k]];
      }
      y[r] = acc;
    }
  }

  std::vector<cplx> apply(const std::vector<cplx>& x) const {
    std::vector<cplx> y(dim_);
    apply(std::span<const cplx>(x), std::span<cplx>(y));
    return y;
  }

  SparseMatrix dagger() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for_each_entry([&](std::size_t r, std::size_t c, cplx v) {
      t.push_back({c, r, std::conj(v)});
    });
    return from_triplets(dim_, std::move(t));
  }

  template <typename F>
  void for_each_entry(F&& f) const {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        f(r, static_cast<std::size_t>(col_[k]), val_[k]);
      }
    }
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    return merge(a, b, cplx(1.0, 0.0));
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    return merge(a, b, cplx(-1.0, 0.0));
  }

  friend SparseMatrix operator*(cplx s, const SparseMatrix& a) {
    SparseMatrix m = a;
    for (auto& v : m.val_) v *= s;
    return m;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.dim_ != b.dim_) {
      throw std::invalid_argument("sparse product: dimension mismatch");
    }
    SparseMatrix m(a.dim_);
    std::vector<cplx> acc(a.dim_, cplx(0.0, 0.0));
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < a.dim_; ++r) {
      touched.clear();
      for (std::size_t ka = a.row_ptr_[r]; ka < a.row_ptr_[r + 1]; ++ka) {
        const cplx av = a.val_[ka];
        const std::size_t mid = a.col_[ka];
        for (std::size_t kb = b.row_ptr_[mid]; kb < b.row_ptr_[mid + 1]; ++kb) {
          const std::uint32_t c = b.col_[kb];
          if (acc[c] == cplx(0.0, 0.0)) touched.push_back(c);
          acc[c] += av * b.val_[kb];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (acc[c] != cplx(0.0, 0.0)) {
          m.col_.push_back(c);
          m.val_.push_back(acc[c]);
        }
        acc[c] = cplx(0.0, 0.0);
      }
      m.row_ptr_[r + 1] = m.col_.size();
    }
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : val_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Maximum absolute column sum.
  double one_norm() const {
    std::vector<double> col_sum(dim_, 0.0);
    for_each_entry([&](std::size_t, std::size_t c, cplx v) {
      col_sum[c] += std::abs(v);
    });
    double m = 0.0;
    for (double s : col_sum) m = std::max(m, s);
    return m;
  }

  /// Row-major dense copy. Intended for brute-force verification at small
  /// dimensions; quadratic in memory.
  std::vector<cplx> to_dense() const {
    std::vector<cplx> d(dim_ * dim_, cplx(0.0, 0.0));
    for_each_entry([&](std::size_t r, std::size_t c, cplx v) {
      d[r * dim_ + c] = v;
    });
    return d;
  }

 private:
  static SparseMatrix merge(const SparseMatrix& a, const SparseMatrix& b,
                            cplx bs) {
    if (a.dim_ != b.dim_) {
      throw std::invalid_argument("sparse sum: dimension mismatch");
    }
    SparseMatrix m(a.dim_);
    m.col_.reserve(a.nnz() + b.nnz());
    m.val_.reserve(a.nnz() + b.nnz());
    for (std::size_t r = 0; r < a.dim_; ++r) {
      std::size_t ka = a.row_ptr_[r];
      std::size_t kb = b.row_ptr_[r];
      while (ka < a.row_ptr_[r + 1] || kb < b.row_ptr_[r + 1]) {
        std::uint32_t ca = ka < a.row_ptr_[r + 1] ? a.col_[ka] : UINT32_MAX;
        std::uint32_t cb = kb < b.row_ptr_[r + 1] ? b.col_[kb] : UINT32_MAX;
        std::uint32_t c;
        cplx v;
        if (ca < cb) {
          c = ca;
          v = a.val_[ka++];
        } else if (cb < ca) {
          c = cb;
          v = bs * b.val_[kb++];
        } else {
          c = ca;
          v = a.val_[ka++] + bs * b.val_[kb++];
        }
        if (v != cplx(0.0, 0.0)) {
          m.col_.push_back(c);
          m.val_.push_back(v);
        }
      }
      m.row_ptr_[r + 1] = m.col_.size();
    }
    return m;
  }

  std::size_t dim_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<cplx> val_;
};

inline SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) {
  return a * b - b * a;
}

}  // namespace fock4
