#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "fock4/spinor_basis.hpp"
#include "fock4/tensor4.hpp"

using fock4::cplx;
using fock4::Cutoff;
using fock4::SpinorAmplitude;

TEST_CASE("component map on unit vectors") {
  const auto w = fock4::to_xyzt({1.0, 0.0, 0.0, 0.0});
  CHECK(w.x == 0.5);
  CHECK(w.y == 0.5);
  CHECK(w.z == 0.5);
  CHECK(w.t == 0.5);

  const auto w2 = fock4::to_xyzt({0.5, 0.5, 0.5, 0.5});
  CHECK(w2.x == 0.0);
  CHECK(w2.y == 0.0);
  CHECK(w2.z == 0.0);
  CHECK(w2.t == 1.0);
}

TEST_CASE("round trip through the component map is the identity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const SpinorAmplitude s{dist(rng), dist(rng), dist(rng), dist(rng)};
    const auto back = fock4::from_xyzt(fock4::to_xyzt(s));
    CHECK(std::abs(back.a - s.a) < 1e-14);
    CHECK(std::abs(back.b - s.b) < 1e-14);
    CHECK(std::abs(back.c - s.c) < 1e-14);
    CHECK(std::abs(back.d - s.d) < 1e-14);
  }
}

TEST_CASE("spinor reconstructed from xyzt components is (a+bi, c+di)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const SpinorAmplitude s{dist(rng), dist(rng), dist(rng), dist(rng)};
    const auto u = fock4::spinor_from_xyzt(fock4::to_xyzt(s));
    CHECK(std::abs(u[0] - cplx(s.a, s.b)) < 1e-14);
    CHECK(std::abs(u[1] - cplx(s.c, s.d)) < 1e-14);
  }
}

TEST_CASE("rotation matrix is orthogonal") {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 4; ++k) {
        dot += fock4::kBasisRotation[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
               fock4::kBasisRotation[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
  }
}

TEST_CASE("pauli constants: squares, trace, hermiticity") {
  auto mul = [](const fock4::Pauli& a, const fock4::Pauli& b) {
    fock4::Pauli m{};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(i)][0] * b[0][static_cast<std::size_t>(j)] +
            a[static_cast<std::size_t>(i)][1] * b[1][static_cast<std::size_t>(j)];
      }
    }
    return m;
  };
  for (const auto& sigma : {fock4::kSigmaX, fock4::kSigmaY, fock4::kSigmaZ}) {
    const auto sq = mul(sigma, sigma);
    CHECK(sq[0][0] == cplx(1.0, 0.0));
    CHECK(sq[1][1] == cplx(1.0, 0.0));
    CHECK(sq[0][1] == cplx(0.0, 0.0));
    CHECK(sq[1][0] == cplx(0.0, 0.0));
    CHECK(sigma[0][0] + sigma[1][1] == cplx(0.0, 0.0));   // traceless
    CHECK(sigma[0][1] == std::conj(sigma[1][0]));          // hermitian
  }
  CHECK(fock4::kSigmaT[0][0] == cplx(1.0, 0.0));
  CHECK(fock4::kSigmaT[1][1] == cplx(1.0, 0.0));
  CHECK(fock4::kSigmaT[0][1] == cplx(0.0, 0.0));
}

TEST_CASE("rotated annihilators keep canonical commutators on the interior") {
  const Cutoff cutoff(4);
  const auto rotated = fock4::lift_basis_change(cutoff);

  for (int w = 0; w < 4; ++w) {
    for (int w2 = 0; w2 < 4; ++w2) {
      const auto comm = fock4::commutator(
          rotated[static_cast<std::size_t>(w)].matrix,
          rotated[static_cast<std::size_t>(w2)].matrix.dagger());
      const auto expected =
          w == w2 ? fock4::SparseMatrix::identity(fock4::space_dim(cutoff))
                  : fock4::SparseMatrix(fock4::space_dim(cutoff));
      CHECK(fock4::interior_residual(comm, expected, cutoff, 1) < 1e-12);
      // Annihilator pairs commute exactly, boundary included.
      CHECK(fock4::commutator(rotated[static_cast<std::size_t>(w)].matrix,
                              rotated[static_cast<std::size_t>(w2)].matrix)
                .max_abs() < 1e-15);
    }
  }
}

TEST_CASE("rotated annihilators agree with a brute-force dense rotation") {
  const Cutoff cutoff(2);
  const auto rotated = fock4::lift_basis_change(cutoff);
  const auto a = fock4::make_ladder(fock4::LadderKind::annihilate, cutoff);

  const auto ident = oracle::identity(cutoff.mode_dim());
  const auto ad = oracle::from_sparse(a.matrix);
  std::array<oracle::Dense, 4> lifted{
      oracle::kron(ad, oracle::kron(ident, oracle::kron(ident, ident))),
      oracle::kron(ident, oracle::kron(ad, oracle::kron(ident, ident))),
      oracle::kron(ident, oracle::kron(ident, oracle::kron(ad, ident))),
      oracle::kron(ident, oracle::kron(ident, oracle::kron(ident, ad)))};
  for (int w = 0; w < 4; ++w) {
    auto expected = oracle::zeros(fock4::space_dim(cutoff));
    for (int j = 0; j < 4; ++j) {
      expected = oracle::add(
          expected,
          oracle::scale(cplx(fock4::kBasisRotation[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)], 0.0),
                        lifted[static_cast<std::size_t>(j)]));
    }
    CHECK(oracle::max_abs_diff(
              oracle::from_sparse(rotated[static_cast<std::size_t>(w)].matrix),
              expected) == 0.0);
  }
}
