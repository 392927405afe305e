#pragma once

#include <array>
#include <complex>

#include "fock4/fock.hpp"
#include "fock4/tensor4.hpp"

namespace fock4 {

/// Real components of a two-component spinor u = (a + b i, c + d i). A
/// normalized single unit carries a^2 + b^2 + c^2 + d^2 = 1; the constraint
/// applies to these classical amplitudes only, never to operators.
struct SpinorAmplitude {
  double a, b, c, d;

  double norm_sq() const { return a * a + b * b + c * c + d * d; }
};

struct XyztComponents {
  double x, y, z, t;
};

/// Orthogonal change of component basis between (a,b,c,d) and
/// (a_x,a_y,a_z,a_t). Rows are the xyzt components expressed in abcd.
inline constexpr std::array<std::array<double, 4>, 4> kBasisRotation = {{
    {0.5, -0.5, 0.5, -0.5},   // a_x = (a - b + c - d)/2
    {0.5, -0.5, -0.5, 0.5},   // a_y = (a - b - c + d)/2
    {0.5, 0.5, -0.5, -0.5},   // a_z = (a + b - c - d)/2
    {0.5, 0.5, 0.5, 0.5},     // a_t = (a + b + c + d)/2
}};

inline XyztComponents to_xyzt(const SpinorAmplitude& s) {
  const std::array<double, 4> v{s.a, s.b, s.c, s.d};
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) w[i] += kBasisRotation[i][j] * v[j];
  }
  return {w[0], w[1], w[2], w[3]};
}

/// Inverse map; the rotation is orthogonal so the inverse is the transpose.
inline SpinorAmplitude from_xyzt(const XyztComponents& w) {
  const std::array<double, 4> v{w.x, w.y, w.z, w.t};
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s[i] += kBasisRotation[j][i] * v[j];
  }
  return {s[0], s[1], s[2], s[3]};
}

/// Reconstructs the spinor from xyzt components,
///   u1 = (a_x+a_y+a_z+a_t)/2 + (-a_x-a_y+a_z+a_t)/2 i
///   u2 = (a_x-a_y-a_z+a_t)/2 + (-a_x+a_y-a_z+a_t)/2 i,
/// which must agree with (a + b i, c + d i).
inline std::array<cplx, 2> spinor_from_xyzt(const XyztComponents& w) {
  return {cplx(0.5 * (w.x + w.y + w.z + w.t), 0.5 * (-w.x - w.y + w.z + w.t)),
          cplx(0.5 * (w.x - w.y - w.z + w.t), 0.5 * (-w.x + w.y - w.z + w.t))};
}

// Pauli-basis constants. The xyzt components correspond to combinations of
// Pauli eigenvectors; the matrices are kept as documentation constants and
// for the invariant sigma_w^2 = 1.
using Pauli = std::array<std::array<cplx, 2>, 2>;

inline constexpr Pauli kSigmaX = {{{cplx(0, 0), cplx(1, 0)},
                                   {cplx(1, 0), cplx(0, 0)}}};
inline constexpr Pauli kSigmaY = {{{cplx(0, 0), cplx(0, -1)},
                                   {cplx(0, 1), cplx(0, 0)}}};
inline constexpr Pauli kSigmaZ = {{{cplx(1, 0), cplx(0, 0)},
                                   {cplx(0, 0), cplx(-1, 0)}}};
inline constexpr Pauli kSigmaT = {{{cplx(1, 0), cplx(0, 0)},
                                   {cplx(0, 0), cplx(1, 0)}}};

/// Spacetime-basis annihilators built as rotation combinations of the lifted
/// spinor-basis annihilators. Downstream modules construct spacetime-basis
/// ladder operators directly per mode instead; this combination path exists
/// so the two descriptions can be checked against each other.
inline std::array<FourModeOperator, 4> lift_basis_change(Cutoff cutoff) {
  const LadderMatrix a = make_ladder(LadderKind::annihilate, cutoff);
  std::array<SparseMatrix, 4> lifted{
      lift(a, ModeId(0, ModeBasis::spinor), cutoff).matrix,
      lift(a, ModeId(1, ModeBasis::spinor), cutoff).matrix,
      lift(a, ModeId(2, ModeBasis::spinor), cutoff).matrix,
      lift(a, ModeId(3, ModeBasis::spinor), cutoff).matrix};

  std::array<FourModeOperator, 4> out{
      FourModeOperator{cutoff, SparseMatrix(space_dim(cutoff)), std::nullopt},
      FourModeOperator{cutoff, SparseMatrix(space_dim(cutoff)), std::nullopt},
      FourModeOperator{cutoff, SparseMatrix(space_dim(cutoff)), std::nullopt},
      FourModeOperator{cutoff, SparseMatrix(space_dim(cutoff)), std::nullopt}};
  for (int w = 0; w < 4; ++w) {
    SparseMatrix acc(space_dim(cutoff));
    for (int j = 0; j < 4; ++j) {
      acc = acc + cplx(kBasisRotation[w][j], 0.0) * lifted[j];
    }
    out[static_cast<std::size_t>(w)].matrix = acc;
  }
  return out;
}

}  // namespace fock4
