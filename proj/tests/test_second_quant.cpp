#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fock4/second_quant.hpp"

using fock4::cplx;
using fock4::FieldModeSet;
using fock4::FieldState;
using fock4::OccupationMap;
using fock4::SpacetimePoint;

namespace {

/// All occupation maps over `modes` with total particle number <= cap,
/// enumerated by brute-force recursion in label order.
std::vector<OccupationMap> enumerate_maps(FieldModeSet modes, int cap) {
  std::vector<OccupationMap> out;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> current;
  auto rec = [&](auto&& self, std::size_t mode, int remaining) -> void {
    if (mode == modes.count()) {
      out.push_back(OccupationMap{current});
      return;
    }
    self(self, mode + 1, remaining);
    for (int c = 1; c <= remaining; ++c) {
      current.push_back({static_cast<std::uint32_t>(mode),
                         static_cast<std::uint32_t>(c)});
      self(self, mode + 1, remaining - c);
      current.pop_back();
    }
  };
  rec(rec, 0, cap);
  return out;
}

/// |N> built by applying creators N(mode) times with 1/sqrt(N!) per mode.
FieldState build_field_basis_state(const OccupationMap& occ, FieldModeSet modes,
                                   int cap) {
  FieldState s = fock4::field_vacuum(modes, cap);
  for (const auto& [mode, count] : occ.entries) {
    double fact = 1.0;
    for (std::uint32_t k = 1; k <= count; ++k) {
      s = fock4::create_particle(mode, s);
      fact *= static_cast<double>(k);
    }
    const double scale = 1.0 / std::sqrt(fact);
    for (auto& [key, v] : s.terms) v *= scale;
  }
  return s;
}

}  // namespace

TEST_CASE("annihilating the field vacuum gives the zero state") {
  const FieldModeSet modes(1);
  const auto vac = fock4::field_vacuum(modes, 2);
  for (std::size_t mode = 0; mode < modes.count(); ++mode) {
    CHECK(fock4::annihilate_particle(mode, vac).terms.empty());
  }
}

TEST_CASE("create then annihilate the same mode returns the vacuum") {
  const FieldModeSet modes(1);
  const auto vac = fock4::field_vacuum(modes, 2);
  const auto round = fock4::annihilate_particle(5, fock4::create_particle(5, vac));
  REQUIRE(round.terms.size() == 1);
  CHECK(round.terms.begin()->first == OccupationMap{});
  CHECK(round.terms.begin()->second == cplx(1.0, 0.0));
}

TEST_CASE("commutator of c and c-dagger acts as a delta on capped states") {
  const FieldModeSet modes(1);
  for (std::size_t m1 : {std::size_t{0}, std::size_t{3}, std::size_t{15}}) {
    for (std::size_t m2 : {std::size_t{0}, std::size_t{3}, std::size_t{7}}) {
      const auto vac = fock4::field_vacuum(modes, 3);
      const auto ab = fock4::annihilate_particle(m1, fock4::create_particle(m2, vac));
      // c(m1) c^dag(m2) |0> = delta |0>  (the reversed order kills the vacuum)
      if (m1 == m2) {
        REQUIRE(ab.terms.size() == 1);
        CHECK(ab.terms.begin()->second == cplx(1.0, 0.0));
      } else {
        CHECK(ab.terms.empty());
      }
    }
  }
}

TEST_CASE("creation on distinct modes commutes exactly") {
  const FieldModeSet modes(1);
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> pick(0, modes.count() - 1);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t m1 = pick(rng), m2 = pick(rng);
    const auto vac = fock4::field_vacuum(modes, 4);
    const auto ab = fock4::create_particle(m1, fock4::create_particle(m2, vac));
    const auto ba = fock4::create_particle(m2, fock4::create_particle(m1, vac));
    REQUIRE(ab.terms.size() == ba.terms.size());
    auto it_ab = ab.terms.begin();
    auto it_ba = ba.terms.begin();
    for (; it_ab != ab.terms.end(); ++it_ab, ++it_ba) {
      CHECK(it_ab->first == it_ba->first);
      CHECK(it_ab->second == it_ba->second);
    }
  }
}

TEST_CASE("the particle cap is enforced") {
  const FieldModeSet modes(0);
  auto s = fock4::field_vacuum(modes, 2);
  s = fock4::create_particle(0, s);
  s = fock4::create_particle(0, s);
  CHECK_THROWS_AS(fock4::create_particle(0, s), std::out_of_range);
  CHECK_THROWS_AS(fock4::apply_field_operator({0, 0, 0, 0}, s, true),
                  std::out_of_range);
  CHECK_THROWS_AS(fock4::field_vacuum(modes, -1), std::invalid_argument);
  CHECK_THROWS_AS(fock4::create_particle(1, s), std::out_of_range);  // bad label
}

TEST_CASE("field basis states are orthonormal at cap 2 over the 16-mode set") {
  const FieldModeSet modes(1);
  const int cap = 2;
  const auto maps = enumerate_maps(modes, cap);
  CHECK(maps.size() == 153);  // 1 + 16 + (16 + C(16,2))

  std::vector<FieldState> states;
  states.reserve(maps.size());
  for (const auto& occ : maps) {
    states.push_back(build_field_basis_state(occ, modes, cap));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const cplx ip = fock4::field_inner_product(states[i], states[j]);
      CHECK(std::abs(ip - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-12);
    }
  }
}

TEST_CASE("field operator on the vacuum") {
  const FieldModeSet modes(1);
  const auto vac = fock4::field_vacuum(modes, 1);
  const SpacetimePoint p{0.2, -0.4, 0.1, 0.9};

  SUBCASE("plain operator annihilates the vacuum") {
    CHECK(fock4::apply_field_operator(p, vac, false).terms.empty());
  }
  SUBCASE("daggered operator makes the one-particle state with phi amplitudes") {
    const auto one = fock4::apply_field_operator(p, vac, true);
    const fock4::HermiteEvaluator herm(modes.per_mode_max);
    CHECK(one.terms.size() == modes.count());
    for (const auto& [occ, coeff] : one.terms) {
      REQUIRE(occ.entries.size() == 1);
      const auto mode = occ.entries[0].first;
      const double expected =
          fock4::phi_product(modes.occupation_of(mode), p, herm);
      CHECK(coeff == cplx(expected, 0.0));
    }
    // Norm consistency with the propagator diagonal.
    const auto diag = fock4::propagator_direct(p, p, modes);
    CHECK(std::abs(one.norm_sq() - diag.delta.real()) < 1e-13);
  }
}

TEST_CASE("field operator is linear over superpositions") {
  const FieldModeSet modes(1);
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, modes.count() - 1);
  const SpacetimePoint p{0.3, 0.1, -0.7, 0.2};

  for (int rep = 0; rep < 20; ++rep) {
    auto vac = fock4::field_vacuum(modes, 3);
    const auto s1 = fock4::create_particle(pick(rng), vac);
    const auto s2 = fock4::create_particle(pick(rng), vac);
    const cplx alpha(amp(rng), amp(rng)), beta(amp(rng), amp(rng));

    FieldState combo{modes, 3, {}};
    for (const auto& [k, v] : s1.terms) combo.terms[k] += alpha * v;
    for (const auto& [k, v] : s2.terms) combo.terms[k] += beta * v;
    combo.prune();

    for (bool daggered : {false, true}) {
      const auto lhs = fock4::apply_field_operator(p, combo, daggered);
      const auto r1 = fock4::apply_field_operator(p, s1, daggered);
      const auto r2 = fock4::apply_field_operator(p, s2, daggered);
      FieldState rhs{modes, 3, {}};
      for (const auto& [k, v] : r1.terms) rhs.terms[k] += alpha * v;
      for (const auto& [k, v] : r2.terms) rhs.terms[k] += beta * v;
      rhs.prune();

      // Same support, same coefficients.
      for (const auto& [k, v] : lhs.terms) {
        auto it = rhs.terms.find(k);
        const cplx other = it == rhs.terms.end() ? cplx(0.0, 0.0) : it->second;
        CHECK(std::abs(v - other) < 1e-13);
      }
      for (const auto& [k, v] : rhs.terms) {
        auto it = lhs.terms.find(k);
        const cplx other = it == lhs.terms.end() ? cplx(0.0, 0.0) : it->second;
        CHECK(std::abs(v - other) < 1e-13);
      }
    }
  }
}

TEST_CASE("propagator at the origin with a single mode is 1/pi^2") {
  const auto v = fock4::propagator_direct({0, 0, 0, 0}, {0, 0, 0, 0},
                                          FieldModeSet(0));
  const double expected = 1.0 / (std::numbers::pi * std::numbers::pi);
  CHECK(std::abs(v.delta.real() - expected) < 1e-12);
  CHECK(v.delta.imag() == 0.0);
}

TEST_CASE("propagator is symmetric and positive on the diagonal") {
  const FieldModeSet modes(2);
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    const SpacetimePoint a{coord(rng), coord(rng), coord(rng), coord(rng)};
    const SpacetimePoint b{coord(rng), coord(rng), coord(rng), coord(rng)};
    const auto ab = fock4::propagator_direct(a, b, modes);
    const auto ba = fock4::propagator_direct(b, a, modes);
    CHECK(std::abs(ab.delta - std::conj(ba.delta)) < 1e-15);
    CHECK(fock4::propagator_direct(a, a, modes).delta.real() > 0.0);
  }
}

TEST_CASE("mode-sum and vacuum-expectation propagators agree") {
  std::mt19937 rng(8088);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int per_mode : {0, 1, 2}) {
    const FieldModeSet modes(per_mode);
    for (int rep = 0; rep < 10; ++rep) {
      const SpacetimePoint a{coord(rng), coord(rng), coord(rng), coord(rng)};
      const SpacetimePoint b{coord(rng), coord(rng), coord(rng), coord(rng)};
      const auto direct = fock4::propagator_direct(a, b, modes);
      const auto vev = fock4::propagator_vev(a, b, modes);
      CHECK(std::abs(direct.delta - vev.delta) < 1e-12);
    }
  }
}

TEST_CASE("vacuum norm is unchanged by the propagator evaluation") {
  const FieldModeSet modes(1);
  const auto vac = fock4::field_vacuum(modes, 1);
  CHECK(fock4::field_inner_product(vac, vac) == cplx(1.0, 0.0));
  (void)fock4::propagator_vev({0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}, modes);
  CHECK(fock4::field_inner_product(vac, vac) == cplx(1.0, 0.0));
}

TEST_CASE("propagator_vev validates the particle cap") {
  CHECK_THROWS_AS(
      fock4::propagator_vev({0, 0, 0, 0}, {0, 0, 0, 0}, FieldModeSet(0), 0),
      std::invalid_argument);
}
