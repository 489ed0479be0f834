#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "channels.hpp"
#include "fixtures.hpp"

using namespace vqb;
using vqb_test::random_density;
using vqb_test::random_hermitian;

namespace {

ChoiOperator identity_channel() {
  return choi_from_action(2, {2}, [](const ComplexMatrix& x) { return x; });
}

ComplexMatrix plus_state() { return mat2(0.5, 0.5, 0.5, 0.5); }

}  // namespace

TEST_CASE("make_choi validates dimensions") {
  CHECK_THROWS_AS(make_choi(identity(6), {2, 2}), Error);
  ComplexMatrix bad = identity(8);
  bad(0, 0) = cxd(1.0 / 0.0, 0.0);
  CHECK_THROWS_AS(make_choi(bad, {2, 2}), Error);
}

TEST_CASE("identity channel applies as the identity") {
  const ChoiOperator id = identity_channel();
  SequentialRng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(apply_map(id, rho), rho) <= 1e-14);
  }
  CHECK(is_tp(id, 1e-12));
  CHECK(is_hp(id, 1e-12));
  CHECK(is_cp(id, 1e-12));
}

TEST_CASE("broadcaster action on the x-axis pure state") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  const ComplexMatrix out = apply_map(b, plus_state());
  const double expected[4][4] = {{1.0 / 6, 0.25, 0.25, 0},
                                 {0.25, 1.0 / 3, 0.5, 0.25},
                                 {0.25, 0.5, 1.0 / 3, 0.25},
                                 {0, 0.25, 0.25, 1.0 / 6}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(out(i, j) - cxd(expected[i][j], 0)) <= 1e-14);
}

TEST_CASE("broadcaster marginals on equatorial inputs") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  CHECK(max_abs_diff(marginal(b, plus_state(), 1), plus_state()) <= 1e-14);
  CHECK(max_abs_diff(marginal(b, plus_state(), 2), plus_state()) <= 1e-14);

  const ComplexMatrix rho = EquatorialState{0.7, 1.3}.density();
  CHECK(max_abs_diff(marginal(b, rho, 2), rho) <= 1e-14);

  // fully mixed input: both marginals stay fully mixed
  const ComplexMatrix mixed = 0.5 * identity(2);
  CHECK(max_abs_diff(marginal(b, mixed, 1), mixed) <= 1e-14);
  CHECK(max_abs_diff(marginal(b, mixed, 2), mixed) <= 1e-14);
}

TEST_CASE("structural predicates on the named maps") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  CHECK(is_tp(b, 1e-12));
  CHECK(is_hp(b, 1e-12));
  CHECK_FALSE(is_cp(b, 1e-10));

  const ChoiOperator plus = phase_covariant_cloner();
  CHECK(is_tp(plus, 1e-12));
  CHECK(is_hp(plus, 1e-12));
  CHECK(is_cp(plus, 1e-12));
}

TEST_CASE("dephasing channel in the |+>/|-> basis") {
  const ChoiOperator d = decohere(plus_minus_basis());
  ComplexMatrix ket0 = zeros(2, 2);
  ket0(0, 0) = 1.0;
  CHECK(max_abs_diff(apply_map(d, ket0), 0.5 * identity(2)) <= 1e-14);
  CHECK(max_abs_diff(apply_map(d, plus_state()), plus_state()) <= 1e-14);
}

TEST_CASE("dephasing is idempotent in a random basis") {
  SequentialRng rng(7);
  const ComplexMatrix u = vqb_test::haar_su2(rng);
  const ChoiOperator d = decohere(u);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix rho = random_density(rng, 2);
    const ComplexMatrix once = apply_map(d, rho);
    CHECK(max_abs_diff(apply_map(d, once), once) <= 1e-13);
  }
  ComplexMatrix skewed = identity(2);
  skewed(0, 1) = 0.4;
  CHECK_THROWS_AS(decohere(skewed), Error);
}

TEST_CASE("classical copier in the |+>/|-> basis") {
  const ChoiOperator bcl = classical_broadcaster(plus_minus_basis());
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix plus_vec(2, 1), minus_vec(2, 1);
  plus_vec(0, 0) = s;
  plus_vec(1, 0) = s;
  minus_vec(0, 0) = s;
  minus_vec(1, 0) = -s;

  const ComplexMatrix pp = kron(plus_vec, plus_vec);
  CHECK(max_abs_diff(apply_map(bcl, plus_vec * dagger(plus_vec)), pp * dagger(pp)) <=
        1e-14);
  // off-diagonal units are annihilated
  CHECK(max_abs(apply_map(bcl, plus_vec * dagger(minus_vec))) <= 1e-14);
  // physical map
  CHECK(is_cp(bcl, 1e-12));
  CHECK(is_tp(bcl, 1e-12));
  // copies its basis states on both marginals
  CHECK(max_abs_diff(marginal(bcl, plus_state(), 1), plus_state()) <= 1e-14);
}

TEST_CASE("apply_map is linear and trace compatible") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  SequentialRng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix r1 = random_hermitian(rng, 2);
    const ComplexMatrix r2 = random_hermitian(rng, 2);
    const double al = rng.uniform(-2, 2), be = rng.uniform(-2, 2);
    const ComplexMatrix lhs = apply_map(b, al * r1 + be * r2);
    const ComplexMatrix rhs = al * apply_map(b, r1) + be * apply_map(b, r2);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    CHECK(std::abs(trace(apply_map(b, r1)) - trace(r1)) <= 1e-12);
  }
}

TEST_CASE("choi round trip through matrix-unit actions") {
  SequentialRng rng(19);
  const ChoiOperator direct = random_cptp_choi(5);
  const ChoiOperator rebuilt = choi_from_action(
      2, {2, 2}, [&](const ComplexMatrix& x) { return apply_map(direct, x); });
  CHECK(max_abs_diff(direct.m, rebuilt.m) <= 1e-13);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(apply_map(direct, rho), apply_map(rebuilt, rho)) <= 1e-13);
  }
}

TEST_CASE("json round trip") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  const ChoiOperator back = choi_from_json(choi_to_json(b));
  CHECK(back.dim_in == b.dim_in);
  CHECK(back.dims_out == b.dims_out);
  CHECK(max_abs_diff(back.m, b.m) == 0.0);

  CHECK_THROWS_AS(choi_from_json("not json"), Error);
  CHECK_THROWS_AS(choi_from_json("{\"dim_in\": 2}"), Error);
}

TEST_CASE("equatorial states are unit-trace and positive") {
  SequentialRng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const EquatorialState s{rng.uniform(), rng.uniform(0, 6.28)};
    const ComplexMatrix rho = s.density();
    CHECK(std::abs(trace(rho) - cxd(1, 0)) <= 1e-15);
    CHECK(is_psd(rho, 1e-12));
    CHECK(std::abs(trace(rho * sigma_z())) <= 1e-15);
  }
  CHECK_THROWS_AS((EquatorialState{1.4, 0.0}.density()), Error);
}

TEST_CASE("marginal argument validation") {
  const ChoiOperator b = optimal_virtual_broadcaster();
  CHECK_THROWS_AS(marginal(b, plus_state(), 3), Error);
  CHECK_THROWS_AS(apply_map(b, identity(4)), Error);
  const ChoiOperator id = identity_channel();
  CHECK_THROWS_AS(marginal(id, plus_state(), 1), Error);
}
