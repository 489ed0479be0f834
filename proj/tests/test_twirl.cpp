#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "channels.hpp"
#include "fixtures.hpp"

using namespace vqb;
using vqb_test::random_hermitian;

namespace {

ChoiOperator random_choi(std::uint64_t seed, double scale = 1.0) {
  SequentialRng rng(seed);
  return make_choi(random_hermitian(rng, 8, scale), {2, 2});
}

FamilyParams random_params(SequentialRng& rng) {
  FamilyParams p;
  cxd* fields[6] = {&p.c1, &p.c2, &p.c3, &p.c4, &p.c5, &p.c6};
  for (cxd* f : fields) *f = cxd(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return p;
}

}  // namespace

TEST_CASE("each twirl is an idempotent projection") {
  const ChoiOperator c = random_choi(41);
  using Twirl = std::function<ChoiOperator(const ChoiOperator&)>;
  const Twirl twirls[] = {
      [](const ChoiOperator& x) { return phase_twirl(x); },
      [](const ChoiOperator& x) { return swap_twirl(x); },
      [](const ChoiOperator& x) { return flip_twirl(x); },
      [](const ChoiOperator& x) { return clifford_twirl(x); },
  };
  for (const Twirl& twirl : twirls) {
    const ChoiOperator once = twirl(c);
    const ChoiOperator twice = twirl(once);
    CHECK(max_abs_diff(once.m, twice.m) <= 1e-12);
  }
}

TEST_CASE("twirls preserve trace, Hermiticity and linear structure") {
  SequentialRng rng(44);
  const ChoiOperator x = random_choi(45);
  const ChoiOperator y = random_choi(46);
  const double al = rng.uniform(-2, 2), be = rng.uniform(-2, 2);
  const ChoiOperator combo = make_choi(al * x.m + be * y.m, {2, 2});
  const ChoiOperator lhs = phase_twirl(combo);
  const ComplexMatrix rhs = al * phase_twirl(x).m + be * phase_twirl(y).m;
  CHECK(max_abs_diff(lhs.m, rhs) <= 1e-12);
  CHECK(std::abs(trace(clifford_twirl(x).m) - trace(x.m)) <= 1e-12);
  CHECK(is_hermitian(swap_twirl(x).m, 1e-12));
  CHECK(is_hermitian(flip_twirl(x).m, 1e-12));
}

TEST_CASE("twirls commute pairwise") {
  const ChoiOperator c = random_choi(42);
  const ChoiOperator ps = phase_twirl(swap_twirl(c));
  const ChoiOperator sp = swap_twirl(phase_twirl(c));
  CHECK(max_abs_diff(ps.m, sp.m) <= 1e-12);
  const ChoiOperator pf = phase_twirl(flip_twirl(c));
  const ChoiOperator fp = flip_twirl(phase_twirl(c));
  CHECK(max_abs_diff(pf.m, fp.m) <= 1e-12);
  const ChoiOperator sf = swap_twirl(flip_twirl(c));
  const ChoiOperator fs = flip_twirl(swap_twirl(c));
  CHECK(max_abs_diff(sf.m, fs.m) <= 1e-12);
}

TEST_CASE("four phases already give the exact average") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const ChoiOperator c = random_choi(seed);
    const ChoiOperator four = phase_twirl(c);
    CHECK(max_abs_diff(four.m, phase_twirl(c, 5).m) <= 1e-12);
    CHECK(max_abs_diff(four.m, phase_twirl(c, 12).m) <= 1e-12);
    CHECK(max_abs_diff(four.m, phase_twirl(c, 360).m) <= 1e-12);
  }
}

TEST_CASE("family operators are fixed points of all three twirls") {
  SequentialRng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const ChoiOperator c = family_to_choi(random_params(rng));
    CHECK(max_abs_diff(phase_twirl(c).m, c.m) <= 1e-13);
    CHECK(max_abs_diff(swap_twirl(c).m, c.m) <= 1e-13);
    CHECK(max_abs_diff(flip_twirl(c).m, c.m) <= 1e-13);
  }
  const ChoiOperator b = optimal_virtual_broadcaster();
  CHECK(max_abs_diff(phase_twirl(b).m, b.m) <= 1e-14);
  CHECK(max_abs_diff(swap_twirl(b).m, b.m) <= 1e-14);
  CHECK(max_abs_diff(flip_twirl(b).m, b.m) <= 1e-14);
}

TEST_CASE("triple twirl projects onto the six-coefficient span") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ChoiOperator t = flip_twirl(swap_twirl(phase_twirl(random_choi(seed))));
    double residual = 1.0;
    const FamilyParams p = extract_family_params(t, 1e-9, &residual);
    CHECK(residual <= 1e-12);
    CHECK(max_abs_diff(family_to_choi(p).m, t.m) <= 1e-12);
  }
}

TEST_CASE("flip twirl equalizes the two weight sectors") {
  // start from an operator that loads only the |000> corner
  ComplexMatrix m(8, 8);
  m(0, 0) = 1.0;
  const ChoiOperator t = flip_twirl(make_choi(std::move(m), {2, 2}));
  CHECK(t.m(0, 0) == cxd(0.5, 0));
  CHECK(t.m(7, 7) == cxd(0.5, 0));
}

TEST_CASE("swap twirl symmetrizes a one-sided product map") {
  // map rho -> rho (x) sigma with a fixed second output
  ComplexMatrix sigma = zeros(2, 2);
  sigma(0, 0) = 1.0;
  const ChoiOperator one_sided =
      choi_from_action(2, {2, 2}, [&](const ComplexMatrix& x) { return kron(x, sigma); });
  const ChoiOperator sym = swap_twirl(one_sided);
  SequentialRng rng(2);
  for (int rep = 0; rep < 3; ++rep) {
    const ComplexMatrix rho = vqb_test::random_density(rng, 2);
    const ComplexMatrix expect = 0.5 * (kron(rho, sigma) + kron(sigma, rho));
    CHECK(max_abs_diff(apply_map(sym, rho), expect) <= 1e-13);
  }
}

TEST_CASE("extraction reads back what the builder wrote") {
  SequentialRng rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const FamilyParams p = random_params(rng);
    const FamilyParams q = extract_family_params(family_to_choi(p), 1e-12);
    CHECK(std::abs(p.c1 - q.c1) <= 1e-15);
    CHECK(std::abs(p.c2 - q.c2) <= 1e-15);
    CHECK(std::abs(p.c3 - q.c3) <= 1e-15);
    CHECK(std::abs(p.c4 - q.c4) <= 1e-15);
    CHECK(std::abs(p.c5 - q.c5) <= 1e-15);
    CHECK(std::abs(p.c6 - q.c6) <= 1e-15);
  }
}

TEST_CASE("extraction reports the coefficients of the optimal broadcaster") {
  const FamilyParams p = extract_family_params(optimal_virtual_broadcaster(), 1e-12);
  CHECK(std::abs(p.c1 - cxd(1.0 / 3.0, 0)) <= 1e-15);
  CHECK(std::abs(p.c2 - cxd(0.5, 0)) <= 1e-15);
  CHECK(std::abs(p.c3 - cxd(0.5, 0)) <= 1e-15);
  CHECK(std::abs(p.c4 - cxd(5.0 / 12.0, 0)) <= 1e-15);
  CHECK(std::abs(p.c5 - cxd(-1.0 / 12.0, 0)) <= 1e-15);
  CHECK(std::abs(p.c6) <= 1e-15);
}

TEST_CASE("extraction flags operators outside the span") {
  ChoiOperator c = family_to_choi(FamilyParams{1, 0.5, 0.5, 0.25, 0, 0});
  c.m(1, 2) = 0.05;  // not a family entry
  double residual = 0.0;
  CHECK_THROWS_AS(extract_family_params(c, 1e-9), Error);
  CHECK_THROWS_WITH_AS(extract_family_params(c, 1e-9, &residual),
                       doctest::Contains("(1, 2)"), Error);
}

TEST_CASE("clifford group enumeration") {
  const auto& group = clifford_group();
  CHECK(group.size() == 24);
  for (const ComplexMatrix& u : group)
    CHECK(max_abs_diff(dagger(u) * u, identity(2)) <= 1e-12);
  // closure spot check: products stay in the group up to phase
  auto canonical_in_group = [&](ComplexMatrix w) {
    for (const cxd& z : w.data)
      if (std::abs(z) > 1e-8) {
        w = (std::conj(z) / std::abs(z)) * w;
        break;
      }
    for (const ComplexMatrix& u : group)
      if (max_abs_diff(u, w) < 1e-8) return true;
    return false;
  };
  CHECK(canonical_in_group(group[3] * group[17]));
  CHECK(canonical_in_group(group[10] * group[10]));
}

TEST_CASE("clifford twirl matches a Haar Monte-Carlo average") {
  const ChoiOperator c = random_choi(99, 0.1);
  const ChoiOperator exact = clifford_twirl(c);
  SequentialRng rng(123);
  ComplexMatrix acc(8, 8);
  long long done = 0;
  for (long long target : {2000LL, 100000LL}) {
    for (; done < target; ++done) {
      const ComplexMatrix u = vqb_test::haar_su2(rng);
      const ComplexMatrix w = kron(kron(u, u), conjugate(u));
      acc = acc + w * c.m * dagger(w);
    }
    const ComplexMatrix avg = (1.0 / static_cast<double>(done)) * acc;
    CHECK(max_abs_diff(avg, exact.m) <= (target == 2000 ? 1e-2 : 1e-3));
  }
}

TEST_CASE("fully covariant maps are clifford-twirl fixed points") {
  const ChoiOperator canonical = canonical_broadcaster();
  CHECK(max_abs_diff(clifford_twirl(canonical).m, canonical.m) <= 1e-12);
  const ChoiOperator cloner = universal_cloner();
  CHECK(max_abs_diff(clifford_twirl(cloner).m, cloner.m) <= 1e-12);
}
