#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gl2/cyclotomic.hpp"
#include "gl2/ring.hpp"

using namespace gl2;

TEST_CASE("ring construction and sizes") {
  Ring R = make_ring(3, 2, RingFlavor::zmod);
  CHECK(R.size() == 9);
  CHECK(R.unit_count() == 6);

  Ring F = make_ring(3, 1, RingFlavor::tpoly);
  CHECK(F.size() == 3);
  CHECK(F.unit_count() == 2);

  CHECK_THROWS_AS(make_ring(2, 2, RingFlavor::zmod), BadParam);
  CHECK_THROWS_AS(make_ring(9, 2, RingFlavor::zmod), BadParam);
  CHECK_THROWS_AS(make_ring(3, 0, RingFlavor::zmod), BadParam);
}

TEST_CASE("unit counts match the closed formula") {
  for (int p : {3, 5})
    for (int ell = 1; ell <= 3; ++ell)
      for (auto f : {RingFlavor::zmod, RingFlavor::tpoly}) {
        Ring R(p, ell, f);
        int expected = (p - 1);
        for (int k = 1; k < ell; ++k) expected *= p;
        CHECK(R.unit_count() == expected);
      }
}

TEST_CASE("inverse and arithmetic") {
  Ring R(3, 2, RingFlavor::zmod);
  CHECK(R.inv(2) == 5);  // 2*5 = 10 = 1 mod 9
  CHECK(R.mul(2, 5) == 1);

  Ring Rt(3, 2, RingFlavor::tpoly);
  // (1+t)(1-t) = 1 - t^2 = 1
  RElem a = Rt.add(Rt.one(), Rt.pi());
  RElem b = Rt.sub(Rt.one(), Rt.pi());
  CHECK(Rt.mul(a, b) == Rt.one());

  Ring R3(3, 3, RingFlavor::zmod);
  CHECK_THROWS_AS(R3.inv(3), NonUnit);
}

TEST_CASE("valuation") {
  Ring R(3, 3, RingFlavor::zmod);
  CHECK(R.val(0) == 3);
  CHECK(R.val(6) == 1);
  CHECK(R.val(9) == 2);

  Ring Rt(3, 3, RingFlavor::tpoly);
  RElem t2_times_2 = Rt.mul(Rt.mul(Rt.pi(), Rt.pi()), 2);
  CHECK(Rt.val(t2_times_2) == 2);
  // val multiplicativity
  for (int x = 0; x < Rt.size(); ++x)
    for (int y = 0; y < Rt.size(); ++y) {
      int v = Rt.val(Rt.mul(RElem(x), RElem(y)));
      CHECK(v == std::min(Rt.val(RElem(x)) + Rt.val(RElem(y)), 3));
    }
}

TEST_CASE("unit iff valuation zero") {
  for (auto f : {RingFlavor::zmod, RingFlavor::tpoly}) {
    Ring R(3, 2, f);
    for (int x = 0; x < R.size(); ++x)
      CHECK(R.is_unit(RElem(x)) == (R.val(RElem(x)) == 0));
  }
}

TEST_CASE("projection and lift round trip") {
  Ring R(3, 2, RingFlavor::zmod);
  CHECK(R.project(7, 1) == 1);
  CHECK(R.lift_code(2, 1) == 2);
  CHECK(R.project(R.lift_code(2, 1), 1) == 2);

  Ring Rt(3, 3, RingFlavor::tpoly);
  RElem x = Rt.add(Rt.pi(), Rt.mul(2, Rt.mul(Rt.pi(), Rt.pi())));  // t + 2t^2
  CHECK(Rt.project(x, 2) == Rt.pi());
  CHECK_THROWS_AS(Rt.project(x, 4), BadIndex);
}

TEST_CASE("projection is a ring homomorphism") {
  for (auto f : {RingFlavor::zmod, RingFlavor::tpoly}) {
    Ring R(3, 3, f);
    Ring low(3, 2, f);
    for (int x = 0; x < R.size(); ++x)
      for (int y = 0; y < R.size(); ++y) {
        CHECK(R.project(R.mul(RElem(x), RElem(y)), 2) ==
              low.mul(R.project(RElem(x), 2), R.project(RElem(y), 2)));
        CHECK(R.project(R.add(RElem(x), RElem(y)), 2) ==
              low.add(R.project(RElem(x), 2), R.project(RElem(y), 2)));
      }
  }
}

TEST_CASE("psi is additive, primitive, and sums to zero") {
  for (auto f : {RingFlavor::zmod, RingFlavor::tpoly})
    for (int ell = 1; ell <= 3; ++ell) {
      Ring R(3, ell, f);
      int n = R.psi_order();
      for (int x = 0; x < R.size(); ++x)
        for (int y = 0; y < R.size(); ++y) {
          int lhs = R.psi_exponent(R.add(RElem(x), RElem(y)));
          int rhs = (R.psi_exponent(RElem(x)) + R.psi_exponent(RElem(y))) % n;
          CHECK(lhs == rhs);
        }
      // primitivity on pi^{ell-1} o
      bool nontrivial = false;
      for (int x = 0; x < R.size(); ++x) {
        RElem v = R.mul(R.pi_pow(ell - 1), RElem(x));
        if (R.psi_exponent(v) != 0) nontrivial = true;
      }
      CHECK(nontrivial);
      // orthogonality: sum over the ring of psi(x) = 0
      std::vector<long long> counts(n, 0);
      for (int x = 0; x < R.size(); ++x) counts[R.psi_exponent(RElem(x))]++;
      CHECK(Cyclo::from_counts(n, counts).is_zero());
    }
}

TEST_CASE("psi at specific values") {
  Ring R1(3, 1, RingFlavor::zmod);
  CHECK(R1.psi_exponent(0) == 0);
  CHECK(R1.psi_order() == 3);
  CHECK(R1.psi_exponent(1) == 1);

  Ring R2(3, 2, RingFlavor::zmod);
  // psi(3) = zeta_9^3 != 1 and psi(3)^3 = 1
  Cyclo z = Cyclo::root(R2.psi_order(), R2.psi_exponent(3));
  CHECK(!(z - Cyclo(1)).is_zero());
  Cyclo z3 = z * z * z;
  CHECK((z3 - Cyclo(1)).is_zero());
  // zeta_9^3 equals zeta_3 exactly
  CHECK(z == Cyclo::root(3, 1));
}

TEST_CASE("cyclotomic arithmetic basics") {
  // zeta_8^2 = i, conj(i) = -i
  Cyclo i = Cyclo::root(8, 2);
  CHECK(i * i == Cyclo(-1));
  CHECK(i.conj() == Cyclo::root(8, 6));
  // 1 + zeta_3 + zeta_3^2 = 0
  Cyclo s = Cyclo(1) + Cyclo::root(3, 1) + Cyclo::root(3, 2);
  CHECK(s.is_zero());
  // mixed conductors
  Cyclo m = Cyclo::root(3, 1) * Cyclo::root(4, 1);
  CHECK(m == Cyclo::root(12, 7));
  long long v;
  CHECK(Cyclo(5).scaled(1, 5).is_integer(&v));
  CHECK(v == 1);
  // rational detection
  Cyclo half = Cyclo(1).scaled(1, 2);
  long long num, den;
  CHECK(half.is_rational(&num, &den));
  CHECK(num == 1);
  CHECK(den == 2);
}

TEST_CASE("tpoly multiplication is truncated polynomial multiplication") {
  Ring R(3, 3, RingFlavor::tpoly);
  RElem t = R.pi();
  RElem t2 = R.mul(t, t);
  CHECK(R.val(t2) == 2);
  CHECK(R.mul(t2, t) == 0);
  // (1 + t + t^2)(1 - t) = 1 - t^3 = 1
  RElem a = R.add(R.add(R.one(), t), t2);
  RElem b = R.sub(R.one(), t);
  CHECK(R.mul(a, b) == R.one());
}
