#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gl2/constructions.hpp"

using namespace gl2;

TEST_CASE("Borel-induced ss characters at (3,2)") {
  Tower tower(3, 2, RingFlavor::zmod);
  const Group& G = tower.group(2);
  const Ring& R = tower.ring(2);
  auto chars = unit_characters(R);
  std::vector<ClassFunction> distinct;
  int pairs = 0;
  for (size_t i = 0; i < chars.size(); ++i)
    for (size_t j = i + 1; j < chars.size(); ++j) {
      if (!is_injective_char(R,
                             ring_char_product(chars[i], ring_char_inverse(chars[j]))))
        continue;
      ++pairs;
      ClassFunction f = ss_from_borel(G, chars[i], chars[j]);
      CHECK(f.dim() == 12);
      CHECK(inner_product_int(f, f) == 1);
      bool dup = false;
      for (auto& d : distinct)
        if (d.values == f.values) dup = true;
      if (!dup) distinct.push_back(std::move(f));
    }
  CHECK(pairs == 12);          // unordered injective pairs
  CHECK(distinct.size() == 12);  // exhausts Irr^ss
  // swap symmetry: Ind(chi1,chi2) = Ind(chi2,chi1)
  ClassFunction a = ss_from_borel(G, chars[1], chars[2]);
  ClassFunction b = ss_from_borel(G, chars[2], chars[1]);
  for (size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
  CHECK_THROWS_AS(ss_from_borel(G, chars[0], chars[0]), NotInjectivePair);
}

TEST_CASE("sns candidates at (3,2): even-ell inertia extensions") {
  Tower tower(3, 2, RingFlavor::zmod);
  const Group& G = tower.group(2);
  const Ring& R = tower.ring(2);
  auto chars = unit_characters(R);
  std::set<std::string> labels;
  long long per_chi_total = 0;
  for (auto& chi : chars) {
    RElem lambda = lambda_of(R, chi);
    auto cands = sns_candidates(G, lambda);
    long long matching = 0;
    for (auto& c : cands) {
      CHECK((long long)(G.order() / c.from->order) == 8);  // (q^2-1) q^{l-2}
      long long norm = mackey_hom(G, *c.from, c.phi, *c.from, c.phi);
      CHECK(norm == 1);
      if (restricts_to_center_char(G, c.phi, chi)) ++matching;
    }
    per_chi_total = matching;
    CHECK(matching == 3);  // q^{ell-1} sns irreps per central character
  }
  (void)per_chi_total;
  (void)labels;
}

TEST_CASE("regular even candidates cover ss and cuspidal types at (3,2)") {
  Tower tower(3, 2, RingFlavor::zmod);
  const Group& G = tower.group(2);
  Ring half(3, 1, RingFlavor::zmod);
  // cuspidal x: [[0,1],[-1,0]] has irreducible residue polynomial
  MCode xc = pack(Mat2{0, 1, 2, 0});
  auto cands = regular_even_candidates(G, half, xc);
  CHECK(!cands.empty());
  for (auto& c : cands) {
    CHECK(c.type == MatType::cuspidal);
    CHECK((long long)(G.order() / c.from->order) == 6);  // (q-1) q^{l-1}
    CHECK(mackey_hom(G, *c.from, c.phi, *c.from, c.phi) == 1);
  }
  // ss x: diag(1, 2); induced characters agree with some Borel induction
  MCode xs = pack(Mat2{1, 0, 0, 2});
  auto ss_cands = regular_even_candidates(G, half, xs);
  CHECK(!ss_cands.empty());
  const Ring& R = tower.ring(2);
  auto chars = unit_characters(R);
  for (auto& c : ss_cands) {
    CHECK(c.type == MatType::split_semisimple);
    CHECK((long long)(G.order() / c.from->order) == 12);
    ClassFunction f = induced_class_function(G, *c.from, c.phi);
    bool found = false;
    for (size_t i = 0; i < chars.size() && !found; ++i)
      for (size_t j = i + 1; j < chars.size() && !found; ++j) {
        if (!is_injective_char(
                R, ring_char_product(chars[i], ring_char_inverse(chars[j]))))
          continue;
        ClassFunction b = ss_from_borel(G, chars[i], chars[j]);
        if (b.values == f.values) found = true;
      }
    CHECK(found);
  }
  // scalar x is rejected
  CHECK_THROWS_AS(regular_even_candidates(G, half, pack(Mat2{1, 0, 0, 1})),
                  NotRegular);
}

TEST_CASE("multiplicity-free restriction intertwiner equals q at (3,3)") {
  Tower tower(3, 3, RingFlavor::zmod, 400000);
  const Group& G = tower.group(3);
  const Ring& R = tower.ring(3);
  // A = (a b; pi^{l-t} a + pi d): t = 2 and t = 3 shapes
  for (int t : {2, 3}) {
    MCode A = pack(Mat2{R.one(), R.one(), R.pi_pow(R.ell() - t),
                        R.add(R.one(), R.pi())});
    long long ip = mult_free_restriction_intertwiner(G, A, t);
    CHECK(ip == 3);
    CHECK(ip >= 3);
    CHECK(ip <= 9);
  }
}

TEST_CASE("exact decomposition matches the table route at (3,2)") {
  Tower tower(3, 2, RingFlavor::zmod);
  DecompEngine engine(tower);
  const Ring& R = tower.ring(2);
  auto chars = unit_characters(R);
  for (size_t ci = 0; ci < chars.size(); ++ci)
    for (int t = 0; t <= 2; ++t) {
      ExactDecomp dec = engine.dgg(2, t, chars[ci]);
      long long total = 0;
      for (auto& r : dec.rows) total += r.mult * r.count * r.dim *
                                        (r.level == 2 ? 1 : 0);
      // the table route is used at this size, so rows are per-irrep; verify
      // the bookkeeping identity directly
      long long all = 0;
      for (auto& r : dec.rows) all += r.mult * r.count * r.dim;
      CHECK(all == 72);
      CHECK(dec.induced_dim == 72);
    }
}

TEST_CASE("exact decomposition at (3,3): bookkeeping and reference counts") {
  Tower tower(3, 3, RingFlavor::zmod, 400000);
  DecompEngine engine(tower);
  const Ring& R = tower.ring(3);
  auto chars = unit_characters(R);
  CHECK(chars.size() == 18);
  // representative sweep: trivial chi and two others
  for (size_t ci : {size_t(0), size_t(1), size_t(7)}) {
    for (int t = 0; t <= 3; ++t) {
      ExactDecomp dec = engine.dgg(3, t, chars[ci]);
      CHECK(dec.induced_dim == 648);
      // Cor 3.8 counts at the top level (t < ell)
      if (t < 3) {
        CHECK(dec.n_type(MatType::split_semisimple, true) == 12);   // (q-1)^2 q
        CHECK(dec.n_type(MatType::split_non_semisimple, true) == 6);  // q(q-1)
        CHECK(dec.n_type(MatType::cuspidal, true) == 0);
      } else {
        // GG: multiplicity free with q^ell constituents
        for (auto& r : dec.rows) CHECK(r.mult == 1);
        long long blocks = 0;
        for (auto& r : dec.rows) blocks += r.count;
        CHECK(blocks == 27);
      }
    }
  }
}

TEST_CASE("sns multiplicity tables at (3,3)") {
  Tower tower(3, 3, RingFlavor::zmod, 400000);
  DecompEngine engine(tower);
  const Ring& R = tower.ring(3);
  auto chars = unit_characters(R);
  // multiplicity multisets of the top-level sns constituents per t:
  //   t = 0: one with q-1, (q-1)/2 with 2(q-1)    -> {2:1, 4:1} at q = 3
  //   t = 1: {q-1:1, q-2:(q-1)/2, q:(q-1)/2}      -> {2:1, 1:1, 3:1}
  //   t = 2: q(q-1) with multiplicity 1           -> {1:6}
  for (size_t ci : {size_t(0), size_t(5)}) {
    std::map<long long, long long> t0, t1, t2;
    for (auto& r : engine.dgg(3, 0, chars[ci]).rows)
      if (r.level == 3 && r.type == MatType::split_non_semisimple)
        t0[r.mult] += r.count;
    for (auto& r : engine.dgg(3, 1, chars[ci]).rows)
      if (r.level == 3 && r.type == MatType::split_non_semisimple)
        t1[r.mult] += r.count;
    for (auto& r : engine.dgg(3, 2, chars[ci]).rows)
      if (r.level == 3 && r.type == MatType::split_non_semisimple)
        t2[r.mult] += r.count;
    CHECK(t0 == std::map<long long, long long>{{2, 1}, {4, 1}});
    CHECK(t1 == std::map<long long, long long>{{1, 1}, {2, 1}, {3, 1}});
    CHECK(t2 == std::map<long long, long long>{{1, 6}});
  }
}

TEST_CASE("wtc regular bound is at most one at (3,2) and (3,3)") {
  Tower tower2(3, 2, RingFlavor::zmod);
  DecompEngine e2(tower2);
  const Ring& R2 = tower2.ring(2);
  auto chars2 = unit_characters(R2);
  auto primes2 = one_plus_pit_characters(R2, 1);
  for (auto& chi : chars2)
    for (auto& chp : primes2) CHECK(e2.wtc_regular_bound(2, 1, chi, chp) <= 1);

  Tower tower3(3, 3, RingFlavor::zmod, 400000);
  DecompEngine e3(tower3);
  const Ring& R3 = tower3.ring(3);
  auto chars3 = unit_characters(R3);
  auto primes3 = one_plus_pit_characters(R3, 2);
  CHECK(e3.wtc_regular_bound(3, 2, chars3[0], primes3[1]) <= 1);
  CHECK(e3.wtc_regular_bound(3, 2, chars3[4], primes3[2]) <= 1);
}

TEST_CASE("lower central character feeds the recursion consistently") {
  Tower tower(3, 2, RingFlavor::zmod);
  const Ring& R = tower.ring(2);
  const Ring& R1 = tower.ring(1);
  for (auto& chi : unit_characters(R)) {
    RingChar bar = lower_central_char(R, R1, chi);
    // chibar is multiplicative on the units of the lower ring
    for (RElem x : R1.units())
      for (RElem y : R1.units()) {
        long long lhs = bar(R1.mul(x, y));
        long long rhs = ((long long)bar(x) + bar(y)) % bar.modulus;
        CHECK(lhs == rhs);
      }
  }
}
