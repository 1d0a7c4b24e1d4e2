#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "gl2/chartab.hpp"
#include "gl2/constructions.hpp"

using namespace gl2;

TEST_CASE("character table of GL2(F3)") {
  Ring R(3, 1, RingFlavor::zmod);
  Group G(R);
  CharacterTable T = character_table(view_of_group(G));
  CHECK(T.class_reps.size() == 8);
  std::vector<long long> dims = T.dims;
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<long long>{1, 1, 2, 2, 2, 3, 3, 4});
  long long sum_sq = 0;
  for (long long d : T.dims) sum_sq += d * d;
  CHECK(sum_sq == 48);
}

TEST_CASE("character table of GL2(F5)") {
  Ring R(5, 1, RingFlavor::zmod);
  Group G(R);
  CharacterTable T = character_table(view_of_group(G));
  CHECK(T.class_reps.size() == T.irreps.size());
  long long sum_sq = 0;
  for (long long d : T.dims) sum_sq += d * d;
  CHECK(sum_sq == 480);
  // dimension profile of GL2(F_q): 1, q, q+1, q-1 families
  std::map<long long, int> by_dim;
  for (long long d : T.dims) by_dim[d]++;
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[5] == 4);
  CHECK(by_dim[6] == 6);   // (q-1)(q-2)/2 = 6 principal series
  CHECK(by_dim[4] == 10);  // q(q-1)/2 = 10 cuspidal
}

TEST_CASE("Borel subgroup tables") {
  Ring R(3, 1, RingFlavor::zmod);
  Group G(R);
  Subgroup B = G.borel();
  CharacterTable T = character_table(view_of_subgroup(G, B));
  long long sum_sq = 0;
  for (long long d : T.dims) sum_sq += d * d;
  CHECK(sum_sq == 12);
  for (long long d : T.dims) CHECK((d == 1 || d == 2));

  Ring R2(3, 2, RingFlavor::zmod);
  Group G2(R2);
  Subgroup B2 = G2.borel();
  CharacterTable T2 = character_table(view_of_subgroup(G2, B2));
  long long s2 = 0;
  for (long long d : T2.dims) s2 += d * d;
  CHECK(s2 == 324);
}

TEST_CASE("classification by K^{ell-1} restriction at (3,2)") {
  for (auto flavor : {RingFlavor::zmod, RingFlavor::tpoly}) {
    Ring R(3, 2, flavor);
    Group G(R);
    CharacterTable T = character_table(view_of_group(G));
    long long sum_sq = 0;
    for (long long d : T.dims) sum_sq += d * d;
    CHECK(sum_sq == 3888);
    auto recs = classify_irreps(G, T);
    std::map<MatType, long long> count;
    std::map<MatType, std::set<long long>> dims;
    for (auto& r : recs) {
      count[r.type] += 1;
      dims[r.type].insert(r.dim);
    }
    CHECK(count[MatType::split_semisimple] == 12);
    CHECK(count[MatType::split_non_semisimple] == 18);
    CHECK(count[MatType::cuspidal] == 24);
    CHECK(count[MatType::non_regular] == 24);
    CHECK(*dims[MatType::split_semisimple].begin() == 12);
    CHECK(dims[MatType::split_semisimple].size() == 1);
    CHECK(*dims[MatType::split_non_semisimple].begin() == 8);
    CHECK(*dims[MatType::cuspidal].begin() == 6);
  }
}

TEST_CASE("non-regular irreps at (3,2) are det-twists of inflations") {
  Ring R(3, 2, RingFlavor::zmod);
  Group G(R);
  Ring R1(3, 1, RingFlavor::zmod);
  Group G1(R1);
  CharacterTable T = character_table(view_of_group(G));
  CharacterTable T1 = character_table(view_of_group(G1));
  auto recs = classify_irreps(G, T);
  auto uchars = unit_characters(R);
  int nonreg = 0, matched = 0;
  for (auto& r : recs) {
    if (r.type != MatType::non_regular) continue;
    ++nonreg;
    // find a level-1 irrep and a det-twist matching it on every class
    bool found = false;
    for (uint32_t i1 = 0; i1 < T1.irreps.size() && !found; ++i1) {
      if (T1.dims[i1] != r.dim) continue;
      for (const auto& theta : uchars) {
        bool eq = true;
        for (size_t k = 0; k < T.class_reps.size() && eq; ++k) {
          MCode g = T.class_reps[k];
          MCode g1 = G.reduce_to(R1, g);
          Cyclo twist = Cyclo::root(theta.modulus, theta(G.det(g)));
          if (!(T.irreps[r.index][k] == T1.value(i1, g1) * twist)) eq = false;
        }
        if (eq) {
          found = true;
          break;
        }
      }
    }
    if (found) ++matched;
  }
  CHECK(nonreg == 24);
  CHECK(matched == 24);
}

TEST_CASE("dgg decomposition against the table at (3,2)") {
  Ring R(3, 2, RingFlavor::zmod);
  Group G(R);
  CharacterTable T = character_table(view_of_group(G));
  auto recs = classify_irreps(G, T);
  auto chars = unit_characters(R);
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    // t = 1: every ss constituent has multiplicity 2, cuspidals are absent,
    // sns constituents have multiplicity 1
    auto rows1 = dgg_decompose_table(G, T, recs, chars[ci], 1);
    long long n_ss = 0, n_sns = 0;
    for (auto& r : rows1) {
      if (r.type == MatType::cuspidal) CHECK(r.mult == 0);
      if (r.type == MatType::split_semisimple) {
        CHECK(r.mult == 2);
        n_ss += r.mult;
      }
      if (r.type == MatType::split_non_semisimple) {
        CHECK(r.mult == 1);
        n_sns += r.mult;
      }
    }
    CHECK(n_ss == 4);   // (q-1)^2 q^{ell-2}
    CHECK(n_sns == 2);  // q^{ell-2}(q-1)
    // t = 0: single sns constituent with multiplicity q-1
    auto rows0 = dgg_decompose_table(G, T, recs, chars[ci], 0);
    std::vector<long long> sns_mults;
    for (auto& r : rows0)
      if (r.type == MatType::split_non_semisimple) sns_mults.push_back(r.mult);
    CHECK(sns_mults == std::vector<long long>{2});
    // t = 2 (GG): multiplicity free, everything regular appears once
    auto rows2 = dgg_decompose_table(G, T, recs, chars[ci], 2);
    long long blocks = 0;
    for (auto& r : rows2) {
      CHECK(r.mult == 1);
      CHECK(r.type != MatType::non_regular);
      ++blocks;
    }
    CHECK(blocks == 9);  // q^ell per central character
  }
}

TEST_CASE("cuspidal multiplicities: zero below t = ell, one at t = ell") {
  Ring R(3, 2, RingFlavor::zmod);
  Group G(R);
  CharacterTable T = character_table(view_of_group(G));
  auto recs = classify_irreps(G, T);
  auto chars = unit_characters(R);
  for (size_t ci = 0; ci < chars.size(); ++ci)
    for (int t = 0; t <= 2; ++t) {
      auto rows = dgg_decompose_table(G, T, recs, chars[ci], t);
      for (auto& r : rows)
        if (r.type == MatType::cuspidal) CHECK(r.mult == (t == 2 ? 1 : 0));
    }
}

TEST_CASE("strong Gelfand at (3,1)") {
  Ring R(3, 1, RingFlavor::zmod);
  Group G(R);
  CharacterTable TG = character_table(view_of_group(G));
  Subgroup B = G.borel();
  CharacterTable TB = character_table(view_of_subgroup(G, B));
  StrongGelfandResult res = strong_gelfand_check(G, TG, B, TB);
  CHECK(res.max_multiplicity == 1);
  CHECK(res.witnesses.empty());
}

TEST_CASE("W-modules at (3,2) are multiplicity free (table route)") {
  Ring R(3, 2, RingFlavor::zmod);
  Group G(R);
  CharacterTable T = character_table(view_of_group(G));
  auto chars = unit_characters(R);
  for (int t = 1; t <= 1; ++t) {
    auto primes = one_plus_pit_characters(R, t);
    Subgroup ZtU = G.ztu(t);
    for (auto& chi : chars)
      for (auto& chp : primes) {
        Character triple = triple_ztu_char(G, chi, chp, t);
        ClassFunction ind = induced_class_function(G, ZtU, triple);
        for (uint32_t i = 0; i < T.irreps.size(); ++i) {
          Cyclo ip = T.inner_with_irrep(ind.values, i);
          long long m;
          REQUIRE(ip.is_integer(&m));
          CHECK(m <= 1);
        }
      }
  }
}
