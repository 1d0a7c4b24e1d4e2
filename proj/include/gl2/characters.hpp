#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gl2/cyclotomic.hpp"
#include "gl2/group.hpp"
#include "gl2/ring.hpp"

namespace gl2 {

// A character (1-dimensional representation) of a multiplicative subgroup of
// the ring, stored as exponents: value(x) = zeta_modulus^exp[x].
struct RingChar {
  int modulus = 1;
  std::vector<int> exp;  // indexed by ring code; -1 marks "not in domain"
  std::string id;

  bool in_domain(RElem x) const { return exp[x] >= 0; }
  int operator()(RElem x) const;
  Cyclo value(RElem x) const { return Cyclo::root(modulus, (*this)(x)); }
  bool is_trivial() const;
};

// All characters of the subgroup of o^x consisting of `elems` (must be
// multiplicatively closed).  Deterministic enumeration.
std::vector<RingChar> characters_of_unit_subgroup(const Ring& R,
                                                  const std::vector<RElem>& elems);
// All characters of the full unit group o^x.
std::vector<RingChar> unit_characters(const Ring& R);
// All characters of 1 + pi^t o.
std::vector<RingChar> one_plus_pit_characters(const Ring& R, int t);

// lambda with chi(1 + pi^{ell2} x) = psi(pi^{ell2} lambda x) for all x,
// reported as the least representative mod pi^{ell1}.
RElem lambda_of(const Ring& R, const RingChar& chi);

// chi is injective when it is nontrivial on 1 + pi^{ell-1} o.
bool is_injective_char(const Ring& R, const RingChar& chi);

// |C| for C = {(chi1, chi2) : chi1 chi2^{-1} injective}.
long long count_injective_pairs(const Ring& R);

// A character of a matrix subgroup; values are zeta_modulus^(fn(g)).
struct Character {
  std::shared_ptr<Subgroup> domain;
  int modulus = 1;
  std::function<int(MCode)> fn;
  std::string id;

  int operator()(MCode g) const { return fn(g); }
  Cyclo value(MCode g) const { return Cyclo::root(modulus, fn(g)); }
};

// --- the paper-visible families -----------------------------------------

// psi_t on U: (1 u; 0 1) -> psi(pi^{ell-t} u).
Character psi_t_char(const Group& G, int t);
// chi tensor psi_t on ZU.
Character tensor_zu_char(const Group& G, const RingChar& chi, int t);
// (chi, chi', psi_t) on Z^t U; chiprime is a character of 1 + pi^t o.
Character triple_ztu_char(const Group& G, const RingChar& chi, const RingChar& chiprime,
                          int t);
// (chi1, chi2) on B: (a b; 0 d) -> chi1(a) chi2(d).
Character borel_pair_char(const Group& G, const RingChar& chi1, const RingChar& chi2);
// psi_x on K^i for x over o_{ell-i} (low ring passed explicitly).
Character psi_x_char(const Group& G, const Ring& low, MCode x_low, int i);
// mu_alpha = (extension of delta_alpha) o det, a character of all of G;
// alpha lives in o_{ell2}.  Deterministic extension choice.
Character mu_alpha_char(const Group& G, RElem alpha_low);
// psi'_A on N(j) for A = (alpha 1; pi^j beta alpha) (elements of o_ell).
Character psi_a_prime_char(const Group& G, const Subgroup& N, RElem alpha, int j,
                           RElem beta);
// Character of Z from a unit character.
Character center_char(const Group& G, const RingChar& chi);
// Trivial character of a subgroup.
Character trivial_char(const Group& G, const Subgroup& H);
// Whole group as a subgroup handle (for characters of G itself).
Subgroup whole_group_subgroup(const Group& G);

// All multiplicative extensions of phi (a character of N <= M, with M/N
// abelian and phi M-stable) to M.  Deterministic order; throws if no
// extension exists.
std::vector<Character> all_extensions(const Group& G, const Subgroup& M,
                                      const Character& phi,
                                      const std::string& id_prefix);

// Exhaustive multiplicativity check (throws on failure); exhaustive when
// |H| <= max_exhaustive, randomized pair sample otherwise.
void verify_multiplicative(const Group& G, const Character& c,
                           uint64_t max_exhaustive = 10000, int samples = 100000,
                           uint64_t seed = 1);

}  // namespace gl2
