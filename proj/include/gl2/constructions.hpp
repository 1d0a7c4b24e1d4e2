#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gl2/chartab.hpp"
#include "gl2/classfun.hpp"

namespace gl2 {

// Rings and groups at every level 1..ell for one (p, flavor).
struct Tower {
  int p;
  int ell;
  RingFlavor flavor;
  std::vector<std::unique_ptr<Ring>> rings;
  std::vector<std::unique_ptr<Group>> groups;

  Tower(int p_, int ell_, RingFlavor f, uint64_t enum_budget = 1000000);
  const Ring& ring(int level) const { return *rings[level - 1]; }
  const Group& group(int level) const { return *groups[level - 1]; }
};

// RingChar helpers.
RingChar ring_char_product(const RingChar& a, const RingChar& b);
RingChar ring_char_inverse(const RingChar& a);
bool ring_char_equal(const RingChar& a, const RingChar& b);
std::string ring_char_key(const RingChar& a);
// chi(-1) == 1, i.e. chi is a square in the dual of o^x (prime residue field).
bool ring_char_is_square(const Ring& R, const RingChar& chi);
// The level-(ell-1) character chibar with V^t_chi's non-regular part
// isomorphic to the inflation-twist of V^t_chibar (computed through the
// canonical det-extension of psi_{(lambda/2) I}).
RingChar lower_central_char(const Ring& R, const Ring& Rlow, const RingChar& chi);
// The det-twist character theta used above: theta(1+pi^{ell-1}u) =
// psi(pi^{ell-1} (lambda/2) u).
RingChar nonreg_det_twist(const Ring& R, const RingChar& chi);

// Does a matrix-group character restrict to chi on the center?
bool restricts_to_center_char(const Group& G, const Character& c, const RingChar& chi);

// --- explicit constructions of regular irreducibles ------------------------

// Induced character Ind_B^G(chi1, chi2) for an injective pair, as a class
// function (enumerated groups only).
ClassFunction ss_from_borel(const Group& G, const RingChar& chi1, const RingChar& chi2);

// A regular candidate: a subgroup with a 1-dimensional character whose
// induction is an irreducible of the stated type.
struct InducedCandidate {
  std::shared_ptr<Subgroup> from;
  Character phi;
  MatType type = MatType::split_non_semisimple;
  std::string label;
};

// All split non-semisimple candidates whose central character has the given
// lambda invariant; deduplicated (distinct candidates induce distinct
// irreducibles).  Covers every sns irreducible with that lambda.
std::vector<InducedCandidate> sns_candidates(const Group& G, RElem lambda);

// Even-ell regular construction: extensions of a regular psi_x on K^{ell/2}
// to its inertia subgroup; induction gives regular irreducibles.
std::vector<InducedCandidate> regular_even_candidates(const Group& G, const Ring& half,
                                                      MCode x_half);

// Lemma-style multiplicity-free restriction check (odd ell): the self-
// intertwiner of Ind over U_A K^{ell2} inside U_A K^{ell1} equals q.
long long mult_free_restriction_intertwiner(const Group& G, MCode A_full, int t);

// --- exact decomposition of V^t_chi (recursive over levels) ---------------

struct ExactRow {
  int level;          // level the constituent lives at (inflation depth)
  std::string label;
  MatType type;
  long long dim;      // dimension at its own level
  long long mult;
  long long count;    // number of distinct constituents with this row's data
};

struct ExactDecomp {
  int level;
  int t;
  std::string chi_id;
  std::vector<ExactRow> rows;
  long long induced_dim;  // [G : ZU] at the top level
  std::vector<std::pair<long long, long long>> signature() const;  // (m, count)
  long long max_multiplicity() const;
  long long n_type(MatType t, bool with_multiplicity) const;  // top level only
};

// Decomposition engine with caches shared across (chi, t) sweeps.
class DecompEngine {
 public:
  explicit DecompEngine(const Tower& tower, bool verify_norms = false);

  // Exact decomposition of Ind_{ZU}^{G}(chi tensor psi_t).
  ExactDecomp dgg(int level, int t, const RingChar& chi);

  // Max multiplicity over regular candidates in Ind_{Z^tU}^G(chi,chi',psi_t).
  long long wtc_regular_bound(int level, int t, const RingChar& chi,
                              const RingChar& chiprime);

  const Tower& tower() const { return *tower_; }

 private:
  const Tower* tower_;
  bool verify_norms_;
  std::map<int, std::shared_ptr<Subgroup>> zu_, borel_;
  std::map<int, std::shared_ptr<CosetSpace>> zu_cosets_;
  std::map<int, std::vector<RingChar>> uchars_;
  std::map<std::string, std::vector<InducedCandidate>> sns_cache_;
  std::map<std::string, std::shared_ptr<MackeyCache>> mackey_;
  std::map<std::string, ExactDecomp> memo_;

  const std::vector<RingChar>& unit_chars(int level);
  std::shared_ptr<Subgroup> zu(int level);
  std::shared_ptr<Subgroup> borel(int level);
  std::shared_ptr<CosetSpace> zu_cosets(int level);
  const std::vector<InducedCandidate>& sns(int level, RElem lambda);
  std::shared_ptr<MackeyCache> cache_for(int level, const std::string& key,
                                         const Subgroup& H1,
                                         std::shared_ptr<const CosetSpace> h1g,
                                         const Subgroup& H2);
  // unordered injective Borel pairs with central character chi
  std::vector<std::pair<size_t, size_t>> ss_pairs(int level, const RingChar& chi);
};

bool same_induced_character(const Group& G, const InducedCandidate& a,
                            const InducedCandidate& b);

}  // namespace gl2
