#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gl2/classfun.hpp"
#include "gl2/cyclotomic.hpp"
#include "gl2/group.hpp"

namespace gl2 {

// A finite group presented by an element list with ambient GL2 arithmetic;
// used for character tables of G itself and of its subgroups (B, P2, ...).
struct FiniteGroupView {
  const Group* ambient = nullptr;
  std::string name;
  std::vector<MCode> elems;  // sorted
  std::vector<MCode> gens;

  uint64_t order() const { return elems.size(); }
};

FiniteGroupView view_of_group(const Group& G);
FiniteGroupView view_of_subgroup(const Group& G, const Subgroup& H);

struct CharacterTable {
  FiniteGroupView view;
  std::vector<MCode> class_reps;
  std::vector<uint64_t> class_sizes;
  std::vector<uint32_t> class_of;  // aligned with view.elems
  int exponent = 1;
  std::vector<std::vector<Cyclo>> irreps;  // irreps[i][k] = chi_i(class k)
  std::vector<long long> dims;

  uint32_t class_of_elem(MCode g) const;
  const Cyclo& value(uint32_t irrep, MCode g) const;
  // exact inner product of a value-per-class vector against irrep i
  Cyclo inner_with_irrep(const std::vector<Cyclo>& values, uint32_t i) const;
};

// Exact character table (modular Burnside-Dixon lifted to Z[zeta_e]).
// Budget guard: |G| <= max_order and #classes <= max_classes.
CharacterTable character_table(const FiniteGroupView& view, uint64_t max_order = 10000,
                               uint32_t max_classes = 1500);

// Restriction of irrep i to a subgroup as values on that subgroup's elements
// summed against a character: <Res chi_i, phi>_H.
long long restriction_multiplicity(const CharacterTable& T, uint32_t irrep,
                                   const Subgroup& H, const Character& phi);

struct IrrepRecord {
  uint32_t index = 0;
  long long dim = 0;
  MatType type = MatType::non_regular;
  int central_char_index = -1;  // index into unit_characters order
};

// Classify every irreducible by the type of the psi_x occurring in its
// restriction to K^{ell-1}.
std::vector<IrrepRecord> classify_irreps(const Group& G, const CharacterTable& T);

struct DggRow {
  uint32_t irrep;
  long long dim;
  MatType type;
  long long mult;
};

// Exact decomposition of Ind_{ZU}^G(chi tensor psi_t) against the table.
std::vector<DggRow> dgg_decompose_table(const Group& G, const CharacterTable& T,
                                        const std::vector<IrrepRecord>& recs,
                                        const RingChar& chi, int t);

struct StrongGelfandResult {
  long long max_multiplicity = 0;
  std::vector<std::pair<uint32_t, uint32_t>> witnesses;  // (theta in Irr(B), rho)
};

// max over theta in Irr(H), rho in Irr(G) of <Ind_H^G theta, rho>.
StrongGelfandResult strong_gelfand_check(const Group& G, const CharacterTable& TG,
                                         const Subgroup& H, const CharacterTable& TH);

}  // namespace gl2
