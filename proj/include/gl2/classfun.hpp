#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gl2/characters.hpp"
#include "gl2/cyclotomic.hpp"
#include "gl2/group.hpp"

namespace gl2 {

// A class function on an enumerated group, one exact value per conjugacy
// class (aligned with Group::conjugacy_classes()).
struct ClassFunction {
  const Group* G = nullptr;
  std::vector<Cyclo> values;

  const Cyclo& at_class(uint32_t k) const { return values[k]; }
  Cyclo at(MCode g) const;
  long long dim() const;  // value at the identity, must be a real integer
};

// Pointwise evaluator for Ind_H^G(phi), phi 1-dimensional; does not require
// conjugacy classes of G.
class InducedEvaluator {
 public:
  InducedEvaluator(const Group& G, const Subgroup& H, Character phi,
                   std::shared_ptr<const CosetSpace> cosets = nullptr);
  Cyclo operator()(MCode g) const;
  long long dim() const { return cosets_->size(); }
  const CosetSpace& cosets() const { return *cosets_; }

 private:
  const Group* G_;
  std::shared_ptr<Subgroup> H_;
  Character phi_;
  std::shared_ptr<const CosetSpace> cosets_;
};

// Induced character as a class function (G must be enumerated).
ClassFunction induced_class_function(const Group& G, const Subgroup& H,
                                     const Character& phi);
ClassFunction class_function_of_character(const Group& G, const Character& chi_on_G);

// Exact Hermitian inner product (1/|G|) sum a(g) conj(b(g)).
Cyclo inner_product(const ClassFunction& a, const ClassFunction& b);
long long inner_product_int(const ClassFunction& a, const ClassFunction& b);

// dim Hom(Ind phi1, Ind phi2) via the double-coset sum; every summand is an
// inner product over H1 cap gH2g^{-1} and lands in {0,1}.
struct MackeyDetail {
  std::vector<MCode> coset_reps;   // the double cosets that contribute 1
};
long long mackey_hom(const Group& G, const Subgroup& H1, const Character& phi1,
                     const Subgroup& H2, const Character& phi2,
                     MackeyDetail* detail = nullptr,
                     const CosetSpace* h1g = nullptr);

// Intertwining number inside an ambient subgroup M (all groups listed):
// dim Hom_M(Ind_A^M phiA, Ind_B^M phiB).
long long mackey_hom_in(const Group& G, const Subgroup& M, const Subgroup& A,
                        const Character& phiA, const Subgroup& B, const Character& phiB);

// Reusable double-coset + intersection data for many inner products against
// a fixed pair (H1, H2).
struct MackeyCache {
  std::shared_ptr<const CosetSpace> h1g;
  DoubleCosetSet dcs;
  // per double coset: list of (x, y=g^-1 x g) with x in H1 cap g H2 g^-1
  std::vector<std::vector<std::pair<MCode, MCode>>> pairs;
};
MackeyCache make_mackey_cache(const Group& G, const Subgroup& H1, const Subgroup& H2,
                              std::shared_ptr<const CosetSpace> h1g = nullptr);
long long mackey_hom_cached(const Group& G, const MackeyCache& cache,
                            const Character& phi1, const Character& phi2,
                            MackeyDetail* detail = nullptr);

// Frobenius reciprocity check: <Ind phi, rho>_G == <phi, Res rho>_H exactly.
bool frobenius_crosscheck(const Group& G, const Subgroup& H, const Character& phi,
                          const ClassFunction& rho);

// Exact sum of phi1(x) * conj(phi2(y)) over a pair list, divided by its
// length; used by the Mackey machinery (values are 0 or 1 for characters).
long long character_pair_inner(const Character& phi1, const Character& phi2,
                               const std::vector<std::pair<MCode, MCode>>& pairs);

}  // namespace gl2
