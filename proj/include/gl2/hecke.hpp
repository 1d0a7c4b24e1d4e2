#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "gl2/characters.hpp"
#include "gl2/classfun.hpp"
#include "gl2/constructions.hpp"
#include "gl2/group.hpp"

namespace gl2 {

// multiset of matrix-block sizes: (m, count), ascending in m
struct WedderburnSignature {
  std::vector<std::pair<long long, long long>> blocks;

  long long dim() const;       // sum count * m^2
  long long max_block() const;
  long long block_total() const;  // number of blocks
  bool all_ones() const { return max_block() <= 1; }
  std::string str() const;
  bool operator==(const WedderburnSignature& o) const { return blocks == o.blocks; }
};

WedderburnSignature signature_from_multiplicities(
    const std::vector<std::pair<long long, long long>>& mult_counts);

// The endomorphism algebra of Ind_H^G(phi) realized on its supported
// double-coset basis.
class HeckeAlgebra {
 public:
  HeckeAlgebra(const Group& G, const Subgroup& H, const Character& phi,
               std::shared_ptr<const CosetSpace> cosets = nullptr);

  int dim() const { return int(basis_.size()); }
  const Group& group() const { return *G_; }
  const CosetSpace& cosets() const { return *cosets_; }
  const Character& character() const { return phi_; }
  const Subgroup& subgroup() const { return *H_; }

  // Wedderburn signature via the regular representation of a random
  // self-adjoint element; deterministic per seed, retries on ambiguous
  // clustering, and requires two independent seeds to agree.
  WedderburnSignature signature(uint64_t seed = 0) const;

  // Commutativity certificate via the transpose anti-involution
  // g -> w g^T w^{-1}: if it fixes H, phi, and every supported double coset,
  // the algebra is commutative and all block sizes are exactly one.
  bool involution_certificate() const;

  // Exact pairwise commutativity of the basis operators (first-column
  // comparison in exact arithmetic); feasible for moderate dimensions.
  bool commutes_exactly(int max_dim = 128) const;

 private:
  const Group* G_;
  std::shared_ptr<Subgroup> H_;
  Character phi_;
  std::shared_ptr<const CosetSpace> cosets_;
  uint32_t n_;  // number of cosets
  std::vector<uint32_t> dc_of_coset_;
  std::vector<uint32_t> dc_rep_coset_;
  std::vector<char> dc_supported_;
  std::vector<uint32_t> basis_;              // supported dc ids
  std::vector<int> basis_index_of_dc_;       // dc id -> basis position or -1
  std::vector<std::vector<std::pair<uint32_t, int>>> w_;  // per basis: (coset, exp)
  std::vector<int> w_exp_of_coset_;          // coset -> exponent (for its own dc)
  std::vector<MCode> rep_, rep_inv_;

  WedderburnSignature signature_once(uint64_t seed) const;
  std::vector<std::complex<double>> apply_symmetrized(
      const std::vector<std::complex<double>>& coeffs,
      const std::vector<std::pair<uint32_t, int>>& col) const;
  std::vector<std::complex<double>> column_exact(uint32_t basis_pos) const {
    return {};
  }
};

// max over chi of the largest block of End(V^t_chi), via Hecke signatures.
struct ABoundResult {
  long long value = 0;
  std::vector<std::pair<std::string, long long>> per_chi;  // chi id -> max block
};
ABoundResult a_bound(const Tower& tower, int level, int t, uint64_t seed = 0);

// Reference block structure of End(V^t_chi) at a given q (ell <= 4),
// including the recursion through levels; `gg_total` marks entries the
// source states for the full V^t rather than per chi.
struct ReferenceBlocks {
  WedderburnSignature per_chi;     // expanded per central character
  bool has_disputed = false;       // an entry whose printed value conflicts
  std::string note;
};
ReferenceBlocks reference_endo_blocks(int q, int ell, int t, bool chi_square);

struct EndoReport {
  int t = 0;
  std::string chi_id;
  WedderburnSignature computed;
  WedderburnSignature expected;
  bool match = false;
  std::string note;
};
EndoReport endo_report(const Tower& tower, DecompEngine& engine, int level, int t,
                       const RingChar& chi, uint64_t seed = 0);

}  // namespace gl2
