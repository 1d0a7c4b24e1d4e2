#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gl2/ring.hpp"

namespace gl2 {

// A 2x2 matrix over o_ell packed as four 16-bit ring codes (row-major
// a,b,c,d from the low bits up).
using MCode = uint64_t;

struct Mat2 {
  RElem a, b, c, d;
};

inline MCode pack(const Mat2& m) {
  return MCode(m.a) | MCode(m.b) << 16 | MCode(m.c) << 32 | MCode(m.d) << 48;
}
inline Mat2 unpack(MCode g) {
  return Mat2{RElem(g & 0xFFFF), RElem((g >> 16) & 0xFFFF), RElem((g >> 32) & 0xFFFF),
              RElem(g >> 48)};
}

enum class MatType { cuspidal, split_semisimple, split_non_semisimple, non_regular };

std::string mat_type_name(MatType t);

// Matrix classification by the characteristic polynomial of the residue
// image: irreducible / two distinct roots / repeated root with the matrix
// non-scalar mod pi / scalar mod pi.
MatType classify_matrix(const Ring& R, MCode x);

// True when x is regular, i.e. non-scalar mod pi (char poly = min poly).
bool is_regular(const Ring& R, MCode x);

// The exponent f(t,i) controlling how far torus cosets are determined in the
// stabilizer analysis; requires 0 <= t <= ell, 1 <= i <= ell1.
int f_exponent(int t, int i, const Ring& R);

class Group;

// A subgroup of GL2(o_ell).  Always carries order, membership and
// generators; carries a sorted element list when small enough, or a
// two-factor product decomposition (elements = {a*b}) for larger groups
// that still need enumeration.
struct Subgroup {
  std::string kind;
  const Group* parent = nullptr;
  uint64_t order = 0;
  std::vector<MCode> elems;  // sorted, unique; may be empty for big groups
  std::function<bool(MCode)> member;
  std::vector<MCode> gens;
  // Optional product enumeration: every element is factor_a[i]*factor_b[j]
  // uniquely.  Used when elems would be too large to keep sorted.
  std::vector<MCode> factor_a, factor_b;

  bool has_elems() const { return !elems.empty(); }
  bool contains(MCode g) const { return member(g); }
  uint64_t size() const { return order; }
  void for_each(const std::function<void(MCode)>& fn) const;
};

// GL2 over a finite local ring.  Elements are enumerated when the group
// order is within the budget; otherwise the handle stays lazy (arithmetic,
// membership and coset machinery still work).
class Group {
 public:
  explicit Group(const Ring& R, uint64_t enum_budget = 1000000);

  const Ring& ring() const { return *R_; }
  uint64_t order() const { return order_; }
  bool enumerated() const { return !elems_.empty(); }
  const std::vector<MCode>& elements() const;
  uint32_t index_of(MCode g) const;

  MCode identity() const { return id_; }
  MCode mul(MCode x, MCode y) const;
  MCode inv(MCode x) const;
  MCode conj(MCode g, MCode x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  RElem det(MCode x) const;
  RElem trace(MCode x) const;
  bool is_invertible(MCode x) const { return R_->is_unit(det(x)); }
  const std::vector<MCode>& gens() const { return gens_; }

  MCode make(RElem a, RElem b, RElem c, RElem d) const {
    return pack(Mat2{a, b, c, d});
  }
  MCode reduce_to(const Ring& target, MCode g) const;  // entrywise projection
  MCode lift_from(const Ring& source, MCode g) const;  // entrywise canonical lift

  std::string describe(MCode g) const;

  // --- named subgroups -------------------------------------------------
  Subgroup borel() const;                  // B: upper triangular
  Subgroup unipotent() const;              // U
  Subgroup torus() const;                  // T
  Subgroup center() const;                 // Z
  Subgroup center_t(int t) const;          // Z^t = {diag(x, x+pi^t y)}
  Subgroup zu() const;                     // ZU
  Subgroup ztu(int t) const;               // Z^t U
  Subgroup mirabolic() const;              // P2: last row (0,1)
  Subgroup congruence(int i) const;        // K^i = ker(G_ell -> G_i)
  Subgroup centralizer(MCode A) const;     // C_G(A)
  // Inertia subgroup of psi_A as a character of K^i (default i = ell2):
  // {g : g^-1 A g = A mod pi^{ell-i}}.
  Subgroup stabilizer_of_psi(MCode A, int i = -1) const;
  // N from the split-non-semisimple construction, for A = (alpha 1; pi^j beta alpha).
  Subgroup sns_normal_subgroup(int j) const;
  // Product subgroup N * C(A) (elements materialized; odd ell desk scales).
  Subgroup product_subgroup(const Subgroup& A, const Subgroup& B,
                            const std::string& kind) const;
  Subgroup intersect(const Subgroup& A, const Subgroup& B, const std::string& kind) const;

  struct ConjClasses {
    std::vector<MCode> reps;
    std::vector<uint64_t> sizes;
    std::vector<uint32_t> class_of;  // indexed by element index
    uint32_t class_of_elem(const Group& G, MCode g) const {
      return class_of[G.index_of(g)];
    }
  };
  const ConjClasses& conjugacy_classes() const;

 private:
  const Ring* R_;
  uint64_t order_;
  MCode id_;
  std::vector<MCode> elems_;
  mutable std::unordered_map<MCode, uint32_t> index_;
  std::vector<MCode> gens_;
  mutable std::unique_ptr<ConjClasses> classes_;

  void verify_subgroup(Subgroup& H) const;
};

uint64_t gl2_order_formula(int q, int ell);

// --- coset spaces ------------------------------------------------------

// The space of right cosets H\G with deterministic BFS indexing; rep[0] is
// the identity coset.  Lookup is O(1) via a canonical form for ZU- and
// Z^tU-type subgroups, and a rep-scan fallback otherwise.
class CosetSpace {
 public:
  // canon: optional canonical form for the coset Hg (must be constant on
  // cosets and injective across them).
  CosetSpace(const Group& G, const Subgroup& H,
             std::function<MCode(MCode)> canon = nullptr);

  uint32_t size() const { return uint32_t(reps_.size()); }
  MCode rep(uint32_t i) const { return reps_[i]; }
  const std::vector<MCode>& reps() const { return reps_; }
  uint32_t index_of(MCode g) const;

 private:
  const Group* G_;
  const Subgroup* H_;
  std::function<MCode(MCode)> canon_;
  std::vector<MCode> reps_;
  std::unordered_map<MCode, uint32_t> by_key_;
};

// Canonical forms for the fast coset backends.
std::function<MCode(MCode)> zu_coset_canon(const Group& G);
std::function<MCode(MCode)> ztu_coset_canon(const Group& G, int t);

// Double cosets H\G/K as right-multiplication K-orbits on H\G.
struct DoubleCosetSet {
  std::vector<uint32_t> rep_coset;     // seed coset index per double coset
  std::vector<MCode> reps;
  std::vector<uint64_t> sizes;         // |H g K|
  std::vector<uint32_t> dc_of_coset;   // coset index -> double coset id
  uint64_t total() const;
};

DoubleCosetSet double_cosets(const Group& G, const Subgroup& H, const Subgroup& K,
                             const CosetSpace& HG);
DoubleCosetSet double_cosets(const Group& G, const Subgroup& H, const Subgroup& K);

// Conjugation orbit of a matrix (not necessarily invertible) under G.
std::vector<MCode> matrix_conj_orbit(const Group& G, MCode x, size_t cap = 1u << 22);
bool matrices_similar(const Group& G, MCode x, MCode y);

}  // namespace gl2
