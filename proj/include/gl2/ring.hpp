#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gl2 {

// Error taxonomy shared across the library.
struct ArtifactError : std::runtime_error {
  explicit ArtifactError(const std::string& m) : std::runtime_error(m) {}
};
struct NonUnit : ArtifactError {
  explicit NonUnit(const std::string& m) : ArtifactError(m) {}
};
struct BadIndex : ArtifactError {
  explicit BadIndex(const std::string& m) : ArtifactError(m) {}
};
struct BadParam : ArtifactError {
  explicit BadParam(const std::string& m) : ArtifactError(m) {}
};
struct BudgetExceeded : ArtifactError {
  explicit BudgetExceeded(const std::string& m) : ArtifactError(m) {}
};
struct NotASubgroup : ArtifactError {
  explicit NotASubgroup(const std::string& m) : ArtifactError(m) {}
};
struct OutOfDomain : ArtifactError {
  explicit OutOfDomain(const std::string& m) : ArtifactError(m) {}
};
struct NoSolution : ArtifactError {
  explicit NoSolution(const std::string& m) : ArtifactError(m) {}
};
struct NotInjectivePair : ArtifactError {
  explicit NotInjectivePair(const std::string& m) : ArtifactError(m) {}
};
struct BadShape : ArtifactError {
  explicit BadShape(const std::string& m) : ArtifactError(m) {}
};
struct NotRegular : ArtifactError {
  explicit NotRegular(const std::string& m) : ArtifactError(m) {}
};
struct DegenerateSpectrum : ArtifactError {
  explicit DegenerateSpectrum(const std::string& m) : ArtifactError(m) {}
};

enum class RingFlavor { zmod, tpoly };

// An element of o_ell is a code in [0, p^ell).  For zmod the code is the
// canonical integer representative; for tpoly it is the base-p digit string
// a_0 + a_1*p + ... + a_{ell-1}*p^{ell-1} encoding a_0 + a_1 t + ...
using RElem = uint16_t;

// The finite local ring o_ell = Z/p^ell or F_p[t]/t^ell, p an odd prime.
// All arithmetic is table-driven; elements are immutable codes.
class Ring {
 public:
  Ring(int p, int ell, RingFlavor flavor);

  int p() const { return p_; }
  int q() const { return p_; }  // residue field size (prime residue fields only)
  int ell() const { return ell_; }
  int ell1() const { return ell_ / 2; }        // floor(ell/2)
  int ell2() const { return (ell_ + 1) / 2; }  // ceil(ell/2)
  RingFlavor flavor() const { return flavor_; }
  int size() const { return size_; }
  int unit_count() const { return unit_count_; }

  RElem zero() const { return 0; }
  RElem one() const { return one_; }

  RElem add(RElem a, RElem b) const { return add_[a * size_ + b]; }
  RElem sub(RElem a, RElem b) const { return add_[a * size_ + neg_[b]]; }
  RElem mul(RElem a, RElem b) const { return mul_[a * size_ + b]; }
  RElem neg(RElem a) const { return neg_[a]; }
  RElem inv(RElem a) const {
    if (inv_[a] == kNoInv) throw NonUnit("inv of non-unit");
    return inv_[a];
  }
  bool is_unit(RElem a) const { return inv_[a] != kNoInv; }

  // pi-adic valuation; val(0) = ell by convention.
  int val(RElem a) const { return val_[a]; }

  // Generator of the maximal ideal: p for zmod, t for tpoly.
  RElem pi() const { return pi_; }
  // pi^k as an element (k >= ell gives 0).
  RElem pi_pow(int k) const { return k >= ell_ ? 0 : pi_pow_[k]; }

  // Exact division by pi^k; requires val(a) >= k.
  RElem div_pi(RElem a, int k) const;

  // From a small integer (reduces mod the ring structure).
  RElem from_int(long long n) const;

  // Natural projection o_ell -> o_i (i <= ell) and canonical lift back.
  // Codes of the target ring returned; the caller owns the target Ring.
  RElem project(RElem a, int i) const;
  RElem lift_code(RElem a_low, int i) const;  // canonical lift of an o_i code

  // Additive character psi: o_ell -> C^x, primitive in the sense that it is
  // nontrivial on pi^{ell-1} o_ell.  Values are roots of unity, returned as
  // an exponent e meaning exp(2*pi*i*e/psi_order()).
  //   zmod:  psi(x) = zeta_{p^ell}^x
  //   tpoly: psi(x) = zeta_p^{top coefficient of x}
  int psi_exponent(RElem a) const { return psi_exp_[a]; }
  int psi_order() const { return psi_order_; }

  // Deterministic generating set of the unit group.
  const std::vector<RElem>& unit_gens() const { return unit_gens_; }
  const std::vector<RElem>& units() const { return units_; }

  std::string describe(RElem a) const;
  std::string name() const;

 private:
  static constexpr RElem kNoInv = 0xFFFF;

  int p_, ell_, size_;
  RingFlavor flavor_;
  int unit_count_;
  RElem one_, pi_;
  int psi_order_;
  std::vector<RElem> add_, mul_, neg_, inv_;
  std::vector<int> val_, psi_exp_;
  std::vector<RElem> pi_pow_;
  std::vector<RElem> units_, unit_gens_;

  RElem raw_add(RElem a, RElem b) const;
  RElem raw_mul(RElem a, RElem b) const;
};

Ring make_ring(int p, int ell, RingFlavor flavor);

RingFlavor flavor_from_string(const std::string& s);
std::string flavor_to_string(RingFlavor f);

}  // namespace gl2
