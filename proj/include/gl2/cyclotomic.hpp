#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gl2 {

// Shared reduction data for Q(zeta_n): the cyclotomic polynomial Phi_n and a
// table expressing zeta^j, 0 <= j < 2n, in the power basis 1, zeta, ...,
// zeta^{deg-1}.  Built once per conductor and cached.
struct CycloContext {
  int n = 1;
  int deg = 1;                        // deg Phi_n = phi(n)
  std::vector<long long> phi_poly;    // monic, length deg+1
  std::vector<std::vector<long long>> pow_table;  // 2n rows of length deg

  static const CycloContext* get(int n);
};

// An exact element of Q(zeta_n) scaled to integer coordinates: value =
// (1/den) * sum coef[k] zeta^k over the power basis.  Conductors mix via lcm.
class Cyclo {
 public:
  Cyclo() : ctx_(CycloContext::get(1)), coef_(1, 0), den_(1) {}
  explicit Cyclo(long long v) : ctx_(CycloContext::get(1)), coef_(1, v), den_(1) {}

  // zeta_n^e
  static Cyclo root(int n, long long e);
  // sum over exponent counts: counts[k] copies of zeta_n^k
  static Cyclo from_counts(int n, const std::vector<long long>& counts);

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo conj() const;  // complex conjugation zeta -> zeta^{-1}
  Cyclo scaled(long long num, long long den) const;

  bool is_zero() const;
  bool operator==(const Cyclo& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Exact rational detection: true iff the value is num/den in lowest terms.
  bool is_rational(long long* num = nullptr, long long* den = nullptr) const;
  bool is_integer(long long* value = nullptr) const;

  int conductor() const { return ctx_->n; }
  double real_part() const;
  double imag_part() const;
  std::string str() const;

 private:
  const CycloContext* ctx_;
  std::vector<long long> coef_;  // length ctx_->deg
  long long den_;

  Cyclo lifted(int n) const;  // re-express in Q(zeta_n), ctx_->n | n
  void normalize();
};

}  // namespace gl2
