#include "gl2/ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gl2 {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Ring::Ring(int p, int ell, RingFlavor flavor) : p_(p), ell_(ell), flavor_(flavor) {
  if (!is_prime(p) || p < 3) throw BadParam("p must be an odd prime");
  if (ell < 1) throw BadParam("ell must be >= 1");
  size_ = ipow(p, ell);
  if (size_ > 4096) throw BadParam("ring too large for table-driven arithmetic");

  one_ = 1;
  pi_ = static_cast<RElem>(flavor == RingFlavor::zmod || ell == 1 ? p % size_ : p);
  // For tpoly the code of t is p (digit a_1 = 1); for ell == 1 both flavors
  // collapse to F_p and pi = 0.
  if (ell == 1) pi_ = 0;

  add_.resize(size_t(size_) * size_);
  mul_.resize(size_t(size_) * size_);
  neg_.resize(size_);
  inv_.assign(size_, kNoInv);
  val_.resize(size_);
  psi_exp_.resize(size_);

  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      add_[size_t(a) * size_ + b] = raw_add(RElem(a), RElem(b));
      mul_[size_t(a) * size_ + b] = raw_mul(RElem(a), RElem(b));
    }
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b)
      if (add_[size_t(a) * size_ + b] == 0) neg_[a] = RElem(b);
    for (int b = 0; b < size_; ++b)
      if (mul_[size_t(a) * size_ + b] == one_) inv_[a] = RElem(b);
  }

  pi_pow_.resize(ell_ + 1);
  pi_pow_[0] = one_;
  RElem piv = ell_ == 1 ? RElem(0) : RElem(p);
  for (int k = 1; k <= ell_; ++k) pi_pow_[k] = mul(pi_pow_[k - 1], piv);
  pi_ = piv;

  for (int a = 0; a < size_; ++a) {
    if (a == 0) {
      val_[a] = ell_;
      continue;
    }
    // Both encodings read "divisible by pi" as "code divisible by p": for
    // zmod directly, for tpoly because a_0 = code mod p and shifting digits
    // down is integer division by p.
    int v = 0, x = a;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    val_[a] = v;
  }

  psi_order_ = flavor_ == RingFlavor::zmod ? size_ : p_;
  for (int a = 0; a < size_; ++a) {
    if (flavor_ == RingFlavor::zmod)
      psi_exp_[a] = a;
    else
      psi_exp_[a] = (a / ipow(p, ell_ - 1)) % p;  // top coefficient
  }

  unit_count_ = 0;
  for (int a = 0; a < size_; ++a)
    if (inv_[a] != kNoInv) {
      units_.push_back(RElem(a));
      ++unit_count_;
    }

  // Greedy generating set for the unit group (abelian, so closure under
  // products of the span suffices; inverses are powers).
  std::set<RElem> span = {one_};
  for (RElem u : units_) {
    if (span.count(u)) continue;
    unit_gens_.push_back(u);
    span.insert(u);
    for (;;) {
      size_t before = span.size();
      std::vector<RElem> cur(span.begin(), span.end());
      for (RElem a : cur)
        for (RElem b : cur) span.insert(mul(a, b));
      if (span.size() == before) break;
    }
    if (span.size() == size_t(unit_count_)) break;
  }
}

RElem Ring::raw_add(RElem a, RElem b) const {
  if (flavor_ == RingFlavor::zmod) return RElem((a + b) % size_);
  int r = 0, mult = 1, x = a, y = b;
  for (int i = 0; i < ell_; ++i) {
    r += ((x % p_) + (y % p_)) % p_ * mult;
    x /= p_;
    y /= p_;
    mult *= p_;
  }
  return RElem(r);
}

RElem Ring::raw_mul(RElem a, RElem b) const {
  if (flavor_ == RingFlavor::zmod) return RElem((int(a) * int(b)) % size_);
  int digs_a[8] = {0}, digs_b[8] = {0}, out[8] = {0};
  int x = a, y = b;
  for (int i = 0; i < ell_; ++i) {
    digs_a[i] = x % p_;
    digs_b[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (int i = 0; i < ell_; ++i)
    for (int j = 0; i + j < ell_; ++j) out[i + j] += digs_a[i] * digs_b[j];
  int r = 0, mult = 1;
  for (int i = 0; i < ell_; ++i) {
    r += (out[i] % p_) * mult;
    mult *= p_;
  }
  return RElem(r);
}

RElem Ring::div_pi(RElem a, int k) const {
  if (val(a) < k) throw BadParam("div_pi: valuation too small");
  int x = a;
  for (int i = 0; i < k; ++i) x /= p_;  // digit shift / integer division agree
  return RElem(x);
}

RElem Ring::from_int(long long n) const {
  long long m = n % size_;
  if (m < 0) m += size_;
  if (flavor_ == RingFlavor::zmod) return RElem(m);
  // tpoly: integers land in the constant coefficient.
  long long c = n % p_;
  if (c < 0) c += p_;
  return RElem(c);
}

RElem Ring::project(RElem a, int i) const {
  if (i > ell_ || i < 0) throw BadIndex("project: level out of range");
  int m = 1;
  for (int k = 0; k < i; ++k) m *= p_;
  return RElem(a % m);  // works for both flavors: drop high digits / reduce mod p^i
}

RElem Ring::lift_code(RElem a_low, int i) const {
  if (i > ell_ || i < 0) throw BadIndex("lift: level out of range");
  int m = 1;
  for (int k = 0; k < i; ++k) m *= p_;
  if (a_low >= m) throw BadIndex("lift: code not in o_i");
  return a_low;  // canonical lift: same integer / zero-padded digits
}

std::string Ring::describe(RElem a) const {
  if (flavor_ == RingFlavor::zmod) return std::to_string(int(a));
  std::string s;
  int x = a;
  bool first = true;
  for (int i = 0; i < ell_; ++i) {
    int c = x % p_;
    x /= p_;
    if (c == 0) continue;
    if (!first) s += "+";
    first = false;
    if (i == 0)
      s += std::to_string(c);
    else {
      if (c != 1) s += std::to_string(c) + "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  if (first) s = "0";
  return s;
}

std::string Ring::name() const {
  if (flavor_ == RingFlavor::zmod)
    return "Z/" + std::to_string(size_);
  return "F" + std::to_string(p_) + "[t]/t^" + std::to_string(ell_);
}

Ring make_ring(int p, int ell, RingFlavor flavor) { return Ring(p, ell, flavor); }

RingFlavor flavor_from_string(const std::string& s) {
  if (s == "zmod") return RingFlavor::zmod;
  if (s == "tpoly") return RingFlavor::tpoly;
  throw BadParam("unknown ring flavor: " + s);
}

std::string flavor_to_string(RingFlavor f) {
  return f == RingFlavor::zmod ? "zmod" : "tpoly";
}

}  // namespace gl2
