#include "gl2/cyclotomic.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gl2/ring.hpp"

namespace gl2 {

namespace {

using Poly = std::vector<long long>;  // coefficient list, low degree first

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of polynomials with integer coefficients, divisor monic.
Poly div_exact(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, 0);
  while (num.size() >= den.size()) {
    trim(num);
    if (num.size() < den.size()) break;
    long long c = num.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    if (num.back() != 0) throw ArtifactError("cyclotomic: non-exact division");
    num.pop_back();
  }
  trim(num);
  if (!(num.size() == 1 && num[0] == 0)) throw ArtifactError("cyclotomic: nonzero remainder");
  return q;
}

Poly cyclotomic_poly(int n, std::map<int, Poly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;  // x^n - 1
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = div_exact(num, cyclotomic_poly(d, memo));
  memo[n] = num;
  return num;
}

std::map<int, std::unique_ptr<CycloContext>>& context_cache() {
  static std::map<int, std::unique_ptr<CycloContext>> cache;
  return cache;
}
std::mutex context_mutex;

long long checked_ll(__int128 v) {
  if (v > __int128(INT64_MAX) / 2 || v < -(__int128(INT64_MAX) / 2))
    throw ArtifactError("cyclotomic: coefficient overflow");
  return (long long)v;
}

}  // namespace

const CycloContext* CycloContext::get(int n) {
  std::lock_guard<std::mutex> lock(context_mutex);
  auto& cache = context_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second.get();

  auto ctx = std::make_unique<CycloContext>();
  ctx->n = n;
  std::map<int, Poly> memo;
  ctx->phi_poly = cyclotomic_poly(n, memo);
  ctx->deg = int(ctx->phi_poly.size()) - 1;

  // zeta^j in the power basis for 0 <= j < 2n.
  int deg = ctx->deg;
  ctx->pow_table.assign(2 * n, std::vector<long long>(deg, 0));
  std::vector<long long> cur(deg, 0);
  cur[0] = 1;
  ctx->pow_table[0] = cur;
  for (int j = 1; j < 2 * n; ++j) {
    // multiply by x, reduce once by the monic Phi
    std::vector<long long> nxt(deg, 0);
    long long lead = cur[deg - 1];
    for (int k = deg - 1; k >= 1; --k) nxt[k] = cur[k - 1];
    nxt[0] = 0;
    if (lead != 0)
      for (int k = 0; k < deg; ++k) nxt[k] -= lead * ctx->phi_poly[k];
    cur = nxt;
    ctx->pow_table[j] = cur;
  }

  const CycloContext* out = ctx.get();
  cache[n] = std::move(ctx);
  return out;
}

Cyclo Cyclo::root(int n, long long e) {
  Cyclo c;
  c.ctx_ = CycloContext::get(n);
  e %= n;
  if (e < 0) e += n;
  c.coef_.assign(c.ctx_->deg, 0);
  const auto& row = c.ctx_->pow_table[e];
  for (int k = 0; k < c.ctx_->deg; ++k) c.coef_[k] = row[k];
  c.den_ = 1;
  c.normalize();
  return c;
}

Cyclo Cyclo::from_counts(int n, const std::vector<long long>& counts) {
  Cyclo c;
  c.ctx_ = CycloContext::get(n);
  c.coef_.assign(c.ctx_->deg, 0);
  c.den_ = 1;
  for (size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const auto& row = c.ctx_->pow_table[j % n];
    for (int k = 0; k < c.ctx_->deg; ++k)
      c.coef_[k] = checked_ll(__int128(c.coef_[k]) + __int128(counts[j]) * row[k]);
  }
  c.normalize();
  return c;
}

Cyclo Cyclo::lifted(int n) const {
  if (ctx_->n == n) return *this;
  if (n % ctx_->n != 0) throw ArtifactError("cyclotomic: bad lift");
  const CycloContext* target = CycloContext::get(n);
  int stride = n / ctx_->n;
  Cyclo out;
  out.ctx_ = target;
  out.coef_.assign(target->deg, 0);
  out.den_ = den_;
  for (int k = 0; k < ctx_->deg; ++k) {
    if (coef_[k] == 0) continue;
    const auto& row = target->pow_table[((long long)k * stride) % n];
    for (int j = 0; j < target->deg; ++j)
      out.coef_[j] = checked_ll(__int128(out.coef_[j]) + __int128(coef_[k]) * row[j]);
  }
  out.normalize();
  return out;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  int n = std::lcm(ctx_->n, o.ctx_->n);
  Cyclo a = lifted(n), b = o.lifted(n);
  Cyclo r;
  r.ctx_ = a.ctx_;
  long long g = std::gcd(a.den_, b.den_);
  long long ma = b.den_ / g, mb = a.den_ / g;
  r.den_ = a.den_ / g * b.den_;
  r.coef_.resize(a.coef_.size());
  for (size_t k = 0; k < a.coef_.size(); ++k)
    r.coef_[k] = checked_ll(__int128(a.coef_[k]) * ma + __int128(b.coef_[k]) * mb);
  r.normalize();
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + o.scaled(-1, 1); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  int n = std::lcm(ctx_->n, o.ctx_->n);
  Cyclo a = lifted(n), b = o.lifted(n);
  const CycloContext* ctx = a.ctx_;
  int deg = ctx->deg;
  std::vector<__int128> conv(2 * deg - 1, 0);
  for (int i = 0; i < deg; ++i) {
    if (a.coef_[i] == 0) continue;
    for (int j = 0; j < deg; ++j)
      conv[i + j] += __int128(a.coef_[i]) * b.coef_[j];
  }
  Cyclo r;
  r.ctx_ = ctx;
  r.den_ = a.den_ * b.den_;
  r.coef_.assign(deg, 0);
  for (int d = 0; d < 2 * deg - 1; ++d) {
    if (conv[d] == 0) continue;
    if (d < deg)
      r.coef_[d] = checked_ll(__int128(r.coef_[d]) + conv[d]);
    else {
      const auto& row = ctx->pow_table[d];  // d < 2*deg-1 < 2n
      for (int k = 0; k < deg; ++k)
        r.coef_[k] = checked_ll(__int128(r.coef_[k]) + conv[d] * row[k]);
    }
  }
  r.normalize();
  return r;
}

Cyclo Cyclo::conj() const {
  const CycloContext* ctx = ctx_;
  int n = ctx->n;
  Cyclo r;
  r.ctx_ = ctx;
  r.den_ = den_;
  r.coef_.assign(ctx->deg, 0);
  for (int k = 0; k < ctx->deg; ++k) {
    if (coef_[k] == 0) continue;
    const auto& row = ctx->pow_table[(n - k) % n];
    for (int j = 0; j < ctx->deg; ++j)
      r.coef_[j] = checked_ll(__int128(r.coef_[j]) + __int128(coef_[k]) * row[j]);
  }
  r.normalize();
  return r;
}

Cyclo Cyclo::scaled(long long num, long long den) const {
  if (den == 0) throw ArtifactError("cyclotomic: zero denominator");
  Cyclo r = *this;
  for (auto& c : r.coef_) c = checked_ll(__int128(c) * num);
  r.den_ = checked_ll(__int128(r.den_) * den);
  r.normalize();
  return r;
}

void Cyclo::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : coef_) c = -c;
  }
  long long g = den_;
  for (auto c : coef_) g = std::gcd(g, c < 0 ? -c : c);
  if (g > 1) {
    den_ /= g;
    for (auto& c : coef_) c /= g;
  }
  if (den_ == 0) throw ArtifactError("cyclotomic: zero denominator");
}

bool Cyclo::is_zero() const {
  for (auto c : coef_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_rational(long long* num, long long* den) const {
  for (size_t k = 1; k < coef_.size(); ++k)
    if (coef_[k] != 0) return false;
  if (num) *num = coef_[0];
  if (den) *den = den_;
  return true;
}

bool Cyclo::is_integer(long long* value) const {
  long long n, d;
  if (!is_rational(&n, &d)) return false;
  if (d != 1) return false;
  if (value) *value = n;
  return true;
}

double Cyclo::real_part() const {
  double s = 0;
  for (size_t k = 0; k < coef_.size(); ++k)
    s += double(coef_[k]) * std::cos(2.0 * M_PI * double(k) / ctx_->n);
  return s / double(den_);
}

double Cyclo::imag_part() const {
  double s = 0;
  for (size_t k = 0; k < coef_.size(); ++k)
    s += double(coef_[k]) * std::sin(2.0 * M_PI * double(k) / ctx_->n);
  return s / double(den_);
}

std::string Cyclo::str() const {
  long long n, d;
  if (is_rational(&n, &d)) {
    std::ostringstream os;
    os << n;
    if (d != 1) os << "/" << d;
    return os.str();
  }
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < coef_.size(); ++k) {
    if (coef_[k] == 0) continue;
    if (!first) os << (coef_[k] > 0 ? "+" : "");
    first = false;
    os << coef_[k] << "*z" << ctx_->n << "^" << k;
  }
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

}  // namespace gl2
