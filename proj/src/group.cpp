#include "gl2/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace gl2 {

std::string mat_type_name(MatType t) {
  switch (t) {
    case MatType::cuspidal: return "cuspidal";
    case MatType::split_semisimple: return "ss";
    case MatType::split_non_semisimple: return "sns";
    case MatType::non_regular: return "non-regular";
  }
  return "?";
}

MatType classify_matrix(const Ring& R, MCode x) {
  Mat2 m = unpack(x);
  int p = R.p();
  auto red = [&](RElem v) { return int(R.project(v, 1)); };
  int a = red(m.a), b = red(m.b), c = red(m.c), d = red(m.d);
  bool scalar = (b == 0 && c == 0 && a == d);
  if (scalar) return MatType::non_regular;
  int tr = (a + d) % p;
  int det = ((a * d - b * c) % p + p * p) % p;
  int disc = ((tr * tr - 4 * det) % p + p * p) % p;
  if (disc == 0) return MatType::split_non_semisimple;
  // quadratic residue test in F_p
  for (int s = 0; s < p; ++s)
    if (s * s % p == disc) return MatType::split_semisimple;
  return MatType::cuspidal;
}

bool is_regular(const Ring& R, MCode x) {
  return classify_matrix(R, x) != MatType::non_regular;
}

int f_exponent(int t, int i, const Ring& R) {
  int ell = R.ell(), ell1 = R.ell1(), ell2 = R.ell2();
  if (t < 0 || t > ell || i < 1 || i > ell1) throw BadParam("f_exponent: out of range");
  if (ell2 > t) return t - std::max(t - i, 0);
  if (i + t >= ell) return ell1;
  return t - ell2 + i;
}

uint64_t gl2_order_formula(int q, int ell) {
  uint64_t r = 1;
  for (int k = 0; k < 4 * ell - 3; ++k) r *= q;
  return r * (q - 1) * (q - 1) * (q + 1);
}

void Subgroup::for_each(const std::function<void(MCode)>& fn) const {
  if (has_elems()) {
    for (MCode g : elems) fn(g);
    return;
  }
  if (!factor_a.empty()) {
    const Group* G = parent;
    for (MCode a : factor_a)
      for (MCode b : factor_b) fn(G->mul(a, b));
    return;
  }
  throw BudgetExceeded("subgroup has no enumeration: " + kind);
}

Group::Group(const Ring& R, uint64_t enum_budget) : R_(&R) {
  order_ = gl2_order_formula(R.q(), R.ell());
  id_ = make(R.one(), 0, 0, R.one());

  // Elementary matrices over additive generators plus diagonal unit
  // generators; generation is verified by tests against full enumeration.
  std::vector<RElem> addgens;
  if (R.flavor() == RingFlavor::zmod)
    addgens.push_back(R.one());
  else
    for (int k = 0; k < R.ell(); ++k) {
      RElem t = R.one();
      for (int i = 0; i < k; ++i) t = R.mul(t, RElem(R.p()));  // t^k code
      addgens.push_back(t);
    }
  for (RElem x : addgens) {
    gens_.push_back(make(R.one(), x, 0, R.one()));
    gens_.push_back(make(R.one(), 0, x, R.one()));
  }
  for (RElem u : R.unit_gens()) gens_.push_back(make(u, 0, 0, R.one()));

  if (order_ <= enum_budget) {
    elems_.reserve(order_);
    int n = R.size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            MCode g = make(RElem(a), RElem(b), RElem(c), RElem(d));
            if (is_invertible(g)) elems_.push_back(g);
          }
    if (elems_.size() != order_)
      throw ArtifactError("GL2 enumeration does not match the order formula");
    std::sort(elems_.begin(), elems_.end());
    index_.reserve(elems_.size() * 2);
    for (uint32_t i = 0; i < elems_.size(); ++i) index_[elems_[i]] = i;
  }
}

const std::vector<MCode>& Group::elements() const {
  if (elems_.empty()) throw BudgetExceeded("group not enumerated (order " +
                                           std::to_string(order_) + ")");
  return elems_;
}

uint32_t Group::index_of(MCode g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw ArtifactError("index_of: not a group element");
  return it->second;
}

MCode Group::mul(MCode x, MCode y) const {
  const Ring& R = *R_;
  Mat2 u = unpack(x), v = unpack(y);
  Mat2 w;
  w.a = R.add(R.mul(u.a, v.a), R.mul(u.b, v.c));
  w.b = R.add(R.mul(u.a, v.b), R.mul(u.b, v.d));
  w.c = R.add(R.mul(u.c, v.a), R.mul(u.d, v.c));
  w.d = R.add(R.mul(u.c, v.b), R.mul(u.d, v.d));
  return pack(w);
}

MCode Group::inv(MCode x) const {
  const Ring& R = *R_;
  Mat2 m = unpack(x);
  RElem dt = det(x);
  RElem di = R.inv(dt);
  Mat2 w;
  w.a = R.mul(di, m.d);
  w.b = R.mul(di, R.neg(m.b));
  w.c = R.mul(di, R.neg(m.c));
  w.d = R.mul(di, m.a);
  return pack(w);
}

RElem Group::det(MCode x) const {
  const Ring& R = *R_;
  Mat2 m = unpack(x);
  return R.sub(R.mul(m.a, m.d), R.mul(m.b, m.c));
}

RElem Group::trace(MCode x) const {
  Mat2 m = unpack(x);
  return R_->add(m.a, m.d);
}

MCode Group::reduce_to(const Ring& target, MCode g) const {
  Mat2 m = unpack(g);
  int i = target.ell();
  return pack(Mat2{R_->project(m.a, i), R_->project(m.b, i), R_->project(m.c, i),
                   R_->project(m.d, i)});
}

MCode Group::lift_from(const Ring& source, MCode g) const {
  Mat2 m = unpack(g);
  int i = source.ell();
  return pack(Mat2{R_->lift_code(m.a, i), R_->lift_code(m.b, i), R_->lift_code(m.c, i),
                   R_->lift_code(m.d, i)});
}

std::string Group::describe(MCode g) const {
  Mat2 m = unpack(g);
  std::ostringstream os;
  os << "[" << R_->describe(m.a) << "," << R_->describe(m.b) << ";"
     << R_->describe(m.c) << "," << R_->describe(m.d) << "]";
  return os.str();
}

void Group::verify_subgroup(Subgroup& H) const {
  if (H.order <= 10000 && H.has_elems()) {
    std::set<MCode> set(H.elems.begin(), H.elems.end());
    if (set.size() != H.order) throw NotASubgroup(H.kind + ": order mismatch");
    for (MCode a : H.elems) {
      if (!set.count(inv(a))) throw NotASubgroup(H.kind + ": not closed under inverse");
      for (MCode b : H.gens)
        if (!set.count(mul(a, b))) throw NotASubgroup(H.kind + ": not closed");
    }
    for (MCode a : H.elems)
      if (!H.member(a)) throw NotASubgroup(H.kind + ": membership predicate rejects element");
  }
}

Subgroup Group::borel() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "B";
  H.parent = this;
  for (RElem a : R.units())
    for (RElem d : R.units())
      for (int b = 0; b < R.size(); ++b) H.elems.push_back(make(a, RElem(b), 0, d));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.c == 0 && R.is_unit(m.a) && R.is_unit(m.d);
  };
  for (RElem u : R.unit_gens()) {
    H.gens.push_back(make(u, 0, 0, R.one()));
    H.gens.push_back(make(R.one(), 0, 0, u));
  }
  H.gens.push_back(make(R.one(), R.one(), 0, R.one()));
  if (R.flavor() == RingFlavor::tpoly)
    for (int k = 1; k < R.ell(); ++k) H.gens.push_back(make(R.one(), R.pi_pow(k), 0, R.one()));
  verify_subgroup(H);
  return H;
}

Subgroup Group::unipotent() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "U";
  H.parent = this;
  for (int b = 0; b < R.size(); ++b) H.elems.push_back(make(R.one(), RElem(b), 0, R.one()));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.a == R.one() && m.d == R.one() && m.c == 0;
  };
  H.gens.push_back(make(R.one(), R.one(), 0, R.one()));
  if (R.flavor() == RingFlavor::tpoly)
    for (int k = 1; k < R.ell(); ++k) H.gens.push_back(make(R.one(), R.pi_pow(k), 0, R.one()));
  verify_subgroup(H);
  return H;
}

Subgroup Group::torus() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "T";
  H.parent = this;
  for (RElem a : R.units())
    for (RElem d : R.units()) H.elems.push_back(make(a, 0, 0, d));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.b == 0 && m.c == 0 && R.is_unit(m.a) && R.is_unit(m.d);
  };
  for (RElem u : R.unit_gens()) {
    H.gens.push_back(make(u, 0, 0, R.one()));
    H.gens.push_back(make(R.one(), 0, 0, u));
  }
  verify_subgroup(H);
  return H;
}

Subgroup Group::center() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "Z";
  H.parent = this;
  for (RElem a : R.units()) H.elems.push_back(make(a, 0, 0, a));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.b == 0 && m.c == 0 && m.a == m.d && R.is_unit(m.a);
  };
  for (RElem u : R.unit_gens()) H.gens.push_back(make(u, 0, 0, u));
  verify_subgroup(H);
  return H;
}

Subgroup Group::center_t(int t) const {
  const Ring& R = *R_;
  if (t < 0 || t > R.ell()) throw BadParam("Z^t: t out of range");
  Subgroup H;
  H.kind = "Z^" + std::to_string(t);
  H.parent = this;
  std::set<MCode> set;
  for (RElem x : R.units())
    for (int y = 0; y < R.size(); ++y) {
      RElem d = R.add(x, R.mul(R.pi_pow(t), RElem(y)));
      if (!R.is_unit(d)) continue;
      set.insert(make(x, 0, 0, d));
    }
  H.elems.assign(set.begin(), set.end());
  H.order = H.elems.size();
  int tt = t;
  H.member = [this, &R, tt](MCode g) {
    Mat2 m = unpack(g);
    return m.b == 0 && m.c == 0 && R.is_unit(m.a) && R.is_unit(m.d) &&
           R.val(R.sub(m.d, m.a)) >= tt;
  };
  for (RElem u : R.unit_gens()) H.gens.push_back(make(u, 0, 0, u));
  for (int y = 1; y < R.size(); ++y) {
    RElem d = R.add(R.one(), R.mul(R.pi_pow(t), RElem(y)));
    if (R.is_unit(d)) H.gens.push_back(make(R.one(), 0, 0, d));
  }
  verify_subgroup(H);
  return H;
}

Subgroup Group::zu() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "ZU";
  H.parent = this;
  for (RElem z : R.units())
    for (int u = 0; u < R.size(); ++u)
      H.elems.push_back(make(z, R.mul(z, RElem(u)), 0, z));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.c == 0 && m.a == m.d && R.is_unit(m.a);
  };
  for (RElem u : R.unit_gens()) H.gens.push_back(make(u, 0, 0, u));
  H.gens.push_back(make(R.one(), R.one(), 0, R.one()));
  if (R.flavor() == RingFlavor::tpoly)
    for (int k = 1; k < R.ell(); ++k) H.gens.push_back(make(R.one(), R.pi_pow(k), 0, R.one()));
  verify_subgroup(H);
  return H;
}

Subgroup Group::ztu(int t) const {
  const Ring& R = *R_;
  Subgroup Zt = center_t(t);
  Subgroup H;
  H.kind = "Z^" + std::to_string(t) + "U";
  H.parent = this;
  std::set<MCode> set;
  for (MCode z : Zt.elems)
    for (int u = 0; u < R.size(); ++u)
      set.insert(mul(z, make(R.one(), RElem(u), 0, R.one())));
  H.elems.assign(set.begin(), set.end());
  H.order = H.elems.size();
  int tt = t;
  H.member = [this, &R, tt](MCode g) {
    Mat2 m = unpack(g);
    return m.c == 0 && R.is_unit(m.a) && R.is_unit(m.d) && R.val(R.sub(m.d, m.a)) >= tt;
  };
  H.gens = Zt.gens;
  H.gens.push_back(make(R.one(), R.one(), 0, R.one()));
  if (R.flavor() == RingFlavor::tpoly)
    for (int k = 1; k < R.ell(); ++k) H.gens.push_back(make(R.one(), R.pi_pow(k), 0, R.one()));
  verify_subgroup(H);
  return H;
}

Subgroup Group::mirabolic() const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "P2";
  H.parent = this;
  for (RElem a : R.units())
    for (int b = 0; b < R.size(); ++b) H.elems.push_back(make(a, RElem(b), 0, R.one()));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  H.member = [this, &R](MCode g) {
    Mat2 m = unpack(g);
    return m.c == 0 && m.d == R.one() && R.is_unit(m.a);
  };
  for (RElem u : R.unit_gens()) H.gens.push_back(make(u, 0, 0, R.one()));
  H.gens.push_back(make(R.one(), R.one(), 0, R.one()));
  if (R.flavor() == RingFlavor::tpoly)
    for (int k = 1; k < R.ell(); ++k) H.gens.push_back(make(R.one(), R.pi_pow(k), 0, R.one()));
  verify_subgroup(H);
  return H;
}

Subgroup Group::congruence(int i) const {
  const Ring& R = *R_;
  if (i < 1 || i > R.ell()) throw BadParam("K^i: i out of range");
  Subgroup H;
  H.kind = "K^" + std::to_string(i);
  H.parent = this;
  int levels = R.ell() - i;
  int count = 1;
  for (int k = 0; k < levels; ++k) count *= R.p();
  // pi^i * o has `count` elements, spanned by pi^i, pi^i t, ... codes.
  std::vector<RElem> ideal;
  for (int v = 0; v < R.size(); ++v)
    if (R.val(RElem(v)) >= i) ideal.push_back(RElem(v));
  for (RElem da : ideal)
    for (RElem db : ideal)
      for (RElem dc : ideal)
        for (RElem dd : ideal)
          H.elems.push_back(make(R.add(R.one(), da), db, dc, R.add(R.one(), dd)));
  std::sort(H.elems.begin(), H.elems.end());
  H.order = H.elems.size();
  int ii = i;
  H.member = [this, &R, ii](MCode g) {
    Mat2 m = unpack(g);
    return R.val(R.sub(m.a, R.one())) >= ii && R.val(m.b) >= ii && R.val(m.c) >= ii &&
           R.val(R.sub(m.d, R.one())) >= ii;
  };
  for (int k = i; k < R.ell(); ++k) {
    RElem v = R.pi_pow(k);
    H.gens.push_back(make(R.add(R.one(), v), 0, 0, R.one()));
    H.gens.push_back(make(R.one(), v, 0, R.one()));
    H.gens.push_back(make(R.one(), 0, v, R.one()));
    H.gens.push_back(make(R.one(), 0, 0, R.add(R.one(), v)));
  }
  verify_subgroup(H);
  return H;
}

Subgroup Group::centralizer(MCode A) const {
  const Ring& R = *R_;
  Subgroup H;
  H.kind = "C(" + describe(A) + ")";
  H.parent = this;
  MCode Acode = A;
  H.member = [this, Acode](MCode g) {
    return is_invertible(g) && mul(g, Acode) == mul(Acode, g);
  };
  if (is_regular(R, A)) {
    // Centralizer of a regular matrix is the unit group of o[A].
    std::set<MCode> set;
    for (int a = 0; a < R.size(); ++a)
      for (int b = 0; b < R.size(); ++b) {
        Mat2 m = unpack(A);
        Mat2 w;
        w.a = R.add(RElem(a), R.mul(RElem(b), m.a));
        w.b = R.mul(RElem(b), m.b);
        w.c = R.mul(RElem(b), m.c);
        w.d = R.add(RElem(a), R.mul(RElem(b), m.d));
        MCode g = pack(w);
        if (is_invertible(g)) set.insert(g);
      }
    H.elems.assign(set.begin(), set.end());
    for (MCode g : H.elems)
      if (!H.member(g)) throw NotASubgroup("centralizer: o[A] element does not commute");
  } else {
    for (MCode g : elements())
      if (H.member(g)) H.elems.push_back(g);
  }
  H.order = H.elems.size();
  // Greedy generators.
  std::set<MCode> span = {id_};
  for (MCode g : H.elems) {
    if (span.count(g)) continue;
    H.gens.push_back(g);
    for (;;) {
      size_t before = span.size();
      std::vector<MCode> cur(span.begin(), span.end());
      for (MCode x : cur) {
        span.insert(mul(x, g));
        span.insert(mul(g, x));
      }
      std::vector<MCode> cur2(span.begin(), span.end());
      for (MCode x : cur2) span.insert(mul(x, x));
      if (span.size() == before) break;
    }
    // close fully
    for (;;) {
      size_t before = span.size();
      std::vector<MCode> cur(span.begin(), span.end());
      for (MCode x : cur)
        for (MCode y : H.gens) span.insert(mul(x, y));
      if (span.size() == before) break;
    }
    if (span.size() == H.elems.size()) break;
  }
  verify_subgroup(H);
  return H;
}

Subgroup Group::stabilizer_of_psi(MCode A, int i) const {
  const Ring& R = *R_;
  if (i < 0) i = R.ell2();
  int depth = R.ell() - i;  // congruence depth of the inertia condition
  Subgroup H;
  H.kind = "S(" + describe(A) + ")";
  H.parent = this;
  MCode Acode = A;
  int d = depth;
  H.member = [this, &R, Acode, d](MCode g) {
    if (!is_invertible(g)) return false;
    MCode x = mul(mul(inv(g), Acode), g);
    Mat2 a = unpack(Acode), y = unpack(x);
    return R.val(R.sub(y.a, a.a)) >= d && R.val(R.sub(y.b, a.b)) >= d &&
           R.val(R.sub(y.c, a.c)) >= d && R.val(R.sub(y.d, a.d)) >= d;
  };
  if (d < 1) throw BadParam("stabilizer_of_psi: need i < ell");
  // S_A = C(A) K^d: conjugating A by I + pi^d m moves it by pi^d [m, A],
  // so K^d sits inside the inertia condition (entries mod pi^d).
  Subgroup C = centralizer(A);
  Subgroup K = congruence(d);
  // Coset representatives of C modulo C cap K^d via the reduction image.
  Ring low(R.p(), d, R.flavor());
  std::set<MCode> images;
  std::vector<MCode> reps;
  for (MCode c : C.elems) {
    MCode img = reduce_to(low, c);
    if (images.insert(img).second) reps.push_back(c);
  }
  H.factor_a = reps;
  H.factor_b = K.elems;
  H.order = uint64_t(reps.size()) * K.elems.size();
  if (H.order <= 500000) {
    std::set<MCode> set;
    for (MCode a : H.factor_a)
      for (MCode b : H.factor_b) set.insert(mul(a, b));
    if (set.size() != H.order) throw NotASubgroup("S_A: product not direct");
    H.elems.assign(set.begin(), set.end());
    for (MCode g : H.elems)
      if (!H.member(g))
        throw NotASubgroup("S_A: product element fails the inertia condition");
  }
  H.gens = C.gens;
  for (MCode g : K.gens) H.gens.push_back(g);
  return H;
}

Subgroup Group::sns_normal_subgroup(int j) const {
  const Ring& R = *R_;
  int ell1 = R.ell1(), ell2 = R.ell2();
  if (j < 0 || ell2 - j < 0) throw BadParam("N: bad j");
  Subgroup H;
  H.kind = "N(j=" + std::to_string(j) + ")";
  H.parent = this;
  std::set<MCode> set;
  for (int x = 0; x < R.size(); ++x)
    for (int z = 0; z < R.size(); ++z)
      for (int y = 0; y < R.size(); ++y)
        for (int w = 0; w < R.size(); ++w) {
          RElem a = R.add(R.one(), R.mul(R.pi_pow(ell1), RElem(x)));
          RElem b = R.mul(R.pi_pow(ell2 - j), RElem(z));
          RElem c = R.mul(R.pi_pow(ell2), RElem(y));
          RElem dd = R.add(R.one(), R.mul(R.pi_pow(ell1), RElem(w)));
          MCode g = make(a, b, c, dd);
          if (is_invertible(g)) set.insert(g);
        }
  H.elems.assign(set.begin(), set.end());
  H.order = H.elems.size();
  int j_ = j;
  H.member = [this, &R, j_, ell1, ell2](MCode g) {
    Mat2 m = unpack(g);
    return R.val(R.sub(m.a, R.one())) >= ell1 && R.val(m.b) >= ell2 - j_ &&
           R.val(m.c) >= ell2 && R.val(R.sub(m.d, R.one())) >= ell1 && is_invertible(g);
  };
  for (int k = 0; k < R.ell(); ++k) {
    RElem t = R.pi_pow(k);
    if (R.val(R.mul(R.pi_pow(ell1), t)) < R.ell()) {
      H.gens.push_back(make(R.add(R.one(), R.mul(R.pi_pow(ell1), t)), 0, 0, R.one()));
      H.gens.push_back(make(R.one(), 0, 0, R.add(R.one(), R.mul(R.pi_pow(ell1), t))));
    }
    if (R.val(R.mul(R.pi_pow(ell2 - j), t)) < R.ell())
      H.gens.push_back(make(R.one(), R.mul(R.pi_pow(ell2 - j), t), 0, R.one()));
    if (R.val(R.mul(R.pi_pow(ell2), t)) < R.ell())
      H.gens.push_back(make(R.one(), 0, R.mul(R.pi_pow(ell2), t), R.one()));
  }
  verify_subgroup(H);
  return H;
}

Subgroup Group::product_subgroup(const Subgroup& A, const Subgroup& B,
                                 const std::string& kind) const {
  Subgroup H;
  H.kind = kind;
  H.parent = this;
  std::set<MCode> set;
  A.for_each([&](MCode a) { B.for_each([&](MCode b) { set.insert(mul(a, b)); }); });
  H.elems.assign(set.begin(), set.end());
  H.order = H.elems.size();
  std::vector<MCode> sorted = H.elems;
  H.member = [sorted](MCode g) {
    return std::binary_search(sorted.begin(), sorted.end(), g);
  };
  H.gens = A.gens;
  for (MCode g : B.gens) H.gens.push_back(g);
  // Product of subgroups is a subgroup only when one normalizes the other;
  // verify closure outright.
  std::set<MCode> chk(H.elems.begin(), H.elems.end());
  for (MCode g : H.elems)
    for (MCode s : H.gens)
      if (!chk.count(mul(g, s))) throw NotASubgroup(kind + ": product set not closed");
  return H;
}

Subgroup Group::intersect(const Subgroup& A, const Subgroup& B,
                          const std::string& kind) const {
  Subgroup H;
  H.kind = kind;
  H.parent = this;
  const Subgroup& small = A.order <= B.order ? A : B;
  const Subgroup& other = A.order <= B.order ? B : A;
  small.for_each([&](MCode g) {
    if (other.member(g)) H.elems.push_back(g);
  });
  std::sort(H.elems.begin(), H.elems.end());
  H.elems.erase(std::unique(H.elems.begin(), H.elems.end()), H.elems.end());
  H.order = H.elems.size();
  auto am = A.member, bm = B.member;
  H.member = [am, bm](MCode g) { return am(g) && bm(g); };
  std::set<MCode> span = {identity()};
  for (MCode g : H.elems) {
    if (span.count(g)) continue;
    H.gens.push_back(g);
    for (;;) {
      size_t before = span.size();
      std::vector<MCode> cur(span.begin(), span.end());
      for (MCode x : cur)
        for (MCode y : H.gens) span.insert(mul(x, y));
      if (span.size() == before) break;
    }
    if (span.size() == H.elems.size()) break;
  }
  return H;
}

const Group::ConjClasses& Group::conjugacy_classes() const {
  if (classes_) return *classes_;
  const auto& els = elements();
  auto cl = std::make_unique<ConjClasses>();
  cl->class_of.assign(els.size(), UINT32_MAX);
  for (uint32_t i = 0; i < els.size(); ++i) {
    if (cl->class_of[i] != UINT32_MAX) continue;
    uint32_t id = uint32_t(cl->reps.size());
    cl->reps.push_back(els[i]);
    // orbit BFS under conjugation by generators
    std::deque<MCode> queue = {els[i]};
    cl->class_of[i] = id;
    uint64_t size = 1;
    while (!queue.empty()) {
      MCode x = queue.front();
      queue.pop_front();
      for (MCode s : gens_) {
        MCode y = conj(s, x);
        uint32_t yi = index_of(y);
        if (cl->class_of[yi] == UINT32_MAX) {
          cl->class_of[yi] = id;
          queue.push_back(y);
          ++size;
        }
      }
    }
    cl->sizes.push_back(size);
  }
  uint64_t total = 0;
  for (auto s : cl->sizes) total += s;
  if (total != order_) throw ArtifactError("conjugacy classes do not partition the group");
  classes_ = std::move(cl);
  return *classes_;
}

// --- coset spaces --------------------------------------------------------

CosetSpace::CosetSpace(const Group& G, const Subgroup& H,
                       std::function<MCode(MCode)> canon)
    : G_(&G), H_(&H), canon_(std::move(canon)) {
  // BFS over right cosets H\G, acting by right multiplication by G-gens.
  std::deque<MCode> queue = {G.identity()};
  auto key = [&](MCode g) { return canon_ ? canon_(g) : g; };
  if (canon_) {
    by_key_[key(G.identity())] = 0;
    reps_.push_back(G.identity());
    while (!queue.empty()) {
      MCode x = queue.front();
      queue.pop_front();
      for (MCode s : G.gens()) {
        MCode y = G.mul(x, s);
        MCode k = key(y);
        if (by_key_.find(k) == by_key_.end()) {
          by_key_[k] = uint32_t(reps_.size());
          reps_.push_back(y);
          queue.push_back(y);
        }
      }
    }
  } else {
    reps_.push_back(G.identity());
    while (!queue.empty()) {
      MCode x = queue.front();
      queue.pop_front();
      for (MCode s : G.gens()) {
        MCode y = G.mul(x, s);
        bool found = false;
        for (MCode r : reps_)
          if (H.member(G.mul(r, G.inv(y)))) {  // Hy == Hr iff r y^-1 in H
            found = true;
            break;
          }
        if (!found) {
          reps_.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  if (G.order() % reps_.size() != 0 || G.order() / reps_.size() != H.order)
    throw ArtifactError("coset space size mismatch for " + H.kind);
}

uint32_t CosetSpace::index_of(MCode g) const {
  if (canon_) {
    auto it = by_key_.find(canon_(g));
    if (it == by_key_.end()) throw ArtifactError("coset lookup failed");
    return it->second;
  }
  for (uint32_t i = 0; i < reps_.size(); ++i)
    if (H_->member(G_->mul(reps_[i], G_->inv(g)))) return i;
  throw ArtifactError("coset lookup failed (scan)");
}

std::function<MCode(MCode)> zu_coset_canon(const Group& G) {
  const Ring& R = G.ring();
  return [&G, &R](MCode g) {
    Mat2 m = unpack(g);
    RElem det = G.det(g);
    if (R.is_unit(m.c)) {
      RElem ci = R.inv(m.c);
      RElem b2 = R.neg(R.mul(det, R.mul(ci, ci)));
      return pack(Mat2{0, b2, R.one(), R.mul(m.d, ci)});
    }
    RElem di = R.inv(m.d);
    RElem a2 = R.mul(det, R.mul(di, di));
    return pack(Mat2{a2, 0, R.mul(m.c, di), R.one()});
  };
}

std::function<MCode(MCode)> ztu_coset_canon(const Group& G, int t) {
  const Ring& R = G.ring();
  // Orbit minimum under multiplication by units in 1 + pi^t o.
  auto orbmin = std::make_shared<std::vector<RElem>>(R.size());
  for (int x = 0; x < R.size(); ++x) {
    RElem best = RElem(x);
    for (int y = 0; y < R.size(); ++y) {
      RElem s = R.add(R.one(), R.mul(R.pi_pow(t), RElem(y)));
      if (!R.is_unit(s)) continue;
      best = std::min(best, R.mul(RElem(x), s));
    }
    (*orbmin)[x] = best;
  }
  return [&G, &R, orbmin](MCode g) {
    Mat2 m = unpack(g);
    RElem det = G.det(g);
    if (R.is_unit(m.c)) {
      RElem ci = R.inv(m.c);
      RElem b2 = R.neg(R.mul(det, R.mul(ci, ci)));
      return pack(Mat2{0, (*orbmin)[b2], R.one(), R.mul(m.d, ci)});
    }
    RElem di = R.inv(m.d);
    RElem a2 = R.mul(det, R.mul(di, di));
    return pack(Mat2{(*orbmin)[a2], 0, R.mul(m.c, di), R.one()});
  };
}

uint64_t DoubleCosetSet::total() const {
  uint64_t t = 0;
  for (auto s : sizes) t += s;
  return t;
}

DoubleCosetSet double_cosets(const Group& G, const Subgroup& H, const Subgroup& K,
                             const CosetSpace& HG) {
  DoubleCosetSet out;
  uint32_t n = HG.size();
  out.dc_of_coset.assign(n, UINT32_MAX);
  for (uint32_t seed = 0; seed < n; ++seed) {
    if (out.dc_of_coset[seed] != UINT32_MAX) continue;
    uint32_t id = uint32_t(out.reps.size());
    out.rep_coset.push_back(seed);
    out.reps.push_back(HG.rep(seed));
    std::deque<uint32_t> queue = {seed};
    out.dc_of_coset[seed] = id;
    uint64_t cosets = 1;
    while (!queue.empty()) {
      uint32_t c = queue.front();
      queue.pop_front();
      for (MCode s : K.gens) {
        uint32_t c2 = HG.index_of(G.mul(HG.rep(c), s));
        if (out.dc_of_coset[c2] == UINT32_MAX) {
          out.dc_of_coset[c2] = id;
          queue.push_back(c2);
          ++cosets;
        }
      }
    }
    out.sizes.push_back(cosets * H.order);
  }
  return out;
}

DoubleCosetSet double_cosets(const Group& G, const Subgroup& H, const Subgroup& K) {
  CosetSpace HG(G, H);
  return double_cosets(G, H, K, HG);
}

std::vector<MCode> matrix_conj_orbit(const Group& G, MCode x, size_t cap) {
  std::set<MCode> seen = {x};
  std::deque<MCode> queue = {x};
  while (!queue.empty()) {
    MCode y = queue.front();
    queue.pop_front();
    for (MCode s : G.gens()) {
      MCode z = G.mul(G.mul(s, y), G.inv(s));
      if (seen.insert(z).second) {
        if (seen.size() > cap) throw BudgetExceeded("matrix orbit too large");
        queue.push_back(z);
      }
    }
  }
  return std::vector<MCode>(seen.begin(), seen.end());
}

bool matrices_similar(const Group& G, MCode x, MCode y) {
  if (x == y) return true;
  if (G.trace(x) != G.trace(y) || G.det(x) != G.det(y)) return false;
  auto orbit = matrix_conj_orbit(G, x);
  return std::binary_search(orbit.begin(), orbit.end(), y);
}

}  // namespace gl2
