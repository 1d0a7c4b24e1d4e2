#include "gl2/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace gl2 {

int RingChar::operator()(RElem x) const {
  if (exp[x] < 0) throw OutOfDomain("ring character: element not in domain");
  return exp[x];
}

bool RingChar::is_trivial() const {
  for (int e : exp)
    if (e > 0) return false;
  return true;
}

namespace {

// Normalize exponents to the smallest faithful modulus.
void normalize_ring_char(RingChar& c) {
  int g = c.modulus;
  for (int e : c.exp)
    if (e > 0) g = std::gcd(g, e);
  if (g > 1) {
    for (auto& e : c.exp)
      if (e > 0) e /= g;
    c.modulus /= g;
  }
  if (c.modulus == 0) c.modulus = 1;
}

// Enumerate all characters of an abelian group given by `elems` (closed
// under the ring multiplication), by extending along a cyclic chain.
void enumerate_chain(const Ring& R, const std::vector<RElem>& sorted,
                     std::vector<int>& exp, int modulus,
                     std::vector<std::pair<std::vector<int>, int>>& out) {
  // find smallest element not yet assigned
  RElem m = 0;
  bool found = false;
  for (RElem x : sorted)
    if (exp[x] < 0) {
      m = x;
      found = true;
      break;
    }
  if (!found) {
    out.emplace_back(exp, modulus);
    return;
  }
  // order of m over the current domain
  int r = 1;
  RElem pw = m;
  while (exp[pw] < 0) {
    pw = R.mul(pw, m);
    ++r;
  }
  int v = exp[pw];  // value exponent of m^r over `modulus`
  int n2 = modulus * r;
  for (int k = 0; k < r; ++k) {
    std::vector<int> e2 = exp;
    for (auto& e : e2)
      if (e >= 0) e *= r;
    int ce = v + modulus * k;  // zeta_{n2}^{ce} is an r-th root of zeta_mod^v
    // spread over cosets g*m^j
    std::vector<RElem> domain;
    for (RElem x : sorted)
      if (e2[x] >= 0) domain.push_back(x);
    for (int j = 1; j < r; ++j) {
      for (RElem x : domain) {
        RElem y = x;
        for (int i = 0; i < j; ++i) y = R.mul(y, m);
        e2[y] = (e2[x] + j * ce) % n2;
      }
    }
    enumerate_chain(R, sorted, e2, n2, out);
  }
}

}  // namespace

std::vector<RingChar> characters_of_unit_subgroup(const Ring& R,
                                                  const std::vector<RElem>& elems) {
  std::vector<RElem> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> exp(R.size(), -1);
  exp[R.one()] = 0;
  std::vector<std::pair<std::vector<int>, int>> raw;
  enumerate_chain(R, sorted, exp, 1, raw);
  if (raw.size() != sorted.size())
    throw ArtifactError("character count does not match group order");
  std::vector<RingChar> out;
  for (size_t i = 0; i < raw.size(); ++i) {
    RingChar c;
    c.exp = raw[i].first;
    c.modulus = raw[i].second;
    normalize_ring_char(c);
    c.id = "#" + std::to_string(i);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<RingChar> unit_characters(const Ring& R) {
  auto out = characters_of_unit_subgroup(R, R.units());
  for (size_t i = 0; i < out.size(); ++i) out[i].id = "chi[" + std::to_string(i) + "]";
  return out;
}

std::vector<RingChar> one_plus_pit_characters(const Ring& R, int t) {
  std::set<RElem> set;
  for (int x = 0; x < R.size(); ++x) {
    RElem v = R.add(R.one(), R.mul(R.pi_pow(t), RElem(x)));
    if (R.is_unit(v)) set.insert(v);
  }
  auto out = characters_of_unit_subgroup(R, std::vector<RElem>(set.begin(), set.end()));
  for (size_t i = 0; i < out.size(); ++i)
    out[i].id = "chi'[" + std::to_string(i) + ",t=" + std::to_string(t) + "]";
  return out;
}

RElem lambda_of(const Ring& R, const RingChar& chi) {
  int ell2 = R.ell2(), ell1 = R.ell1();
  std::vector<RElem> sols;
  for (int lam = 0; lam < R.size(); ++lam) {
    bool ok = true;
    for (int x = 0; x < R.size() && ok; ++x) {
      RElem arg = R.mul(R.pi_pow(ell2), RElem(x));
      RElem elt = R.add(R.one(), arg);
      // chi(1 + pi^{ell2} x) vs psi(pi^{ell2} lambda x)
      int lhs_n = chi.modulus, lhs_e = chi(elt);
      RElem parg = R.mul(arg, RElem(lam));
      int rhs_n = R.psi_order(), rhs_e = R.psi_exponent(parg);
      int n = std::lcm(lhs_n, rhs_n);
      if ((long long)lhs_e * (n / lhs_n) % n != (long long)rhs_e * (n / rhs_n) % n)
        ok = false;
    }
    if (ok) sols.push_back(RElem(lam));
  }
  if (sols.empty()) throw NoSolution("lambda_of: no lambda matches (arithmetic bug)");
  (void)ell1;
  // lambda is determined mod pi^{ell1}; the least solution is the canonical rep.
  return *std::min_element(sols.begin(), sols.end());
}

bool is_injective_char(const Ring& R, const RingChar& chi) {
  int ell = R.ell();
  for (int x = 0; x < R.size(); ++x) {
    RElem v = R.add(R.one(), R.mul(R.pi_pow(ell - 1), RElem(x)));
    if (!R.is_unit(v)) continue;
    if (chi(v) != 0) return true;
  }
  return false;
}

long long count_injective_pairs(const Ring& R) {
  auto chars = unit_characters(R);
  long long count = 0;
  for (const auto& c1 : chars)
    for (const auto& c2 : chars) {
      // ratio c1 * conj(c2) evaluated on 1 + pi^{ell-1} o
      bool inj = false;
      for (int x = 0; x < R.size() && !inj; ++x) {
        RElem v = R.add(R.one(), R.mul(R.pi_pow(R.ell() - 1), RElem(x)));
        if (!R.is_unit(v)) continue;
        int n = std::lcm(c1.modulus, c2.modulus);
        long long e = ((long long)c1(v) * (n / c1.modulus) -
                       (long long)c2(v) * (n / c2.modulus)) %
                      n;
        if (e != 0) inj = true;
      }
      if (inj) ++count;
    }
  return count;
}

// --- matrix-group characters ----------------------------------------------

Character psi_t_char(const Group& G, int t) {
  const Ring& R = G.ring();
  if (t < 0 || t > R.ell()) throw BadParam("psi_t: t out of range");
  Character c;
  c.domain = std::make_shared<Subgroup>(G.unipotent());
  c.modulus = R.psi_order();
  int shift = R.ell() - t;
  c.fn = [&R, shift](MCode g) {
    Mat2 m = unpack(g);
    return R.psi_exponent(R.mul(R.pi_pow(shift), m.b));
  };
  c.id = "psi_" + std::to_string(t);
  return c;
}

Character tensor_zu_char(const Group& G, const RingChar& chi, int t) {
  const Ring& R = G.ring();
  Character c;
  c.domain = std::make_shared<Subgroup>(G.zu());
  int n = std::lcm(chi.modulus, R.psi_order());
  c.modulus = n;
  int mc = n / chi.modulus, mp = n / R.psi_order();
  int shift = R.ell() - t;
  RingChar ch = chi;
  c.fn = [&R, ch, mc, mp, shift, n](MCode g) {
    Mat2 m = unpack(g);
    RElem z = m.a;
    RElem u = R.mul(R.inv(z), m.b);
    long long e = (long long)ch(z) * mc +
                  (long long)R.psi_exponent(R.mul(R.pi_pow(shift), u)) * mp;
    return int(e % n);
  };
  c.id = "(" + chi.id + ",psi_" + std::to_string(t) + ")";
  return c;
}

Character triple_ztu_char(const Group& G, const RingChar& chi, const RingChar& chiprime,
                          int t) {
  const Ring& R = G.ring();
  Character c;
  c.domain = std::make_shared<Subgroup>(G.ztu(t));
  int n = std::lcm(std::lcm(chi.modulus, chiprime.modulus), R.psi_order());
  c.modulus = n;
  int mc = n / chi.modulus, mcp = n / chiprime.modulus, mp = n / R.psi_order();
  int shift = R.ell() - t;
  RingChar ch = chi, chp = chiprime;
  c.fn = [&R, ch, chp, mc, mcp, mp, shift, n](MCode g) {
    Mat2 m = unpack(g);
    // g = diag(x, x s) * (1 u; 0 1) with s in 1 + pi^t o:  a = x, d = x s,
    // b = x u.
    RElem x = m.a;
    RElem s = R.mul(R.inv(x), m.d);
    RElem u = R.mul(R.inv(x), m.b);
    long long e = (long long)ch(x) * mc + (long long)chp(s) * mcp +
                  (long long)R.psi_exponent(R.mul(R.pi_pow(shift), u)) * mp;
    return int(e % n);
  };
  c.id = "(" + chi.id + "," + chiprime.id + ",psi_" + std::to_string(t) + ")";
  return c;
}

Character borel_pair_char(const Group& G, const RingChar& chi1, const RingChar& chi2) {
  const Ring& R = G.ring();
  Character c;
  c.domain = std::make_shared<Subgroup>(G.borel());
  int n = std::lcm(chi1.modulus, chi2.modulus);
  c.modulus = n;
  int m1 = n / chi1.modulus, m2 = n / chi2.modulus;
  RingChar c1 = chi1, c2 = chi2;
  c.fn = [c1, c2, m1, m2, n](MCode g) {
    Mat2 m = unpack(g);
    return int(((long long)c1(m.a) * m1 + (long long)c2(m.d) * m2) % n);
  };
  c.id = "(" + chi1.id + "," + chi2.id + ")";
  return c;
}

Character psi_x_char(const Group& G, const Ring& low, MCode x_low, int i) {
  const Ring& R = G.ring();
  if (low.ell() != R.ell() - i) throw BadParam("psi_x: wrong coefficient level");
  if (2 * i < R.ell()) throw BadParam("psi_x: K^i not abelian (need i >= ell/2)");
  Character c;
  c.domain = std::make_shared<Subgroup>(G.congruence(i));
  c.modulus = R.psi_order();
  MCode xhat = G.lift_from(low, x_low);  // canonical lift
  int ii = i;
  c.fn = [&G, &R, xhat, ii](MCode g) {
    // g = I + pi^i y; tr(xhat y) read off via exact division
    Mat2 m = unpack(g);
    Mat2 x = unpack(xhat);
    RElem ya = R.div_pi(R.sub(m.a, R.one()), ii);
    RElem yb = R.div_pi(m.b, ii);
    RElem yc = R.div_pi(m.c, ii);
    RElem yd = R.div_pi(R.sub(m.d, R.one()), ii);
    // tr(x y) = x.a*ya + x.b*yc + x.c*yb + x.d*yd
    RElem tr = R.add(R.add(R.mul(x.a, ya), R.mul(x.b, yc)),
                     R.add(R.mul(x.c, yb), R.mul(x.d, yd)));
    return R.psi_exponent(R.mul(R.pi_pow(ii), tr));
  };
  c.id = "psi_x[" + low.describe(unpack(x_low).a) + "," + low.describe(unpack(x_low).b) +
         ";" + low.describe(unpack(x_low).c) + "," + low.describe(unpack(x_low).d) +
         "|i=" + std::to_string(i) + "]";
  return c;
}

Subgroup whole_group_subgroup(const Group& G) {
  Subgroup H;
  H.kind = "G";
  H.parent = &G;
  H.order = G.order();
  if (G.enumerated()) H.elems = G.elements();
  H.member = [&G](MCode g) { return G.is_invertible(g); };
  H.gens = G.gens();
  return H;
}

Character mu_alpha_char(const Group& G, RElem alpha_low) {
  const Ring& R = G.ring();
  int ell2 = R.ell2();
  RElem alpha = alpha_low;  // canonical lift of an o_{ell2} code is itself
  // delta_alpha on 1 + pi^{ell2} o, extended to o^x (first extension in the
  // deterministic enumeration), then composed with det.
  auto chars = unit_characters(R);
  const RingChar* ext = nullptr;
  for (const auto& ch : chars) {
    bool ok = true;
    for (int x = 0; x < R.size() && ok; ++x) {
      RElem arg = R.mul(R.pi_pow(ell2), RElem(x));
      RElem v = R.add(R.one(), arg);
      int n = std::lcm(ch.modulus, R.psi_order());
      long long lhs = (long long)ch(v) * (n / ch.modulus) % n;
      long long rhs =
          (long long)R.psi_exponent(R.mul(arg, alpha)) * (n / R.psi_order()) % n;
      if (lhs != rhs) ok = false;
    }
    if (ok) {
      ext = &ch;
      break;
    }
  }
  if (!ext) throw NoSolution("mu_alpha: delta_alpha does not extend (bug)");
  Character c;
  c.domain = std::make_shared<Subgroup>(whole_group_subgroup(G));
  c.modulus = ext->modulus;
  RingChar e = *ext;
  c.fn = [&G, e](MCode g) { return e(G.det(g)); };
  c.id = "mu[" + R.describe(alpha_low) + "]";
  return c;
}

Character psi_a_prime_char(const Group& G, const Subgroup& N, RElem alpha, int j,
                           RElem beta) {
  const Ring& R = G.ring();
  int ell1 = R.ell1(), ell2 = R.ell2();
  Character mu = mu_alpha_char(G, R.project(alpha, ell2));
  Character c;
  c.domain = std::make_shared<Subgroup>(N);
  int n = std::lcm(mu.modulus, R.psi_order());
  c.modulus = n;
  int mm = n / mu.modulus, mp = n / R.psi_order();
  Character mu2 = mu;
  RElem bet = beta;
  int jj = j;
  c.fn = [&G, &R, mu2, bet, jj, mm, mp, n, ell2](MCode g) {
    Mat2 m = unpack(g);
    // entries: b = pi^{ell2-j} z, c = pi^{ell2} y
    RElem z = R.div_pi(m.b, ell2 - jj);
    RElem y = R.div_pi(m.c, ell2);
    RElem arg = R.mul(R.pi_pow(ell2), R.add(y, R.mul(bet, z)));
    long long e = (long long)R.psi_exponent(arg) * mp + (long long)mu2(g) * mm;
    return int(e % n);
  };
  c.id = "psiA'[a=" + R.describe(alpha) + ",j=" + std::to_string(j) +
         ",b=" + R.describe(beta) + "]";
  return c;
}

Character center_char(const Group& G, const RingChar& chi) {
  Character c;
  c.domain = std::make_shared<Subgroup>(G.center());
  c.modulus = chi.modulus;
  RingChar ch = chi;
  c.fn = [ch](MCode g) { return ch(unpack(g).a); };
  c.id = "Z:" + chi.id;
  return c;
}

Character trivial_char(const Group& G, const Subgroup& H) {
  (void)G;
  Character c;
  c.domain = std::make_shared<Subgroup>(H);
  c.modulus = 1;
  c.fn = [](MCode) { return 0; };
  c.id = "triv[" + H.kind + "]";
  return c;
}

// --- extensions ------------------------------------------------------------

namespace {

struct ChainData {
  std::unordered_map<MCode, std::pair<int, uint64_t>> dom;  // exp, packed coords
  std::vector<MCode> step_m;
  std::vector<int> step_r;
  std::vector<uint64_t> step_power_coords;  // coords of m_s^{r_s}
  int modulus = 1;
};

}  // namespace

std::vector<Character> all_extensions(const Group& G, const Subgroup& M,
                                      const Character& phi,
                                      const std::string& id_prefix) {
  const Subgroup& N = *phi.domain;
  std::vector<MCode> msorted;
  msorted.reserve(M.order);
  M.for_each([&](MCode g) { msorted.push_back(g); });
  std::sort(msorted.begin(), msorted.end());
  if (msorted.size() != M.order) throw ArtifactError("all_extensions: bad enumeration");

  ChainData cd;
  cd.modulus = phi.modulus;
  N.for_each([&](MCode g) { cd.dom[g] = {phi(g), 0}; });
  std::vector<MCode> stab_gens = N.gens;

  size_t scan_from = 0;
  while (cd.dom.size() < msorted.size()) {
    while (scan_from < msorted.size() && cd.dom.count(msorted[scan_from])) ++scan_from;
    MCode m = msorted[scan_from];
    // stability of the current partial character under conjugation by m
    for (MCode x : stab_gens) {
      MCode y = G.mul(G.mul(G.inv(m), x), m);
      auto it = cd.dom.find(y);
      if (it == cd.dom.end())
        throw ArtifactError("all_extensions: partial domain not normal");
      if (it->second.first != cd.dom[x].first)
        throw ArtifactError("all_extensions: character not stable, no extension");
    }
    int r = 1;
    MCode pw = m;
    while (!cd.dom.count(pw)) {
      pw = G.mul(pw, m);
      ++r;
    }
    auto power = cd.dom[pw];
    int v = power.first;
    int step = int(cd.step_m.size());
    if (step >= 8 || r > 255) throw ArtifactError("all_extensions: chain too deep");
    int n2 = cd.modulus * r;
    // rescale all exponents to modulus n2; theta0 takes the k=0 root
    for (auto& kv : cd.dom) kv.second.first *= r;
    int ce = v;  // zeta_{n2}^{v} is an r-th root of zeta_{mod}^{v}
    cd.modulus = n2;
    cd.step_m.push_back(m);
    cd.step_r.push_back(r);
    cd.step_power_coords.push_back(power.second);
    // spread dom over g * m^j
    std::vector<std::pair<MCode, std::pair<int, uint64_t>>> base(cd.dom.begin(),
                                                                 cd.dom.end());
    for (int j = 1; j < r; ++j) {
      for (auto& kv : base) {
        MCode y = kv.first;
        for (int i = 0; i < j; ++i) y = G.mul(y, m);
        uint64_t coords = kv.second.second | (uint64_t(j) << (8 * step));
        cd.dom[y] = {int(((long long)kv.second.first + (long long)j * ce) % n2), coords};
      }
    }
    stab_gens.push_back(m);
  }

  int nf = cd.modulus;
  int steps = int(cd.step_m.size());
  // Enumerate all twists: exponents e_s with r_s * e_s = E_s (mod nf), where
  // E_s is the twist value at m_s^{r_s} determined by earlier choices.
  std::vector<std::vector<int>> twists;
  std::vector<int> cur(steps, 0);
  std::function<void(int)> rec = [&](int s) {
    if (s == steps) {
      twists.push_back(cur);
      return;
    }
    long long E = 0;
    uint64_t coords = cd.step_power_coords[s];
    for (int s2 = 0; s2 < s; ++s2) {
      int j = int((coords >> (8 * s2)) & 0xFF);
      E += (long long)j * cur[s2];
    }
    E %= nf;
    int r = cd.step_r[s];
    if (E % std::gcd((long long)r, (long long)nf) != 0)
      throw ArtifactError("all_extensions: twist equation unsolvable");
    // r | nf by construction; base solution E/r works when r | E.
    if (E % r != 0) {
      // Solve r*e = E mod nf in general.
      long long g = std::gcd((long long)r, (long long)nf);
      long long r2 = r / g, n2 = nf / g, E2 = (E / g) % n2;
      long long inv = 1;
      for (long long cand = 0; cand < n2; ++cand)
        if (r2 * cand % n2 == 1) {
          inv = cand;
          break;
        }
      long long e0 = E2 * inv % n2;
      for (int k = 0; k < g; ++k) {
        cur[s] = int((e0 + (long long)k * n2) % nf);
        rec(s + 1);
      }
      return;
    }
    long long e0 = E / r;
    for (int k = 0; k < r; ++k) {
      cur[s] = int((e0 + (long long)k * (nf / r)) % nf);
      rec(s + 1);
    }
  };
  rec(0);

  auto dom_map = std::make_shared<std::unordered_map<MCode, std::pair<int, uint64_t>>>(
      std::move(cd.dom));
  auto Mshared = std::make_shared<Subgroup>(M);
  std::vector<Character> out;
  for (size_t idx = 0; idx < twists.size(); ++idx) {
    Character c;
    c.domain = Mshared;
    c.modulus = nf;
    auto tw = std::make_shared<std::vector<int>>(twists[idx]);
    c.fn = [dom_map, tw, nf](MCode g) {
      auto it = dom_map->find(g);
      if (it == dom_map->end()) throw OutOfDomain("extension: element not in domain");
      long long e = it->second.first;
      uint64_t coords = it->second.second;
      for (size_t s = 0; s < tw->size(); ++s)
        e += (long long)((coords >> (8 * s)) & 0xFF) * (*tw)[s];
      return int(e % nf);
    };
    c.id = id_prefix + "/ext" + std::to_string(idx);
    out.push_back(std::move(c));
  }
  return out;
}

void verify_multiplicative(const Group& G, const Character& c, uint64_t max_exhaustive,
                           int samples, uint64_t seed) {
  const Subgroup& H = *c.domain;
  auto check = [&](MCode a, MCode b) {
    long long lhs = c(G.mul(a, b));
    long long rhs = ((long long)c(a) + c(b)) % c.modulus;
    if (lhs != rhs)
      throw ArtifactError("character " + c.id + " is not multiplicative");
  };
  if (H.order <= max_exhaustive && H.has_elems()) {
    for (MCode a : H.elems)
      for (MCode b : H.elems) check(a, b);
    return;
  }
  std::vector<MCode> pool;
  H.for_each([&](MCode g) {
    if (pool.size() < 200000) pool.push_back(g);
  });
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    MCode a = pool[rng() % pool.size()];
    MCode b = pool[rng() % pool.size()];
    check(a, b);
  }
}

}  // namespace gl2
