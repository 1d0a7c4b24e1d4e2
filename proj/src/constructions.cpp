#include "gl2/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gl2 {

Tower::Tower(int p_, int ell_, RingFlavor f, uint64_t enum_budget)
    : p(p_), ell(ell_), flavor(f) {
  for (int i = 1; i <= ell; ++i) {
    rings.push_back(std::make_unique<Ring>(p, i, f));
    groups.push_back(std::make_unique<Group>(*rings.back(), enum_budget));
  }
}

RingChar ring_char_product(const RingChar& a, const RingChar& b) {
  RingChar c;
  c.modulus = std::lcm(a.modulus, b.modulus);
  c.exp.assign(a.exp.size(), -1);
  for (size_t x = 0; x < a.exp.size(); ++x)
    if (a.exp[x] >= 0 && b.exp[x] >= 0)
      c.exp[x] = int(((long long)a.exp[x] * (c.modulus / a.modulus) +
                      (long long)b.exp[x] * (c.modulus / b.modulus)) %
                     c.modulus);
  c.id = a.id + "*" + b.id;
  return c;
}

RingChar ring_char_inverse(const RingChar& a) {
  RingChar c = a;
  for (auto& e : c.exp)
    if (e > 0) e = a.modulus - e;
  c.id = a.id + "^-1";
  return c;
}

bool ring_char_equal(const RingChar& a, const RingChar& b) {
  if (a.exp.size() != b.exp.size()) return false;
  int n = std::lcm(a.modulus, b.modulus);
  for (size_t x = 0; x < a.exp.size(); ++x) {
    if ((a.exp[x] < 0) != (b.exp[x] < 0)) return false;
    if (a.exp[x] < 0) continue;
    if ((long long)a.exp[x] * (n / a.modulus) % n !=
        (long long)b.exp[x] * (n / b.modulus) % n)
      return false;
  }
  return true;
}

std::string ring_char_key(const RingChar& a) {
  std::ostringstream os;
  os << a.modulus << ":";
  for (int e : a.exp) os << e << ",";
  return os.str();
}

bool ring_char_is_square(const Ring& R, const RingChar& chi) {
  RElem minus1 = R.neg(R.one());
  return chi(minus1) == 0;
}

RingChar nonreg_det_twist(const Ring& R, const RingChar& chi) {
  RElem lambda = lambda_of(R, chi);
  RElem half = R.inv(R.from_int(2));
  RElem target = R.mul(lambda, half);  // lambda/2
  int ell = R.ell();
  for (const RingChar& theta : unit_characters(R)) {
    bool ok = true;
    for (int u = 0; u < R.size() && ok; ++u) {
      RElem arg = R.mul(R.pi_pow(ell - 1), RElem(u));
      RElem v = R.add(R.one(), arg);
      int n = std::lcm(theta.modulus, R.psi_order());
      long long lhs = (long long)theta(v) * (n / theta.modulus) % n;
      long long rhs =
          (long long)R.psi_exponent(R.mul(arg, target)) * (n / R.psi_order()) % n;
      if (lhs != rhs) ok = false;
    }
    if (ok) return theta;
  }
  throw NoSolution("nonreg_det_twist: no det character matches psi_{(lambda/2)I}");
}

RingChar lower_central_char(const Ring& R, const Ring& Rlow, const RingChar& chi) {
  RingChar theta = nonreg_det_twist(R, chi);
  // chibar(xbar) = chi(x) theta(x)^{-2} on canonical lifts; must descend
  // through 1 + pi^{ell-1} o.
  RingChar out;
  int n = std::lcm(chi.modulus, theta.modulus);
  out.modulus = n;
  out.exp.assign(Rlow.size(), -1);
  for (RElem xl : Rlow.units()) {
    RElem x = R.lift_code(xl, Rlow.ell());
    long long e =
        ((long long)chi(x) * (n / chi.modulus) - 2LL * theta(x) * (n / theta.modulus)) %
        n;
    if (e < 0) e += n;
    out.exp[xl] = int(e);
  }
  for (RElem xl : Rlow.units()) {
    for (int s = 0; s < R.size(); ++s) {
      RElem x2 =
          R.add(R.lift_code(xl, Rlow.ell()), R.mul(R.pi_pow(Rlow.ell()), RElem(s)));
      if (!R.is_unit(x2)) continue;
      long long e = ((long long)chi(x2) * (n / chi.modulus) -
                     2LL * theta(x2) * (n / theta.modulus)) %
                    n;
      if (e < 0) e += n;
      if (e != out.exp[xl])
        throw ArtifactError("lower_central_char: not well-defined on the quotient");
    }
  }
  out.id = chi.id + "~bar";
  int g = out.modulus;
  for (int e : out.exp)
    if (e > 0) g = std::gcd(g, e);
  if (g > 1) {
    for (auto& e : out.exp)
      if (e > 0) e /= g;
    out.modulus /= g;
  }
  return out;
}

bool restricts_to_center_char(const Group& G, const Character& c, const RingChar& chi) {
  const Ring& R = G.ring();
  for (RElem z : R.units()) {
    MCode zI = G.make(z, 0, 0, z);
    if (!c.domain->member(zI)) throw ArtifactError("center not inside character domain");
    int n = std::lcm(c.modulus, chi.modulus);
    if ((long long)c(zI) * (n / c.modulus) % n !=
        (long long)chi(z) * (n / chi.modulus) % n)
      return false;
  }
  return true;
}

ClassFunction ss_from_borel(const Group& G, const RingChar& chi1, const RingChar& chi2) {
  const Ring& R = G.ring();
  RingChar ratio = ring_char_product(chi1, ring_char_inverse(chi2));
  if (!is_injective_char(R, ratio)) throw NotInjectivePair("ss_from_borel");
  Character phi = borel_pair_char(G, chi1, chi2);
  return induced_class_function(G, *phi.domain, phi);
}

bool same_induced_character(const Group& G, const InducedCandidate& a,
                            const InducedCandidate& b) {
  if (G.enumerated()) {
    const auto& cls = G.conjugacy_classes();
    InducedEvaluator ea(G, *a.from, a.phi);
    InducedEvaluator eb(G, *b.from, b.phi);
    for (MCode rep : cls.reps)
      if (!(ea(rep) == eb(rep))) return false;
    return true;
  }
  return mackey_hom(G, *a.from, a.phi, *b.from, b.phi) > 0;
}

std::vector<InducedCandidate> sns_candidates(const Group& G, RElem lambda) {
  const Ring& R = G.ring();
  int ell = R.ell(), ell2 = R.ell2();
  RElem half = R.inv(R.from_int(2));
  RElem alpha = R.mul(lambda, half);
  std::vector<InducedCandidate> out;

  if (ell % 2 == 0) {
    // psi_A classes: A = (alpha 1; v alpha) over o_{ell/2}, v in pi o_{ell/2};
    // candidates are all extensions of psi_A to its inertia subgroup, and
    // distinct extensions induce distinct irreducibles.
    Ring half_ring(R.p(), ell / 2, R.flavor());
    RElem alpha_h = R.project(alpha, ell / 2);
    for (int v = 0; v < half_ring.size(); ++v) {
      if (half_ring.val(RElem(v)) < 1) continue;
      MCode A_half = pack(Mat2{alpha_h, half_ring.one(), RElem(v), alpha_h});
      MCode A_lift = G.lift_from(half_ring, A_half);
      Subgroup S = G.stabilizer_of_psi(A_lift, ell2);
      Character psiA = psi_x_char(G, half_ring, A_half, ell / 2);
      std::string label = "sns[l=" + R.describe(lambda) +
                          ",v=" + half_ring.describe(RElem(v)) + "]";
      for (auto& ext : all_extensions(G, S, psiA, label)) {
        InducedCandidate c;
        c.from = ext.domain;
        c.phi = ext;
        c.type = MatType::split_non_semisimple;
        c.label = ext.id;
        out.push_back(std::move(c));
      }
    }
    return out;
  }

  // odd ell: sweep lifts A = (alpha 1; w alpha), w in pi o_ell, all
  // extensions of psi'_A to N C(A), and the det-twists by unit characters
  // trivial on 1 + pi^{ell2} o (these fix psi_A, so twisting stays above it
  // and moves the central character through its lambda-fiber).  Repeats are
  // removed by exact character comparison.
  std::vector<RingChar> det_twists;
  for (const RingChar& theta : unit_characters(R)) {
    bool flat = true;
    for (int x = 0; x < R.size() && flat; ++x) {
      RElem v = R.add(R.one(), R.mul(R.pi_pow(ell2), RElem(x)));
      if (theta(v) != 0) flat = false;
    }
    if (flat) det_twists.push_back(theta);
  }
  std::set<std::string> fingerprints;
  for (int w = 0; w < R.size(); ++w) {
    if (R.val(RElem(w)) < 1) continue;
    int j = (w == 0) ? ell2 : std::min(R.val(RElem(w)), ell2);
    RElem beta = (w == 0) ? RElem(0) : R.div_pi(RElem(w), j);
    MCode A = pack(Mat2{alpha, R.one(), RElem(w), alpha});
    Subgroup N = G.sns_normal_subgroup(j);
    Subgroup C = G.centralizer(A);
    Subgroup NC = G.product_subgroup(N, C, "NC(" + G.describe(A) + ")");
    Character prime = psi_a_prime_char(G, N, alpha, j, beta);
    std::string label =
        "sns[l=" + R.describe(lambda) + ",w=" + R.describe(RElem(w)) + "]";
    auto exts = all_extensions(G, NC, prime, label);
    auto cosets = std::make_shared<CosetSpace>(G, *exts.front().domain);
    for (auto& ext : exts) {
      for (size_t ti = 0; ti < det_twists.size(); ++ti) {
        const RingChar& theta = det_twists[ti];
        InducedCandidate c;
        c.from = ext.domain;
        int n = std::lcm(ext.modulus, theta.modulus);
        int me = n / ext.modulus, mt = n / theta.modulus;
        Character base = ext;
        RingChar th = theta;
        const Group* Gp = &G;
        c.phi.domain = ext.domain;
        c.phi.modulus = n;
        c.phi.fn = [base, th, me, mt, n, Gp](MCode g) {
          return int(((long long)base(g) * me + (long long)th(Gp->det(g)) * mt) % n);
        };
        c.phi.id = ext.id + "*det" + std::to_string(ti);
        c.type = MatType::split_non_semisimple;
        c.label = c.phi.id;
        // dedup by the exact induced character on conjugacy classes
        std::string fp;
        if (G.enumerated()) {
          InducedEvaluator ev(G, *c.from, c.phi, cosets);
          for (MCode rep : G.conjugacy_classes().reps) fp += ev(rep).str() + "|";
        } else {
          bool dup = false;
          for (auto& k : out)
            if (mackey_hom(G, *k.from, k.phi, *c.from, c.phi) > 0) {
              dup = true;
              break;
            }
          if (dup) continue;
          fp = c.phi.id;
        }
        if (fingerprints.insert(fp).second) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<InducedCandidate> regular_even_candidates(const Group& G, const Ring& half,
                                                      MCode x_half) {
  const Ring& R = G.ring();
  if (R.ell() % 2 != 0) throw BadParam("regular even construction needs even ell");
  if (half.ell() != R.ell() / 2) throw BadParam("x must live at level ell/2");
  if (!is_regular(half, x_half)) throw NotRegular("psi_x is not regular");
  MCode x_lift = G.lift_from(half, x_half);
  Subgroup S = G.stabilizer_of_psi(x_lift, R.ell2());
  Character psiX = psi_x_char(G, half, x_half, R.ell() / 2);
  MatType type = classify_matrix(half, x_half);
  std::vector<InducedCandidate> out;
  for (auto& ext : all_extensions(G, S, psiX, "reg[" + G.describe(x_lift) + "]")) {
    InducedCandidate c;
    c.from = ext.domain;
    c.phi = ext;
    c.type = type;
    c.label = ext.id;
    out.push_back(std::move(c));
  }
  return out;
}

long long mult_free_restriction_intertwiner(const Group& G, MCode A_full, int t) {
  const Ring& R = G.ring();
  if (R.ell() % 2 == 0) throw BadParam("odd ell only");
  int ell1 = R.ell1(), ell2 = R.ell2();
  Subgroup S = G.stabilizer_of_psi(A_full, ell2);
  Subgroup ZU = G.zu();
  Subgroup UA = G.intersect(ZU, S, "U_A");
  Subgroup K2 = G.congruence(ell2);
  Subgroup K1 = G.congruence(ell1);
  Subgroup sub = G.product_subgroup(UA, K2, "U_A K^" + std::to_string(ell2));
  Subgroup big = G.product_subgroup(UA, K1, "U_A K^" + std::to_string(ell1));
  Ring low(R.p(), ell1, R.flavor());
  MCode A_low = G.reduce_to(low, A_full);
  Character psiA = psi_x_char(G, low, A_low, ell2);
  Character pt = psi_t_char(G, t);
  auto exts = all_extensions(G, sub, psiA, "lemma-mult-free");
  for (auto& ext : exts) {
    bool matches = true;
    for (int u = 0; u < R.size() && matches; ++u) {
      MCode uu = G.make(R.one(), RElem(u), 0, R.one());
      if (!sub.member(uu)) continue;
      int n = std::lcm(ext.modulus, pt.modulus);
      if ((long long)ext(uu) * (n / ext.modulus) % n !=
          (long long)pt(uu) * (n / pt.modulus) % n)
        matches = false;
    }
    if (!matches) continue;
    return mackey_hom_in(G, big, sub, ext, sub, ext);
  }
  throw NoSolution("no extension of psi_A matching psi_t on U cap U_A K^{ell2}");
}

// --- exact decomposition ----------------------------------------------------

std::vector<std::pair<long long, long long>> ExactDecomp::signature() const {
  std::map<long long, long long> m;
  for (const auto& r : rows) m[r.mult] += r.count;
  return std::vector<std::pair<long long, long long>>(m.begin(), m.end());
}

long long ExactDecomp::max_multiplicity() const {
  long long mx = 0;
  for (const auto& r : rows) mx = std::max(mx, r.mult);
  return mx;
}

long long ExactDecomp::n_type(MatType ty, bool with_multiplicity) const {
  long long n = 0;
  for (const auto& r : rows)
    if (r.level == level && r.type == ty) n += r.count * (with_multiplicity ? r.mult : 1);
  return n;
}

DecompEngine::DecompEngine(const Tower& tower, bool verify_norms)
    : tower_(&tower), verify_norms_(verify_norms) {}

const std::vector<RingChar>& DecompEngine::unit_chars(int level) {
  auto it = uchars_.find(level);
  if (it == uchars_.end())
    it = uchars_.emplace(level, unit_characters(tower_->ring(level))).first;
  return it->second;
}

std::shared_ptr<Subgroup> DecompEngine::zu(int level) {
  auto it = zu_.find(level);
  if (it == zu_.end())
    it = zu_.emplace(level, std::make_shared<Subgroup>(tower_->group(level).zu())).first;
  return it->second;
}

std::shared_ptr<Subgroup> DecompEngine::borel(int level) {
  auto it = borel_.find(level);
  if (it == borel_.end())
    it = borel_
             .emplace(level, std::make_shared<Subgroup>(tower_->group(level).borel()))
             .first;
  return it->second;
}

std::shared_ptr<CosetSpace> DecompEngine::zu_cosets(int level) {
  auto it = zu_cosets_.find(level);
  if (it == zu_cosets_.end()) {
    const Group& G = tower_->group(level);
    it = zu_cosets_
             .emplace(level, std::make_shared<CosetSpace>(G, *zu(level),
                                                          zu_coset_canon(G)))
             .first;
  }
  return it->second;
}

const std::vector<InducedCandidate>& DecompEngine::sns(int level, RElem lambda) {
  std::string key = std::to_string(level) + "/" + std::to_string(lambda);
  auto it = sns_cache_.find(key);
  if (it == sns_cache_.end())
    it = sns_cache_.emplace(key, sns_candidates(tower_->group(level), lambda)).first;
  return it->second;
}

std::shared_ptr<MackeyCache> DecompEngine::cache_for(
    int level, const std::string& key, const Subgroup& H1,
    std::shared_ptr<const CosetSpace> h1g, const Subgroup& H2) {
  std::string full = std::to_string(level) + "/" + key;
  auto it = mackey_.find(full);
  if (it == mackey_.end())
    it = mackey_
             .emplace(full, std::make_shared<MackeyCache>(make_mackey_cache(
                                tower_->group(level), H1, H2, h1g)))
             .first;
  return it->second;
}

std::vector<std::pair<size_t, size_t>> DecompEngine::ss_pairs(int level,
                                                              const RingChar& chi) {
  const Ring& R = tower_->ring(level);
  const auto& uchars = unit_chars(level);
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < uchars.size(); ++i)
    for (size_t j = i + 1; j < uchars.size(); ++j) {
      if (!ring_char_equal(ring_char_product(uchars[i], uchars[j]), chi)) continue;
      if (!is_injective_char(
              R, ring_char_product(uchars[i], ring_char_inverse(uchars[j]))))
        continue;
      out.emplace_back(i, j);
    }
  return out;
}

ExactDecomp DecompEngine::dgg(int level, int t, const RingChar& chi) {
  std::string memo_key =
      std::to_string(level) + "/" + std::to_string(t) + "/" + ring_char_key(chi);
  auto mit = memo_.find(memo_key);
  if (mit != memo_.end()) return mit->second;

  const Group& G = tower_->group(level);
  const Ring& R = tower_->ring(level);
  long long q = R.q();
  ExactDecomp out;
  out.level = level;
  out.t = t;
  out.chi_id = chi.id;
  long long dimV = 1;
  for (int k = 0; k < 2 * level - 2; ++k) dimV *= q;
  dimV *= q * q - 1;
  out.induced_dim = dimV;

  // Small groups: read everything off the character table (exact oracle).
  if (G.order() <= 10000 && G.enumerated()) {
    FiniteGroupView view = view_of_group(G);
    CharacterTable T = character_table(view);
    auto recs = classify_irreps(G, T);
    auto rows = dgg_decompose_table(G, T, recs, chi, t);
    for (auto& r : rows)
      out.rows.push_back(
          ExactRow{level, "irr#" + std::to_string(r.irrep), r.type, r.dim, r.mult, 1});
    memo_[memo_key] = out;
    return out;
  }

  long long consumed = 0;

  // Non-regular part: inflation of the level-(ell-1) module for chibar.
  if (t < level) {
    RingChar chibar = lower_central_char(R, tower_->ring(level - 1), chi);
    ExactDecomp sub = dgg(level - 1, t, chibar);
    for (auto r : sub.rows) out.rows.push_back(r);
    consumed += sub.induced_dim;
  }

  Character phi = tensor_zu_char(G, chi, t);

  // Split semisimple: Borel-induced pairs with matching central character.
  {
    const auto& uchars = unit_chars(level);
    auto cache = cache_for(level, "B", *zu(level), zu_cosets(level), *borel(level));
    long long ss_dim = (q + 1);
    for (int k = 0; k < level - 1; ++k) ss_dim *= q;
    for (auto [i, j] : ss_pairs(level, chi)) {
      Character bp = borel_pair_char(G, uchars[i], uchars[j]);
      long long m = mackey_hom_cached(G, *cache, phi, bp);
      if (m > 0) {
        out.rows.push_back(ExactRow{level, "ss(" + uchars[i].id + "," + uchars[j].id + ")",
                                    MatType::split_semisimple, ss_dim, m, 1});
        consumed += m * ss_dim;
      }
    }
  }

  // Split non-semisimple candidates.
  {
    long long sns_dim = (q * q - 1);
    for (int k = 0; k < level - 2; ++k) sns_dim *= q;
    RElem lambda = lambda_of(R, chi);
    std::map<long long, long long> by_mult;
    for (auto& cand : sns(level, lambda)) {
      if (!restricts_to_center_char(G, cand.phi, chi)) continue;
      if ((long long)(G.order() / cand.from->order) != sns_dim)
        throw ArtifactError("sns candidate has wrong induced dimension");
      if (verify_norms_) {
        long long nrm = mackey_hom(G, *cand.from, cand.phi, *cand.from, cand.phi);
        if (nrm != 1) throw ArtifactError("sns candidate is not irreducible");
      }
      auto cache = cache_for(level, cand.label, *zu(level), zu_cosets(level),
                             *cand.from);
      long long m = mackey_hom_cached(G, *cache, phi, cand.phi);
      if (m > 0) by_mult[m] += 1;
    }
    for (auto& [m, count] : by_mult) {
      out.rows.push_back(
          ExactRow{level, "sns", MatType::split_non_semisimple, sns_dim, m, count});
      consumed += m * count * sns_dim;
    }
  }

  // Cuspidal part by exact dimension bookkeeping: zero below t = level, the
  // full multiplicity-one block at t = level.
  {
    long long cus_dim = (q - 1);
    for (int k = 0; k < level - 1; ++k) cus_dim *= q;
    long long residual = dimV - consumed;
    if (t < level) {
      if (residual != 0)
        throw ArtifactError("dgg_exact: dimension bookkeeping failed (residual " +
                            std::to_string(residual) + ")");
    } else {
      if (residual % cus_dim != 0)
        throw ArtifactError("dgg_exact: cuspidal residual not divisible by dim");
      long long count = residual / cus_dim;
      if (count > 0)
        out.rows.push_back(ExactRow{level, "cus", MatType::cuspidal, cus_dim, 1, count});
    }
  }
  memo_[memo_key] = out;
  return out;
}

long long DecompEngine::wtc_regular_bound(int level, int t, const RingChar& chi,
                                          const RingChar& chiprime) {
  const Group& G = tower_->group(level);
  const Ring& R = tower_->ring(level);
  Subgroup ZtU = G.ztu(t);
  auto cosets = std::make_shared<CosetSpace>(G, ZtU, ztu_coset_canon(G, t));
  Character triple = triple_ztu_char(G, chi, chiprime, t);
  long long best = 0;

  const auto& uchars = unit_chars(level);
  {
    MackeyCache cache = make_mackey_cache(G, ZtU, *borel(level), cosets);
    for (auto [i, j] : ss_pairs(level, chi)) {
      Character bp = borel_pair_char(G, uchars[i], uchars[j]);
      best = std::max(best, mackey_hom_cached(G, cache, triple, bp));
    }
  }
  RElem lambda = lambda_of(R, chi);
  for (auto& cand : sns(level, lambda)) {
    if (!restricts_to_center_char(G, cand.phi, chi)) continue;
    MackeyCache cache = make_mackey_cache(G, ZtU, *cand.from, cosets);
    best = std::max(best, mackey_hom_cached(G, cache, triple, cand.phi));
  }
  return best;
}

}  // namespace gl2
