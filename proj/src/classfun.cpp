#include "gl2/classfun.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace gl2 {

Cyclo ClassFunction::at(MCode g) const {
  const auto& cls = G->conjugacy_classes();
  return values[cls.class_of[G->index_of(g)]];
}

long long ClassFunction::dim() const {
  const auto& cls = G->conjugacy_classes();
  uint32_t id_class = cls.class_of[G->index_of(G->identity())];
  long long d;
  if (!values[id_class].is_integer(&d))
    throw ArtifactError("class function has non-integer dimension");
  return d;
}

InducedEvaluator::InducedEvaluator(const Group& G, const Subgroup& H, Character phi,
                                   std::shared_ptr<const CosetSpace> cosets)
    : G_(&G), H_(std::make_shared<Subgroup>(H)), phi_(std::move(phi)) {
  cosets_ = cosets ? cosets : std::make_shared<CosetSpace>(G, *H_);
}

Cyclo InducedEvaluator::operator()(MCode g) const {
  // Ind phi (g) = sum over right cosets Hx of phi(x g x^-1) when defined.
  std::vector<long long> counts(phi_.modulus, 0);
  for (uint32_t i = 0; i < cosets_->size(); ++i) {
    MCode x = cosets_->rep(i);
    MCode y = G_->mul(G_->mul(x, g), G_->inv(x));
    if (H_->member(y)) counts[phi_(y)] += 1;
  }
  return Cyclo::from_counts(phi_.modulus, counts);
}

ClassFunction induced_class_function(const Group& G, const Subgroup& H,
                                     const Character& phi) {
  InducedEvaluator ev(G, H, phi);
  const auto& cls = G.conjugacy_classes();
  ClassFunction f;
  f.G = &G;
  f.values.reserve(cls.reps.size());
  for (MCode rep : cls.reps) f.values.push_back(ev(rep));
  return f;
}

ClassFunction class_function_of_character(const Group& G, const Character& chi) {
  const auto& cls = G.conjugacy_classes();
  ClassFunction f;
  f.G = &G;
  for (MCode rep : cls.reps) f.values.push_back(chi.value(rep));
  return f;
}

Cyclo inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.G != b.G) throw BadParam("inner_product: different groups");
  const auto& cls = a.G->conjugacy_classes();
  Cyclo sum;
  for (size_t k = 0; k < cls.reps.size(); ++k) {
    Cyclo term = a.values[k] * b.values[k].conj();
    sum += term.scaled((long long)cls.sizes[k], 1);
  }
  return sum.scaled(1, (long long)a.G->order());
}

long long inner_product_int(const ClassFunction& a, const ClassFunction& b) {
  Cyclo v = inner_product(a, b);
  long long n;
  if (!v.is_integer(&n))
    throw ArtifactError("inner product of genuine characters is not an integer");
  return n;
}

long long character_pair_inner(const Character& phi1, const Character& phi2,
                               const std::vector<std::pair<MCode, MCode>>& pairs) {
  int n = std::lcm(phi1.modulus, phi2.modulus);
  int m1 = n / phi1.modulus, m2 = n / phi2.modulus;
  std::vector<long long> counts(n, 0);
  for (const auto& [x, y] : pairs) {
    long long e = ((long long)phi1(x) * m1 - (long long)phi2(y) * m2) % n;
    if (e < 0) e += n;
    counts[e] += 1;
  }
  Cyclo sum = Cyclo::from_counts(n, counts);
  if (sum.is_zero()) return 0;
  long long v;
  Cyclo scaled = sum.scaled(1, (long long)pairs.size());
  if (!scaled.is_integer(&v))
    throw ArtifactError("character inner product over an intersection is not integral");
  return v;
}

namespace {

std::vector<std::pair<MCode, MCode>> intersection_pairs(const Group& G,
                                                        const Subgroup& H1,
                                                        const Subgroup& H2, MCode g) {
  // elements x of H1 with g^-1 x g in H2, iterating over the smaller side
  std::vector<std::pair<MCode, MCode>> out;
  MCode gi = G.inv(g);
  bool e1 = H1.has_elems() || !H1.factor_a.empty();
  bool e2 = H2.has_elems() || !H2.factor_a.empty();
  if (e1 && (!e2 || H1.order <= H2.order)) {
    H1.for_each([&](MCode x) {
      MCode y = G.mul(G.mul(gi, x), g);
      if (H2.member(y)) out.emplace_back(x, y);
    });
  } else if (e2) {
    H2.for_each([&](MCode y) {
      MCode x = G.mul(G.mul(g, y), gi);
      if (H1.member(x)) out.emplace_back(x, y);
    });
  } else {
    throw BudgetExceeded("intersection: neither subgroup enumerable");
  }
  return out;
}

}  // namespace

long long mackey_hom(const Group& G, const Subgroup& H1, const Character& phi1,
                     const Subgroup& H2, const Character& phi2, MackeyDetail* detail,
                     const CosetSpace* h1g) {
  std::unique_ptr<CosetSpace> own;
  if (!h1g) {
    own = std::make_unique<CosetSpace>(G, H1);
    h1g = own.get();
  }
  DoubleCosetSet dcs = double_cosets(G, H1, H2, *h1g);
  long long total = 0;
  for (size_t d = 0; d < dcs.reps.size(); ++d) {
    MCode g = dcs.reps[d];
    auto pairs = intersection_pairs(G, H1, H2, g);
    long long v = character_pair_inner(phi1, phi2, pairs);
    if (v != 0 && detail) detail->coset_reps.push_back(g);
    total += v;
  }
  return total;
}

MackeyCache make_mackey_cache(const Group& G, const Subgroup& H1, const Subgroup& H2,
                              std::shared_ptr<const CosetSpace> h1g) {
  MackeyCache c;
  c.h1g = h1g ? h1g : std::make_shared<CosetSpace>(G, H1);
  c.dcs = double_cosets(G, H1, H2, *c.h1g);
  c.pairs.reserve(c.dcs.reps.size());
  for (MCode g : c.dcs.reps) c.pairs.push_back(intersection_pairs(G, H1, H2, g));
  return c;
}

long long mackey_hom_cached(const Group& G, const MackeyCache& cache,
                            const Character& phi1, const Character& phi2,
                            MackeyDetail* detail) {
  (void)G;
  long long total = 0;
  for (size_t d = 0; d < cache.dcs.reps.size(); ++d) {
    long long v = character_pair_inner(phi1, phi2, cache.pairs[d]);
    if (v != 0 && detail) detail->coset_reps.push_back(cache.dcs.reps[d]);
    total += v;
  }
  return total;
}

long long mackey_hom_in(const Group& G, const Subgroup& M, const Subgroup& A,
                        const Character& phiA, const Subgroup& B,
                        const Character& phiB) {
  if (!M.has_elems()) throw BudgetExceeded("mackey_hom_in: ambient not enumerated");
  // right cosets A\M by BFS over left multiplication by A-gens
  std::unordered_map<MCode, uint32_t> coset_of;
  std::vector<MCode> reps;
  for (MCode m : M.elems) {
    if (coset_of.count(m)) continue;
    uint32_t id = uint32_t(reps.size());
    reps.push_back(m);
    std::vector<MCode> stack = {m};
    coset_of[m] = id;
    while (!stack.empty()) {
      MCode x = stack.back();
      stack.pop_back();
      for (MCode a : A.gens) {
        MCode y = G.mul(a, x);
        if (!coset_of.count(y)) {
          coset_of[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  // double cosets: orbits of right B-multiplication on cosets
  std::vector<uint32_t> dc(reps.size(), UINT32_MAX);
  std::vector<MCode> dreps;
  for (uint32_t s = 0; s < reps.size(); ++s) {
    if (dc[s] != UINT32_MAX) continue;
    uint32_t id = uint32_t(dreps.size());
    dreps.push_back(reps[s]);
    std::vector<uint32_t> stack = {s};
    dc[s] = id;
    while (!stack.empty()) {
      uint32_t c = stack.back();
      stack.pop_back();
      for (MCode b : B.gens) {
        uint32_t c2 = coset_of.at(G.mul(reps[c], b));
        if (dc[c2] == UINT32_MAX) {
          dc[c2] = id;
          stack.push_back(c2);
        }
      }
    }
  }
  long long total = 0;
  for (MCode g : dreps) {
    MCode gi = G.inv(g);
    std::vector<std::pair<MCode, MCode>> pairs;
    A.for_each([&](MCode x) {
      MCode y = G.mul(G.mul(gi, x), g);
      if (B.member(y)) pairs.emplace_back(x, y);
    });
    total += character_pair_inner(phiA, phiB, pairs);
  }
  return total;
}

bool frobenius_crosscheck(const Group& G, const Subgroup& H, const Character& phi,
                          const ClassFunction& rho) {
  // <Ind phi, rho>_G
  ClassFunction ind = induced_class_function(G, H, phi);
  Cyclo lhs = inner_product(ind, rho);
  // <phi, Res rho>_H = (1/|H|) sum_h phi(h) conj(rho(h))
  Cyclo sum;
  H.for_each([&](MCode h) {
    sum += Cyclo::root(phi.modulus, phi(h)) * rho.at(h).conj();
  });
  Cyclo rhs = sum.scaled(1, (long long)H.order);
  return lhs == rhs;
}

}  // namespace gl2
