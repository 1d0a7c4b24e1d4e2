#include "gl2/chartab.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "gl2/characters.hpp"

namespace gl2 {

FiniteGroupView view_of_group(const Group& G) {
  FiniteGroupView v;
  v.ambient = &G;
  v.name = "GL2(" + G.ring().name() + ")";
  v.elems = G.elements();
  v.gens = G.gens();
  return v;
}

FiniteGroupView view_of_subgroup(const Group& G, const Subgroup& H) {
  if (!H.has_elems()) throw BudgetExceeded("subgroup view needs an element list");
  FiniteGroupView v;
  v.ambient = &G;
  v.name = H.kind + "(" + G.ring().name() + ")";
  v.elems = H.elems;
  v.gens = H.gens;
  return v;
}

uint32_t CharacterTable::class_of_elem(MCode g) const {
  auto it = std::lower_bound(view.elems.begin(), view.elems.end(), g);
  if (it == view.elems.end() || *it != g)
    throw ArtifactError("class_of_elem: not an element of " + view.name);
  return class_of[size_t(it - view.elems.begin())];
}

const Cyclo& CharacterTable::value(uint32_t irrep, MCode g) const {
  return irreps[irrep][class_of_elem(g)];
}

Cyclo CharacterTable::inner_with_irrep(const std::vector<Cyclo>& values,
                                       uint32_t i) const {
  Cyclo sum;
  for (size_t k = 0; k < class_reps.size(); ++k) {
    Cyclo term = values[k] * irreps[i][k].conj();
    sum += term.scaled((long long)class_sizes[k], 1);
  }
  return sum.scaled(1, (long long)view.order());
}

namespace {

// --- modular linear algebra over F_P ---------------------------------------

struct Fp {
  long long p;
  long long add(long long a, long long b) const { return (a + b) % p; }
  long long sub(long long a, long long b) const { return ((a - b) % p + p) % p; }
  long long mul(long long a, long long b) const { return (__int128)a * b % p; }
  long long pow(long long a, long long e) const {
    long long r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  long long inv(long long a) const { return pow(a, p - 2); }
};

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;  // row major

// Solve the nullspace of M (n x n) as column vectors.
std::vector<Vec> nullspace(const Fp& F, Mat M) {
  size_t n = M.size();
  std::vector<int> pivot_col_of_row(n, -1);
  size_t row = 0;
  std::vector<bool> col_is_pivot(n, false);
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t sel = row;
    while (sel < n && M[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(M[sel], M[row]);
    long long inv = F.inv(M[row][col]);
    for (size_t j = 0; j < n; ++j) M[row][j] = F.mul(M[row][j], inv);
    for (size_t i = 0; i < n; ++i) {
      if (i == row || M[i][col] == 0) continue;
      long long f = M[i][col];
      for (size_t j = 0; j < n; ++j) M[i][j] = F.sub(M[i][j], F.mul(f, M[row][j]));
    }
    pivot_col_of_row[row] = int(col);
    col_is_pivot[col] = true;
    ++row;
  }
  std::vector<Vec> basis;
  for (size_t col = 0; col < n; ++col) {
    if (col_is_pivot[col]) continue;
    Vec v(n, 0);
    v[col] = 1;
    for (size_t r = 0; r < row; ++r) {
      int pc = pivot_col_of_row[r];
      if (pc >= 0) v[pc] = F.sub(0, M[r][col]);
    }
    basis.push_back(v);
  }
  return basis;
}

long long det_mod(const Fp& F, Mat M) {
  size_t n = M.size();
  long long det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && M[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(M[sel], M[col]);
      det = F.sub(0, det);
    }
    det = F.mul(det, M[col][col]);
    long long inv = F.inv(M[col][col]);
    for (size_t i = col + 1; i < n; ++i) {
      if (M[i][col] == 0) continue;
      long long f = F.mul(M[i][col], inv);
      for (size_t j = col; j < n; ++j) M[i][j] = F.sub(M[i][j], F.mul(f, M[col][j]));
    }
  }
  return det;
}

// Characteristic polynomial of M via interpolation of det(M - x I).
Vec char_poly(const Fp& F, const Mat& M) {
  size_t n = M.size();
  std::vector<long long> xs, ys;
  for (size_t k = 0; k <= n; ++k) {
    Mat A = M;
    for (size_t i = 0; i < n; ++i) A[i][i] = F.sub(A[i][i], (long long)k);
    xs.push_back((long long)k);
    ys.push_back(det_mod(F, A));
  }
  // Lagrange interpolation to coefficients.
  Vec poly(n + 1, 0);
  for (size_t i = 0; i <= n; ++i) {
    // basis polynomial prod_{j != i} (x - xs[j]) / (xs[i] - xs[j])
    Vec num(1, 1);
    long long den = 1;
    for (size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      Vec next(num.size() + 1, 0);
      for (size_t d = 0; d < num.size(); ++d) {
        next[d + 1] = F.add(next[d + 1], num[d]);
        next[d] = F.sub(next[d], F.mul(num[d], xs[j]));
      }
      num = next;
      den = F.mul(den, F.sub(xs[i], xs[j]));
    }
    long long c = F.mul(ys[i], F.inv(den));
    for (size_t d = 0; d < num.size(); ++d)
      poly[d] = F.add(poly[d], F.mul(c, num[d]));
  }
  return poly;
}

long long eval_poly(const Fp& F, const Vec& poly, long long x) {
  long long r = 0;
  for (size_t d = poly.size(); d-- > 0;) r = F.add(F.mul(r, x), poly[d]);
  return r;
}

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

CharacterTable character_table(const FiniteGroupView& view, uint64_t max_order,
                               uint32_t max_classes) {
  const Group& G = *view.ambient;
  if (view.order() > max_order)
    throw BudgetExceeded("character table: group order " + std::to_string(view.order()) +
                         " exceeds budget");
  CharacterTable T;
  T.view = view;
  size_t n = view.elems.size();

  std::unordered_map<MCode, uint32_t> idx;
  idx.reserve(2 * n);
  for (uint32_t i = 0; i < n; ++i) idx[view.elems[i]] = i;

  // conjugacy classes within the view (orbits under view generators)
  T.class_of.assign(n, UINT32_MAX);
  for (uint32_t i = 0; i < n; ++i) {
    if (T.class_of[i] != UINT32_MAX) continue;
    uint32_t id = uint32_t(T.class_reps.size());
    T.class_reps.push_back(view.elems[i]);
    std::deque<MCode> queue = {view.elems[i]};
    T.class_of[i] = id;
    uint64_t size = 1;
    while (!queue.empty()) {
      MCode x = queue.front();
      queue.pop_front();
      for (MCode s : view.gens) {
        MCode y = G.conj(s, x);
        uint32_t yi = idx.at(y);
        if (T.class_of[yi] == UINT32_MAX) {
          T.class_of[yi] = id;
          queue.push_back(y);
          ++size;
        }
      }
    }
    T.class_sizes.push_back(size);
  }
  size_t k = T.class_reps.size();
  if (k > max_classes) throw BudgetExceeded("character table: too many classes");

  // group exponent
  long long e = 1;
  for (MCode rep : T.class_reps) {
    long long ord = 1;
    MCode x = rep;
    while (x != G.identity()) {
      x = G.mul(x, rep);
      ++ord;
    }
    e = std::lcm(e, ord);
  }
  T.exponent = int(e);

  // Dixon prime P = 1 mod e, P^2 > 4|G|
  long long P = e + 1;
  while (!(is_prime_ll(P) && (__int128)P * P > (__int128)4 * view.order())) P += e;
  Fp F{P};
  // primitive e-th root mod P (element of order exactly e)
  long long theta = 0;
  for (long long g0 = 2; g0 < P && theta == 0; ++g0) {
    long long cand = F.pow(g0, (P - 1) / e);
    if (cand == 1) continue;
    long long ord = 1, t = cand;
    while (t != 1) {
      t = F.mul(t, cand);
      ++ord;
    }
    if (ord == e) theta = cand;
  }
  if (theta == 0) throw ArtifactError("character table: no primitive root found");

  // class multiplication matrices M_i, (M_i)_{j,m} = a_{ijm}:
  // c_i c_j = sum_m a_{ijm} c_m, computed as #{x in C_i : x^{-1} z_m in C_j}.
  std::vector<std::vector<uint32_t>> class_members(k);
  for (uint32_t i = 0; i < n; ++i) class_members[T.class_of[i]].push_back(i);
  std::vector<Mat> Mi(k, Mat(k, Vec(k, 0)));
  for (size_t m = 0; m < k; ++m) {
    MCode zm = T.class_reps[m];
    for (size_t i = 0; i < k; ++i) {
      for (uint32_t xi : class_members[i]) {
        MCode x = view.elems[xi];
        MCode y = G.mul(G.inv(x), zm);
        auto it = idx.find(y);
        if (it == idx.end()) throw ArtifactError("class algebra: product left the group");
        uint32_t j = T.class_of[it->second];
        Mi[i][j][m] += 1;
      }
    }
  }

  // split common eigenspaces of the M_i over F_P
  std::vector<std::vector<Vec>> spaces;  // each: list of basis column vectors
  {
    std::vector<Vec> full;
    for (size_t i = 0; i < k; ++i) {
      Vec v(k, 0);
      v[i] = 1;
      full.push_back(v);
    }
    spaces.push_back(full);
  }
  for (size_t i = 0; i < k; ++i) {
    std::vector<std::vector<Vec>> next;
    for (auto& sp : spaces) {
      if (sp.size() == 1) {
        next.push_back(sp);
        continue;
      }
      size_t d = sp.size();
      // restriction S of M_i to the subspace: M_i * b_c = sum_r S[r][c] b_r
      // Solve with the basis matrix.
      Mat B(k, Vec(d, 0));
      for (size_t c = 0; c < d; ++c)
        for (size_t r = 0; r < k; ++r) B[r][c] = sp[c][r];
      // images
      Mat Img(k, Vec(d, 0));
      for (size_t c = 0; c < d; ++c)
        for (size_t r = 0; r < k; ++r) {
          long long s = 0;
          for (size_t m2 = 0; m2 < k; ++m2)
            s = F.add(s, F.mul(Mi[i][r][m2] % P, sp[c][m2]));
          // note: (M_i v)_j = sum_m a_{ijm} v_m
          Img[r][c] = s;
        }
      // solve B * S = Img column by column via Gaussian elimination on B
      // (B has full column rank d). Build augmented reduction once.
      Mat A(k, Vec(d + d, 0));
      for (size_t r = 0; r < k; ++r) {
        for (size_t c = 0; c < d; ++c) A[r][c] = B[r][c];
        for (size_t c = 0; c < d; ++c) A[r][d + c] = Img[r][c];
      }
      // eliminate
      size_t row = 0;
      std::vector<int> prow(d, -1);
      for (size_t col = 0; col < d && row < k; ++col) {
        size_t sel = row;
        while (sel < k && A[sel][col] == 0) ++sel;
        if (sel == k) continue;
        std::swap(A[sel], A[row]);
        long long inv = F.inv(A[row][col]);
        for (size_t j = 0; j < d + d; ++j) A[row][j] = F.mul(A[row][j], inv);
        for (size_t r2 = 0; r2 < k; ++r2) {
          if (r2 == row || A[r2][col] == 0) continue;
          long long f = A[r2][col];
          for (size_t j = 0; j < d + d; ++j)
            A[r2][j] = F.sub(A[r2][j], F.mul(f, A[row][j]));
        }
        prow[col] = int(row);
        ++row;
      }
      Mat S(d, Vec(d, 0));
      for (size_t c = 0; c < d; ++c)
        for (size_t cc = 0; cc < d; ++cc) {
          if (prow[cc] < 0) throw ArtifactError("class algebra: basis not independent");
          S[cc][c] = A[prow[cc]][d + c];
        }
      // eigenvalues of S
      Vec poly = char_poly(F, S);
      std::vector<long long> roots;
      for (long long lam = 0; lam < P; ++lam)
        if (eval_poly(F, poly, lam) == 0) roots.push_back(lam);
      if (roots.size() <= 1) {
        next.push_back(sp);
        continue;
      }
      for (long long lam : roots) {
        Mat Sl = S;
        for (size_t r2 = 0; r2 < d; ++r2) Sl[r2][r2] = F.sub(Sl[r2][r2], lam);
        auto ns = nullspace(F, Sl);
        if (ns.empty()) continue;
        std::vector<Vec> sub;
        for (auto& v : ns) {
          Vec w(k, 0);
          for (size_t c = 0; c < d; ++c)
            for (size_t r2 = 0; r2 < k; ++r2)
              w[r2] = F.add(w[r2], F.mul(v[c], sp[c][r2]));
          sub.push_back(w);
        }
        next.push_back(sub);
      }
    }
    spaces = next;
    bool done = true;
    for (auto& sp : spaces)
      if (sp.size() > 1) done = false;
    if (done) break;
  }
  if (spaces.size() != k)
    throw ArtifactError("class algebra did not split into " + std::to_string(k) +
                        " common eigenvectors (got " + std::to_string(spaces.size()) + ")");

  // Each 1-dim space gives omega_m = |C_m| chi(g_m) / chi(1) mod P.
  uint32_t id_class = T.class_of[size_t(std::lower_bound(view.elems.begin(),
                                                         view.elems.end(), G.identity()) -
                                        view.elems.begin())];
  // class of inverse elements
  std::vector<uint32_t> inv_class(k);
  for (size_t m = 0; m < k; ++m) {
    MCode y = G.inv(T.class_reps[m]);
    inv_class[m] = T.class_of[idx.at(y)];
  }

  struct ModChar {
    long long dim;
    Vec values;  // chi(g_m) mod P
  };
  std::vector<ModChar> mods;
  for (auto& sp : spaces) {
    Vec omega = sp[0];
    if (omega[id_class] == 0) throw ArtifactError("eigenvector vanishes at identity");
    long long scale = F.inv(omega[id_class]);
    for (auto& v : omega) v = F.mul(v, scale);
    // 1/d^2 = (1/|G|) sum_m omega_m omega_{m*} / |C_m|
    long long s = 0;
    for (size_t m = 0; m < k; ++m)
      s = F.add(s, F.mul(F.mul(omega[m], omega[inv_class[m]]),
                         F.inv((long long)(T.class_sizes[m] % P))));
    long long d2 = F.mul((long long)(view.order() % P), F.inv(s));
    long long d = 0;
    for (long long c = 1; c < P; ++c)
      if (F.mul(c, c) == d2) {
        d = std::min(c, P - c);
        break;
      }
    if (d == 0) throw ArtifactError("dimension is not a square mod P");
    ModChar mc;
    mc.dim = d;
    mc.values.assign(k, 0);
    for (size_t m = 0; m < k; ++m)
      mc.values[m] =
          F.mul(F.mul(d % P, omega[m]), F.inv((long long)(T.class_sizes[m] % P)));
    mods.push_back(mc);
  }

  // power map per class: class of g^j
  std::vector<std::vector<uint32_t>> power_class(k, std::vector<uint32_t>(e));
  for (size_t m = 0; m < k; ++m) {
    MCode x = G.identity();
    for (long long j = 0; j < e; ++j) {
      power_class[m][j] = T.class_of[idx.at(x)];
      x = G.mul(x, T.class_reps[m]);
    }
  }

  // lift to Z[zeta_e]
  long long e_inv = F.inv(e % P);
  for (auto& mc : mods) {
    std::vector<Cyclo> row;
    for (size_t m = 0; m < k; ++m) {
      std::vector<long long> counts(e, 0);
      for (long long s = 0; s < e; ++s) {
        long long acc = 0;
        for (long long j = 0; j < e; ++j) {
          long long cj = mc.values[power_class[m][j]];
          acc = F.add(acc, F.mul(cj, F.pow(theta, (e - s) * j % e)));
        }
        long long ms = F.mul(acc, e_inv);
        if (ms > mc.dim)
          throw ArtifactError("character lift: multiplicity exceeds dimension");
        counts[s] = ms;
      }
      row.push_back(Cyclo::from_counts(int(e), counts));
    }
    long long d_chk;
    if (!row[id_class].is_integer(&d_chk) || d_chk != mc.dim)
      throw ArtifactError("character lift: dimension mismatch");
    T.irreps.push_back(std::move(row));
    T.dims.push_back(mc.dim);
  }

  // canonical order: by dimension, then lexicographic value strings
  std::vector<size_t> perm(T.irreps.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::string> keys;
  for (auto& row : T.irreps) {
    std::string s;
    for (auto& v : row) s += v.str() + "|";
    keys.push_back(s);
  }
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    if (T.dims[a] != T.dims[b]) return T.dims[a] < T.dims[b];
    return keys[a] < keys[b];
  });
  std::vector<std::vector<Cyclo>> irr2;
  std::vector<long long> dims2;
  for (size_t i : perm) {
    irr2.push_back(T.irreps[i]);
    dims2.push_back(T.dims[i]);
  }
  T.irreps = std::move(irr2);
  T.dims = std::move(dims2);

  // exact verification: sum of squares and row orthogonality
  long long sum_sq = 0;
  for (long long d : T.dims) sum_sq += d * d;
  if (sum_sq != (long long)view.order())
    throw ArtifactError("character table: sum of dim^2 != |G|");
  for (size_t i = 0; i < T.irreps.size(); ++i)
    for (size_t j = i; j < T.irreps.size(); ++j) {
      Cyclo sum;
      for (size_t m = 0; m < k; ++m) {
        Cyclo term = T.irreps[i][m] * T.irreps[j][m].conj();
        sum += term.scaled((long long)T.class_sizes[m], 1);
      }
      sum = sum.scaled(1, (long long)view.order());
      long long v;
      if (!sum.is_integer(&v) || v != (i == j ? 1 : 0))
        throw ArtifactError("character table: row orthogonality failed");
    }
  return T;
}

long long restriction_multiplicity(const CharacterTable& T, uint32_t irrep,
                                   const Subgroup& H, const Character& phi) {
  Cyclo sum;
  H.for_each([&](MCode h) {
    sum += T.value(irrep, h) * Cyclo::root(phi.modulus, phi(h)).conj();
  });
  sum = sum.scaled(1, (long long)H.order);
  long long v;
  if (!sum.is_integer(&v))
    throw ArtifactError("restriction multiplicity is not an integer");
  return v;
}

std::vector<IrrepRecord> classify_irreps(const Group& G, const CharacterTable& T) {
  const Ring& R = G.ring();
  int ell = R.ell();
  std::vector<IrrepRecord> out;
  Subgroup K = G.congruence(ell == 1 ? 1 : ell - 1);
  Ring low(R.p(), 1, R.flavor());
  auto zchars = unit_characters(R);
  Subgroup Z = G.center();

  for (uint32_t i = 0; i < T.irreps.size(); ++i) {
    IrrepRecord rec;
    rec.index = i;
    rec.dim = T.dims[i];
    if (ell == 1) {
      // residue-level classification by dimension
      long long q = R.q();
      if (rec.dim == q + 1 || rec.dim == 1 || rec.dim == q)
        rec.type = rec.dim == q + 1 ? MatType::split_semisimple
                   : rec.dim == q   ? MatType::split_non_semisimple
                                    : MatType::non_regular;
      else
        rec.type = MatType::cuspidal;
    } else {
      // find a psi_x occurring in the restriction to K^{ell-1}
      bool found = false;
      for (int xa = 0; xa < low.size() && !found; ++xa)
        for (int xb = 0; xb < low.size() && !found; ++xb)
          for (int xc = 0; xc < low.size() && !found; ++xc)
            for (int xd = 0; xd < low.size() && !found; ++xd) {
              MCode x = pack(Mat2{RElem(xa), RElem(xb), RElem(xc), RElem(xd)});
              Character px = psi_x_char(G, low, x, ell - 1);
              if (restriction_multiplicity(T, i, K, px) > 0) {
                rec.type = classify_matrix(low, x);
                found = true;
              }
            }
      if (!found) throw ArtifactError("irrep has empty K^{ell-1} spectrum");
    }
    // central character: chi with value(zI) = chi(z) * dim
    for (size_t c = 0; c < zchars.size(); ++c) {
      bool match = true;
      for (MCode z : Z.elems) {
        Cyclo lhs = T.value(i, z);
        Cyclo rhs = Cyclo::root(zchars[c].modulus, zchars[c](unpack(z).a))
                        .scaled(T.dims[i], 1);
        if (lhs != rhs) {
          match = false;
          break;
        }
      }
      if (match) {
        rec.central_char_index = int(c);
        break;
      }
    }
    if (rec.central_char_index < 0)
      throw ArtifactError("irrep has no scalar central character");
    out.push_back(rec);
  }
  return out;
}

std::vector<DggRow> dgg_decompose_table(const Group& G, const CharacterTable& T,
                                        const std::vector<IrrepRecord>& recs,
                                        const RingChar& chi, int t) {
  Character phi = tensor_zu_char(G, chi, t);
  ClassFunction ind = induced_class_function(G, *phi.domain, phi);
  std::vector<DggRow> rows;
  for (uint32_t i = 0; i < T.irreps.size(); ++i) {
    Cyclo ip = T.inner_with_irrep(ind.values, i);
    long long m;
    if (!ip.is_integer(&m)) throw ArtifactError("dgg multiplicity not integral");
    if (m != 0) rows.push_back(DggRow{i, T.dims[i], recs[i].type, m});
  }
  long long total = 0;
  for (auto& r : rows) total += r.mult * r.dim;
  if (total != (long long)(G.order() / (G.zu().order)))
    throw ArtifactError("dgg decomposition does not fill the induced dimension");
  return rows;
}

StrongGelfandResult strong_gelfand_check(const Group& G, const CharacterTable& TG,
                                         const Subgroup& H, const CharacterTable& TH) {
  StrongGelfandResult res;
  size_t kh = TH.class_reps.size();
  // for each H-class rep, its G-class
  std::vector<uint32_t> gclass(kh);
  for (size_t m = 0; m < kh; ++m) gclass[m] = TG.class_of_elem(TH.class_reps[m]);
  for (uint32_t th = 0; th < TH.irreps.size(); ++th)
    for (uint32_t rho = 0; rho < TG.irreps.size(); ++rho) {
      Cyclo sum;
      for (size_t m = 0; m < kh; ++m) {
        Cyclo term = TH.irreps[th][m] * TG.irreps[rho][gclass[m]].conj();
        sum += term.scaled((long long)TH.class_sizes[m], 1);
      }
      sum = sum.scaled(1, (long long)H.order);
      long long v;
      if (!sum.is_integer(&v))
        throw ArtifactError("strong Gelfand: non-integral multiplicity");
      if (v > res.max_multiplicity) {
        res.max_multiplicity = v;
        res.witnesses.clear();
      }
      if (v == res.max_multiplicity && v > 1) res.witnesses.emplace_back(th, rho);
    }
  return res;
}

}  // namespace gl2
