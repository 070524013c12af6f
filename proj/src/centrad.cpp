#include "gpi/centrad.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gpi/codeq.hpp"
#include "gpi/exec.hpp"
#include "gpi/perm.hpp"

namespace gpi {

namespace {

std::vector<Elem> identity_map(int n) {
  std::vector<Elem> id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// Representatives of the Q-conjugacy classes met by S (S closed under
// conjugation), in order of first appearance, with the class sizes.
std::vector<Elem> class_reps(const CayleyTable& Q, const std::vector<Elem>& S, std::vector<int>* sizes = nullptr) {
  std::vector<char> seen(Q.order(), 0);
  std::vector<Elem> reps;
  for (Elem x : S) {
    if (seen[x]) continue;
    reps.push_back(x);
    int size = 0;
    for (Elem g = 0; g < Q.order(); ++g) {
      Elem c = Q.conj(g, x);
      size += !seen[c];
      seen[c] = 1;
    }
    if (sizes) sizes->push_back(size);
  }
  return reps;
}

bool is_simple_nonabelian(const CayleyTable& T) {
  if (T.order() == 1 || is_abelian(T)) return false;
  std::vector<Elem> rest(T.order() - 1);
  std::iota(rest.begin(), rest.end(), 1);
  for (Elem x : class_reps(T, rest))
    if (normal_closure(T, {x}).order() != T.order()) return false;
  return true;
}

// Elements of C commuting with every element of gens.
Subgroup centralizer_in(const CayleyTable& Q, const std::vector<Elem>& C, const std::vector<Elem>& gens) {
  Subgroup Z;
  for (Elem c : C) {
    bool ok = true;
    for (Elem g : gens)
      if (Q.mul(c, g) != Q.mul(g, c)) {
        ok = false;
        break;
      }
    if (ok) Z.elems.push_back(c);
  }
  return Z;
}

std::vector<Elem> generators_in(const CayleyTable& Q, const Subgroup& N) {
  auto local = generating_set(subgroup_table(Q, N));
  std::vector<Elem> out;
  for (Elem t : local) out.push_back(N.elems[t]);
  return out;
}

// Peels off minimal normal subgroups that are simple and have a direct
// complement.
bool simple_factors(const CayleyTable& Q, std::vector<Subgroup>& out) {
  Subgroup C = whole(Q);
  while (C.order() > 1) {
    std::vector<Elem> rest(C.elems.begin() + 1, C.elems.end());
    std::optional<Subgroup> best;
    for (Elem x : class_reps(Q, rest)) {
      exec::tick();
      Subgroup N = normal_closure(Q, {x});
      if (!best || N.order() < best->order()) best = N;
    }
    if (!is_simple_nonabelian(subgroup_table(Q, *best))) return false;
    Subgroup Cn = centralizer_in(Q, C.elems, generators_in(Q, *best));
    // N is centerless, so N and its centralizer meet trivially
    if (1LL * best->order() * Cn.order() != C.order()) return false;
    out.push_back(*best);
    C = Cn;
  }
  return true;
}

// Direct factors of order <= bound among normal closures of one or two
// conjugacy classes that are perfect; chosen greedily by size.
bool bounded_factors(const CayleyTable& Q, int bound, std::vector<Subgroup>& out) {
  int n = Q.order();
  if (n == 1) return true;
  std::vector<Elem> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<int> sizes;
  auto reps = class_reps(Q, rest, &sizes);
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> cands;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i; j < reps.size(); ++j) {
      // a normal closure holds the identity and both classes
      if (1 + sizes[i] + (j != i ? sizes[j] : 0) > bound) continue;
      exec::tick();
      std::vector<Elem> S{reps[i]};
      if (j != i) S.push_back(reps[j]);
      Subgroup N = normal_closure(Q, S);
      if (N.order() > bound || !seen.insert(N.elems).second) continue;
      CayleyTable Nt = subgroup_table(Q, N);
      if (commutator_subgroup(Nt).order() != N.order()) continue;
      auto gens = generators_in(Q, N);
      Subgroup Cn = centralizer_in(Q, whole(Q).elems, gens);
      int meet = 0;
      for (Elem c : Cn.elems) meet += N.contains(c);
      if (meet != 1 || 1LL * N.order() * Cn.order() != n) continue;
      cands.push_back(N);
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  long long prod = 1;
  for (const auto& N : cands) {
    bool ok = true;
    for (const auto& T : out) {
      for (Elem x : N.elems) {
        if (x != 0 && T.contains(x)) ok = false;
        if (!ok) break;
      }
      if (!ok) break;
      for (Elem x : generators_in(Q, N))
        for (Elem y : generators_in(Q, T))
          if (Q.mul(x, y) != Q.mul(y, x)) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    out.push_back(N);
    prod *= N.order();
  }
  return prod == n;
}

FpMatrix pad(const FpMatrix& B, int width) {
  FpMatrix out(B.p, B.rows, width);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) out(i, j) = B(i, j);
  return out;
}

FpMatrix block_of(const FpMatrix& M, int i, int width) {
  std::vector<int> cols(width);
  std::iota(cols.begin(), cols.end(), i * width);
  return select_columns(M, cols);
}

}  // namespace

Elem SocleDecomposition::compose(const std::vector<int>& local) const {
  const CayleyTable& Q = quot.table;
  Elem x = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) x = Q.mul(x, factors[i].T.elems[local[i]]);
  return x;
}

bool no_abelian_normal(const CayleyTable& Q) {
  if (Q.order() == 1) return true;
  auto ord = element_orders(Q);
  std::vector<Elem> prime_order;
  for (Elem x = 1; x < Q.order(); ++x)
    if (is_prime(ord[x])) prime_order.push_back(x);
  for (Elem x : class_reps(Q, prime_order)) {
    exec::tick();
    if (is_abelian(Q, normal_closure(Q, {x}).elems)) return false;
  }
  return true;
}

bool align_classes(SocleDecomposition& dec, const std::vector<CayleyTable>& refs) {
  dec.refs = refs;
  dec.class_sizes.assign(refs.size(), 0);
  for (auto& F : dec.factors) {
    bool found = false;
    for (std::size_t c = 0; c < refs.size() && !found; ++c) {
      if (refs[c].order() != F.table.order()) continue;
      if (auto iso = find_isomorphism(refs[c], F.table)) {
        F.cls = int(c);
        F.from_ref = *iso;
        ++dec.class_sizes[c];
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

RadicalCheck check_central_radical(const CayleyTable& G, const CentradOptions& opt) {
  exec::SpanScope scope;
  RadicalCheck out;
  SocleDecomposition d;
  d.A = center(G);
  d.A.is_normal = true;
  int p = 0;
  for (Elem a : d.A.elems) {
    if (a == 0) continue;
    int o = element_order(G, a);
    if (!is_prime(o) || (p && o != p)) {
      out.reason = "CenterNotElementary";
      return out;
    }
    p = o;
  }
  d.p = p ? p : 2;
  d.basis = abelian_basis(G, d.A);
  d.k = int(d.basis.gens.size());
  d.quot = quotient(G, d.A);
  const CayleyTable& Q = d.quot.table;
  if (!no_abelian_normal(Q)) {
    out.reason = "RadicalNotCentral";
    return out;
  }
  std::vector<Subgroup> Ts;
  bool ok = opt.simple_first && simple_factors(Q, Ts);
  if (!ok) {
    Ts.clear();
    ok = bounded_factors(Q, opt.perfect_bound, Ts);
    d.bounded = ok;
  }
  if (!ok) {
    out.reason = "NotProductOfSimple";
    return out;
  }
  std::sort(Ts.begin(), Ts.end(), [](const Subgroup& a, const Subgroup& b) { return a.elems < b.elems; });
  for (const auto& T : Ts) {
    SocleFactor F;
    F.T = T;
    F.T.is_normal = true;
    F.table = subgroup_table(Q, T);
    for (Elem g = 0; g < G.order(); ++g)
      if (T.contains(d.quot.proj.image[g])) F.U.elems.push_back(g);
    F.U.is_normal = true;
    // new class unless isomorphic to an earlier reference
    bool found = false;
    for (std::size_t c = 0; c < d.refs.size() && !found; ++c) {
      if (d.refs[c].order() != F.table.order()) continue;
      if (auto iso = find_isomorphism(d.refs[c], F.table)) {
        F.cls = int(c);
        F.from_ref = *iso;
        ++d.class_sizes[c];
        found = true;
      }
    }
    if (!found) {
      F.cls = int(d.refs.size());
      F.from_ref = identity_map(F.table.order());
      d.refs.push_back(F.table);
      d.class_sizes.push_back(1);
    }
    d.factors.push_back(std::move(F));
  }
  // components and the product section
  int l = d.length(), n = Q.order();
  d.comp.assign(std::size_t(n) * l, -1);
  d.section.assign(n, -1);
  std::vector<int> digit(l, 0);
  for (int t = 0; t < n; ++t) {
    Elem x = 0, s = 0;
    for (int i = 0; i < l; ++i) {
      Elem y = d.factors[i].T.elems[digit[i]];
      x = Q.mul(x, y);
      s = G.mul(s, d.quot.reps[y]);
    }
    if (d.section[x] >= 0) throw Error("Internal", "factors do not form a direct product");
    for (int i = 0; i < l; ++i) d.comp[std::size_t(x) * l + i] = digit[i];
    d.section[x] = s;
    for (int i = l - 1; i >= 0; --i) {
      if (++digit[i] < d.factors[i].table.order()) break;
      digit[i] = 0;
    }
  }
  out.dec = std::move(d);
  return out;
}

// ------------------------------------------------------ diagonals

std::uint64_t Diagonals::count() const {
  std::uint64_t c = 1;
  for (int k : cls) c *= class_auts[k].size();
  return c;
}

std::vector<std::size_t> Diagonals::digits(std::uint64_t i) const {
  std::vector<std::size_t> d(cls.size());
  for (int f = int(cls.size()) - 1; f >= 0; --f) {
    std::size_t r = class_auts[cls[f]].size();
    d[f] = std::size_t(i % r);
    i /= r;
  }
  return d;
}

Diagonal Diagonals::at(std::uint64_t i) const {
  auto d = digits(i);
  Diagonal out;
  for (std::size_t f = 0; f < cls.size(); ++f) out.push_back(class_auts[cls[f]][d[f]]);
  return out;
}

Diagonals enumerate_diagonals(const SocleDecomposition& dec, std::size_t guard) {
  Diagonals D;
  for (const auto& R : dec.refs) D.class_auts.push_back(enumerate_aut(R, guard));
  for (const auto& F : dec.factors) D.cls.push_back(F.cls);
  long double c = 1;
  for (int k : D.cls) c *= (long double)D.class_auts[k].size();
  if (c > (long double)guard) throw Error("TooLarge", "diagonal count exceeds the guard");
  return D;
}

// ------------------------------------------------------ product cocycles

ProdCocycle prod_cocycle(const CayleyTable& G, const SocleDecomposition& dec) {
  ProdCocycle f;
  f.p = dec.p;
  auto coords = coordinate_table(G, dec.basis);
  for (const auto& F : dec.factors) {
    int m = F.table.order();
    CocycleMatrix c{std::vector<int>(dec.k, dec.p), m,
                    std::vector<std::vector<int>>(dec.k, std::vector<int>(std::size_t(m) * m, 0))};
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Elem sa = dec.quot.reps[F.T.elems[a]], sb = dec.quot.reps[F.T.elems[b]];
        Elem sab = dec.quot.reps[F.T.elems[F.table.mul(a, b)]];
        Elem v = G.mul(G.mul(sa, sb), G.inv(sab));
        for (int i = 0; i < dec.k; ++i) c.rows[i][std::size_t(a) * m + b] = coords[v][i];
      }
    f.blocks.push_back(std::move(c));
  }
  return f;
}

FpMatrix ProdCocycle::concat() const {
  std::vector<FpMatrix> parts;
  for (const auto& b : blocks) parts.push_back(FpMatrix::from_rows(p, b.rows, b.qn * b.qn));
  if (parts.empty()) return FpMatrix(p, 0, 0);
  return hstack(parts);
}

std::vector<int> ProdCocycle::value(const SocleDecomposition& dec, Elem x, Elem y) const {
  std::vector<int> v(dec.k, 0);
  for (int i = 0; i < dec.length(); ++i)
    for (int r = 0; r < dec.k; ++r)
      v[r] = (v[r] + blocks[i].at(r, dec.component(x, i), dec.component(y, i))) % p;
  return v;
}

ProdProjector prod_projector(const SocleDecomposition& dec) {
  ProdProjector P;
  for (const auto& R : dec.refs) {
    P.per_class.push_back(invariant_projection(R, dec.p));
    P.width = std::max(P.width, int(P.per_class.back().free_cols.size()));
  }
  return P;
}

FpMatrix prod_block(const SocleDecomposition& dec, const ProdProjector& P, const ProdCocycle& f, int i,
                    const std::vector<Elem>& delta_i) {
  const auto& F = dec.factors[i];
  CocycleMatrix g = pull_back(f.blocks[i], compose_maps(F.from_ref, delta_i));
  return pad(P.per_class[F.cls].matrix(g), P.width);
}

FpMatrix prod_projection(const SocleDecomposition& dec, const ProdProjector& P, const Diagonal& delta,
                         const ProdCocycle& f) {
  if (dec.length() == 0) return FpMatrix(dec.p, dec.k, 0);
  std::vector<FpMatrix> parts;
  for (int i = 0; i < dec.length(); ++i) parts.push_back(prod_block(dec, P, f, i, delta[i]));
  return hstack(parts);
}

// ------------------------------------------------------ block code equivalence

std::vector<BlockEquiv> block_code_equiv(const FpMatrix& M1, const FpMatrix& M2, int width,
                                         const std::vector<int>& class1, const std::vector<int>& class2,
                                         bool first_only, bool generic) {
  int l = int(class1.size());
  if (M1.rows != M2.rows || M1.cols != M2.cols || M1.cols != l * width || int(class2.size()) != l)
    throw Error("ShapeMismatch", "block matrices differ in shape");
  int k = M1.rows, p = M1.p;
  std::vector<BlockEquiv> out;
  auto transform = [&](const FpMatrix& target) -> std::optional<FpMatrix> {
    if (k == 0) return FpMatrix::identity(p, 0);
    return equivalence_transform(M1, target, identity_map(M1.cols));
  };

  if (generic) {
    // Sym on each class of blocks of M1's layout, then read sigma off the
    // column permutation; class2 must list the same classes blockwise.
    if (class1 != class2) return out;
    std::vector<Perm> gens;
    for (int a = 0; a < l; ++a)
      for (int b = a + 1; b < l; ++b) {
        if (class1[a] != class1[b]) continue;
        Perm s = identity_map(l * width);
        for (int c = 0; c < width; ++c) std::swap(s[a * width + c], s[b * width + c]);
        gens.push_back(s);
      }
    PermGroup S(l * width, gens);
    auto coset = generalized_code_equivalence(M1, M2, S);
    if (coset.empty()) return out;
    for (const auto& g : coset.group.elements()) {
      Perm col = compose_maps(*coset.rep, g);
      std::vector<int> sigma(l);
      for (int i = 0; i < l; ++i) sigma[i] = col[i * width] / std::max(width, 1);
      std::vector<FpMatrix> parts;
      for (int i = 0; i < l; ++i) parts.push_back(block_of(M2, sigma[i], width));
      auto X = transform(hstack(parts));
      if (!X) throw Error("Internal", "code equivalence without transform");
      out.push_back({sigma, *X});
      if (first_only) break;
    }
    std::sort(out.begin(), out.end(), [](const BlockEquiv& a, const BlockEquiv& b) { return a.sigma < b.sigma; });
    return out;
  }

  std::vector<FpMatrix> B1, B2;
  for (int i = 0; i < l; ++i) {
    B1.push_back(block_of(M1, i, width));
    B2.push_back(block_of(M2, i, width));
  }
  std::vector<int> sigma(l, -1);
  std::vector<char> used(l, 0);
  std::vector<FpMatrix> pre1, pre2;
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == l) {
      auto X = transform(l ? hstack(pre2) : FpMatrix(p, k, 0));
      if (!X) throw Error("Internal", "matching row spaces without transform");
      out.push_back({sigma, *X});
      return first_only;
    }
    for (int j = 0; j < l; ++j) {
      if (used[j] || class2[j] != class1[pos]) continue;
      exec::tick();
      pre1.push_back(B1[pos]);
      pre2.push_back(B2[j]);
      if (row_space(hstack(pre1)) == row_space(hstack(pre2))) {
        used[j] = 1;
        sigma[pos] = j;
        if (rec(pos + 1)) return true;
        used[j] = 0;
      }
      pre1.pop_back();
      pre2.pop_back();
    }
    return false;
  };
  if (k == 0 || l == 0) {
    // no rows: every class-preserving sigma works
    if (l == 0) {
      out.push_back({{}, FpMatrix::identity(p, k)});
      return out;
    }
  }
  rec(0);
  return out;
}

// ------------------------------------------------------ center splitting

std::optional<CenterSplit> split_off_center(const CayleyTable& G, const SocleDecomposition& dec) {
  if (dec.k == 0) return std::nullopt;
  ProdProjector P = prod_projector(dec);
  ProdCocycle f = prod_cocycle(G, dec);
  Diagonal id;
  for (const auto& F : dec.factors) id.push_back(identity_map(F.table.order()));
  FpMatrix M = prod_projection(dec, P, id, f);
  int r = rank(M);
  if (r == dec.k) return std::nullopt;
  // P0·M = [M'; 0]: the last k - r new coordinates of f are coboundaries
  FpMatrix P0inv = *inverse(rref_transform(rref(M), dec.k));
  std::vector<Elem> gens;
  for (int j = r; j < dec.k; ++j) {
    std::vector<int> v(dec.k);
    for (int i = 0; i < dec.k; ++i) v[i] = P0inv(i, j);
    gens.push_back(basis_element(G, dec.basis, v));
  }
  CenterSplit s;
  s.A1 = closure(G, gens);
  s.A1.is_normal = true;
  s.reduced = quotient(G, s.A1).table;
  s.rank = r;
  return s;
}

// ------------------------------------------------------ isomorphism

namespace {

struct Side {
  const CayleyTable* G = nullptr;
  SocleDecomposition dec;
  ProdCocycle f;
  std::vector<int> cls;
  // blocks[i][a]: block of factor i under the a-th automorphism of its reference
  std::vector<std::vector<FpMatrix>> blocks;
};

void fill_blocks(Side& s, const ProdProjector& P, const Diagonals& D) {
  s.cls.clear();
  s.blocks.assign(s.dec.length(), {});
  for (const auto& F : s.dec.factors) s.cls.push_back(F.cls);
  exec::parallel_for(s.dec.length(), [&](std::int64_t i) {
    const auto& auts = D.class_auts[s.cls[std::size_t(i)]];
    for (const auto& a : auts) s.blocks[std::size_t(i)].push_back(prod_block(s.dec, P, s.f, int(i), a));
  });
}

FpMatrix assemble(const Side& s, const std::vector<std::size_t>& digits, int p, int k) {
  if (digits.empty()) return FpMatrix(p, k, 0);
  std::vector<FpMatrix> parts;
  for (std::size_t i = 0; i < digits.size(); ++i) parts.push_back(s.blocks[i][digits[i]]);
  return hstack(parts);
}

// Element map G1 -> G2 for X·(block i of M1) = block sigma[i] of M2(delta),
// delta indexed by the factors of side 2.
std::optional<std::vector<Elem>> lift(const Side& s1, const Side& s2, const Diagonal& delta,
                                      const std::vector<int>& sigma, const FpMatrix& X) {
  const auto& d1 = s1.dec;
  const auto& d2 = s2.dec;
  const CayleyTable& G1 = *s1.G;
  const CayleyTable& G2 = *s2.G;
  int p = d1.p, k = d1.k, l = d1.length();
  auto alpha = k ? inverse(X) : std::optional<FpMatrix>(FpMatrix::identity(p, 0));
  if (!alpha) return std::nullopt;
  // u_i on the reference, beta_i : T1_i -> T2_sigma(i)
  std::vector<FpMatrix> U(l);
  std::vector<std::vector<int>> to_ref(l), beta(l);
  for (int i = 0; i < l; ++i) {
    int j = sigma[i];
    const auto& F1 = d1.factors[i];
    const auto& F2 = d2.factors[j];
    int m = F1.table.order();
    to_ref[i] = invert_map(F1.from_ref);
    beta[i].resize(m);
    for (int t = 0; t < m; ++t) beta[i][t] = F2.from_ref[delta[j][to_ref[i][t]]];
    if (k == 0) continue;
    CocycleMatrix g1 = pull_back(s1.f.blocks[i], F1.from_ref);
    CocycleMatrix g2 = pull_back(s2.f.blocks[j], compose_maps(F2.from_ref, delta[j]));
    FpMatrix Dm = mat_add(FpMatrix::from_rows(p, g1.rows, m * m),
                          mat_scale(mat_mul(*alpha, FpMatrix::from_rows(p, g2.rows, m * m)), p - 1));
    FpMatrix Cob = FpMatrix::from_rows(p, coboundary_basis(d1.refs[F1.cls], p), m * m);
    auto Ui = solve_left(Cob, Dm);
    if (!Ui) return std::nullopt;
    U[i] = *Ui;
  }
  auto coords = coordinate_table(G1, d1.basis);
  const CayleyTable& Q1 = d1.quot.table;
  std::vector<Elem> bx(Q1.order());
  std::vector<int> loc(l);
  for (Elem x = 0; x < Q1.order(); ++x) {
    for (int i = 0; i < l; ++i) loc[sigma[i]] = beta[i][d1.component(x, i)];
    bx[x] = d2.compose(loc);
  }
  std::vector<Elem> phi(G1.order());
  for (Elem g = 0; g < G1.order(); ++g) {
    Elem x = d1.quot.proj.image[g];
    Elem a = G1.mul(g, G1.inv(d1.section[x]));
    std::vector<int> v = k ? coords[a] : std::vector<int>{};
    for (int i = 0; i < l && k; ++i) {
      int ai = to_ref[i][d1.component(x, i)];
      for (int r = 0; r < k; ++r) v[r] = int((v[r] + U[i](r, ai)) % p);
    }
    auto w = k ? mat_vec(X, v) : v;
    phi[g] = G2.mul(basis_element(G2, d2.basis, w), d2.section[bx[x]]);
  }
  if (!is_isomorphism(G1, G2, phi)) return std::nullopt;
  return phi;
}

struct Match {
  std::uint64_t diagonal = 0;
  BlockEquiv be;
};

// First diagonal of side 2 for which the block code equivalence is nonempty.
std::optional<Match> search(const Side& s1, const Side& s2, const Diagonals& D2, const FpMatrix& M1) {
  int p = s1.dec.p, k = s1.dec.k, w = M1.cols / std::max(1, s1.dec.length());
  auto hit = exec::parallel_find_first(std::int64_t(D2.count()), [&](std::int64_t t) {
    FpMatrix M2 = assemble(s2, D2.digits(std::uint64_t(t)), p, k);
    return !block_code_equiv(M1, M2, w, s1.cls, s2.cls, true).empty();
  });
  if (!hit) return std::nullopt;
  FpMatrix M2 = assemble(s2, D2.digits(std::uint64_t(*hit)), p, k);
  auto be = block_code_equiv(M1, M2, w, s1.cls, s2.cls, true);
  return Match{std::uint64_t(*hit), be.front()};
}

// Both sides decomposed against side 1's references; nullopt when the class
// data already differ.
std::optional<std::pair<Side, Side>> prepare(const CayleyTable& G1, SocleDecomposition d1, const CayleyTable& G2,
                                             SocleDecomposition d2) {
  if (G1.order() != G2.order() || d1.k != d2.k || (d1.k && d1.p != d2.p)) return std::nullopt;
  if (d1.length() != d2.length()) return std::nullopt;
  if (!align_classes(d2, d1.refs) || d2.class_sizes != d1.class_sizes) return std::nullopt;
  Side s1, s2;
  s1.G = &G1;
  s2.G = &G2;
  s1.dec = std::move(d1);
  s2.dec = std::move(d2);
  return std::make_pair(std::move(s1), std::move(s2));
}

Diagonal identity_diagonal(const SocleDecomposition& d) {
  Diagonal id;
  for (const auto& F : d.factors) id.push_back(identity_map(F.table.order()));
  return id;
}

bool iso_decomposed(const CayleyTable& G1, const SocleDecomposition& d1, const CayleyTable& G2,
                    const SocleDecomposition& d2) {
  if (G1.order() != G2.order() || d1.k != d2.k || (d1.k && d1.p != d2.p)) return false;
  // reduce to a full-rank projected cocycle by splitting off central factors
  auto sp1 = split_off_center(G1, d1), sp2 = split_off_center(G2, d2);
  int r1 = sp1 ? sp1->rank : d1.k, r2 = sp2 ? sp2->rank : d2.k;
  if (r1 != r2) return false;
  if (sp1) {
    auto c1 = check_central_radical(sp1->reduced), c2 = check_central_radical(sp2->reduced);
    if (!c1.dec || !c2.dec) throw Error("Internal", "split left the class");
    return iso_decomposed(sp1->reduced, *c1.dec, sp2->reduced, *c2.dec);
  }
  auto pr = prepare(G1, d1, G2, d2);
  if (!pr) return false;
  auto& [s1, s2] = *pr;
  ProdProjector P = prod_projector(s1.dec);
  s1.f = prod_cocycle(G1, s1.dec);
  s2.f = prod_cocycle(G2, s2.dec);
  Diagonals D2 = enumerate_diagonals(s2.dec, 1 << 21);
  fill_blocks(s2, P, D2);
  for (const auto& F : s1.dec.factors) s1.cls.push_back(F.cls);
  FpMatrix M1 = prod_projection(s1.dec, P, identity_diagonal(s1.dec), s1.f);
  return search(s1, s2, D2, M1).has_value();
}

}  // namespace

bool iso_centrad(const CayleyTable& G1, const CayleyTable& G2) {
  exec::SpanScope scope;
  auto c1 = check_central_radical(G1), c2 = check_central_radical(G2);
  if (!c1.dec && !c2.dec) throw Error("NotInClass", "neither group has a central radical of the required form");
  if (!c1.dec || !c2.dec) return false;
  return iso_decomposed(G1, *c1.dec, G2, *c2.dec);
}

CentralIsoResult aut_coset_centrad(const CayleyTable& G1, const CayleyTable& G2) {
  exec::SpanScope scope;
  auto c1 = check_central_radical(G1);
  if (!c1.dec) throw Error("HypothesisFailed", "G1 is outside the class: " + c1.reason);
  CentralIsoResult res;
  Side s1;
  s1.G = &G1;
  s1.dec = *c1.dec;
  const auto& d1 = s1.dec;
  int p = d1.p, k = d1.k, l = d1.length();
  ProdProjector P = prod_projector(d1);
  s1.f = prod_cocycle(G1, d1);
  Diagonals D = enumerate_diagonals(d1, 1 << 21);
  fill_blocks(s1, P, D);
  Diagonal id = identity_diagonal(d1);
  FpMatrix M1 = prod_projection(d1, P, id, s1.f);
  int w = P.width;
  std::vector<int> idsig(l);
  std::iota(idsig.begin(), idsig.end(), 0);
  auto add = [&](const std::optional<std::vector<Elem>>& phi, const char* what) {
    if (!phi) throw Error("Internal", std::string("lift failed: ") + what);
    res.aut_gens.push_back(*phi);
  };

  // (i) homomorphisms Q -> A, factor by factor
  auto coords = coordinate_table(G1, d1.basis);
  for (int i = 0; i < l; ++i)
    for (const auto& delta : kernel_homomorphisms(d1.factors[i].table, p, k)) {
      std::vector<Elem> phi(G1.order());
      for (Elem g = 0; g < G1.order(); ++g) {
        Elem x = d1.quot.proj.image[g];
        phi[g] = G1.mul(g, basis_element(G1, d1.basis, delta[d1.component(x, i)]));
      }
      add(is_isomorphism(G1, G1, phi) ? std::optional(phi) : std::nullopt, "kernel map");
    }

  std::uint64_t count = D.count();
  // (ii) images in the product of the symmetric groups on each class
  {
    std::uint64_t target = 1;
    for (int c : d1.class_sizes)
      for (int t = 2; t <= c; ++t) target *= std::uint64_t(t);
    PermGroup S(std::max(l, 1));
    std::vector<Perm> sg;
    for (std::uint64_t t = 0; t < count && S.order() < target; ++t) {
      auto digits = D.digits(t);
      FpMatrix M = assemble(s1, digits, p, k);
      for (const auto& be : block_code_equiv(M1, M, w, s1.cls, s1.cls)) {
        if (S.contains(be.sigma)) continue;
        add(lift(s1, s1, D.at(t), be.sigma, be.X), "block permutation");
        sg.push_back(be.sigma);
        S = PermGroup(l, sg);
      }
    }
  }
  // (iii) diagonals with sigma = id whose projected matrix keeps the row span
  {
    std::vector<int> off(l + 1, 0);
    for (int i = 0; i < l; ++i) off[i + 1] = off[i] + d1.factors[i].table.order();
    int deg = std::max(off[l], 1);
    FpMatrix span1 = row_space(M1);
    std::vector<char> ok(count, 0);
    exec::parallel_for(std::int64_t(count), [&](std::int64_t t) {
      ok[std::size_t(t)] = row_space(assemble(s1, D.digits(std::uint64_t(t)), p, k)) == span1;
    });
    PermGroup Dg(deg);
    std::vector<Perm> dg;
    for (std::uint64_t t = 0; t < count && Dg.order() < count; ++t) {
      if (!ok[t]) continue;
      auto delta = D.at(t);
      Perm pt = identity_map(deg);
      for (int i = 0; i < l; ++i)
        for (int a = 0; a < int(delta[i].size()); ++a) pt[off[i] + a] = off[i] + delta[i][a];
      if (Dg.contains(pt)) continue;
      FpMatrix M = assemble(s1, D.digits(t), p, k);
      auto X = k ? equivalence_transform(M1, M, identity_map(M1.cols)) : std::optional(FpMatrix::identity(p, 0));
      if (!X) throw Error("Internal", "equal row spans without transform");
      add(lift(s1, s1, delta, idsig, *X), "diagonal");
      dg.push_back(pt);
      Dg = PermGroup(deg, dg);
    }
  }
  // (iv) automorphisms of A fixing M1
  for (const auto& alpha : row_stabilizer_generators(M1)) add(lift(s1, s1, id, idsig, alpha), "stabilizer");
  if (res.aut_gens.empty()) res.aut_gens.push_back(identity_map(G1.order()));

  // cross isomorphism
  auto c2 = check_central_radical(G2);
  if (!c2.dec) return res;
  auto pr = prepare(G1, d1, G2, *c2.dec);
  if (!pr) return res;
  Side& s2 = pr->second;
  s2.f = prod_cocycle(G2, s2.dec);
  Diagonals D2 = enumerate_diagonals(s2.dec, 1 << 21);
  fill_blocks(s2, P, D2);
  if (auto m = search(s1, s2, D2, M1)) {
    res.iso = lift(s1, s2, D2.at(m->diagonal), m->be.sigma, m->be.X);
    if (!res.iso) throw Error("Internal", "cross isomorphism failed to lift");
  }
  return res;
}

std::string centrad_tag(const CayleyTable& G) {
  auto c = check_central_radical(G);
  if (!c.dec || c.dec->length() == 0) return "";
  return c.dec->bounded ? "CentralRadicalPerfectBounded" : "CentralRadicalSimple";
}

}  // namespace gpi
