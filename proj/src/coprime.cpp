#include "gpi/coprime.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gpi/codeq.hpp"
#include "gpi/exec.hpp"
#include "gpi/perm.hpp"

namespace gpi {

namespace {

int prime_part(long long n, int p) {
  int r = 1;
  while (n % p == 0) n /= p, r *= p;
  return r;
}

int log_p(long long x, int p) {
  int e = 0;
  while (x > 1) x /= p, ++e;
  return e;
}

CoprimeDecomposition finish(const CayleyTable& G, Subgroup N) {
  N.is_normal = true;
  CoprimeDecomposition d{N, quotient(G, N), {}};
  for (Elem r : d.quot.reps) {
    std::vector<Elem> a;
    for (Elem x : N.elems) a.push_back(G.conj(r, x));
    d.action.push_back(a);
  }
  return d;
}

}  // namespace

std::optional<CoprimeDecomposition> decompose_coprime(const CayleyTable& G) {
  int n = G.order();
  std::vector<Elem> gens;
  for (int p : prime_divisors(n)) {
    auto S = sylow_elements(G, p);
    if (int(S.size()) == prime_part(n, p) && is_abelian(G, S)) gens.insert(gens.end(), S.begin(), S.end());
  }
  Subgroup N = closure(G, gens);
  if (N.order() == 1 && n > 1) return std::nullopt;
  if (std::gcd(N.order(), n / N.order()) != 1) return std::nullopt;
  return finish(G, N);
}

std::optional<CoprimeDecomposition> decompose_coprime(const CayleyTable& G, int q) {
  int n = G.order();
  std::vector<Elem> S;
  for (Elem g = 0; g < n; ++g)
    if (element_order(G, g) % q != 0) S.push_back(g);
  if (int(S.size()) != n / prime_part(n, q)) return std::nullopt;
  if (!is_subgroup(G, S) || !is_normal(G, S) || !is_abelian(G, S)) return std::nullopt;
  return finish(G, Subgroup{S, true});
}

// ------------------------------------------------------ Ranum matrices

long long RanumMatrix::modulus(int i) const {
  long long m = 1;
  for (int t = 0; t < exps[i]; ++t) m *= p;
  return m;
}

RanumMatrix ranum_identity(int p, const std::vector<int>& exps) {
  int s = int(exps.size());
  RanumMatrix U{p, exps, IntMatrix(s, std::vector<long long>(s, 0))};
  for (int i = 0; i < s; ++i) U.u[i][i] = 1 % U.modulus(i);
  return U;
}

bool ranum_valid(const RanumMatrix& U) {
  int s = int(U.exps.size());
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      long long v = U.u[i][j];
      if (v < 0 || v >= U.modulus(i)) return false;
      int need = U.exps[i] - std::min(U.exps[i], U.exps[j]);
      for (int t = 0; t < need; ++t) {
        if (v % U.p) return false;
        v /= U.p;
      }
    }
  for (const auto& B : psi_p_blocks(U))
    if (rank(B) != B.rows) return false;
  return true;
}

RanumMatrix ranum_matrix(const CayleyTable& A, const AbelianBasis& b, const std::vector<Elem>& alpha) {
  int p = 0, s = int(b.gens.size());
  std::vector<int> exps;
  for (int o : b.orders) {
    int q = 0;
    if (!is_prime_power(o, &q)) throw Error("ConstraintViolated", "basis orders are not prime powers");
    if (p && q != p) throw Error("ConstraintViolated", "group is not a p-group");
    p = q;
    exps.push_back(log_p(o, p));
  }
  RanumMatrix U{p ? p : 2, exps, IntMatrix(s, std::vector<long long>(s, 0))};
  for (int j = 0; j < s; ++j) {
    auto c = basis_coordinates(A, b, alpha[b.gens[j]]);
    for (int i = 0; i < s; ++i) U.u[i][j] = c[i];
  }
  if (!ranum_valid(U)) throw Error("ConstraintViolated", "matrix is not in R(A)");
  return U;
}

std::vector<int> ranum_apply(const RanumMatrix& U, const std::vector<int>& x) {
  int s = int(U.exps.size());
  std::vector<int> y(s, 0);
  for (int i = 0; i < s; ++i) {
    long long acc = 0;
    for (int j = 0; j < s; ++j) acc += U.u[i][j] * x[j];
    y[i] = int(mod_norm(acc, U.modulus(i)));
  }
  return y;
}

Elem ranum_apply(const CayleyTable& A, const AbelianBasis& b, const RanumMatrix& U, Elem x) {
  return basis_element(A, b, ranum_apply(U, basis_coordinates(A, b, x)));
}

RanumMatrix ranum_mul(const RanumMatrix& U, const RanumMatrix& V) {
  if (U.p != V.p || U.exps != V.exps) throw Error("ConstraintViolated", "shape mismatch");
  int s = int(U.exps.size());
  RanumMatrix W{U.p, U.exps, IntMatrix(s, std::vector<long long>(s, 0))};
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      long long acc = 0;
      for (int k = 0; k < s; ++k) acc = (acc + U.u[i][k] * V.u[k][j]) % U.modulus(i);
      W.u[i][j] = acc;
    }
  return W;
}

std::vector<RanumMatrix> all_ranum_matrices(int p, const std::vector<int>& exps) {
  int s = int(exps.size());
  RanumMatrix U = ranum_identity(p, exps);
  // entry (i,j) ranges over multiples of p^{need} below p^{e_i}
  std::vector<std::pair<long long, long long>> step;  // (stride, count)
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      long long stride = 1;
      for (int t = 0; t < exps[i] - std::min(exps[i], exps[j]); ++t) stride *= p;
      step.push_back({stride, U.modulus(i) / stride});
    }
  std::vector<RanumMatrix> out;
  std::vector<long long> ctr(step.size(), 0);
  while (true) {
    for (std::size_t t = 0; t < step.size(); ++t) U.u[t / s][t % s] = ctr[t] * step[t].first;
    if (ranum_valid(U)) out.push_back(U);
    std::size_t t = 0;
    while (t < step.size() && ++ctr[t] == step[t].second) ctr[t++] = 0;
    if (t == step.size()) break;
  }
  return out;
}

std::vector<FpMatrix> psi_p_blocks(const RanumMatrix& U) {
  std::vector<FpMatrix> out;
  int s = int(U.exps.size());
  for (int i = 0; i < s;) {
    int j = i;
    while (j < s && U.exps[j] == U.exps[i]) ++j;
    FpMatrix B(U.p, j - i, j - i);
    for (int x = i; x < j; ++x)
      for (int y = i; y < j; ++y) B(x - i, y - i) = int(mod_norm(U.u[x][y], U.p));
    out.push_back(B);
    i = j;
  }
  return out;
}

FpMatrix psi_p(const RanumMatrix& U) {
  int s = int(U.exps.size());
  FpMatrix M(U.p, s, s);
  int off = 0;
  for (const auto& B : psi_p_blocks(U)) {
    for (int i = 0; i < B.rows; ++i)
      for (int j = 0; j < B.cols; ++j) M(off + i, off + j) = B(i, j);
    off += B.rows;
  }
  return M;
}

// ------------------------------------------------------ structure of G

namespace {

struct Part {
  int p = 0;
  Subgroup A;
  AbelianBasis basis;
  std::vector<int> exps;
  std::vector<RanumMatrix> act;  // conjugation by each complement generator
};

// One F_p-module per (prime, exponent block) after Psi_p.
struct Module {
  int p = 0, e = 0;
  MatRep rep;
};

struct Structure {
  const CayleyTable* G = nullptr;
  Subgroup N;
  int q = 0, l = 0;
  Subgroup H;  // complement
  AbelianBasis hbasis;
  std::vector<Part> parts;
  std::vector<Module> modules;
  bool all_elementary = true;
};

// A Sylow q-subgroup, grown one normalizing q-element at a time.
Subgroup sylow_subgroup(const CayleyTable& G, int q) {
  int target = prime_part(G.order(), q);
  auto qel = sylow_elements(G, q);
  Subgroup P{{0}, false};
  while (P.order() < target) {
    bool grown = false;
    for (Elem x : qel) {
      if (P.contains(x)) continue;
      bool normalizes = true;
      for (Elem y : P.elems)
        if (!P.contains(G.conj(x, y))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      auto C = closure(G, [&] {
        auto g = P.elems;
        g.push_back(x);
        return g;
      }());
      if (prime_part(C.order(), q) == C.order()) {
        P = C;
        grown = true;
        break;
      }
    }
    if (!grown) throw Error("Internal", "Sylow subgroup construction stalled");
  }
  return P;
}

// nullopt with a reason when G is outside H(A, E).
std::optional<Structure> analyze(const CayleyTable& G, std::string* why) {
  auto dec = decompose_coprime(G);
  if (!dec) {
    *why = "no abelian normal Hall subgroup with coprime quotient";
    return std::nullopt;
  }
  Structure S;
  S.G = &G;
  S.N = dec->N;
  int hn = dec->quot.table.order();
  if (hn > 1) {
    int q = 0;
    if (!is_prime_power(hn, &q)) {
      *why = "quotient is not a q-group";
      return std::nullopt;
    }
    const auto& Q = dec->quot.table;
    if (!is_abelian(Q)) {
      *why = "quotient is not abelian";
      return std::nullopt;
    }
    for (Elem x = 0; x < hn; ++x)
      if (element_order(Q, x) > q) {
        *why = "quotient is not elementary abelian";
        return std::nullopt;
      }
    S.q = q;
    S.l = log_p(hn, q);
    S.H = sylow_subgroup(G, q);
    S.hbasis = abelian_basis(G, S.H);
  } else {
    S.H = Subgroup{{0}, true};
  }
  for (int p : prime_divisors(S.N.order())) {
    Part P;
    P.p = p;
    for (Elem x : S.N.elems)
      if (prime_part(element_order(G, x), p) == element_order(G, x)) P.A.elems.push_back(x);
    P.A.is_normal = true;
    P.basis = abelian_basis(G, P.A);
    for (int o : P.basis.orders) {
      P.exps.push_back(log_p(o, p));
      if (o != p) S.all_elementary = false;
    }
    for (Elem h : S.hbasis.gens) {
      RanumMatrix U{p, P.exps, IntMatrix(P.exps.size(), std::vector<long long>(P.exps.size(), 0))};
      for (std::size_t j = 0; j < P.basis.gens.size(); ++j) {
        auto c = basis_coordinates(G, P.basis, G.conj(h, P.basis.gens[j]));
        for (std::size_t i = 0; i < c.size(); ++i) U.u[i][j] = c[i];
      }
      P.act.push_back(U);
    }
    // split into exponent blocks
    std::vector<std::vector<FpMatrix>> blocks;  // [generator][block]
    for (const auto& U : P.act) blocks.push_back(psi_p_blocks(U));
    std::vector<int> distinct;
    for (int e : P.exps)
      if (distinct.empty() || distinct.back() != e) distinct.push_back(e);
    for (std::size_t b = 0; b < distinct.size(); ++b) {
      int dim = int(std::count(P.exps.begin(), P.exps.end(), distinct[b]));
      Module M{p, distinct[b], MatRep{S.q ? S.q : 2, S.l, p, dim, {}}};
      for (int i = 0; i < S.l; ++i) M.rep.gens.push_back(blocks[i][b]);
      S.modules.push_back(M);
    }
    S.parts.push_back(P);
  }
  return S;
}

// ------------------------------------------------------ module intertwiner

// Elements of an abelian group indexed by mixed-radix basis coordinates.
struct Indexed {
  std::vector<int> orders;
  std::vector<Elem> elem;  // index -> group element
  std::vector<int> ord;    // element order per index
  std::vector<std::vector<int>> act;  // act[i][x]
  std::vector<std::vector<int>> coords;

  int index(const std::vector<int>& c) const {
    int x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + c[i];
    return x;
  }
  int add(int a, int b) const {
    std::vector<int> c(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) c[i] = (coords[a][i] + coords[b][i]) % orders[i];
    return index(c);
  }
};

Indexed index_part(const CayleyTable& G, const Part& P, const std::vector<Elem>& acting) {
  Indexed I;
  I.orders = P.basis.orders;
  int n = P.A.order();
  I.elem.assign(n, 0);
  I.ord.assign(n, 1);
  I.coords.assign(n, {});
  std::vector<int> pos(G.order(), -1);
  for (Elem x : P.A.elems) {
    auto c = basis_coordinates(G, P.basis, x);
    int i = I.index(c);
    I.elem[i] = x;
    I.coords[i] = c;
    I.ord[i] = element_order(G, x);
    pos[x] = i;
  }
  for (Elem h : acting) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = pos[G.conj(h, I.elem[i])];
    I.act.push_back(a);
  }
  return I;
}

// beta with beta(act1[i] x) = act2[i] beta(x), found by extending images of
// module generators one at a time.
std::optional<std::vector<int>> find_intertwiner(const Indexed& A1, const Indexed& A2) {
  int n = int(A1.elem.size());
  auto grow = [&](const std::vector<int>& gens, const std::vector<int>& imgs,
                  std::vector<int>& beta) -> bool {
    beta.assign(n, -1);
    std::vector<int> inv(n, -1);
    std::vector<std::pair<int, int>> queue{{0, 0}};
    beta[0] = 0;
    inv[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      auto [x, y] = queue[h];
      auto visit = [&](int x2, int y2) {
        if (beta[x2] >= 0) return beta[x2] == y2;
        if (inv[y2] >= 0) return false;
        beta[x2] = y2;
        inv[y2] = x2;
        queue.push_back({x2, y2});
        return true;
      };
      for (std::size_t t = 0; t < gens.size(); ++t)
        if (!visit(A1.add(x, gens[t]), A2.add(y, imgs[t]))) return false;
      for (std::size_t i = 0; i < A1.act.size(); ++i)
        if (!visit(A1.act[i][x], A2.act[i][y])) return false;
    }
    return true;
  };
  // module generators, larger orders first
  std::vector<int> order_idx(n);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::stable_sort(order_idx.begin(), order_idx.end(), [&](int a, int b) { return A1.ord[a] > A1.ord[b]; });
  std::vector<int> gens, beta;
  std::vector<char> reached(n, 0);
  reached[0] = 1;
  for (int x : order_idx) {
    if (reached[x]) continue;
    gens.push_back(x);
    grow(gens, gens, beta);  // identity images give the span of gens
    for (int i = 0; i < n; ++i) reached[i] = beta[i] >= 0;
  }
  std::vector<int> imgs;
  std::function<bool()> dfs = [&]() -> bool {
    if (imgs.size() == gens.size()) return true;
    int g = gens[imgs.size()];
    for (int c = 0; c < n; ++c) {
      if (A2.ord[c] != A1.ord[g]) continue;
      exec::tick();
      imgs.push_back(c);
      std::vector<int> b;
      if (grow(std::vector<int>(gens.begin(), gens.begin() + imgs.size()), imgs, b) && dfs()) return true;
      imgs.pop_back();
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  grow(gens, imgs, beta);
  return beta;
}

// ------------------------------------------------------ the isomorphism test

using Tuples = std::vector<IndexingTuple>;

// Columns of all modules side by side, grouped by multiplicity.
FpMatrix label_matrix(int q, int l, const std::vector<const IndexingTuple*>& ts) {
  std::vector<std::vector<int>> cols;
  for (const auto* t : ts)
    for (const auto& [w, vs] : *t)
      for (const auto& v : vs) cols.push_back(v);
  FpMatrix M(q, l, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < l; ++i) M(i, int(j)) = cols[j][i];
  return M;
}

std::vector<std::vector<int>> column_blocks(const std::vector<const IndexingTuple*>& ts) {
  std::vector<std::vector<int>> blocks;
  int c = 0;
  for (const auto* t : ts)
    for (const auto& [w, vs] : *t) {
      std::vector<int> b;
      for (std::size_t i = 0; i < vs.size(); ++i) b.push_back(c++);
      blocks.push_back(b);
    }
  return blocks;
}

std::map<int, std::size_t> block_profile(const IndexingTuple& t) {
  std::map<int, std::size_t> m;
  for (const auto& [w, vs] : t) m[w] = vs.size();
  return m;
}

CoprimeVerdict iso_structures(const Structure& s1, const Structure& s2) {
  exec::SpanScope scope;
  CoprimeVerdict out;
  const CayleyTable& G1 = *s1.G;
  const CayleyTable& G2 = *s2.G;
  if (G1.order() != G2.order() || s1.l != s2.l || s1.q != s2.q || s1.N.order() != s2.N.order()) return out;
  if (s1.parts.size() != s2.parts.size()) return out;
  for (std::size_t k = 0; k < s1.parts.size(); ++k)
    if (s1.parts[k].p != s2.parts[k].p || s1.parts[k].basis.orders != s2.parts[k].basis.orders) return out;

  int l = s1.l, q = s1.q;
  IntMatrix psi(l, std::vector<long long>(l, 0));
  if (l > 0) {
    std::size_t nm = s1.modules.size();
    std::vector<IndexingTuple> t1(nm);
    std::vector<Tuples> t2(nm);
    std::vector<std::int64_t> radix(nm);
    std::int64_t total = 1;
    for (std::size_t i = 0; i < nm; ++i) {
      t1[i] = indexing_tuples(s1.modules[i].rep)[0];
      t2[i] = indexing_tuples(s2.modules[i].rep);
      if (block_profile(t1[i]) != block_profile(t2[i][0])) return out;
      radix[i] = std::int64_t(t2[i].size());
      total *= radix[i];
    }
    std::vector<const IndexingTuple*> xs;
    for (const auto& t : t1) xs.push_back(&t);
    FpMatrix X = label_matrix(q, l, xs);
    auto blocks = column_blocks(xs);
    std::vector<Perm> sgens;
    for (const auto& b : blocks)
      for (const auto& g : symmetric_generators(b, X.cols)) sgens.push_back(g);
    PermGroup S(X.cols, sgens);
    auto pick = [&](std::int64_t idx) {
      std::vector<const IndexingTuple*> ys(nm);
      for (std::size_t i = nm; i-- > 0;) {
        ys[i] = &t2[i][std::size_t(idx % radix[i])];
        idx /= radix[i];
      }
      return label_matrix(q, l, ys);
    };
    auto found = exec::parallel_find_first(total, [&](std::int64_t idx) {
      return !generalized_code_equivalence(pick(idx), X, S).empty();
    }, 1);
    out.instances = found ? *found + 1 : total;
    if (!found) return out;
    FpMatrix Y = pick(*found);
    auto sigma = *generalized_code_equivalence(Y, X, S).rep;
    auto T = equivalence_transform(Y, X, sigma);
    if (!T) throw Error("Internal", "label transform missing");
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) psi[i][j] = (*T)(j, i);
  }
  out.iso = true;

  // alpha on the complement basis: h1_i -> prod h2_j^{psi[j][i]}
  std::vector<Elem> alpha_gen(l);
  for (int i = 0; i < l; ++i) {
    std::vector<int> c(l);
    for (int j = 0; j < l; ++j) c[j] = int(psi[j][i]);
    alpha_gen[i] = basis_element(G2, s2.hbasis, c);
  }
  // beta per prime
  std::vector<std::vector<Elem>> beta_parts;
  for (std::size_t k = 0; k < s1.parts.size(); ++k) {
    auto A1 = index_part(G1, s1.parts[k], s1.hbasis.gens);
    auto A2 = index_part(G2, s2.parts[k], alpha_gen);
    auto b = find_intertwiner(A1, A2);
    if (!b) throw Error("Internal", "no intertwiner for matching labels");
    std::vector<Elem> m(G1.order(), -1);
    for (std::size_t x = 0; x < b->size(); ++x) m[A1.elem[x]] = A2.elem[(*b)[x]];
    beta_parts.push_back(m);
  }
  // g = n h -> beta(n) alpha(h)
  std::vector<Elem> hmap(G1.order(), -1);
  for (Elem h : s1.H.elems) {
    auto c = basis_coordinates(G1, s1.hbasis, h);
    Elem img = 0;
    for (int i = 0; i < l; ++i) img = G2.mul(img, G2.pow(alpha_gen[i], c[i]));
    hmap[h] = img;
  }
  // N is the direct product of its Sylow parts
  std::vector<Elem> nmap(G1.order(), -1);
  {
    std::vector<std::vector<Elem>> lists;
    for (const auto& P : s1.parts) lists.push_back(P.A.elems);
    std::vector<std::size_t> ctr(lists.size(), 0);
    while (true) {
      Elem x = 0, y = 0;
      for (std::size_t k = 0; k < lists.size(); ++k) {
        Elem a = lists[k][ctr[k]];
        x = G1.mul(x, a);
        y = G2.mul(y, beta_parts[k][a]);
      }
      nmap[x] = y;
      std::size_t k = 0;
      while (k < lists.size() && ++ctr[k] == lists[k].size()) ctr[k++] = 0;
      if (k == lists.size()) break;
    }
  }
  std::vector<Elem> phi(G1.order(), -1);
  for (Elem n : s1.N.elems)
    for (Elem h : s1.H.elems) phi[G1.mul(n, h)] = G2.mul(nmap[n], hmap[h]);
  if (!is_isomorphism(G1, G2, phi)) throw Error("Internal", "assembled coprime isomorphism fails");
  out.witness = phi;
  return out;
}

Structure require(const CayleyTable& G, const char* which) {
  std::string why;
  auto s = analyze(G, &why);
  if (!s) throw Error("NotInClass", std::string(which) + ": " + why);
  return *s;
}

}  // namespace

CoprimeClasses classify_coprime(const CayleyTable& G) {
  CoprimeClasses c;
  std::string why;
  auto s = analyze(G, &why);
  if (!s) return c;
  c.hae = true;
  c.hprode = s->all_elementary;
  if (c.hprode) {
    auto primes = prime_divisors(s->N.order());
    c.hee = primes.size() <= 1 || (s->l == 0 && primes.size() == 2);
  }
  return c;
}

CoprimeVerdict iso_HEE(const CayleyTable& G1, const CayleyTable& G2) {
  if (!classify_coprime(G1).hee || !classify_coprime(G2).hee)
    throw Error("NotInClass", "iso_HEE needs N and H elementary abelian");
  return iso_structures(require(G1, "first group"), require(G2, "second group"));
}

CoprimeVerdict iso_HprodE(const CayleyTable& G1, const CayleyTable& G2) {
  if (!classify_coprime(G1).hprode || !classify_coprime(G2).hprode)
    throw Error("NotInClass", "iso_HprodE needs N a product of elementary abelian groups");
  return iso_structures(require(G1, "first group"), require(G2, "second group"));
}

CoprimeVerdict iso_HAE(const CayleyTable& G1, const CayleyTable& G2) {
  auto s1 = require(G1, "first group");
  auto s2 = require(G2, "second group");
  return iso_structures(s1, s2);
}

}  // namespace gpi
