#include "gpi/cohom.hpp"

#include <algorithm>
#include <map>

#include "gpi/codeq.hpp"
#include "gpi/exec.hpp"

namespace gpi {

namespace {

int prime_of(int modulus, int* e) {
  int p = 0;
  if (!is_prime_power(modulus, &p, e)) throw Error("ModuliMismatch", "modulus is not a prime power");
  return p;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::pair<std::vector<int>, Elem> ExtensionData::split(const CayleyTable& G, Elem g) const {
  Elem x = quot.proj.image[g];
  Elem a = G.mul(g, G.inv(quot.reps[x]));
  return {basis_coordinates(G, basis, a), x};
}

ExtensionData extension_data(const CayleyTable& G, const Subgroup& A) {
  for (Elem a : A.elems)
    for (Elem g = 0; g < G.order(); ++g)
      if (G.mul(a, g) != G.mul(g, a)) throw Error("NotCentral", "subgroup is not central");
  ExtensionData e;
  e.A = A;
  e.A.is_normal = true;
  e.basis = abelian_basis(G, A);
  e.quot = quotient(G, e.A);
  int qn = e.quot.table.order();
  auto coords = coordinate_table(G, e.basis);
  e.f.moduli = e.basis.orders;
  e.f.qn = qn;
  e.f.rows.assign(e.basis.gens.size(), std::vector<int>(std::size_t(qn) * qn, 0));
  for (int x = 0; x < qn; ++x)
    for (int y = 0; y < qn; ++y) {
      Elem sx = e.quot.reps[x], sy = e.quot.reps[y];
      Elem sxy = e.quot.reps[e.quot.table.mul(x, y)];
      Elem a = G.mul(G.mul(sx, sy), G.inv(sxy));
      const auto& c = coords[a];
      for (std::size_t i = 0; i < c.size(); ++i) e.f.rows[i][std::size_t(x) * qn + y] = c[i];
    }
  return e;
}

CocycleMatrix pull_back(const CocycleMatrix& f, const std::vector<Elem>& beta) {
  CocycleMatrix g = f;
  int qn = f.qn;
  for (std::size_t i = 0; i < f.rows.size(); ++i)
    for (int x = 0; x < qn; ++x)
      for (int y = 0; y < qn; ++y) g.rows[i][std::size_t(x) * qn + y] = f.at(int(i), beta[x], beta[y]);
  return g;
}

std::vector<std::vector<int>> coboundary_basis(const CayleyTable& Q, int modulus) {
  int n = Q.order();
  std::vector<std::vector<int>> out;
  for (int q = 0; q < n; ++q) {
    std::vector<int> row(std::size_t(n) * n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int v = (x == q) + (y == q) - (Q.mul(x, y) == q);
        row[std::size_t(x) * n + y] = int(mod_norm(v, modulus));
      }
    out.push_back(row);
  }
  return out;
}

std::vector<Elem> generating_set(const CayleyTable& Q) {
  int n = Q.order();
  std::vector<Elem> byorder(n);
  for (int i = 0; i < n; ++i) byorder[i] = i;
  auto ord = element_orders(Q);
  std::stable_sort(byorder.begin(), byorder.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  int have = 1;
  for (Elem g : byorder) {
    if (have == n) break;
    if (in[g]) continue;
    gens.push_back(g);
    auto C = closure(Q, gens);
    std::fill(in.begin(), in.end(), 0);
    for (Elem x : C.elems) in[x] = 1;
    have = C.order();
  }
  return gens;
}

int cocycle_space_dim(const CayleyTable& Q, int p, bool all_triples) {
  int n = Q.order();
  if (n <= 1) return 0;
  int m = (n - 1) * (n - 1);
  auto var = [&](int x, int y) { return (x - 1) * (n - 1) + (y - 1); };
  std::vector<Elem> mids;
  if (all_triples) {
    for (int b = 1; b < n; ++b) mids.push_back(b);
  } else {
    mids = generating_set(Q);
  }
  StreamEchelon E(p, m);
  std::vector<int> eq(m, 0);
  for (int a = 1; a < n; ++a)
    for (Elem b : mids)
      for (int c = 1; c < n; ++c) {
        exec::tick();
        // f(a,b) + f(ab,c) - f(b,c) - f(a,bc)
        std::fill(eq.begin(), eq.end(), 0);
        auto add = [&](int x, int y, int s) {
          if (x && y) eq[var(x, y)] = int(mod_norm(eq[var(x, y)] + s, p));
        };
        add(a, b, 1);
        add(Q.mul(a, b), c, 1);
        add(b, c, -1);
        add(a, Q.mul(b, c), -1);
        E.insert(eq);
      }
  return m - E.rank();
}

// The full coboundary space has one extra direction, the coboundary of the
// delta function at the identity, which is nonzero at (1,1).
int coboundary_rank(const CayleyTable& Q, int p) { return invariant_projection(Q, p).echelon.rows - 1; }

// ------------------------------------------------------ class comparison

namespace {

using Rows = std::vector<std::vector<long long>>;

// <R^(p,mu), B^2(Q, Z/p^mu)> as a Howell form.
Rows class_span(const CayleyTable& Q, const CocycleMatrix& f, int p, int mu) {
  long long N = 1;
  for (int i = 0; i < mu; ++i) N *= p;
  Rows rows;
  for (int i = 0; i < f.k(); ++i) {
    int ei = 0;
    if (prime_of(f.moduli[i], &ei) != p) continue;
    std::vector<long long> r(f.rows[i].begin(), f.rows[i].end());
    if (ei < mu) {
      long long s = 1;
      for (int t = ei; t < mu; ++t) s *= p;
      for (auto& x : r) x *= s;
    }
    for (auto& x : r) x = mod_norm(x, N);
    rows.push_back(r);
  }
  for (const auto& b : coboundary_basis(Q, int(N))) rows.emplace_back(b.begin(), b.end());
  return howell_form(rows, f.qn * f.qn, p, mu);
}

std::vector<std::pair<int, int>> factor_types(const std::vector<int>& moduli) {
  std::vector<std::pair<int, int>> t;
  for (int m : moduli) {
    int e = 0;
    int p = prime_of(m, &e);
    if (std::find(t.begin(), t.end(), std::make_pair(p, e)) == t.end()) t.push_back({p, e});
  }
  return t;
}

// Precomputed spans of f1; tests f2^beta for many beta cheaply. B^2 is
// stable under Aut(Q), so the size of f2's span does not depend on beta.
class ClassMatcher {
 public:
  ClassMatcher(const CayleyTable& Q, const CocycleMatrix& f1, const CocycleMatrix& f2) {
    if (sorted(f1.moduli) != sorted(f2.moduli)) throw Error("ModuliMismatch", "different coefficient groups");
    for (auto [p, mu] : factor_types(f1.moduli)) {
      Rows h1 = class_span(Q, f1, p, mu);
      Rows h2 = class_span(Q, f2, p, mu);
      types_.push_back({p, mu});
      spans_.push_back(h1);
      sizes_match_ = sizes_match_ && howell_log_size(h1, p, mu) == howell_log_size(h2, p, mu);
    }
  }

  bool matches(const CocycleMatrix& g) const {
    if (!sizes_match_) return false;
    for (std::size_t t = 0; t < types_.size(); ++t) {
      auto [p, mu] = types_[t];
      long long N = 1;
      for (int i = 0; i < mu; ++i) N *= p;
      for (int i = 0; i < g.k(); ++i) {
        int ei = 0;
        if (prime_of(g.moduli[i], &ei) != p) continue;
        std::vector<long long> r(g.rows[i].begin(), g.rows[i].end());
        if (ei < mu) {
          long long s = 1;
          for (int u = ei; u < mu; ++u) s *= p;
          for (auto& x : r) x *= s;
        }
        if (!howell_contains(spans_[t], r, p, mu)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::pair<int, int>> types_;
  std::vector<Rows> spans_;
  bool sizes_match_ = true;
};

}  // namespace

bool class_equal_up_to_autA(const CayleyTable& Q, const CocycleMatrix& f1, const CocycleMatrix& f2) {
  if (sorted(f1.moduli) != sorted(f2.moduli)) throw Error("ModuliMismatch", "different coefficient groups");
  for (auto [p, mu] : factor_types(f1.moduli))
    if (class_span(Q, f1, p, mu) != class_span(Q, f2, p, mu)) return false;
  return true;
}

// ------------------------------------------------------ projection

Projection invariant_projection(const CayleyTable& Q, int p) {
  Projection P;
  P.p = p;
  P.qn = Q.order();
  int w = P.qn * P.qn;
  auto rows = coboundary_basis(Q, p);
  Rref R = rref(FpMatrix::from_rows(p, rows, w));
  P.echelon = FpMatrix(p, R.rank, w);
  for (int i = 0; i < R.rank; ++i)
    for (int j = 0; j < w; ++j) P.echelon(i, j) = R.R(i, j);
  P.pivots = std::vector<int>(R.pivots.begin(), R.pivots.begin() + R.rank);
  std::vector<char> piv(w, 0);
  for (int c : P.pivots) piv[c] = 1;
  for (int j = 0; j < w; ++j)
    if (!piv[j]) P.free_cols.push_back(j);
  return P;
}

std::vector<int> Projection::reduce(std::vector<int> row) const {
  int w = qn * qn;
  for (auto& x : row) x = int(mod_norm(x, p));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    int c = row[pivots[i]];
    if (!c) continue;
    for (int j = pivots[i]; j < w; ++j) {
      int v = echelon(int(i), j);
      if (v) row[j] = int(mod_norm(row[j] - 1LL * c * v, p));
    }
  }
  return row;
}

std::vector<int> Projection::coords(const std::vector<int>& row) const {
  auto r = reduce(row);
  std::vector<int> out;
  out.reserve(free_cols.size());
  for (int c : free_cols) out.push_back(r[c]);
  return out;
}

FpMatrix Projection::matrix(const CocycleMatrix& f) const {
  std::vector<std::vector<int>> rows;
  for (const auto& r : f.rows) rows.push_back(coords(r));
  return FpMatrix::from_rows(p, rows, int(free_cols.size()));
}

// ------------------------------------------------------ Aut(Q)

namespace {

// Extends gens[i] -> imgs[i] to the subgroup the assigned generators span;
// false on a conflict or a collision.
bool extend_hom(const CayleyTable& Q1, const CayleyTable& Q2, const std::vector<Elem>& gens,
                const std::vector<Elem>& imgs, std::vector<Elem>& phi) {
  int n = Q1.order();
  phi.assign(n, -1);
  std::vector<char> hit(Q2.order(), 0);
  phi[0] = 0;
  hit[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Elem x = queue[h];
    for (std::size_t t = 0; t < imgs.size(); ++t) {
      Elem y = Q1.mul(x, gens[t]);
      Elem v = Q2.mul(phi[x], imgs[t]);
      if (phi[y] >= 0) {
        if (phi[y] != v) return false;
        continue;
      }
      if (hit[v]) return false;
      phi[y] = v;
      hit[v] = 1;
      queue.push_back(y);
    }
  }
  return true;
}

// First isomorphism Q1 -> Q2 with gens[0..fixed) sent to imgs and the rest
// chosen among same-order elements.
std::optional<std::vector<Elem>> search_iso(const CayleyTable& Q1, const CayleyTable& Q2,
                                            const std::vector<Elem>& gens, std::vector<Elem> imgs,
                                            const std::vector<int>& ord1, const std::vector<int>& ord2) {
  std::vector<Elem> phi;
  if (!extend_hom(Q1, Q2, gens, imgs, phi)) return std::nullopt;
  if (imgs.size() == gens.size()) {
    if (std::count(phi.begin(), phi.end(), -1) == 0 && Q1.order() == Q2.order()) return phi;
    return std::nullopt;
  }
  Elem g = gens[imgs.size()];
  for (Elem c = 0; c < Q2.order(); ++c) {
    if (ord2[c] != ord1[g]) continue;
    exec::tick();
    imgs.push_back(c);
    if (auto r = search_iso(Q1, Q2, gens, imgs, ord1, ord2)) return r;
    imgs.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Elem>> find_isomorphism(const CayleyTable& Q1, const CayleyTable& Q2) {
  if (Q1.order() != Q2.order()) return std::nullopt;
  auto o1 = element_orders(Q1), o2 = element_orders(Q2);
  if (sorted(o1) != sorted(o2)) return std::nullopt;
  return search_iso(Q1, Q2, generating_set(Q1), {}, o1, o2);
}

PermGroup aut_group(const CayleyTable& Q) {
  int n = Q.order();
  auto gens = generating_set(Q);
  auto ord = element_orders(Q);
  std::vector<Perm> found;
  int r = int(gens.size());
  for (int i = r - 1; i >= 0; --i) {
    std::vector<Elem> prefix(gens.begin(), gens.begin() + i);
    std::vector<char> seen(n, 0);
    auto mark = [&] {
      std::fill(seen.begin(), seen.end(), 0);
      for (const auto& o : orbits_of(found, n))
        if (std::find(o.begin(), o.end(), gens[i]) != o.end())
          for (int x : o) seen[x] = 1;
      seen[gens[i]] = 1;
    };
    mark();
    for (Elem c = 0; c < n; ++c) {
      if (seen[c] || ord[c] != ord[gens[i]]) continue;
      auto img = prefix;
      img.push_back(c);
      if (auto phi = search_iso(Q, Q, gens, img, ord, ord)) {
        found.push_back(*phi);
        mark();
      }
    }
  }
  return PermGroup(n, found, gens);
}

std::vector<std::vector<Elem>> enumerate_aut(const CayleyTable& Q, std::size_t guard) {
  PermGroup A = aut_group(Q);
  if (A.order() > double(guard)) throw Error("TooLarge", "automorphism group exceeds the guard");
  return A.elements(guard);
}

// ------------------------------------------------------ isomorphism

namespace {

Subgroup characteristic(const CayleyTable& G, const CharSubgroup& charfun) {
  Subgroup A = charfun ? charfun(G) : center(G);
  for (Elem a : A.elems)
    for (Elem g = 0; g < G.order(); ++g)
      if (G.mul(a, g) != G.mul(g, a)) throw Error("HypothesisFailed", "characteristic subgroup is not central");
  return A;
}

// f as F_p rows (A elementary).
FpMatrix as_matrix(const CocycleMatrix& f, int p) {
  return FpMatrix::from_rows(p, f.rows, f.qn * f.qn);
}

}  // namespace

bool iso_central_generic(const CayleyTable& G1, const CayleyTable& G2, const CharSubgroup& charfun) {
  exec::SpanScope scope;
  if (G1.order() != G2.order()) return false;
  Subgroup A1 = characteristic(G1, charfun), A2 = characteristic(G2, charfun);
  if (A1.order() != A2.order()) return false;
  auto e1 = extension_data(G1, A1), e2 = extension_data(G2, A2);
  if (e1.basis.orders != e2.basis.orders) return false;
  auto gamma = find_isomorphism(e1.quot.table, e2.quot.table);
  if (!gamma) return false;
  const CayleyTable& Q = e1.quot.table;
  CocycleMatrix f2 = pull_back(e2.f, *gamma);
  ClassMatcher match(Q, e1.f, f2);
  auto auts = enumerate_aut(Q);
  auto hit = exec::parallel_find_first(std::int64_t(auts.size()), [&](std::int64_t i) {
    return match.matches(pull_back(f2, auts[std::size_t(i)]));
  });
  return hit.has_value();
}

std::optional<std::vector<Elem>> lift_pair(const CayleyTable& G1, const ExtensionData& e1, const CayleyTable& G2,
                                           const ExtensionData& e2, const FpMatrix& alpha,
                                           const std::vector<Elem>& beta) {
  int p = alpha.p, k = alpha.rows, qn = e1.f.qn;
  auto ainv = inverse(alpha);
  if (!ainv) return std::nullopt;
  FpMatrix D = mat_add(as_matrix(e1.f, p), mat_scale(mat_mul(alpha, as_matrix(pull_back(e2.f, beta), p)), p - 1));
  FpMatrix Cob = FpMatrix::from_rows(p, coboundary_basis(e1.quot.table, p), qn * qn);
  auto U = solve_left(Cob, D);  // U·Cob = D, row i gives u'_i
  if (!U) return std::nullopt;
  std::vector<Elem> phi(G1.order());
  for (Elem g = 0; g < G1.order(); ++g) {
    auto [a, x] = e1.split(G1, g);
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = int(mod_norm(a[i] + (*U)(i, x), p));
    auto w = mat_vec(*ainv, v);
    phi[g] = G2.mul(basis_element(G2, e2.basis, w), e2.quot.reps[beta[x]]);
  }
  if (!is_isomorphism(G1, G2, phi)) return std::nullopt;
  return phi;
}

std::vector<std::vector<std::vector<int>>> kernel_homomorphisms(const CayleyTable& Q, int p, int k) {
  int n = Q.order();
  FpMatrix M(p, n * n + 1, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r = x * n + y;
      M(r, Q.mul(x, y)) = int(mod_norm(M(r, Q.mul(x, y)) + 1, p));
      M(r, x) = int(mod_norm(M(r, x) - 1, p));
      M(r, y) = int(mod_norm(M(r, y) - 1, p));
    }
  M(n * n, 0) = 1;
  FpMatrix H = right_nullspace(M);
  std::vector<std::vector<std::vector<int>>> out;
  for (int b = 0; b < H.rows; ++b)
    for (int i = 0; i < k; ++i) {
      std::vector<std::vector<int>> delta(n, std::vector<int>(k, 0));
      for (int x = 0; x < n; ++x) delta[x][i] = H(b, x);
      out.push_back(delta);
    }
  return out;
}

std::vector<FpMatrix> row_stabilizer_generators(const FpMatrix& M) {
  int p = M.p, k = M.rows;
  std::vector<FpMatrix> out;
  if (k == 0) return out;
  // In a basis where M = [M'; 0] the stabilizer is [[I, X], [0, Y]] with Y
  // invertible; P0·M = [M'; 0].
  int r = rank(M);
  FpMatrix P0 = rref_transform(rref(M), k);
  FpMatrix P0inv = *inverse(P0);
  std::vector<FpMatrix> stab;
  auto unit = [&](int i, int j) {
    FpMatrix E = FpMatrix::identity(p, k);
    E(i, j) = int(mod_norm(E(i, j) + 1, p));
    return E;
  };
  for (int i = 0; i < r; ++i)
    for (int j = r; j < k; ++j) stab.push_back(unit(i, j));
  for (int i = r; i < k; ++i)
    for (int j = r; j < k; ++j)
      if (i != j) stab.push_back(unit(i, j));
  if (r < k && p > 2) {
    // a primitive root scaling one complement coordinate
    int w = 2;
    while (true) {
      bool prim = true;
      for (int d = 1; d < p - 1; ++d)
        if ((p - 1) % d == 0 && pow_mod(w, d, p) == 1) prim = false;
      if (prim) break;
      ++w;
    }
    FpMatrix D = FpMatrix::identity(p, k);
    D(r, r) = w;
    stab.push_back(D);
  }
  for (const auto& S : stab) out.push_back(mat_mul(mat_mul(P0inv, S), P0));
  return out;
}

CentralIsoResult iso_coset_central_elemab(const CayleyTable& G1, const CayleyTable& G2) {
  exec::SpanScope scope;
  CentralIsoResult res;
  Subgroup A1 = center(G1);
  auto e1 = extension_data(G1, A1);
  int p = 2, k = int(e1.basis.orders.size());
  if (k > 0) {
    int e = 0;
    p = prime_of(e1.basis.orders[0], &e);
    for (int o : e1.basis.orders)
      if (o != p) throw Error("HypothesisFailed", "center is not elementary abelian");
  }
  const CayleyTable& Q = e1.quot.table;
  Projection P = invariant_projection(Q, p);
  FpMatrix M1 = P.matrix(e1.f);
  auto auts = enumerate_aut(Q);
  auto same_span = [&](const FpMatrix& X, const FpMatrix& Y) { return row_space(X) == row_space(Y); };
  auto alpha_for = [&](const FpMatrix& Mtgt, const FpMatrix& Msrc) {
    // alpha with alpha·Msrc = Mtgt
    Perm id(Msrc.cols);
    for (int i = 0; i < Msrc.cols; ++i) id[i] = i;
    return equivalence_transform(Msrc, Mtgt, id);
  };

  // (i) kernel homomorphisms: g -> g·delta(x)
  for (const auto& delta : kernel_homomorphisms(Q, p, k)) {
    std::vector<Elem> phi(G1.order());
    for (Elem g = 0; g < G1.order(); ++g) {
      Elem x = e1.quot.proj.image[g];
      phi[g] = G1.mul(g, basis_element(G1, e1.basis, delta[x]));
    }
    if (!is_isomorphism(G1, G1, phi)) throw Error("Internal", "kernel map is not an automorphism");
    res.aut_gens.push_back(phi);
  }
  // (ii) lifts of compatible quotient automorphisms, one per new generator
  {
    int qn = Q.order();
    std::vector<char> ok(auts.size(), 0);
    exec::parallel_for(std::int64_t(auts.size()), [&](std::int64_t i) {
      ok[std::size_t(i)] = same_span(P.matrix(pull_back(e1.f, auts[std::size_t(i)])), M1);
    });
    PermGroup B(qn);
    for (std::size_t i = 0; i < auts.size(); ++i) {
      if (!ok[i] || B.contains(auts[i])) continue;
      auto alpha = alpha_for(M1, P.matrix(pull_back(e1.f, auts[i])));
      if (!alpha) throw Error("Internal", "compatible automorphism without alpha");
      auto phi = lift_pair(G1, e1, G1, e1, *alpha, auts[i]);
      if (!phi) throw Error("Internal", "lift of a compatible pair failed");
      res.aut_gens.push_back(*phi);
      auto gens = B.strong_generators();
      gens.push_back(auts[i]);
      B = PermGroup(qn, gens);
    }
  }
  // (iii) automorphisms of A fixing M1
  if (k > 0) {
    std::vector<Elem> idq(Q.order());
    for (int x = 0; x < Q.order(); ++x) idq[x] = x;
    for (const auto& alpha : row_stabilizer_generators(M1)) {
      auto phi = lift_pair(G1, e1, G1, e1, alpha, idq);
      if (!phi) throw Error("Internal", "stabilizer element does not lift");
      res.aut_gens.push_back(*phi);
    }
  }
  if (res.aut_gens.empty()) {
    std::vector<Elem> id(G1.order());
    for (Elem g = 0; g < G1.order(); ++g) id[g] = g;
    res.aut_gens.push_back(id);
  }

  // cross isomorphism
  if (G1.order() != G2.order()) return res;
  Subgroup A2 = center(G2);
  if (A2.order() != A1.order()) return res;
  auto e2 = extension_data(G2, A2);
  if (e2.basis.orders != e1.basis.orders) return res;
  auto gamma = find_isomorphism(Q, e2.quot.table);
  if (!gamma) return res;
  auto hit = exec::parallel_find_first(std::int64_t(auts.size()), [&](std::int64_t i) {
    auto beta = compose_maps(*gamma, auts[std::size_t(i)]);
    return same_span(P.matrix(pull_back(e2.f, beta)), M1);
  });
  if (hit) {
    auto beta = compose_maps(*gamma, auts[std::size_t(*hit)]);
    auto alpha = alpha_for(M1, P.matrix(pull_back(e2.f, beta)));
    if (!alpha) throw Error("Internal", "matching spans without alpha");
    res.iso = lift_pair(G1, e1, G2, e2, *alpha, beta);
    if (!res.iso) throw Error("Internal", "cross isomorphism failed to lift");
  }
  return res;
}

}  // namespace gpi
