#include "gpi/repthy.hpp"

#include <algorithm>
#include <set>

#include "gpi/exec.hpp"

namespace gpi {

// ------------------------------------------------------ polynomials

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = int((c[i + j] + 1LL * a[i] * b[j]) % p);
  return poly_trim(c);
}

namespace {

std::pair<Poly, Poly> divmod(Poly a, const Poly& m0, int p) {
  Poly m = poly_trim(m0);
  if (m.empty()) throw Error("DivisionByZero", "polynomial modulus is zero");
  a = poly_trim(a);
  int lead_inv = int(inv_mod(m.back(), p));
  Poly q(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
  while (a.size() >= m.size()) {
    int c = int(1LL * a.back() * lead_inv % p);
    std::size_t shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = int(mod_norm(a[shift + i] - 1LL * c * m[i], p));
    a = poly_trim(a);
  }
  return {poly_trim(q), a};
}

Poly make_monic(Poly a, int p) {
  a = poly_trim(a);
  if (a.empty()) return a;
  int iv = int(inv_mod(a.back(), p));
  for (int& x : a) x = int(1LL * x * iv % p);
  return a;
}

}  // namespace

Poly poly_mod(const Poly& a, const Poly& m, int p) { return divmod(a, m, p).second; }
Poly poly_div(const Poly& a, const Poly& m, int p) { return divmod(a, m, p).first; }

Poly poly_gcd(Poly a, Poly b, int p) {
  a = poly_trim(a);
  b = poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return make_monic(a, p);
}

std::vector<Poly> berlekamp(const Poly& f0, int p) {
  Poly f = make_monic(f0, p);
  int n = int(f.size()) - 1;
  if (n <= 1) return {f};
  // row i: x^{p i} mod f
  FpMatrix Q(p, n, n);
  Poly xp = {1};
  {
    Poly base = {0, 1};
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) xp = poly_mod(poly_mul(xp, base, p), f, p);
      base = poly_mod(poly_mul(base, base, p), f, p);
    }
  }
  Poly cur = {1};
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) Q(i, int(j)) = cur[j];
    cur = poly_mod(poly_mul(cur, xp, p), f, p);
  }
  for (int i = 0; i < n; ++i) Q(i, i) = int(mod_norm(Q(i, i) - 1, p));
  FpMatrix N = left_nullspace(Q);
  int r = N.rows;
  std::vector<Poly> facs{f};
  for (int b = 0; b < N.rows && int(facs.size()) < r; ++b) {
    Poly g = poly_trim(N.row(b));
    if (g.size() <= 1) continue;
    std::vector<Poly> next;
    for (const auto& h : facs) {
      if (h.size() <= 2) {
        next.push_back(h);
        continue;
      }
      Poly rest = h;
      for (int s = 0; s < p && rest.size() > 1; ++s) {
        Poly gs = g;
        gs[0] = int(mod_norm(gs[0] - s, p));
        Poly d = poly_gcd(rest, gs, p);
        if (d.size() > 1) {
          next.push_back(d);
          rest = make_monic(poly_div(rest, d, p), p);
        }
      }
      if (rest.size() > 1) next.push_back(rest);
    }
    facs = next;
  }
  return facs;
}

std::vector<Poly> factor_cyclotomic(int q, int p) {
  if (q == p || q % p == 0 || p % q == 0) throw Error("NotCoprime", "q and p must be distinct primes");
  Poly phi(q, 1);
  auto facs = berlekamp(phi, p);
  std::sort(facs.begin(), facs.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return facs;
}

FpMatrix companion(const Poly& g, int p) {
  int d = int(g.size()) - 1;
  FpMatrix C(p, d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) C(i, d - 1) = int(mod_norm(-g[i], p));
  return C;
}

// ------------------------------------------------------ representations

FpMatrix MatRep::image(const std::vector<int>& u) const {
  FpMatrix R = FpMatrix::identity(p, k);
  for (int i = 0; i < l; ++i)
    if (u[i] % q) R = mat_mul(R, mat_pow(gens[i], mod_norm(u[i], q)));
  return R;
}

std::vector<std::vector<int>> MatRep::domain() const {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < l; ++i) {
    std::vector<std::vector<int>> nx;
    for (const auto& v : out)
      for (int x = 0; x < q; ++x) {
        auto w = v;
        w.push_back(x);
        nx.push_back(w);
      }
    out = nx;
  }
  return out;
}

void MatRep::check() const {
  FpMatrix I = FpMatrix::identity(p, k);
  for (const auto& g : gens) {
    if (g.rows != k || g.cols != k || g.p != p) throw Error("BadRep", "generator shape");
    if (mat_pow(g, q) != I) throw Error("BadRep", "generator order does not divide q");
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (mat_mul(gens[i], gens[j]) != mat_mul(gens[j], gens[i])) throw Error("BadRep", "generators do not commute");
}

MatRep trivial_rep(int q, int l, int p, int k) {
  MatRep r{q, l, p, k, {}};
  for (int i = 0; i < l; ++i) r.gens.push_back(FpMatrix::identity(p, k));
  return r;
}

MatRep direct_sum(const MatRep& a, const MatRep& b) {
  MatRep r{a.q, a.l, a.p, a.k + b.k, {}};
  for (int i = 0; i < a.l; ++i) {
    FpMatrix M(a.p, r.k, r.k);
    for (int x = 0; x < a.k; ++x)
      for (int y = 0; y < a.k; ++y) M(x, y) = a.gens[i](x, y);
    for (int x = 0; x < b.k; ++x)
      for (int y = 0; y < b.k; ++y) M(a.k + x, a.k + y) = b.gens[i](x, y);
    r.gens.push_back(M);
  }
  return r;
}

MatRep conjugate_rep(const MatRep& a, const FpMatrix& Pm) {
  auto inv = inverse(Pm);
  if (!inv) throw Error("NotInvertible", "basis change");
  MatRep r = a;
  for (auto& g : r.gens) g = mat_mul(mat_mul(*inv, g), Pm);
  return r;
}

MatRep compose_rep(const MatRep& a, const IntMatrix& psi) {
  MatRep r = a;
  for (int i = 0; i < a.l; ++i) {
    std::vector<int> col(a.l);
    for (int j = 0; j < a.l; ++j) col[j] = int(mod_norm(psi[j][i], a.q));
    r.gens[i] = a.image(col);
  }
  return r;
}

MatRep irreducible_rep(const std::vector<int>& v, int q, int l, int p) {
  bool zero = std::all_of(v.begin(), v.end(), [&](int x) { return x % q == 0; });
  if (zero) return trivial_rep(q, l, p, 1);
  FpMatrix M = companion(factor_cyclotomic(q, p)[0], p);
  MatRep r{q, l, p, M.rows, {}};
  for (int i = 0; i < l; ++i) r.gens.push_back(mat_pow(M, mod_norm(v[i], q)));
  return r;
}

namespace {

// Basis (as columns, k x w) of the smallest invariant subspace containing vs.
FpMatrix invariant_closure(const MatRep& rep, const std::vector<std::vector<int>>& vs) {
  StreamEchelon E(rep.p, rep.k);
  std::vector<std::vector<int>> basis;
  for (const auto& v : vs)
    if (E.insert(v)) basis.push_back(v);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : rep.gens) {
      auto w = mat_vec(g, basis[i]);
      if (E.insert(w)) basis.push_back(w);
    }
  return mat_transpose(FpMatrix::from_rows(rep.p, basis, rep.k));
}

MatRep restrict_rep(const MatRep& rep, const FpMatrix& W) {
  MatRep r{rep.q, rep.l, rep.p, W.cols, {}};
  for (const auto& g : rep.gens) {
    auto X = solve_right(W, mat_mul(g, W));
    if (!X) throw Error("Internal", "subspace is not invariant");
    r.gens.push_back(*X);
  }
  return r;
}

std::vector<int> trace_vector(const MatRep& rep) {
  std::vector<int> t;
  for (const auto& u : rep.domain()) {
    FpMatrix M = rep.image(u);
    int s = 0;
    for (int i = 0; i < rep.k; ++i) s = (s + M(i, i)) % rep.p;
    t.push_back(s);
  }
  return t;
}

// Projective representatives of the non-zero vectors of F_p^k.
std::vector<std::vector<int>> projective_points(int p, int k) {
  std::vector<std::vector<int>> out;
  for (int lead = 0; lead < k; ++lead) {
    long long tail = 1;
    for (int i = lead + 1; i < k; ++i) tail *= p;
    for (long long c = 0; c < tail; ++c) {
      std::vector<int> v(k, 0);
      v[lead] = 1;
      long long x = c;
      for (int i = k - 1; i > lead; --i) v[i] = int(x % p), x /= p;
      out.push_back(v);
    }
  }
  return out;
}

int irreducible_degree(int q, int p) {
  int d = 1;
  long long x = p % q;
  while (x != 1) x = x * p % q, ++d;
  return d;
}

void split(const MatRep& rep, std::vector<MatRep>& out) {
  if (rep.k == 0) return;
  int dmax = irreducible_degree(rep.q, rep.p);
  FpMatrix best;
  for (const auto& v : projective_points(rep.p, rep.k)) {
    exec::tick();
    FpMatrix W = invariant_closure(rep, {v});
    if (best.cols == 0 || W.cols < best.cols) best = W;
    if (best.cols <= dmax) break;
  }
  if (best.cols == rep.k) {
    out.push_back(rep);
    return;
  }
  out.push_back(restrict_rep(rep, best));
  // projection onto W along a coordinate complement, then averaged
  int k = rep.k, w = best.cols, p = rep.p;
  StreamEchelon E(p, k);
  std::vector<std::vector<int>> cols;
  for (int j = 0; j < w; ++j) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = best(i, j);
    E.insert(c);
    cols.push_back(c);
  }
  for (int e = 0; e < k && int(cols.size()) < k; ++e) {
    std::vector<int> c(k, 0);
    c[e] = 1;
    if (E.insert(c)) cols.push_back(c);
  }
  FpMatrix Bf = mat_transpose(FpMatrix::from_rows(p, cols, k));
  FpMatrix D(p, k, k);
  for (int j = 0; j < w; ++j) D(j, j) = 1;
  FpMatrix P0 = mat_mul(mat_mul(Bf, D), *inverse(Bf));
  FpMatrix P(p, k, k);
  long long order = 1;
  for (int i = 0; i < rep.l; ++i) order *= rep.q;
  for (const auto& u : rep.domain()) {
    FpMatrix g = rep.image(u);
    P = mat_add(P, mat_mul(mat_mul(g, P0), *inverse(g)));
  }
  P = mat_scale(P, int(inv_mod(order % p, p)));
  FpMatrix U = mat_transpose(right_nullspace(P));
  split(restrict_rep(rep, U), out);
}

}  // namespace

bool is_irreducible(const MatRep& rep) {
  for (const auto& v : projective_points(rep.p, rep.k))
    if (invariant_closure(rep, {v}).cols != rep.k) return false;
  return true;
}

bool chars_equal(const MatRep& a, const MatRep& b) {
  if (a.k != b.k || a.q != b.q || a.l != b.l || a.p != b.p) return false;
  return trace_vector(a) == trace_vector(b);
}

bool labels_equivalent(const std::vector<int>& u, const std::vector<int>& v, int q, int p) {
  FpMatrix M = companion(factor_cyclotomic(q, p)[0], p);
  auto cp = charpoly(M);
  for (int s = 0; s < q; ++s) {
    bool par = true;
    for (std::size_t i = 0; i < u.size(); ++i) par = par && mod_norm(u[i] - 1LL * s * v[i], q) == 0;
    if (par && charpoly(mat_pow(M, s)) == cp) return true;
  }
  return false;
}

std::vector<RepComponent> decompose_rep(const MatRep& rep) {
  if (rep.q % rep.p == 0) throw Error("NotCoprime", "characteristic divides the group order");
  std::vector<MatRep> parts;
  split(rep, parts);
  // character of every f_v, to name the classes
  MatRep dom = trivial_rep(rep.q, rep.l, rep.p, 0);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> label_chars;
  for (const auto& v : dom.domain()) {
    MatRep f = irreducible_rep(v, rep.q, rep.l, rep.p);
    label_chars.push_back({v, trace_vector(f)});
  }
  std::vector<RepComponent> out;
  std::vector<std::vector<int>> out_chars;
  for (const auto& c : parts) {
    auto t = trace_vector(c);
    bool placed = false;
    for (std::size_t i = 0; i < out.size() && !placed; ++i)
      if (out[i].rep.k == c.k && out_chars[i] == t) {
        ++out[i].mult;
        placed = true;
      }
    if (placed) continue;
    RepComponent rc{c, 1, {}};
    int dmax = irreducible_degree(rep.q, rep.p);
    for (const auto& [v, ch] : label_chars) {
      bool zero = std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
      int dim = zero ? 1 : dmax;
      if (dim == c.k && ch == t) rc.labels.push_back(v);
    }
    if (rc.labels.empty()) throw Error("Internal", "component matches no irreducible label");
    out.push_back(rc);
    out_chars.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](const RepComponent& a, const RepComponent& b) {
    return a.labels[0] < b.labels[0];
  });
  return out;
}

bool reps_equivalent(const MatRep& a, const MatRep& b) {
  if (a.k != b.k || a.q != b.q || a.l != b.l || a.p != b.p) return false;
  auto da = decompose_rep(a), db = decompose_rep(b);
  if (da.size() != db.size()) return false;
  for (std::size_t i = 0; i < da.size(); ++i)
    if (da[i].labels != db[i].labels || da[i].mult != db[i].mult) return false;
  return true;
}

std::vector<IndexingTuple> indexing_tuples(const std::vector<RepComponent>& comps) {
  std::vector<IndexingTuple> out;
  std::vector<std::size_t> pick(comps.size(), 0);
  while (true) {
    IndexingTuple t;
    for (std::size_t i = 0; i < comps.size(); ++i) t[comps[i].mult].push_back(comps[i].labels[pick[i]]);
    for (auto& [w, vs] : t) std::sort(vs.begin(), vs.end());
    out.push_back(t);
    std::size_t i = comps.size();
    while (i > 0) {
      --i;
      if (++pick[i] < comps[i].labels.size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (comps.empty()) return out;
  }
}

std::vector<IndexingTuple> indexing_tuples(const MatRep& rep) {
  return indexing_tuples(decompose_rep(rep));
}

}  // namespace gpi
