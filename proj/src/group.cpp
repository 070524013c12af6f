#include "gpi/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gpi {

CayleyTable CayleyTable::unchecked(int n, const std::vector<int>& grid) {
  if (n > 65535) throw Error("TooLarge", "table order exceeds 65535");
  CayleyTable G;
  G.n_ = n;
  G.tab_.assign(grid.begin(), grid.end());
  G.inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul(a, b) == 0) {
        G.inv_[a] = b;
        break;
      }
  return G;
}

Elem CayleyTable::pow(Elem a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = 0, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::vector<int> CayleyTable::grid() const {
  return std::vector<int>(tab_.begin(), tab_.end());
}

namespace {

// Elements whose right-multiplication closure from the identity covers the
// whole magma; Light's test over these is then exact.
std::vector<int> right_generators(int n, const std::vector<int>& g) {
  std::vector<int> gens;
  std::vector<char> seen(n, 0);
  auto close = [&]() {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<int> reach{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < reach.size(); ++i)
      for (int t : gens) {
        int y = g[std::size_t(reach[i]) * n + t];
        if (!seen[y]) {
          seen[y] = 1;
          reach.push_back(y);
        }
      }
  };
  close();
  for (int x = 1; x < n; ++x) {
    if (seen[x]) continue;
    gens.push_back(x);
    close();
  }
  return gens;
}

}  // namespace

std::optional<ValidationFailure> check_table(int n, const std::vector<int>& g) {
  if (n < 1 || g.size() != std::size_t(n) * n)
    return ValidationFailure{"NotLatin", {-1, -1, -1}};
  for (int v : g)
    if (v < 0 || v >= n) return ValidationFailure{"NotLatin", {-1, -1, -1}};
  std::vector<int> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c)
      if (seen[g[std::size_t(r) * n + c]]++)
        return ValidationFailure{"NotLatin", {r, -1, -1}};
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r)
      if (seen[g[std::size_t(r) * n + c]]++)
        return ValidationFailure{"NotLatin", {-1, c, -1}};
  }
  for (int x = 0; x < n; ++x)
    if (g[x] != x || g[std::size_t(x) * n] != x)
      return ValidationFailure{"NoIdentity", {x, -1, -1}};
  auto m = [&](int a, int b) { return g[std::size_t(a) * n + b]; };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (m(m(a, b), c) != m(a, m(b, c)))
            return ValidationFailure{"NotAssociative", {a, b, c}};
  } else {
    // Light's test: associativity with the middle argument ranging over a
    // generating set implies associativity everywhere.
    for (int s : right_generators(n, g))
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          if (m(m(a, s), c) != m(a, m(s, c)))
            return ValidationFailure{"NotAssociative", {a, s, c}};
  }
  return std::nullopt;
}

CayleyTable validate_table(int n, const std::vector<int>& grid) {
  if (auto f = check_table(n, grid)) {
    auto& w = f->witness;
    throw Error(f->kind, "witness (" + std::to_string(w[0]) + "," +
                             std::to_string(w[1]) + "," + std::to_string(w[2]) + ")");
  }
  return CayleyTable::unchecked(n, grid);
}

bool Subgroup::contains(Elem g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

int element_order(const CayleyTable& G, Elem g) {
  int t = 1;
  Elem x = g;
  while (x != 0) {
    x = G.mul(x, g);
    ++t;
  }
  return t;
}

std::vector<int> element_orders(const CayleyTable& G) {
  std::vector<int> o(G.order());
  for (int g = 0; g < G.order(); ++g) o[g] = element_order(G, g);
  return o;
}

bool is_abelian(const CayleyTable& G) {
  for (int a = 0; a < G.order(); ++a)
    for (int b = a + 1; b < G.order(); ++b)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_abelian(const CayleyTable& G, const std::vector<Elem>& S) {
  for (Elem a : S)
    for (Elem b : S)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

Subgroup center(const CayleyTable& G) {
  Subgroup Z;
  Z.is_normal = true;
  for (int a = 0; a < G.order(); ++a) {
    bool c = true;
    for (int b = 0; b < G.order() && c; ++b) c = G.mul(a, b) == G.mul(b, a);
    if (c) Z.elems.push_back(a);
  }
  return Z;
}

Subgroup closure(const CayleyTable& G, const std::vector<Elem>& S) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> el{0};
  in[0] = 1;
  // only generators outside the current closure are kept, at most log2|H|
  std::vector<Elem> gens;
  for (Elem s : S) {
    if (in[s]) continue;
    gens.push_back(s);
    std::size_t old = el.size();
    for (std::size_t i = 0; i < old; ++i) {
      Elem y = G.mul(el[i], s);
      if (!in[y]) {
        in[y] = 1;
        el.push_back(y);
      }
    }
    for (std::size_t i = old; i < el.size(); ++i)
      for (Elem g : gens) {
        Elem y = G.mul(el[i], g);
        if (!in[y]) {
          in[y] = 1;
          el.push_back(y);
        }
      }
  }
  std::sort(el.begin(), el.end());
  Subgroup H;
  H.elems = std::move(el);
  // normal iff every conjugate of a generator stays inside
  H.is_normal = true;
  for (int g = 0; g < G.order() && H.is_normal; ++g)
    for (Elem s : gens)
      if (!in[G.conj(g, s)]) {
        H.is_normal = false;
        break;
      }
  return H;
}

Subgroup normal_closure(const CayleyTable& G, const std::vector<Elem>& S) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> conjs;
  for (Elem s : S)
    for (int g = 0; g < G.order(); ++g) {
      Elem c = G.conj(g, s);
      if (!in[c]) {
        in[c] = 1;
        conjs.push_back(c);
      }
    }
  Subgroup H = closure(G, conjs);
  H.is_normal = true;
  return H;
}

bool is_subgroup(const CayleyTable& G, const std::vector<Elem>& S) {
  if (S.empty()) return false;
  std::vector<char> in(G.order(), 0);
  for (Elem s : S) in[s] = 1;
  if (!in[0]) return false;
  for (Elem a : S) {
    if (!in[G.inv(a)]) return false;
    for (Elem b : S)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const CayleyTable& G, const std::vector<Elem>& S) {
  std::vector<char> in(G.order(), 0);
  for (Elem s : S) in[s] = 1;
  for (int g = 0; g < G.order(); ++g)
    for (Elem s : S)
      if (!in[G.conj(g, s)]) return false;
  return true;
}

Subgroup whole(const CayleyTable& G) {
  Subgroup H;
  H.elems.resize(G.order());
  std::iota(H.elems.begin(), H.elems.end(), 0);
  H.is_normal = true;
  return H;
}

Subgroup commutator_subgroup(const CayleyTable& G) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> c;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) {
      Elem x = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
      if (!in[x]) {
        in[x] = 1;
        c.push_back(x);
      }
    }
  Subgroup H = closure(G, c);
  H.is_normal = true;
  return H;
}

Quotient quotient(const CayleyTable& G, const Subgroup& N) {
  if (!is_subgroup(G, N.elems) || !is_normal(G, N.elems))
    throw Error("NotNormal", "quotient by a non-normal subset");
  int n = G.order();
  std::vector<int> label(n, -1);
  Quotient Q;
  for (int g = 0; g < n; ++g) {
    if (label[g] >= 0) continue;
    int id = int(Q.reps.size());
    Q.reps.push_back(g);
    for (Elem x : N.elems) label[G.mul(g, x)] = id;
  }
  int m = int(Q.reps.size());
  std::vector<int> grid(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      grid[std::size_t(i) * m + j] = label[G.mul(Q.reps[i], Q.reps[j])];
  Q.table = CayleyTable::unchecked(m, grid);
  Q.proj.image = label;
  return Q;
}

std::vector<Elem> sylow_elements(const CayleyTable& G, int p) {
  std::vector<Elem> out;
  for (int g = 0; g < G.order(); ++g) {
    int o = element_order(G, g);
    while (o % p == 0) o /= p;
    if (o == 1) out.push_back(g);
  }
  return out;
}

CayleyTable subgroup_table(const CayleyTable& G, const Subgroup& H) {
  int m = H.order();
  std::vector<int> pos(G.order(), -1);
  for (int i = 0; i < m; ++i) pos[H.elems[i]] = i;
  std::vector<int> grid(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = pos[G.mul(H.elems[i], H.elems[j])];
      if (v < 0) throw Error("NotSubgroup", "subset not closed");
      grid[std::size_t(i) * m + j] = v;
    }
  return CayleyTable::unchecked(m, grid);
}

AbelianBasis abelian_basis(const CayleyTable& G) { return abelian_basis(G, whole(G)); }

AbelianBasis abelian_basis(const CayleyTable& G, const Subgroup& A) {
  if (!is_abelian(G, A.elems)) throw Error("NotAbelian", "abelian_basis");
  std::vector<std::pair<int, Elem>> found;  // (order, generator)
  for (int p : prime_divisors(A.order())) {
    std::vector<Elem> P;
    for (Elem g : A.elems) {
      int o = element_order(G, g);
      while (o % p == 0) o /= p;
      if (o == 1) P.push_back(g);
    }
    // span of chosen generators with coordinates
    std::map<Elem, std::vector<int>> span{{0, {}}};
    std::vector<Elem> gens;
    std::vector<int> ords;
    while (span.size() < P.size()) {
      Elem best = -1;
      int best_o = 0;
      for (Elem x : P) {
        if (span.count(x)) continue;
        int o = 1;
        Elem y = x;
        while (!span.count(y)) {
          y = G.mul(y, x);
          ++o;
        }
        if (o > best_o) {
          best_o = o;
          best = x;
        }
      }
      Elem h = G.pow(best, best_o);
      const auto& c = span.at(h);
      Elem adj = best;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (c[i] % best_o != 0)
          throw Error("Internal", "abelian_basis lift not divisible");
        adj = G.mul(adj, G.pow(gens[i], -(c[i] / best_o)));
      }
      if (element_order(G, adj) != best_o)
        throw Error("Internal", "abelian_basis lift has wrong order");
      gens.push_back(adj);
      ords.push_back(best_o);
      std::map<Elem, std::vector<int>> next;
      for (const auto& [e, v] : span) {
        Elem y = e;
        for (int t = 0; t < best_o; ++t) {
          auto w = v;
          w.push_back(t);
          next[y] = w;
          y = G.mul(y, adj);
        }
      }
      span = std::move(next);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) found.push_back({ords[i], gens[i]});
  }
  std::stable_sort(found.begin(), found.end(),
                   [](auto& a, auto& b) { return a.first < b.first; });
  AbelianBasis B;
  for (auto& [o, g] : found) {
    B.orders.push_back(o);
    B.gens.push_back(g);
  }
  // bijectivity of the coordinate map
  auto tab = coordinate_table(G, B);
  long long prod = 1;
  for (int o : B.orders) prod *= o;
  if (prod != A.order()) throw Error("Internal", "abelian_basis order mismatch");
  for (Elem a : A.elems)
    if (tab[a].empty() && !(B.gens.empty() && a == 0))
      throw Error("Internal", "abelian_basis not surjective");
  return B;
}

std::vector<std::vector<int>> coordinate_table(const CayleyTable& G,
                                               const AbelianBasis& b) {
  std::vector<std::vector<int>> tab(G.order());
  std::vector<int> x(b.gens.size(), 0);
  std::size_t count = 0;
  while (true) {
    Elem e = basis_element(G, b, x);
    if (!tab[e].empty() || (b.gens.empty() && count > 0))
      throw Error("Internal", "basis coordinates not injective");
    tab[e] = x;
    if (b.gens.empty()) tab[e] = {};
    ++count;
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == b.orders[i]) x[i++] = 0;
    if (i == x.size()) break;
  }
  if (b.gens.empty()) tab[0] = {};
  return tab;
}

std::vector<int> basis_coordinates(const CayleyTable& G, const AbelianBasis& b,
                                   Elem g) {
  auto tab = coordinate_table(G, b);
  if (tab[g].empty() && !b.gens.empty())
    throw Error("NotInSpan", "element outside basis span");
  return tab[g];
}

Elem basis_element(const CayleyTable& G, const AbelianBasis& b,
                   const std::vector<int>& x) {
  Elem e = 0;
  for (std::size_t i = 0; i < b.gens.size(); ++i) e = G.mul(e, G.pow(b.gens[i], x[i]));
  return e;
}

bool is_homomorphism(const CayleyTable& G, const CayleyTable& H,
                     const std::vector<Elem>& img) {
  if (int(img.size()) != G.order()) return false;
  for (Elem v : img)
    if (v < 0 || v >= H.order()) return false;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (img[G.mul(a, b)] != H.mul(img[a], img[b])) return false;
  return true;
}

bool is_isomorphism(const CayleyTable& G, const CayleyTable& H,
                    const std::vector<Elem>& img) {
  if (G.order() != H.order() || int(img.size()) != G.order()) return false;
  std::vector<char> seen(H.order(), 0);
  for (Elem v : img) {
    if (v < 0 || v >= H.order() || seen[v]) return false;
    seen[v] = 1;
  }
  return is_homomorphism(G, H, img);
}

std::vector<Elem> compose_maps(const std::vector<Elem>& outer,
                               const std::vector<Elem>& inner) {
  std::vector<Elem> r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

std::vector<Elem> invert_map(const std::vector<Elem>& m) {
  std::vector<Elem> r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[m[i]] = Elem(i);
  return r;
}

std::vector<int> prime_divisors(long long n) {
  std::vector<int> ps;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(int(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(int(n));
  return ps;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool is_prime_power(long long n, int* p, int* e) {
  auto ps = prime_divisors(n);
  if (ps.size() != 1) return false;
  int k = 0;
  while (n > 1) {
    n /= ps[0];
    ++k;
  }
  if (p) *p = ps[0];
  if (e) *e = k;
  return true;
}

bool is_normalized(const CocycleMatrix& f) {
  for (int i = 0; i < f.k(); ++i)
    for (int q = 0; q < f.qn; ++q)
      if (f.at(i, 0, q) != 0 || f.at(i, q, 0) != 0) return false;
  return true;
}

bool is_cocycle(const CayleyTable& Q, const CocycleMatrix& f) {
  int n = Q.order();
  if (f.qn != n) return false;
  for (int i = 0; i < f.k(); ++i) {
    if (int(f.rows[i].size()) != n * n) return false;
    for (int v : f.rows[i])
      if (v < 0 || v >= f.moduli[i]) return false;
  }
  std::vector<int> mids;
  if (n <= 128 || !is_normalized(f)) {
    mids.resize(n);
    std::iota(mids.begin(), mids.end(), 0);
  } else {
    // for normalized cochains the identity with the middle argument in a
    // generating set implies it everywhere (associativity of the twisted
    // product, Light's test)
    std::vector<int> g(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g[std::size_t(a) * n + b] = Q.mul(a, b);
    mids = right_generators(n, g);
  }
  for (int i = 0; i < f.k(); ++i) {
    int mod = f.moduli[i];
    for (int p = 0; p < n; ++p)
      for (int q : mids)
        for (int r = 0; r < n; ++r) {
          int l = (f.at(i, p, q) + f.at(i, Q.mul(p, q), r)) % mod;
          int rr = (f.at(i, q, r) + f.at(i, p, Q.mul(q, r))) % mod;
          if (l != rr) return false;
        }
  }
  return true;
}

}  // namespace gpi
