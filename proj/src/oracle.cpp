#include "gpi/oracle.hpp"

#include <algorithm>
#include <functional>

namespace gpi {

namespace {

int closure_size(const CayleyTable& G, const std::vector<Elem>& S) {
  return closure(G, S).order();
}

std::vector<int> centralizer_sizes(const CayleyTable& G) {
  int n = G.order();
  std::vector<int> c(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c[a] += G.mul(a, b) == G.mul(b, a);
  return c;
}

struct Search {
  const CayleyTable& G;
  const CayleyTable& H;
  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> cand;
  bool all = false;
  std::vector<std::vector<Elem>> found;

  // phi: partial map on the subgroup generated so far (-1 = unset)
  bool extend(std::vector<Elem>& phi, std::vector<char>& used,
              std::vector<Elem>& dom, std::size_t upto) {
    // dom holds the mapped elements; close under right multiplication by
    // gens[0..upto], checking consistency
    for (std::size_t i = 0; i < dom.size(); ++i) {
      Elem x = dom[i];
      for (std::size_t j = 0; j <= upto; ++j) {
        Elem y = G.mul(x, gens[j]);
        Elem img = H.mul(phi[x], phi[gens[j]]);
        if (phi[y] < 0) {
          if (used[img]) return false;
          phi[y] = img;
          used[img] = 1;
          dom.push_back(y);
        } else if (phi[y] != img) {
          return false;
        }
      }
    }
    return true;
  }

  bool rec(std::size_t level, std::vector<Elem> phi, std::vector<char> used,
           std::vector<Elem> dom) {
    if (level == gens.size()) {
      if (int(dom.size()) != G.order()) return false;
      if (!is_isomorphism(G, H, phi)) return false;
      found.push_back(phi);
      return !all;
    }
    Elem g = gens[level];
    for (Elem h : cand[level]) {
      auto phi2 = phi;
      auto used2 = used;
      auto dom2 = dom;
      if (phi2[g] >= 0) {
        if (phi2[g] != h) continue;
      } else {
        if (used2[h]) continue;
        phi2[g] = h;
        used2[h] = 1;
        dom2.push_back(g);
      }
      if (!extend(phi2, used2, dom2, level)) continue;
      if (rec(level + 1, std::move(phi2), std::move(used2), std::move(dom2))) return true;
    }
    return false;
  }
};

void run(Search& s) {
  int n = s.G.order();
  auto og = element_orders(s.G), oh = element_orders(s.H);
  auto cg = centralizer_sizes(s.G), ch = centralizer_sizes(s.H);
  for (Elem g : s.gens) {
    std::vector<Elem> c;
    for (Elem h = 0; h < n; ++h)
      if (oh[h] == og[g] && ch[h] == cg[g]) c.push_back(h);
    s.cand.push_back(c);
  }
  std::vector<Elem> phi(n, -1);
  std::vector<char> used(n, 0);
  phi[0] = 0;
  used[0] = 1;
  s.rec(0, phi, used, {0});
}

}  // namespace

std::vector<Elem> small_generating_set(const CayleyTable& G) {
  int n = G.order();
  if (n == 1) return {};
  auto ord = element_orders(G);
  for (Elem g = 0; g < n; ++g)
    if (ord[g] == n) return {g};
  for (Elem a = 1; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (closure_size(G, {a, b}) == n) return {a, b};
  std::vector<Elem> S;
  int have = 1;
  while (have < n) {
    Elem best = -1;
    int best_size = have;
    for (Elem x = 1; x < n; ++x) {
      auto T = S;
      T.push_back(x);
      int s = closure_size(G, T);
      if (s > best_size) {
        best_size = s;
        best = x;
      }
    }
    S.push_back(best);
    have = best_size;
  }
  return S;
}

std::optional<std::vector<Elem>> oracle_iso(const CayleyTable& G, const CayleyTable& H,
                                            int guard) {
  if (G.order() > guard || H.order() > guard)
    throw Error("TooLarge", "oracle refuses order above " + std::to_string(guard));
  if (G.order() != H.order()) return std::nullopt;
  auto og = element_orders(G), oh = element_orders(H);
  std::sort(og.begin(), og.end());
  std::sort(oh.begin(), oh.end());
  if (og != oh) return std::nullopt;
  Search s{G, H, small_generating_set(G), {}, false, {}};
  run(s);
  if (s.found.empty()) return std::nullopt;
  return s.found[0];
}

std::vector<std::vector<Elem>> oracle_aut(const CayleyTable& G, int guard) {
  if (G.order() > guard)
    throw Error("TooLarge", "oracle refuses order above " + std::to_string(guard));
  Search s{G, G, small_generating_set(G), {}, true, {}};
  run(s);
  return s.found;
}

}  // namespace gpi
