#include "gpi/graph.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "gpi/exec.hpp"

namespace gpi {

std::vector<int> Graph::adjacency() const {
  std::vector<int> A(std::size_t(m) * m, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    A[std::size_t(u) * m + v] = A[std::size_t(v) * m + u] = ecolor(int(i)) + 1;
  }
  return A;
}

void Graph::check() const {
  if (!vertex_colors.empty() && int(vertex_colors.size()) != m)
    throw Error("BadGraph", "vertex color count");
  if (!edge_colors.empty() && edge_colors.size() != edges.size())
    throw Error("BadGraph", "edge color count");
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= m || v >= m) throw Error("BadGraph", "edge out of range");
    if (u == v) throw Error("BadGraph", "self-loop at " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw Error("BadGraph", "duplicate edge");
  }
}

bool is_graph_isomorphism(const Graph& X, const Graph& Y, const Perm& phi) {
  if (X.m != Y.m || int(phi.size()) != X.m || !perm_is_valid(phi)) return false;
  if (X.edges.size() != Y.edges.size()) return false;
  for (int v = 0; v < X.m; ++v)
    if (X.vcolor(v) != Y.vcolor(phi[v])) return false;
  auto AY = Y.adjacency();
  for (std::size_t i = 0; i < X.edges.size(); ++i) {
    auto [u, v] = X.edges[i];
    if (AY[std::size_t(phi[u]) * Y.m + phi[v]] != X.ecolor(int(i)) + 1) return false;
  }
  return true;
}

namespace {

bool has_edge(const Graph& X, Edge e) {
  for (auto [u, v] : X.edges)
    if ((u == e.first && v == e.second) || (u == e.second && v == e.first)) return true;
  return false;
}

// Distance of every vertex from the edge e, -1 if unreachable.
std::vector<int> edge_distances(const Graph& X, Edge e) {
  if (!has_edge(X, e)) throw Error("EdgeMissing", "edge not in graph");
  std::vector<std::vector<int>> adj(X.m);
  for (auto [u, v] : X.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> d(X.m, -1);
  std::deque<int> q{e.first, e.second};
  d[e.first] = d[e.second] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
  }
  return d;
}

bool same_edge(Edge a, Edge b) {
  return (a.first == b.first && a.second == b.second) ||
         (a.first == b.second && a.second == b.first);
}

}  // namespace

Graph layered_subgraph(const Graph& X, Edge e, int r) {
  auto d = edge_distances(X, e);
  Graph out;
  out.m = X.m;
  out.vertex_colors = X.vertex_colors;
  for (std::size_t i = 0; i < X.edges.size(); ++i) {
    auto [u, v] = X.edges[i];
    if (d[u] < 0) continue;
    if (same_edge(X.edges[i], e) || std::min(d[u], d[v]) <= r - 2) {
      out.edges.push_back(X.edges[i]);
      if (!X.edge_colors.empty()) out.edge_colors.push_back(X.edge_colors[i]);
    }
  }
  return out;
}

std::vector<int> layer_vertices(const Graph& X, Edge e, int r) {
  auto d = edge_distances(X, e);
  std::vector<int> out;
  for (int v = 0; v < X.m; ++v)
    if (d[v] >= 0 && d[v] <= r - 1) out.push_back(v);
  return out;
}

// ------------------------------------------------------- color cosets

namespace {

Perm restrict_perm(const Perm& g, int m) { return Perm(g.begin(), g.begin() + m); }

struct ColorSearch {
  const std::vector<int>& src;
  std::size_t cap;
  std::mutex mu;
  std::map<std::pair<std::vector<Perm>, std::vector<int>>, PermGroup> memo;

  static bool contains_all(const PermGroup& H, const PermGroup& G) {
    for (const auto& g : G.strong_generators())
      if (!H.contains(g)) return false;
    return true;
  }

  bool uniform(const std::vector<int>& B, const std::vector<int>& tgt) const {
    for (int x : B)
      if (src[x] != src[B[0]] || tgt[x] != src[B[0]]) return false;
    return true;
  }

  std::vector<std::vector<int>> orbits_in(const PermGroup& G, const std::vector<int>& B) const {
    std::vector<char> inB(G.degree(), 0);
    for (int x : B) inB[x] = 1;
    std::vector<std::vector<int>> out;
    for (auto& o : orbits_of(G.strong_generators(), G.degree()))
      if (inB[o[0]]) out.push_back(o);
    return out;
  }

  // Transitive case: the chain of G acting on a minimal block system of B.
  struct BlockChain {
    int M = 0, s = 0;
    std::vector<std::vector<int>> blocks;
    std::vector<int> blk;
    PermGroup P;  // degree M + s, base prefix M..M+s-1
    PermGroup K;  // kernel on the blocks, degree M
  };

  BlockChain block_chain(const PermGroup& G, const std::vector<int>& B) const {
    BlockChain c;
    c.M = G.degree();
    const auto& sg = G.strong_generators();
    if (auto bl = minimal_blocks_on(sg, B))
      c.blocks = *bl;
    else
      for (int x : B) c.blocks.push_back({x});
    std::sort(c.blocks.begin(), c.blocks.end());
    c.s = int(c.blocks.size());
    c.blk.assign(c.M, -1);
    for (int i = 0; i < c.s; ++i)
      for (int x : c.blocks[i]) c.blk[x] = i;
    std::vector<Perm> ext;
    for (const auto& g : sg) {
      Perm e(c.M + c.s);
      for (int x = 0; x < c.M; ++x) e[x] = g[x];
      for (int i = 0; i < c.s; ++i) e[c.M + i] = c.M + c.blk[g[c.blocks[i][0]]];
      ext.push_back(e);
    }
    std::vector<int> prefix(c.s);
    std::iota(prefix.begin(), prefix.end(), c.M);
    c.P = PermGroup(c.M + c.s, ext, prefix);
    std::vector<Perm> kg;
    for (const auto& g : c.P.level_generators(c.s)) kg.push_back(restrict_perm(g, c.M));
    c.K = PermGroup(c.M, kg);
    return c;
  }

  std::vector<std::vector<int>> multisets(const BlockChain& c, const std::vector<int>& col) const {
    std::vector<std::vector<int>> ms(c.s);
    for (int i = 0; i < c.s; ++i) {
      for (int x : c.blocks[i]) ms[i].push_back(col[x]);
      std::sort(ms[i].begin(), ms[i].end());
    }
    return ms;
  }

  // First element h of the subtree below level i (prefix h already fixed)
  // whose block images respect the multisets and whose kernel coset holds
  // a good element; returns the full good element on the M points.
  std::optional<Perm> descend(const BlockChain& c, int i, const Perm& h,
                              const std::vector<std::vector<int>>& ms,
                              const std::vector<std::vector<int>>& mt,
                              const std::vector<int>& B, const std::vector<int>& tgt,
                              std::atomic<std::size_t>& leaves) {
    exec::tick();
    if (i == c.s) {
      if (++leaves > cap) throw Error("IndexGuardExceeded", "color search leaf cap");
      Perm tau = restrict_perm(h, c.M);
      std::vector<int> t2(tgt.size());
      for (int x : B) t2[x] = tgt[tau[x]];
      auto r = rep(c.K, B, t2);
      if (!r) return std::nullopt;
      return perm_mul(tau, *r);
    }
    std::vector<std::pair<int, int>> cand;
    for (int gamma : c.P.orbit(i)) {
      Perm h2 = perm_mul(h, c.P.transversal_elem(i, gamma));
      int img = h2[c.M + i] - c.M;
      if (ms[i] != mt[img]) continue;
      cand.push_back({img, gamma});
    }
    std::sort(cand.begin(), cand.end());
    for (auto [img, gamma] : cand) {
      Perm h2 = perm_mul(h, c.P.transversal_elem(i, gamma));
      if (auto r = descend(c, i + 1, h2, ms, mt, B, tgt, leaves)) return r;
    }
    return std::nullopt;
  }

  PermGroup stab(const PermGroup& G, const std::vector<int>& B) {
    int M = G.degree();
    if (B.size() <= 1 || G.is_trivial() || uniform(B, src)) return G;
    auto key = std::make_pair(G.strong_generators(), B);
    {
      std::lock_guard<std::mutex> lk(mu);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    PermGroup out;
    auto orbs = orbits_in(G, B);
    if (orbs.size() > 1) {
      std::vector<PermGroup> parts(orbs.size());
      exec::parallel_for(std::int64_t(orbs.size()), [&](std::int64_t j) { parts[j] = stab(G, orbs[j]); });
      out = G;
      bool first = true;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        if (contains_all(parts[j], G)) continue;
        out = first ? parts[j] : intersect(out, parts[j]);
        first = false;
      }
    } else {
      BlockChain c = block_chain(G, B);
      auto ms = multisets(c, src);
      PermGroup H = stab(c.K, B);
      std::vector<Perm> found;  // extended to the block points
      std::atomic<std::size_t> leaves{0};
      for (int i = c.s - 1; i >= 0; --i) {
        int b = c.M + i;
        std::vector<int> pts(c.P.orbit(i).begin(), c.P.orbit(i).end());
        std::sort(pts.begin(), pts.end());
        auto orbit_found = [&]() {
          std::vector<char> in(c.M + c.s, 0);
          std::vector<int> o{b};
          in[b] = 1;
          for (std::size_t k = 0; k < o.size(); ++k)
            for (const auto& f : found)
              if (!in[f[o[k]]]) {
                in[f[o[k]]] = 1;
                o.push_back(f[o[k]]);
              }
          return in;
        };
        auto inF = orbit_found();
        for (int gamma : pts) {
          if (inF[gamma] || ms[i] != ms[gamma - c.M]) continue;
          Perm u = c.P.transversal_elem(i, gamma);
          // search the subtree for the block-level part, keeping h for the extension
          std::optional<Perm> hit;
          Perm hext;
          std::function<bool(int, const Perm&)> walk = [&](int lvl, const Perm& h) -> bool {
            exec::tick();
            if (lvl == c.s) {
              if (++leaves > cap) throw Error("IndexGuardExceeded", "color search leaf cap");
              Perm tau = restrict_perm(h, c.M);
              std::vector<int> t2(src.size());
              for (int x : B) t2[x] = src[tau[x]];
              auto r = rep(c.K, B, t2);
              if (!r) return false;
              hit = perm_mul(tau, *r);
              hext = h;
              return true;
            }
            std::vector<std::pair<int, int>> cand;
            for (int g2 : c.P.orbit(lvl)) {
              Perm h2 = perm_mul(h, c.P.transversal_elem(lvl, g2));
              int img = h2[c.M + lvl] - c.M;
              if (ms[lvl] == ms[img]) cand.push_back({img, g2});
            }
            std::sort(cand.begin(), cand.end());
            for (auto [img, g2] : cand)
              if (walk(lvl + 1, perm_mul(h, c.P.transversal_elem(lvl, g2)))) return true;
            return false;
          };
          if (walk(i + 1, u)) {
            for (int x = 0; x < c.M; ++x) hext[x] = (*hit)[x];
            found.push_back(hext);
            inF = orbit_found();
          }
        }
      }
      std::vector<Perm> gens = H.strong_generators();
      for (const auto& f : found) gens.push_back(restrict_perm(f, c.M));
      out = PermGroup(M, gens);
    }
    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(key, out);
    return out;
  }

  std::optional<Perm> rep(const PermGroup& G, const std::vector<int>& B, const std::vector<int>& tgt) {
    int M = G.degree();
    Perm id = perm_identity(M);
    if (uniform(B, tgt)) return id;
    if (B.size() <= 1 || G.is_trivial()) {
      for (int x : B)
        if (src[x] != tgt[x]) return std::nullopt;
      return id;
    }
    {
      // colors are preserved setwise, so the histograms must agree
      std::map<int, int> h;
      for (int x : B) ++h[src[x]], --h[tgt[x]];
      for (auto& [k, v] : h)
        if (v) return std::nullopt;
    }
    auto orbs = orbits_in(G, B);
    if (orbs.size() > 1) {
      std::vector<std::optional<Perm>> reps(orbs.size());
      exec::parallel_for(std::int64_t(orbs.size()),
                         [&](std::int64_t j) { reps[j] = rep(G, orbs[j], tgt); });
      for (const auto& r : reps)
        if (!r) return std::nullopt;
      std::vector<PermCoset> cos;
      for (std::size_t j = 0; j < orbs.size(); ++j) {
        PermGroup S = stab(G, orbs[j]);
        if (contains_all(S, G)) continue;
        cos.push_back({reps[j], S});
      }
      if (cos.empty()) return id;
      std::stable_sort(cos.begin(), cos.end(), [](const PermCoset& a, const PermCoset& b) {
        return a.group.strong_generators().size() < b.group.strong_generators().size();
      });
      PermCoset acc = cos[0];
      for (std::size_t j = 1; j < cos.size() && acc.rep; ++j) acc = coset_intersection(acc, cos[j]);
      return acc.rep;
    }
    BlockChain c = block_chain(G, B);
    auto ms = multisets(c, src), mt = multisets(c, tgt);
    std::vector<std::pair<int, int>> cand;
    for (int gamma : c.P.orbit(0)) {
      int img = gamma - c.M;
      if (ms[0] == mt[img]) cand.push_back({img, gamma});
    }
    std::sort(cand.begin(), cand.end());
    std::atomic<std::size_t> leaves{0};
    std::vector<std::optional<Perm>> res(cand.size());
    auto hit = exec::parallel_find_first(std::int64_t(cand.size()), [&](std::int64_t k) {
      Perm h = c.P.transversal_elem(0, cand[k].second);
      res[k] = descend(c, 1, h, ms, mt, B, tgt, leaves);
      return res[k].has_value();
    });
    if (!hit) return std::nullopt;
    return res[*hit];
  }
};

void check_stable(const PermGroup& G, const std::vector<int>& B) {
  std::vector<char> in(G.degree(), 0);
  for (int x : B) in[x] = 1;
  for (const auto& g : G.strong_generators())
    for (int x : B)
      if (!in[g[x]]) throw Error("NotStable", "point set is not invariant under the group");
}

}  // namespace

PermCoset color_coset(const PermCoset& c, const std::vector<int>& B0, const std::vector<int>& src,
                      const std::vector<int>& tgt, std::size_t cap) {
  PermCoset out;
  const PermGroup& G = c.group;
  out.group = PermGroup(G.degree());
  if (!c.rep) return out;
  std::vector<int> B(B0);
  std::sort(B.begin(), B.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());
  check_stable(G, B);
  std::vector<int> t2(tgt.size(), 0);
  for (int x : B) t2[x] = tgt[(*c.rep)[x]];
  std::vector<int> s2(src.size(), 0);
  for (int x : B) s2[x] = src[x];
  ColorSearch cs{s2, cap, {}, {}};
  auto r = cs.rep(G, B, t2);
  if (!r) return out;
  out.rep = perm_mul(*c.rep, *r);
  out.group = cs.stab(G, B);
  return out;
}

PermGroup color_stabilizer(const PermGroup& G, const std::vector<int>& B0,
                           const std::vector<int>& colors, std::size_t cap) {
  std::vector<int> B(B0);
  std::sort(B.begin(), B.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());
  check_stable(G, B);
  ColorSearch cs{colors, cap, {}, {}};
  return cs.stab(G, B);
}

// ------------------------------------------------------ layered graphs

namespace {

// Father object of a new vertex: its neighbors one level up with the
// connecting edge colors, encoded as [1, u1, c1, u2, c2, ...]. A pair of
// old vertices is [0, u, v].
using Obj = std::vector<int>;

Obj map_obj(const Obj& o, const Perm& g) {
  if (o[0] == 0) {
    int a = g[o[1]], b = g[o[2]];
    return {0, std::min(a, b), std::max(a, b)};
  }
  std::vector<std::pair<int, int>> f;
  for (std::size_t i = 1; i < o.size(); i += 2) f.push_back({g[o[i]], o[i + 1]});
  std::sort(f.begin(), f.end());
  Obj r{1};
  for (auto [u, c] : f) r.push_back(u), r.push_back(c);
  return r;
}

struct LevelView {
  int m;
  std::vector<int> A, d;
  const Graph* G;
};

// Father object of v (at level r) with vertex names passed through `name`.
Obj father(const LevelView& V, int v, int r, const Perm& name) {
  std::vector<std::pair<int, int>> f;
  for (int u = 0; u < V.m; ++u)
    if (V.d[u] == r - 1 && V.A[std::size_t(u) * V.m + v]) f.push_back({name[u], V.A[std::size_t(u) * V.m + v]});
  std::sort(f.begin(), f.end());
  Obj o{1};
  for (auto [u, c] : f) o.push_back(u), o.push_back(c);
  return o;
}

bool iso_on_layer(const LevelView& X, const LevelView& Y, Edge e, const Perm& s, int r) {
  // edges of X_r and Y_r correspond under s, with colors
  auto in_layer = [&](const LevelView& V, int u, int v) {
    if (V.d[u] < 0 || V.d[v] < 0) return false;
    return std::min(V.d[u], V.d[v]) <= r - 2;
  };
  std::size_t cx = 0, cy = 0;
  for (int u = 0; u < X.m; ++u)
    for (int v = u + 1; v < X.m; ++v) {
      bool isE = (Edge{u, v} == e || Edge{v, u} == e);
      if (X.A[std::size_t(u) * X.m + v] && (isE || in_layer(X, u, v))) {
        ++cx;
        if (X.A[std::size_t(u) * X.m + v] != Y.A[std::size_t(s[u]) * X.m + s[v]]) return false;
      }
    }
  for (int u = 0; u < Y.m; ++u)
    for (int v = u + 1; v < Y.m; ++v)
      if (Y.A[std::size_t(u) * Y.m + v] && (in_layer(Y, u, v) || (Y.d[u] == 0 && Y.d[v] == 0))) ++cy;
  for (int v = 0; v < X.m; ++v)
    if (X.d[v] >= 0 && X.d[v] <= r - 1 && X.G->vcolor(v) != Y.G->vcolor(s[v])) return false;
  return cx == cy;
}

}  // namespace

std::vector<Perm> kernel_layer_generators(const Graph& X, Edge e, int r) {
  LevelView V{X.m, X.adjacency(), edge_distances(X, e), &X};
  Perm id = perm_identity(X.m);
  std::map<std::pair<Obj, int>, std::vector<int>> fib;
  for (int v = 0; v < X.m; ++v)
    if (V.d[v] == r) fib[{father(V, v, r, id), X.vcolor(v)}].push_back(v);
  std::vector<Perm> out;
  for (auto& [k, cell] : fib)
    for (auto& g : symmetric_generators(cell, X.m)) out.push_back(g);
  return out;
}

PermCoset edge_iso_coset(const Graph& X, Edge e, const Graph& Y, Edge f) {
  PermCoset empty;
  int m = X.m;
  empty.group = PermGroup(m);
  if (Y.m != m) return empty;
  LevelView VX{m, X.adjacency(), edge_distances(X, e), &X};
  LevelView VY{m, Y.adjacency(), edge_distances(Y, f), &Y};
  for (int v = 0; v < m; ++v)
    if (VX.d[v] < 0 || VY.d[v] < 0) throw Error("NotConnected", "layered search needs connected graphs");
  int maxd = *std::max_element(VX.d.begin(), VX.d.end());
  {
    std::map<std::pair<int, int>, int> h;
    for (int v = 0; v < m; ++v) ++h[{VX.d[v], X.vcolor(v)}], --h[{VY.d[v], Y.vcolor(v)}];
    for (auto& [k, c] : h)
      if (c) return empty;
  }
  auto [a, b] = e;
  auto [fa, fb] = f;
  if (VX.A[std::size_t(a) * m + b] != VY.A[std::size_t(fa) * m + fb]) return empty;
  if (X.vcolor(a) != Y.vcolor(fa) || X.vcolor(b) != Y.vcolor(fb)) std::swap(fa, fb);
  if (X.vcolor(a) != Y.vcolor(fa) || X.vcolor(b) != Y.vcolor(fb)) return empty;

  auto fill_rest = [&](Perm& s, const std::vector<char>& setX) {
    std::vector<char> used(m, 0);
    for (int v = 0; v < m; ++v)
      if (setX[v]) used[s[v]] = 1;
    int w = 0;
    for (int v = 0; v < m; ++v) {
      if (setX[v]) continue;
      while (used[w]) ++w;
      s[v] = w++;
    }
  };
  Perm sigma(m, -1);
  sigma[a] = fa;
  sigma[b] = fb;
  {
    std::vector<char> setX(m, 0);
    setX[a] = setX[b] = 1;
    fill_rest(sigma, setX);
  }
  std::vector<Perm> g0;
  if (X.vcolor(a) == X.vcolor(b)) {
    Perm t = perm_identity(m);
    std::swap(t[a], t[b]);
    g0.push_back(t);
  }
  PermGroup G(m, g0);
  Perm id = perm_identity(m);

  for (int r = 1; r <= maxd + 1; ++r) {
    Perm sinv = perm_inv(sigma);
    std::vector<int> L;
    for (int v = 0; v < m; ++v)
      if (VX.d[v] == r - 1) L.push_back(v);
    std::map<Obj, std::map<int, int>> cntX, cntY;
    std::vector<int> newX, newY;
    std::vector<Obj> objX(m), objY(m);
    for (int v = 0; v < m; ++v) {
      if (VX.d[v] == r) {
        newX.push_back(v);
        objX[v] = father(VX, v, r, id);
        ++cntX[objX[v]][X.vcolor(v)];
      }
      if (VY.d[v] == r) {
        newY.push_back(v);
        objY[v] = father(VY, v, r, sinv);
        ++cntY[objY[v]][Y.vcolor(v)];
      }
    }
    // domain of objects, closed under G
    std::vector<Obj> D;
    std::map<Obj, int> idx;
    auto add = [&](const Obj& o) {
      if (idx.emplace(o, int(D.size())).second) D.push_back(o);
    };
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t j = i + 1; j < L.size(); ++j) {
        if (r == 1) continue;
        add({0, L[i], L[j]});
      }
    for (auto& [o, c] : cntX) add(o);
    for (auto& [o, c] : cntY) add(o);
    const auto& sg = G.strong_generators();
    for (std::size_t k = 0; k < D.size(); ++k)
      for (const auto& g : sg) add(map_obj(D[k], g));
    int M = m + int(D.size());
    std::vector<Perm> ext;
    for (const auto& g : sg) {
      Perm x(M);
      for (int v = 0; v < m; ++v) x[v] = g[v];
      for (std::size_t k = 0; k < D.size(); ++k) x[m + k] = m + idx.at(map_obj(D[k], g));
      ext.push_back(x);
    }
    std::map<std::vector<int>, int> sig;
    auto sig_id = [&](std::vector<int> s) { return sig.emplace(s, int(sig.size())).first->second; };
    std::vector<int> src(M, -1), tgt(M, -1);
    std::vector<int> B;
    for (std::size_t k = 0; k < D.size(); ++k) {
      const Obj& o = D[k];
      B.push_back(m + int(k));
      if (o[0] == 0) {
        src[m + k] = sig_id({0, VX.A[std::size_t(o[1]) * m + o[2]]});
        tgt[m + k] = sig_id({0, VY.A[std::size_t(sigma[o[1]]) * m + sigma[o[2]]]});
      } else {
        auto enc = [&](const std::map<Obj, std::map<int, int>>& cnt) {
          std::vector<int> s{1};
          auto it = cnt.find(o);
          if (it != cnt.end())
            for (auto [c, n] : it->second) s.push_back(c), s.push_back(n);
          return sig_id(s);
        };
        src[m + k] = enc(cntX);
        tgt[m + k] = enc(cntY);
      }
    }
    PermCoset start{perm_identity(M), PermGroup(M, ext)};
    PermCoset res = color_coset(start, B, src, tgt);
    if (res.empty()) return empty;
    Perm g = restrict_perm(*res.rep, m);
    std::vector<Perm> stab;
    for (const auto& h : res.group.strong_generators()) stab.push_back(restrict_perm(h, m));

    // extend sigma∘g across the new vertices
    Perm lam(m, -1);
    for (int v = 0; v < m; ++v)
      if (VX.d[v] <= r - 1) lam[v] = sigma[g[v]];
    std::map<std::pair<Obj, int>, std::vector<int>> fx, fy, fself;
    for (int v : newX) fx[{map_obj(objX[v], g), X.vcolor(v)}].push_back(v);
    for (int w : newY) fy[{objY[w], Y.vcolor(w)}].push_back(w);
    for (int v : newX) fself[{objX[v], X.vcolor(v)}].push_back(v);
    if (fx.size() != fy.size()) throw Error("Internal", "fiber mismatch in layered search");
    for (auto& [k, vs] : fx) {
      auto it = fy.find(k);
      if (it == fy.end() || it->second.size() != vs.size())
        throw Error("Internal", "fiber mismatch in layered search");
      for (std::size_t i = 0; i < vs.size(); ++i) lam[vs[i]] = it->second[i];
    }
    std::vector<char> setX(m, 0);
    for (int v = 0; v < m; ++v) setX[v] = VX.d[v] <= r;
    fill_rest(lam, setX);
    if (!iso_on_layer(VX, VY, e, lam, r + 1)) throw Error("Internal", "layer extension failed");
    sigma = lam;

    std::vector<Perm> gens;
    for (const auto& h : stab) {
      Perm x = h;
      for (auto& [k, vs] : fself) {
        const auto& to = fself.at({map_obj(k.first, h), k.second});
        for (std::size_t i = 0; i < vs.size(); ++i) x[vs[i]] = to[i];
      }
      gens.push_back(x);
    }
    for (auto& [k, vs] : fself)
      for (auto& t : symmetric_generators(vs, m)) gens.push_back(t);
    G = PermGroup(m, gens);
  }
  return PermCoset{sigma, G};
}

PermGroup aut_edge_fixed(const Graph& X, Edge e) {
  X.check();
  return edge_iso_coset(X, e, X, e).group;
}

// --------------------------------------------------------- whole graphs

namespace {

struct Component {
  std::vector<int> verts;  // global names, sorted
  Graph g;                 // renumbered
};

std::vector<Component> components(const Graph& X) {
  std::vector<std::vector<int>> adj(X.m);
  for (auto [u, v] : X.edges) adj[u].push_back(v), adj[v].push_back(u);
  std::vector<int> comp(X.m, -1);
  std::vector<Component> out;
  for (int s = 0; s < X.m; ++s) {
    if (comp[s] >= 0) continue;
    Component c;
    std::deque<int> q{s};
    comp[s] = int(out.size());
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      c.verts.push_back(x);
      for (int y : adj[x])
        if (comp[y] < 0) comp[y] = int(out.size()), q.push_back(y);
    }
    std::sort(c.verts.begin(), c.verts.end());
    std::vector<int> loc(X.m, -1);
    for (std::size_t i = 0; i < c.verts.size(); ++i) loc[c.verts[i]] = int(i);
    c.g.m = int(c.verts.size());
    for (int v : c.verts) c.g.vertex_colors.push_back(X.vcolor(v));
    for (std::size_t i = 0; i < X.edges.size(); ++i) {
      auto [u, v] = X.edges[i];
      if (loc[u] < 0) continue;
      c.g.edges.push_back({loc[u], loc[v]});
      c.g.edge_colors.push_back(X.ecolor(int(i)));
    }
    out.push_back(c);
  }
  return out;
}

std::vector<int> signature(const Graph& g) {
  std::vector<int> s{g.m, int(g.edges.size())};
  std::vector<int> vc, ec;
  for (int v = 0; v < g.m; ++v) vc.push_back(g.vcolor(v));
  for (std::size_t i = 0; i < g.edges.size(); ++i) ec.push_back(g.ecolor(int(i)));
  std::sort(vc.begin(), vc.end());
  std::sort(ec.begin(), ec.end());
  s.insert(s.end(), vc.begin(), vc.end());
  s.push_back(-1);
  s.insert(s.end(), ec.begin(), ec.end());
  return s;
}

std::optional<Perm> component_iso(const Graph& X, const Graph& Y) {
  if (signature(X) != signature(Y)) return std::nullopt;
  if (X.edges.empty()) return perm_identity(X.m);  // single vertex
  Edge e = X.edges[0];
  std::vector<std::optional<Perm>> res(Y.edges.size());
  auto hit = exec::parallel_find_first(std::int64_t(Y.edges.size()), [&](std::int64_t k) {
    auto c = edge_iso_coset(X, e, Y, Y.edges[k]);
    res[k] = c.rep;
    return c.rep.has_value();
  });
  if (!hit) return std::nullopt;
  return res[*hit];
}

}  // namespace

std::optional<Perm> graph_iso(const Graph& X, const Graph& Y) {
  X.check();
  Y.check();
  if (X.m != Y.m || X.edges.size() != Y.edges.size()) return std::nullopt;
  auto cx = components(X), cy = components(Y);
  if (cx.size() != cy.size()) return std::nullopt;
  std::vector<char> used(cy.size(), 0);
  Perm phi(X.m, -1);
  for (const auto& a : cx) {
    bool ok = false;
    for (std::size_t j = 0; j < cy.size() && !ok; ++j) {
      if (used[j]) continue;
      auto p = component_iso(a.g, cy[j].g);
      if (!p) continue;
      used[j] = 1;
      ok = true;
      for (std::size_t i = 0; i < a.verts.size(); ++i) phi[a.verts[i]] = cy[j].verts[(*p)[i]];
    }
    if (!ok) return std::nullopt;
  }
  if (!is_graph_isomorphism(X, Y, phi)) throw Error("Internal", "graph isomorphism failed to verify");
  return phi;
}

// ------------------------------------------------------ bipartite

PermCoset colored_bipartite_iso(const BipartiteColors& A, const BipartiteColors& Bm) {
  int d = int(A.cells.size());
  int c = d ? int(A.cells[0].size()) : 0;
  if (int(Bm.cells.size()) != d || (d && int(Bm.cells[0].size()) != c))
    throw Error("DimensionMismatch", "bipartite color matrices differ in shape");
  for (const auto* X : {&A, &Bm})
    for (const auto& row : X->cells)
      if (int(row.size()) != c) throw Error("DimensionMismatch", "ragged matrix");
  int n = d + c, M = n + d * c;
  auto cell = [&](int i, int j) { return n + i * c + j; };
  auto lift = [&](const Perm& rows, const Perm& cols) {
    Perm p(M);
    for (int i = 0; i < d; ++i) p[i] = rows[i];
    for (int j = 0; j < c; ++j) p[d + j] = d + cols[j];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < c; ++j) p[cell(i, j)] = cell(rows[i], cols[j]);
    return p;
  };
  std::vector<int> all_r(d), all_c(c);
  std::iota(all_r.begin(), all_r.end(), 0);
  std::iota(all_c.begin(), all_c.end(), 0);
  std::vector<Perm> gens;
  for (auto& g : symmetric_generators(all_r, d)) gens.push_back(lift(g, perm_identity(c)));
  for (auto& g : symmetric_generators(all_c, c)) gens.push_back(lift(perm_identity(d), g));
  std::vector<int> src(M, 0), tgt(M, 0), B(M);
  std::iota(B.begin(), B.end(), 0);
  for (int i = 0; i < d; ++i) {
    src[i] = A.row_colors.empty() ? 0 : A.row_colors[i];
    tgt[i] = Bm.row_colors.empty() ? 0 : Bm.row_colors[i];
  }
  for (int j = 0; j < c; ++j) {
    src[d + j] = A.col_colors.empty() ? 0 : A.col_colors[j];
    tgt[d + j] = Bm.col_colors.empty() ? 0 : Bm.col_colors[j];
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < c; ++j) {
      src[cell(i, j)] = A.cells[i][j];
      tgt[cell(i, j)] = Bm.cells[i][j];
    }
  PermCoset res = color_coset(PermCoset{perm_identity(M), PermGroup(M, gens)}, B, src, tgt);
  PermCoset out;
  std::vector<Perm> g2;
  for (const auto& g : res.group.strong_generators()) g2.push_back(restrict_perm(g, n));
  out.group = PermGroup(n, g2);
  if (res.rep) out.rep = restrict_perm(*res.rep, n);
  return out;
}

PermCoset colored_bipartite_iso(const std::vector<std::vector<int>>& A1,
                                const std::vector<std::vector<int>>& B1) {
  return colored_bipartite_iso(BipartiteColors{A1, {}, {}}, BipartiteColors{B1, {}, {}});
}

}  // namespace gpi
