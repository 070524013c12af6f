#include <algorithm>
#include <numeric>
#include <random>
#include <functional>
#include <set>

#include "doctest.h"
#include "gpi/graph.hpp"

using namespace gpi;

namespace {

Graph make(int m, std::vector<Edge> e) {
  Graph g;
  g.m = m;
  g.edges = std::move(e);
  return g;
}

Graph random_graph(std::mt19937_64& rng, int m, double p, bool colors = false) {
  Graph g;
  g.m = m;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v)
      if (std::uniform_real_distribution<>(0, 1)(rng) < p) {
        g.edges.push_back({u, v});
        if (colors) g.edge_colors.push_back(int(rng() % 2));
      }
  if (colors)
    for (int v = 0; v < m; ++v) g.vertex_colors.push_back(int(rng() % 2));
  return g;
}

bool connected(const Graph& g) {
  std::vector<int> par(g.m);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> f = [&](int x) { return par[x] == x ? x : par[x] = f(par[x]); };
  for (auto [u, v] : g.edges) par[f(u)] = f(v);
  for (int v = 0; v < g.m; ++v)
    if (f(v) != f(0)) return false;
  return true;
}

std::uint64_t brute_edge_aut(const Graph& X, Edge e) {
  Perm p = perm_identity(X.m);
  std::uint64_t c = 0;
  do {
    Edge img{p[e.first], p[e.second]};
    bool fixes = (img == e) || (img == Edge{e.second, e.first});
    if (fixes && is_graph_isomorphism(X, X, p)) ++c;
  } while (std::next_permutation(p.begin(), p.end()));
  return c;
}

bool brute_iso(const Graph& X, const Graph& Y) {
  if (X.m != Y.m) return false;
  Perm p = perm_identity(X.m);
  do {
    if (is_graph_isomorphism(X, Y, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Graph relabel(const Graph& X, const Perm& p) {
  Graph Y = X;
  for (auto& [u, v] : Y.edges) u = p[u], v = p[v];
  if (!X.vertex_colors.empty())
    for (int v = 0; v < X.m; ++v) Y.vertex_colors[p[v]] = X.vertex_colors[v];
  return Y;
}

}  // namespace

TEST_CASE("layered subgraphs") {
  Graph path = make(3, {{0, 1}, {1, 2}});
  CHECK(layered_subgraph(path, {0, 1}, 1).edges == std::vector<Edge>{{0, 1}});
  CHECK(layered_subgraph(path, {0, 1}, 2).edges.size() == 2);
  CHECK(layer_vertices(path, {0, 1}, 1) == std::vector<int>{0, 1});
  Graph c5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(layered_subgraph(c5, {0, 1}, 4).edges.size() == 5);
  CHECK_THROWS_AS(layered_subgraph(path, {0, 2}, 1), Error);
}

TEST_CASE("kernel layer generators") {
  Graph g = make(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(kernel_layer_generators(g, {0, 1}, 1).size() == 1);
  Graph s = make(5, {{0, 1}, {1, 2}, {1, 3}, {1, 4}});
  CHECK(kernel_layer_generators(s, {0, 1}, 1).size() == 2);
  Graph p = make(4, {{0, 1}, {1, 2}, {0, 3}});
  CHECK(kernel_layer_generators(p, {0, 1}, 1).empty());
}

TEST_CASE("edge-fixed automorphisms") {
  CHECK(aut_edge_fixed(make(2, {{0, 1}}), {0, 1}).order() == 2);
  CHECK(aut_edge_fixed(make(3, {{0, 1}, {1, 2}}), {0, 1}).order() == 1);
  CHECK(aut_edge_fixed(make(4, {{0, 1}, {0, 2}, {0, 3}}), {0, 1}).order() == 2);
  std::mt19937_64 rng(1);
  int tested = 0;
  for (int t = 0; t < 200 && tested < 60; ++t) {
    int m = 2 + int(rng() % 6);
    Graph g = random_graph(rng, m, 0.5, t % 3 == 0);
    if (g.edges.empty() || !connected(g)) continue;
    ++tested;
    Edge e = g.edges[rng() % g.edges.size()];
    auto A = aut_edge_fixed(g, e);
    CHECK(A.order() == brute_edge_aut(g, e));
    for (const auto& s : A.generators()) CHECK(is_graph_isomorphism(g, g, s));
  }
  CHECK(tested >= 40);
}

TEST_CASE("graph isomorphism") {
  Graph c5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  Graph p5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK_FALSE(graph_iso(c5, p5));
  Graph c6 = make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  Graph tt = make(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  CHECK_FALSE(graph_iso(c6, tt));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 150; ++t) {
    int m = 1 + int(rng() % 6);
    bool col = t % 4 == 0;
    Graph x = random_graph(rng, m, 0.45, col);
    Graph y = t % 2 ? random_graph(rng, m, 0.45, col) : x;
    Perm p = perm_identity(m);
    std::shuffle(p.begin(), p.end(), rng);
    y = relabel(y, p);
    auto r = graph_iso(x, y);
    CHECK(bool(r) == brute_iso(x, y));
    if (r) CHECK(is_graph_isomorphism(x, y, *r));
  }
}

TEST_CASE("color coset against enumeration") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    int m = 6;
    std::vector<Perm> gens;
    int ng = 1 + int(rng() % 2);
    for (int i = 0; i < ng; ++i) {
      Perm g = perm_identity(m);
      std::shuffle(g.begin(), g.end(), rng);
      gens.push_back(g);
    }
    PermGroup K(m, gens);
    std::vector<int> src(m), tgt(m);
    for (int& c : src) c = int(rng() % 3);
    Perm sigma = perm_identity(m);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    if (t % 2) {
      // a reachable target
      Perm g = K.elements()[rng() % K.order()];
      Perm sg = perm_mul(sigma, g);
      for (int x = 0; x < m; ++x) tgt[sg[x]] = src[x];
    } else {
      for (int& c : tgt) c = int(rng() % 3);
    }
    std::vector<int> B(m);
    std::iota(B.begin(), B.end(), 0);
    auto C = color_coset(PermCoset{sigma, K}, B, src, tgt);
    std::set<Perm> brute;
    for (const auto& k : K.elements()) {
      Perm g = perm_mul(sigma, k);
      bool ok = true;
      for (int x = 0; x < m; ++x) ok = ok && tgt[g[x]] == src[x];
      if (ok) brute.insert(g);
    }
    CHECK(C.empty() == brute.empty());
    if (!C.empty()) {
      CHECK(C.group.order() == brute.size());
      for (const auto& h : C.group.elements()) CHECK(brute.count(perm_mul(*C.rep, h)));
    }
  }
  // uniform colors keep everything
  PermGroup S(4, symmetric_generators({0, 1, 2, 3}, 4));
  auto C = color_coset(PermCoset{perm_identity(4), S}, {0, 1, 2, 3}, {1, 1, 1, 1}, {1, 1, 1, 1});
  CHECK(C.group.order() == 24);
  auto E = color_coset(PermCoset{perm_identity(2), PermGroup(2)}, {0, 1}, {0, 1}, {1, 0});
  CHECK(E.empty());
}

TEST_CASE("colored bipartite isomorphism") {
  auto C = colored_bipartite_iso({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
  REQUIRE_FALSE(C.empty());
  CHECK(C.group.order() == 2);
  CHECK_FALSE(colored_bipartite_iso({{1, 1}}, {{1, 0}}).rep);
  CHECK(colored_bipartite_iso({{0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 0}}).group.order() == 12);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    int d = 1 + int(rng() % 3), c = 1 + int(rng() % 4);
    std::vector<std::vector<int>> A(d, std::vector<int>(c)), B;
    for (auto& r : A)
      for (auto& x : r) x = int(rng() % 2);
    if (t % 2) {
      std::vector<int> pr(d), pc(c);
      std::iota(pr.begin(), pr.end(), 0);
      std::iota(pc.begin(), pc.end(), 0);
      std::shuffle(pr.begin(), pr.end(), rng);
      std::shuffle(pc.begin(), pc.end(), rng);
      B.assign(d, std::vector<int>(c));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < c; ++j) B[pr[i]][pc[j]] = A[i][j];
    } else {
      B = A;
      for (auto& r : B)
        for (auto& x : r) x = int(rng() % 2);
    }
    auto R = colored_bipartite_iso(A, B);
    std::size_t count = 0;
    std::vector<int> pr(d), pc(c);
    std::iota(pr.begin(), pr.end(), 0);
    do {
      std::iota(pc.begin(), pc.end(), 0);
      do {
        bool ok = true;
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < c; ++j) ok = ok && B[pr[i]][pc[j]] == A[i][j];
        if (ok) {
          ++count;
          Perm g(d + c);
          for (int i = 0; i < d; ++i) g[i] = pr[i];
          for (int j = 0; j < c; ++j) g[d + j] = d + pc[j];
          CHECK(R.contains(g));
        }
      } while (std::next_permutation(pc.begin(), pc.end()));
    } while (std::next_permutation(pr.begin(), pr.end()));
    CHECK(R.empty() == (count == 0));
    if (!R.empty()) CHECK(R.group.order() == count);
  }
}
