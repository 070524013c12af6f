#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "gpi/perm.hpp"

using namespace gpi;

namespace {

Perm cyc(int m, std::vector<int> c) {
  Perm p = perm_identity(m);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

std::set<Perm> closure_set(const std::vector<Perm>& gens, int m) {
  std::set<Perm> s{perm_identity(m)};
  std::vector<Perm> todo{perm_identity(m)};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm y = perm_mul(g, x);
      if (s.insert(y).second) todo.push_back(y);
    }
  }
  return s;
}

Perm random_perm(int m, std::mt19937_64& rng) {
  Perm p = perm_identity(m);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("bsgs orders") {
  CHECK(bsgs_build({}, 5).order() == 1);
  CHECK(bsgs_build({cyc(7, {0, 1, 2, 3, 4, 5, 6})}, 7).order() == 7);
  CHECK(bsgs_build({cyc(4, {0, 1}), cyc(4, {0, 1, 2, 3})}, 4).order() == 24);
  CHECK_THROWS_AS(bsgs_build({cyc(4, {0, 1})}, 5), Error);
}

TEST_CASE("membership words") {
  auto A4 = bsgs_build({cyc(4, {0, 1, 2}), cyc(4, {1, 2, 3})}, 4);
  CHECK(membership(A4, perm_identity(4))->empty());
  CHECK_FALSE(membership(A4, cyc(4, {0, 1})));
  std::mt19937_64 rng(5);
  std::vector<Perm> gens{cyc(6, {0, 1}), cyc(6, {0, 1, 2, 3, 4, 5})};
  auto S6 = bsgs_build(gens, 6);
  for (int t = 0; t < 20; ++t) {
    Perm g = perm_identity(6);
    for (int k = 0; k < 15; ++k) g = perm_mul(g, gens[rng() % 2]);
    auto w = membership(S6, g);
    REQUIRE(w);
    CHECK(eval_word(*w, gens, 6) == g);
  }
}

TEST_CASE("stabilizers and kernels") {
  auto S4 = bsgs_build({cyc(4, {0, 1}), cyc(4, {0, 1, 2, 3})}, 4);
  CHECK(pointwise_stabilizer(S4, {}).order() == 24);
  CHECK(pointwise_stabilizer(S4, {0}).order() == 6);
  CHECK(pointwise_stabilizer(S4, {0, 1, 2, 3}).order() == 1);
  CHECK(kernel_of_action(S4, {0, 0, 0, 0}).order() == 24);
  CHECK(kernel_of_action(S4, {0, 1, 2, 3}).order() == 1);
  // action on the three pair partitions, through the 6 unordered pairs:
  // domain = 4 points + 6 pair points, pairs map to their partition
  std::vector<std::pair<int, int>> pairs{{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 3}, {1, 2}};
  auto ext = [&](const Perm& g) {
    Perm e(10);
    for (int x = 0; x < 4; ++x) e[x] = g[x];
    for (int i = 0; i < 6; ++i) {
      auto [a, b] = pairs[i];
      int u = std::min(g[a], g[b]), v = std::max(g[a], g[b]);
      for (int j = 0; j < 6; ++j)
        if (pairs[j] == std::make_pair(u, v)) e[4 + i] = 4 + j;
    }
    return e;
  };
  PermGroup S4e(10, {ext(cyc(4, {0, 1})), ext(cyc(4, {0, 1, 2, 3}))});
  std::vector<int> act(10, -1);
  for (int i = 0; i < 6; ++i) act[4 + i] = i / 2;
  CHECK(kernel_of_action(S4e, act).order() == 4);
  std::vector<int> bad(10, -1);
  bad[4] = 0;
  CHECK_THROWS_AS(kernel_of_action(S4e, bad), Error);
}

TEST_CASE("reduce generators") {
  std::mt19937_64 rng(1);
  std::vector<Perm> gens;
  for (int i = 0; i < 20; ++i) gens.push_back(random_perm(5, rng));
  PermGroup G(5, gens);
  auto r = reduce_generators(G);
  CHECK(r.size() <= 10);
  CHECK(PermGroup(5, r).order() == G.order());
  PermGroup D(4, {cyc(4, {0, 1}), cyc(4, {0, 1}), cyc(4, {0, 1})});
  CHECK(reduce_generators(D).size() == 1);
}

TEST_CASE("orbits and blocks") {
  CHECK(orbits(PermGroup(3)).size() == 3);
  CHECK(orbits(PermGroup(5, {cyc(5, {0, 1, 2, 3, 4})})).size() == 1);
  auto o = orbits(PermGroup(4, {cyc(4, {0, 1})}));
  CHECK(o == std::vector<std::vector<int>>{{0, 1}, {2}, {3}});
  for (int m = 3; m <= 6; ++m) {
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    CHECK_FALSE(minimal_blocks(PermGroup(m, {cyc(m, {0, 1}), cyc(m, all)})));
  }
  Perm refl = perm_identity(4);
  refl[1] = 3;
  refl[3] = 1;
  auto b = minimal_blocks(PermGroup(4, {cyc(4, {0, 1, 2, 3}), refl}));
  REQUIRE(b);
  CHECK(*b == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  auto c6 = minimal_blocks(PermGroup(6, {cyc(6, {0, 1, 2, 3, 4, 5})}));
  REQUIRE(c6);
  CHECK(*c6 == std::vector<std::vector<int>>{{0, 3}, {1, 4}, {2, 5}});
  CHECK_THROWS_AS(minimal_blocks(PermGroup(4, {cyc(4, {0, 1})})), Error);
}

TEST_CASE("coset intersection") {
  PermGroup G(3, {cyc(3, {0, 1})});
  PermGroup H(3, {cyc(3, {0, 1, 2})});
  auto r = coset_intersection({perm_identity(3), G}, {perm_identity(3), H});
  REQUIRE(r.rep);
  CHECK(perm_is_identity(*r.rep));
  CHECK(r.group.order() == 1);
  PermGroup A(4, {cyc(4, {0, 1})});
  auto same = coset_intersection({cyc(4, {1, 2}), A}, {cyc(4, {1, 2}), A});
  REQUIRE(same.rep);
  CHECK(same.group.order() == 2);
  auto none = coset_intersection({perm_identity(4), A}, {cyc(4, {2, 3}), A});
  CHECK(none.empty());
}

TEST_CASE("coset intersection matches enumeration") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    int m = 3 + int(rng() % 4);
    std::vector<Perm> g1{random_perm(m, rng)}, g2{random_perm(m, rng), random_perm(m, rng)};
    if (t % 3 == 0) g1.push_back(random_perm(m, rng));
    PermGroup G(m, g1), H(m, g2);
    Perm x = random_perm(m, rng), y = random_perm(m, rng);
    auto r = coset_intersection({x, G}, {y, H});
    std::set<Perm> e1, e2;
    for (const auto& g : closure_set(g1, m)) e1.insert(perm_mul(x, g));
    for (const auto& h : closure_set(g2, m)) e2.insert(perm_mul(y, h));
    std::set<Perm> both;
    for (const auto& p : e1)
      if (e2.count(p)) both.insert(p);
    CHECK(r.empty() == both.empty());
    if (!both.empty()) {
      CHECK(both.count(*r.rep) == 1);
      CHECK(r.group.order() == both.size());
      for (const auto& p : both) CHECK(r.contains(p));
    }
  }
}

TEST_CASE("transversals") {
  PermGroup S3(3, {cyc(3, {0, 1}), cyc(3, {0, 1, 2})});
  PermGroup A3(3, {cyc(3, {0, 1, 2})});
  CHECK(transversal(S3, S3).size() == 1);
  CHECK(transversal(S3, A3).size() == 2);
  PermGroup S5(5, {cyc(5, {0, 1}), cyc(5, {0, 1, 2, 3, 4})});
  PermGroup D(5, {cyc(5, {0, 1, 2, 3, 4})});
  auto T = transversal(S5, D);
  CHECK(T.size() == 24);
  std::set<Perm> canon;
  for (const auto& t : T) canon.insert(canonical_coset_rep(D, t));
  CHECK(canon.size() == 24);
  CHECK_THROWS_AS(transversal(A3, S3), Error);
  CHECK_THROWS_AS(transversal(S5, PermGroup(5), 10), Error);
}
