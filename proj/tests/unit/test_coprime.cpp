#include <random>
#include <set>

#include "doctest.h"
#include "gpi/build.hpp"
#include "gpi/coprime.hpp"
#include "gpi/oracle.hpp"

using namespace gpi;

namespace {

bool agrees(const std::string& a, const std::string& b) {
  auto G1 = build_group(a), G2 = build_group(b);
  auto v = iso_HAE(G1, G2);
  bool oracle = oracle_iso(G1, G2).has_value();
  if (v.iso) {
    REQUIRE(v.witness);
    CHECK(is_isomorphism(G1, G2, *v.witness));
  }
  return v.iso == oracle;
}

}  // namespace

TEST_CASE("coprime decomposition") {
  auto S3 = sym_group(3);
  auto d = decompose_coprime(S3);
  REQUIRE(d);
  CHECK(d->N.order() == 3);
  CHECK(d->quot.table.order() == 2);
  // the non-trivial coset inverts N
  for (std::size_t i = 0; i < d->N.elems.size(); ++i)
    CHECK(d->action[1][i] == S3.inv(d->N.elems[i]));
  auto Z = cyclic_group(12);
  d = decompose_coprime(Z);
  REQUIRE(d);
  CHECK(d->N.order() == 12);
  CHECK_FALSE(decompose_coprime(sym_group(4)));
  // conjugation is constant on cosets
  auto G = build_group("semidirect(q=3,l=1,p=2,k=2,action=[[0,1],[1,1]])");
  d = decompose_coprime(G);
  REQUIRE(d);
  for (Elem g = 0; g < G.order(); ++g) {
    int x = d->quot.proj.image[g];
    for (std::size_t i = 0; i < d->N.elems.size(); ++i) CHECK(G.conj(g, d->N.elems[i]) == d->action[x][i]);
  }
  auto h = decompose_coprime(cyclic_group(6), 2);
  REQUIRE(h);
  CHECK(h->N.order() == 3);
}

TEST_CASE("Ranum matrices") {
  auto A = abelian_group({2, 4});
  auto b = abelian_basis(A);
  std::vector<Elem> id(A.order());
  for (int i = 0; i < A.order(); ++i) id[i] = i;
  CHECK(ranum_matrix(A, b, id) == ranum_identity(2, {1, 2}));
  // g1 -> g1, g2 -> g1 g2
  std::vector<Elem> alpha(A.order());
  for (Elem x = 0; x < A.order(); ++x) {
    auto c = basis_coordinates(A, b, x);
    alpha[x] = basis_element(A, b, {(c[0] + c[1]) % 2, c[1]});
  }
  REQUIRE(is_isomorphism(A, A, alpha));
  auto U = ranum_matrix(A, b, alpha);
  CHECK(U.u[0][1] == 1);
  CHECK(U.u[1][0] % 2 == 0);
  for (Elem x = 0; x < A.order(); ++x) CHECK(ranum_apply(A, b, U, x) == alpha[x]);

  for (auto [p, exps] : std::vector<std::pair<int, std::vector<int>>>{{2, {1, 2}}, {3, {1, 2}}, {2, {1, 1, 2}}}) {
    auto all = all_ranum_matrices(p, exps);
    std::vector<int> moduli;
    for (int e : exps) moduli.push_back(e == 1 ? p : p * p);
    auto aut = oracle_aut(abelian_group(moduli));
    CHECK(all.size() == aut.size());
    std::mt19937_64 rng(p * 31 + int(exps.size()));
    for (int t = 0; t < 30; ++t) {
      const auto& X = all[rng() % all.size()];
      const auto& Y = all[rng() % all.size()];
      auto XY = ranum_mul(X, Y);
      CHECK(ranum_valid(XY));
      CHECK(psi_p(XY) == mat_mul(psi_p(X), psi_p(Y)));
      // composition matches applying twice
      std::vector<int> x(exps.size());
      for (std::size_t i = 0; i < exps.size(); ++i) x[i] = int(rng() % XY.modulus(int(i)));
      CHECK(ranum_apply(XY, x) == ranum_apply(X, ranum_apply(Y, x)));
    }
  }
  CHECK(psi_p(ranum_identity(3, {1, 2})) == FpMatrix::identity(3, 2));
}

TEST_CASE("classification") {
  auto c = classify_coprime(cyclic_group(12));
  CHECK(c.hae);
  CHECK_FALSE(c.hprode);
  c = classify_coprime(sym_group(3));
  CHECK((c.hae && c.hprode && c.hee));
  c = classify_coprime(cyclic_group(6));
  CHECK(c.hee);
  c = classify_coprime(cyclic_group(30));
  CHECK((c.hprode && !c.hee));
  c = classify_coprime(sym_group(4));
  CHECK_FALSE(c.hae);
  c = classify_coprime(build_group("direct_product(sym(3),dihedral(10))"));
  CHECK((c.hprode && !c.hee));
  CHECK_THROWS(iso_HEE(cyclic_group(30), cyclic_group(30)));
}

TEST_CASE("isomorphism examples") {
  CHECK_FALSE(iso_HEE(sym_group(3), cyclic_group(6)).iso);
  CHECK_FALSE(iso_HEE(build_group("semidirect(q=3,l=1,p=7,k=1,action=[[2]])"), cyclic_group(21)).iso);
  auto G = build_group("semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,2]])");
  auto v = iso_HEE(G, build_group("relabel(semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,2]]),5)"));
  CHECK(v.iso);
  CHECK(v.witness);
  CHECK_FALSE(iso_HEE(G, build_group("semidirect(q=2,l=1,p=3,k=2,action=[[1,0],[0,2]])")).iso);
  // Z3 x S3 in two guises
  CHECK(iso_HEE(build_group("semidirect(q=2,l=1,p=3,k=2,action=[[1,0],[0,2]])"),
                build_group("semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,1]])")).iso);
  CHECK(agrees("semidirect(q=2,l=1,p=3,k=2,action=[[1,0],[0,2]])", "direct_product(cyclic(3),sym(3))"));
  CHECK(agrees("cyclic(18)", "direct_product(cyclic(3),sym(3))"));
  // order 30: inverting both factors vs one
  CHECK(agrees("dihedral(30)", "direct_product(cyclic(5),sym(3))"));
  CHECK_FALSE(iso_HprodE(build_group("dihedral(30)"), build_group("direct_product(cyclic(5),sym(3))")).iso);
  // the same per-prime pieces glued through different complements
  CHECK(agrees("direct_product(sym(3),dihedral(10))", "direct_product(cyclic(2),dihedral(30))"));
  // exponent blocks stay apart
  CHECK(agrees("direct_product(sym(3),cyclic(9))", "direct_product(cyclic(3),dihedral(18))"));
  CHECK(agrees("dihedral(18)", "cyclic(18)"));
  CHECK(agrees("dihedral(18)", "relabel(dihedral(18),3)"));
  CHECK(agrees("semidirect(q=3,l=1,p=2,k=3,action=[[0,1,0],[1,1,0],[0,0,1]],n=[2,2,4])",
               "semidirect(q=3,l=1,p=2,k=3,action=[[1,1,0],[1,0,0],[0,0,1]],n=[2,2,4])"));
  CHECK(agrees("semidirect(q=3,l=1,p=2,k=3,action=[[0,1,0],[1,1,0],[0,0,1]],n=[2,2,4])",
               "direct_product(cyclic(4),alt(4))"));
  CHECK(agrees("abelian([4,3,5])", "relabel(cyclic(60),2)"));
  CHECK(agrees("abelian([2,2,3])", "cyclic(12)"));
}

TEST_CASE("oracle agreement on random semidirect products") {
  std::mt19937_64 rng(99);
  // Z_q^l acting on Z_p^k through random matrices of order dividing q
  struct Shape { int q, l, p, k; };
  std::vector<Shape> shapes{{2, 1, 3, 2}, {3, 1, 2, 2}, {2, 2, 3, 2}, {3, 1, 7, 1}, {2, 1, 5, 2}, {3, 1, 2, 3}};
  int checked = 0;
  for (auto sh : shapes) {
    std::vector<std::string> descs;
    for (int t = 0; t < 40 && descs.size() < 5; ++t) {
      // commuting generators: powers of one random matrix of order dividing q
      FpMatrix M(sh.p, sh.k, sh.k);
      for (int& x : M.a) x = int(rng() % sh.p);
      if (rank(M) < sh.k || mat_pow(M, sh.q) != FpMatrix::identity(sh.p, sh.k)) continue;
      std::string act = "[";
      for (int i = 0; i < sh.l; ++i) {
        FpMatrix g = mat_pow(M, i == 0 ? 1 : int(rng() % sh.q));
        std::string m = "[";
        for (int r = 0; r < sh.k; ++r) {
          m += "[";
          for (int c = 0; c < sh.k; ++c) m += std::to_string(g(r, c)) + (c + 1 < sh.k ? "," : "");
          m += std::string("]") + (r + 1 < sh.k ? "," : "");
        }
        m += "]";
        act += m + (i + 1 < sh.l ? "," : "");
      }
      act += "]";
      if (sh.l == 1) act = act.substr(1, act.size() - 2);
      descs.push_back("semidirect(q=" + std::to_string(sh.q) + ",l=" + std::to_string(sh.l) + ",p=" +
                      std::to_string(sh.p) + ",k=" + std::to_string(sh.k) + ",action=" + act + ")");
    }
    for (std::size_t i = 0; i < descs.size(); ++i)
      for (std::size_t j = i; j < descs.size(); ++j) {
        CHECK(agrees(descs[i], descs[j]));
        ++checked;
      }
  }
  CHECK(checked > 20);
}
