#include "doctest.h"
#include "gpi/build.hpp"
#include "gpi/oracle.hpp"

using namespace gpi;

TEST_CASE("validate_table") {
  CHECK(validate_table(1, {0}).order() == 1);
  CHECK(validate_table(2, {0, 1, 1, 0}).order() == 2);
  CHECK_THROWS_WITH_AS(validate_table(2, {0, 1, 0, 1}), doctest::Contains("NotLatin"), Error);
  CHECK_THROWS_WITH_AS(validate_table(2, {1, 0, 0, 1}), doctest::Contains("NoIdentity"), Error);
  // a Latin square of order 5 with identity that is not a group
  std::vector<int> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                           3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  auto f = check_table(5, loop);
  REQUIRE(f);
  CHECK(f->kind == "NotAssociative");
  auto [a, b, c] = f->witness;
  auto m = [&](int x, int y) { return loop[x * 5 + y]; };
  CHECK(m(m(a, b), c) != m(a, m(b, c)));
}

TEST_CASE("light's test agrees with the full check on larger tables") {
  auto G = sym_group(5);
  CHECK_FALSE(check_table(120, G.grid()));
  auto g = G.grid();
  // swap two entries in two rows to break associativity but keep Latin
  std::swap(g[7 * 120 + 3], g[7 * 120 + 4]);
  std::swap(g[8 * 120 + 3], g[8 * 120 + 4]);
  auto f = check_table(120, g);
  CHECK(f);
}

TEST_CASE("element orders and centers") {
  auto C6 = cyclic_group(6);
  CHECK(element_order(C6, 0) == 1);
  CHECK(element_order(C6, 2) == 3);
  auto S3 = sym_group(3);
  for (int g = 1; g < 6; ++g) {
    int o = element_order(S3, g);
    CHECK((o == 2 || o == 3));
  }
  CHECK(center(S3).order() == 1);
  CHECK(center(dihedral_group(8)).order() == 2);
  CHECK(center(cyclic_group(7)).order() == 7);
}

TEST_CASE("closures and quotients") {
  auto S3 = sym_group(3);
  CHECK(closure(S3, {}).order() == 1);
  for (int g = 0; g < 6; ++g) CHECK(closure(S3, {g}).order() == element_order(S3, g));
  Elem t = -1;
  for (int g = 0; g < 6; ++g)
    if (element_order(S3, g) == 2) t = g;
  CHECK(normal_closure(S3, {t}).order() == 6);
  auto A3 = closure(S3, sylow_elements(S3, 3));
  CHECK(A3.order() == 3);
  CHECK(A3.is_normal);
  auto Q = quotient(S3, A3);
  CHECK(Q.table.order() == 2);
  CHECK(is_homomorphism(S3, Q.table, Q.proj.image));
  CHECK_THROWS_AS(quotient(S3, closure(S3, {t})), Error);
  CHECK(quotient(S3, whole(S3)).table.order() == 1);
  CHECK(quotient(S3, closure(S3, {})).table == S3);
}

TEST_CASE("sylow element sets") {
  CHECK(sylow_elements(cyclic_group(6), 5) == std::vector<Elem>{0});
  CHECK(sylow_elements(cyclic_group(6), 3).size() == 3);
  auto S3 = sym_group(3);
  auto s = sylow_elements(S3, 3);
  CHECK(s.size() == 3);
  CHECK(is_subgroup(S3, s));
  CHECK(is_normal(S3, s));
  auto S4 = sym_group(4);
  CHECK_FALSE(is_subgroup(S4, sylow_elements(S4, 2)));
}

TEST_CASE("abelian bases") {
  auto b = abelian_basis(cyclic_group(4));
  CHECK(b.orders == std::vector<int>{4});
  CHECK(abelian_basis(elem_abelian_group(3, 2)).orders == std::vector<int>{3, 3});
  CHECK(abelian_basis(abelian_group({2, 4})).orders == std::vector<int>{2, 4});
  CHECK(abelian_basis(abelian_group({4, 8, 3, 9})).orders == std::vector<int>{3, 4, 8, 9});
  CHECK(abelian_basis(cyclic_group(1)).orders.empty());
  CHECK_THROWS_AS(abelian_basis(sym_group(3)), Error);
}

TEST_CASE("constructors") {
  CHECK(sym_group(4).order() == 24);
  CHECK(alt_group(5).order() == 60);
  CHECK(sl2_group(5).order() == 120);
  CHECK(dihedral_group(10).order() == 10);
  for (auto d : {"cyclic(12)", "sym(4)", "alt(5)", "dihedral(8)", "sl2(3)",
                 "direct_product(cyclic(2),sym(3))", "abelian([2,4])",
                 "semidirect(q=2,l=1,p=3,k=1,action=[[2]])",
                 "semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,8]],n=[3,9])",
                 "relabel(sym(4),7)"}) {
    auto G = build_group(d);
    CHECK_FALSE(check_table(G.order(), G.grid()));
  }
  auto S = build_group("semidirect(q=2,l=1,p=3,k=1,action=[[2]])");
  CHECK(oracle_iso(S, sym_group(3)));
  CHECK_THROWS_AS(build_group("semidirect(q=2,l=1,p=7,k=1,action=[[2]])"), Error);
  CHECK_THROWS_AS(
      build_group("semidirect(q=2,l=2,p=3,k=2,action=[[[0,1],[1,0]],[[2,0],[0,1]]])"),
      Error);
}

namespace {
int involutions(const CayleyTable& G) {
  int c = 0;
  for (int g = 0; g < G.order(); ++g) c += element_order(G, g) == 2;
  return c;
}
}  // namespace

TEST_CASE("central extensions of A5 by Z2") {
  auto split = build_group("central_ext(Q=alt(5),A=[2],cocycle=zero)");
  CHECK(split.order() == 120);
  CHECK(involutions(split) > 1);
  auto sl = build_group("central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5)))");
  CHECK(sl.order() == 120);
  CHECK(involutions(sl) == 1);
  CHECK(oracle_iso(sl, sl2_group(5)));
  CHECK_FALSE(check_table(sl.order(), sl.grid()));
}

TEST_CASE("oracle") {
  auto G = sym_group(4);
  std::vector<Elem> m;
  auto R = relabel_group(G, 11, &m);
  auto iso = oracle_iso(G, R);
  REQUIRE(iso);
  CHECK(is_isomorphism(G, R, *iso));
  CHECK_FALSE(oracle_iso(cyclic_group(4), elem_abelian_group(2, 2)));
  auto F21 = build_group("semidirect(q=3,l=1,p=7,k=1,action=[[2]])");
  CHECK_FALSE(oracle_iso(F21, cyclic_group(21)));
  CHECK(oracle_aut(elem_abelian_group(2, 2)).size() == 6);
  CHECK(oracle_aut(cyclic_group(5)).size() == 4);
  CHECK(oracle_aut(sym_group(3)).size() == 6);
  CHECK_THROWS_AS(oracle_aut(cyclic_group(300)), Error);
}

TEST_CASE("oracle is an equivalence under relabeling") {
  for (auto d : {"dihedral(12)", "alt(4)", "direct_product(cyclic(3),sym(3))"}) {
    auto G = build_group(d);
    auto H = relabel_group(G, 3);
    auto a = oracle_iso(G, H), b = oracle_iso(H, G), c = oracle_iso(G, G);
    REQUIRE(a);
    REQUIRE(b);
    REQUIRE(c);
    CHECK(is_isomorphism(H, G, invert_map(*a)));
  }
}
