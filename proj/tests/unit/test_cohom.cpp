#include <random>

#include "doctest.h"
#include "gpi/build.hpp"
#include "gpi/cohom.hpp"
#include "gpi/oracle.hpp"
#include "gpi/perm.hpp"

using namespace gpi;

namespace {

CayleyTable sl25() { return build_group("central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5)))"); }
CayleyTable z2a5() { return build_group("direct_product(cyclic(2),alt(5))"); }

// Q = Z_2^n, A = Z/modulus: f = sum c_ij x_i y_j + sum d_i carry_i, with
// the bilinear coefficients killing the 2-torsion ambiguity.
CocycleMatrix random_cocycle(std::mt19937_64& rng, const CayleyTable& Q, int n, int modulus) {
  auto coords = coordinate_table(Q, abelian_basis(Q));
  CocycleMatrix f{{modulus}, Q.order(), {std::vector<int>(std::size_t(Q.order()) * Q.order(), 0)}};
  std::vector<std::vector<int>> c(n, std::vector<int>(n));
  std::vector<int> d(n);
  int half = modulus / 2;
  for (auto& r : c)
    for (auto& x : r) x = int(rng() % 2) * half;
  for (auto& x : d) x = int(rng() % modulus);
  for (int x = 0; x < Q.order(); ++x)
    for (int y = 0; y < Q.order(); ++y) {
      long long v = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) v += c[i][j] * coords[x][i] * coords[y][j];
        v += d[i] * (coords[x][i] & coords[y][i]);
      }
      f.rows[0][std::size_t(x) * Q.order() + y] = int(v % modulus);
    }
  return f;
}

int aut_order(const CayleyTable& G, const std::vector<std::vector<Elem>>& gens) {
  std::vector<Perm> ps(gens.begin(), gens.end());
  return int(PermGroup(G.order(), ps).order());
}

}  // namespace

TEST_CASE("extension data") {
  auto G = z2a5();
  auto e = extension_data(G, center(G));
  CHECK(e.f.qn == 60);
  bool zero = true;
  for (const auto& r : e.f.rows)
    for (int v : r) zero = zero && v == 0;
  CHECK(zero);
  auto S = sl25();
  auto es = extension_data(S, center(S));
  CHECK(is_cocycle(es.quot.table, es.f));
  CHECK(is_normalized(es.f));
  CHECK_FALSE(class_equal_up_to_autA(es.quot.table, es.f, e.f));
  CHECK_THROWS(extension_data(sym_group(3), closure(sym_group(3), {1})));
  // rebuilding from the extracted cocycle gives an equivalent class
  auto R = central_ext_group(es.quot.table, es.f);
  auto er = extension_data(R, center(R));
  CHECK(class_equal_up_to_autA(es.quot.table, es.f, er.f));
}

TEST_CASE("coboundaries") {
  auto Z2 = cyclic_group(2);
  auto b = coboundary_basis(Z2, 2);
  CHECK(b.size() == 2);
  // b_q(x, y) = d(x) + d(y) - d(xy): only the identity delta survives mod 2
  for (std::size_t q = 1; q < b.size(); ++q)
    for (int v : b[q]) CHECK(v == 0);
  auto A4 = alt_group(4);
  for (const auto& row : coboundary_basis(A4, 4)) {
    CocycleMatrix f{{4}, 12, {row}};
    CHECK(is_cocycle(A4, f));
  }
}

TEST_CASE("cocycle dimensions") {
  auto A5 = alt_group(5);
  CHECK(cocycle_space_dim(A5, 2) - coboundary_rank(A5, 2) == 1);
  for (auto desc : {"sym(3)", "elem_abelian(2,2)", "cyclic(4)", "dihedral(8)", "alt(4)", "elem_abelian(3,2)"}) {
    auto Q = build_group(desc);
    for (int p : {2, 3}) {
      int full = cocycle_space_dim(Q, p, true);
      CHECK(full == cocycle_space_dim(Q, p, false));
    }
  }
  // H^2(Z_2^2, F_2) has dimension 3, H^2(S_3, F_3) is 0
  auto V = elem_abelian_group(2, 2);
  CHECK(cocycle_space_dim(V, 2) - coboundary_rank(V, 2) == 3);
  auto S3 = sym_group(3);
  CHECK(cocycle_space_dim(S3, 3) - coboundary_rank(S3, 3) == 0);
}

TEST_CASE("class comparison") {
  std::mt19937_64 rng(4);
  auto Q = elem_abelian_group(2, 3);
  for (int t = 0; t < 10; ++t) {
    auto f = random_cocycle(rng, Q, 3, 4);
    REQUIRE(is_cocycle(Q, f));
    CHECK(class_equal_up_to_autA(Q, f, f));
    auto g = f;
    auto b = coboundary_basis(Q, 4);
    auto u = rng() % b.size();
    for (std::size_t j = 0; j < g.rows[0].size(); ++j) g.rows[0][j] = (g.rows[0][j] + 3 * b[u][j]) % 4;
    CHECK(class_equal_up_to_autA(Q, f, g));
    auto h = f;
    for (auto& v : h.rows[0]) v = v * 3 % 4;  // a unit
    CHECK(class_equal_up_to_autA(Q, f, h));
  }
  CocycleMatrix f1{{2}, 1, {{0}}}, f2{{4}, 1, {{0}}};
  CHECK_THROWS(class_equal_up_to_autA(cyclic_group(1), f1, f2));
}

TEST_CASE("projection") {
  std::mt19937_64 rng(8);
  auto Q = sym_group(3);
  auto P = invariant_projection(Q, 2);
  for (const auto& b : coboundary_basis(Q, 2)) {
    auto r = P.reduce(b);
    CHECK(std::all_of(r.begin(), r.end(), [](int x) { return x == 0; }));
  }
  int w = 36;
  for (int t = 0; t < 20; ++t) {
    CocycleMatrix f{{2, 2}, 6, {std::vector<int>(w), std::vector<int>(w)}};
    for (auto& r : f.rows)
      for (auto& x : r) x = int(rng() % 2);
    auto once = P.reduce(f.rows[0]);
    CHECK(P.reduce(once) == once);
    FpMatrix alpha(2, 2, 2);
    do {
      for (auto& x : alpha.a) x = int(rng() % 2);
    } while (rank(alpha) < 2);
    FpMatrix F = FpMatrix::from_rows(2, f.rows, w);
    FpMatrix AF = mat_mul(alpha, F);
    CocycleMatrix g{{2, 2}, 6, AF.to_rows()};
    CHECK(P.matrix(g) == mat_mul(alpha, P.matrix(f)));
  }
}

TEST_CASE("automorphism groups of quotients") {
  CHECK(aut_group(elem_abelian_group(2, 2)).order() == 6);
  CHECK(aut_group(alt_group(5)).order() == 120);
  auto auts = enumerate_aut(sym_group(3));
  std::vector<Elem> id{0, 1, 2, 3, 4, 5};
  CHECK(std::find(auts.begin(), auts.end(), id) != auts.end());
  for (auto desc : {"dihedral(8)", "alt(4)", "elem_abelian(2,3)", "abelian([2,4])", "cyclic(9)",
                    "direct_product(cyclic(2),sym(3))", "dihedral(18)"}) {
    auto G = build_group(desc);
    CHECK(aut_group(G).order() == double(oracle_aut(G).size()));
    for (const auto& a : enumerate_aut(G)) CHECK(is_isomorphism(G, G, a));
  }
  auto G = build_group("dihedral(12)");
  auto iso = find_isomorphism(G, build_group("direct_product(cyclic(2),sym(3))"));
  REQUIRE(iso);
  CHECK(is_isomorphism(G, build_group("direct_product(cyclic(2),sym(3))"), *iso));
  CHECK_FALSE(find_isomorphism(alt_group(4), dihedral_group(12)));
}

TEST_CASE("central isomorphism against the oracle") {
  std::mt19937_64 rng(21);
  std::vector<CayleyTable> groups;
  for (int t = 0; t < 14; ++t) {
    int n = 2 + int(rng() % 2);
    int mod = (rng() % 2) ? 4 : 2;
    auto Q = elem_abelian_group(2, n);
    groups.push_back(central_ext_group(Q, random_cocycle(rng, Q, n, mod)));
  }
  for (auto desc : {"dihedral(16)", "abelian([2,8])", "direct_product(cyclic(4),sym(3))", "direct_product(cyclic(2),dihedral(8))"})
    groups.push_back(build_group(desc));
  int pairs = 0;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i; j < groups.size(); ++j) {
      if (groups[i].order() != groups[j].order()) continue;
      bool o = oracle_iso(groups[i], groups[j]).has_value();
      CHECK(iso_central_generic(groups[i], groups[j]) == o);
      ++pairs;
    }
  CHECK(pairs > 20);
  auto G = groups[3];
  CHECK(iso_central_generic(G, relabel_group(G, 77)));
}

TEST_CASE("SL(2,5) against Z2 x A5") {
  auto S = sl25(), D = z2a5();
  CHECK_FALSE(iso_central_generic(S, D));
  CHECK(iso_central_generic(D, relabel_group(D, 3)));
  auto r = iso_coset_central_elemab(S, D);
  CHECK_FALSE(r.iso);
  CHECK(aut_order(S, r.aut_gens) == 120);
  for (const auto& a : r.aut_gens) CHECK(is_isomorphism(S, S, a));
  auto R = relabel_group(D, 9);
  auto r2 = iso_coset_central_elemab(D, R);
  REQUIRE(r2.iso);
  CHECK(is_isomorphism(D, R, *r2.iso));
  CHECK(aut_order(D, r2.aut_gens) == 120);
}

TEST_CASE("automorphism generators match the oracle") {
  for (auto desc : {"dihedral(8)", "direct_product(cyclic(2),sym(3))", "elem_abelian(2,3)", "direct_product(cyclic(2),alt(4))",
                    "central_ext(Q=elem_abelian(2,2),A=[2],cocycle=lift(dihedral(8)))", "direct_product(cyclic(3),sym(3))"}) {
    auto G = build_group(desc);
    auto r = iso_coset_central_elemab(G, G);
    REQUIRE(r.iso);
    for (const auto& a : r.aut_gens) CHECK(is_isomorphism(G, G, a));
    CHECK(aut_order(G, r.aut_gens) == int(oracle_aut(G).size()));
  }
  CHECK_THROWS(iso_coset_central_elemab(cyclic_group(4), cyclic_group(4)));
}

TEST_CASE("central coset with trivial center") {
  for (const char* d : {"alt(4)", "sym(3)"}) {
    CayleyTable G = build_group(d), H = relabel_group(G, 2);
    auto r = iso_coset_central_elemab(G, H);
    REQUIRE(r.iso);
    CHECK(is_isomorphism(G, H, *r.iso));
    CHECK(PermGroup(G.order(), r.aut_gens).order() == oracle_aut(G).size());
  }
}
