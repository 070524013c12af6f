#include <random>

#include "doctest.h"
#include "gpi/build.hpp"
#include "gpi/centrad.hpp"
#include "gpi/codeq.hpp"
#include "gpi/oracle.hpp"

using namespace gpi;

namespace {

const char* kSL25 = "central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5)))";
const char* kZ2A5 = "direct_product(cyclic(2),alt(5))";

// Z_2 by A_5 x A_5 with the SL(2,5) class on the chosen factors.
const CayleyTable& a5sq(int which) {
  static CayleyTable g[4];
  static const char* desc[4] = {
      "central_ext(Q=direct_product(alt(5),alt(5)),A=[2],cocycle=factors(zero,zero))",
      "central_ext(Q=direct_product(alt(5),alt(5)),A=[2],cocycle=factors(lift(sl2(5)),zero))",
      "central_ext(Q=direct_product(alt(5),alt(5)),A=[2],cocycle=factors(zero,lift(sl2(5))))",
      "central_ext(Q=direct_product(alt(5),alt(5)),A=[2],cocycle=factors(lift(sl2(5)),lift(sl2(5))))"};
  if (g[which].order() == 0) g[which] = build_group(desc[which]);
  return g[which];
}

int involutions(const CayleyTable& G) {
  int c = 0;
  for (int o : element_orders(G)) c += o == 2;
  return c;
}

std::uint64_t gen_order(const CayleyTable& G, const std::vector<std::vector<Elem>>& gens) {
  std::vector<Perm> ps(gens.begin(), gens.end());
  return PermGroup(G.order(), ps).order();
}

std::vector<Elem> ident(int n) {
  std::vector<Elem> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("central radical check") {
  auto S = build_group(kSL25);
  auto c = check_central_radical(S);
  REQUIRE(c.dec);
  CHECK(c.dec->p == 2);
  CHECK(c.dec->k == 1);
  CHECK(c.dec->quot.table.order() == 60);
  CHECK(c.dec->length() == 1);
  CHECK(centrad_tag(S) == "CentralRadicalSimple");

  auto d8 = check_central_radical(dihedral_group(8));
  CHECK_FALSE(d8.dec);
  CHECK(d8.reason == "RadicalNotCentral");
  CHECK(check_central_radical(sym_group(4)).reason == "RadicalNotCentral");
  CHECK(check_central_radical(cyclic_group(12)).reason == "CenterNotElementary");
  CHECK(centrad_tag(sym_group(4)).empty());

  auto a6 = check_central_radical(alt_group(6));
  REQUIRE(a6.dec);
  CHECK(a6.dec->k == 0);
  CHECK(a6.dec->length() == 1);

  const auto& G = a5sq(1);
  auto cg = check_central_radical(G);
  REQUIRE(cg.dec);
  const auto& d = *cg.dec;
  CHECK(d.length() == 2);
  CHECK(d.refs.size() == 1);
  CHECK(d.class_sizes == std::vector<int>{2});
  // factors commute, meet trivially, and the section covers the quotient
  const auto& Q = d.quot.table;
  for (Elem x : d.factors[0].T.elems)
    for (Elem y : d.factors[1].T.elems) CHECK(Q.mul(x, y) == Q.mul(y, x));
  for (int i = 0; i < 2; ++i) {
    CHECK(is_isomorphism(d.refs[0], d.factors[i].table, d.factors[i].from_ref));
    CHECK(d.factors[i].U.order() == 120);
  }
  for (Elem x = 0; x < Q.order(); x += 7) CHECK(d.quot.proj.image[d.section[x]] == x);
}

TEST_CASE("bounded perfect factors") {
  CentradOptions opt;
  opt.simple_first = false;
  auto c = check_central_radical(direct_product({alt_group(5), alt_group(5)}), opt);
  REQUIRE(c.dec);
  CHECK(c.dec->bounded);
  CHECK(c.dec->length() == 2);
  opt.perfect_bound = 30;
  auto none = check_central_radical(alt_group(5), opt);
  CHECK_FALSE(none.dec);
  CHECK(none.reason == "NotProductOfSimple");
}

TEST_CASE("abelian normal subgroups") {
  CHECK(no_abelian_normal(alt_group(5)));
  CHECK_FALSE(no_abelian_normal(elem_abelian_group(2, 2)));
  CHECK_FALSE(no_abelian_normal(sym_group(3)));
  CHECK(no_abelian_normal(sym_group(5)));
  CHECK(no_abelian_normal(cyclic_group(1)));
  CHECK_FALSE(no_abelian_normal(sym_group(4)));
}

TEST_CASE("diagonals") {
  auto S = build_group(kSL25);
  auto D = enumerate_diagonals(*check_central_radical(S).dec);
  CHECK(D.count() == 120);
  for (std::uint64_t i = 0; i < D.count(); i += 17) CHECK(is_isomorphism(alt_group(5), alt_group(5), D.at(i)[0]));
  auto triv = enumerate_diagonals(*check_central_radical(cyclic_group(2)).dec);
  CHECK(triv.count() == 1);
  auto sq = check_central_radical(a5sq(0));
  REQUIRE(sq.dec);
  auto D2 = enumerate_diagonals(*sq.dec);
  CHECK(D2.count() == 14400);
  auto dg = D2.digits(121);
  CHECK(dg == std::vector<std::size_t>{1, 1});
  CHECK_THROWS(enumerate_diagonals(*sq.dec, 1000));
}

TEST_CASE("product cocycles") {
  for (int which : {1, 3}) {
    const auto& G = a5sq(which);
    auto d = *check_central_radical(G).dec;
    auto f = prod_cocycle(G, d);
    REQUIRE(f.blocks.size() == 2);
    for (int i = 0; i < 2; ++i) CHECK(is_cocycle(d.factors[i].table, f.blocks[i]));
    // the product section's cocycle is the block sum
    auto coords = coordinate_table(G, d.basis);
    std::mt19937_64 rng(which);
    const auto& Q = d.quot.table;
    for (int t = 0; t < 3000; ++t) {
      Elem x = Elem(rng() % Q.order()), y = Elem(rng() % Q.order());
      Elem v = G.mul(G.mul(d.section[x], d.section[y]), G.inv(d.section[Q.mul(x, y)]));
      CHECK(coords[v] == f.value(d, x, y));
    }
    CHECK(f.concat().cols == 2 * 3600);
  }
}

TEST_CASE("product projection") {
  std::mt19937_64 rng(5);
  // Z_2 x SL(2,5): A = Z_2^2, one A_5 factor
  auto G = build_group(std::string("direct_product(cyclic(2),") + kSL25 + ")");
  auto d = *check_central_radical(G).dec;
  REQUIRE(d.k == 2);
  auto P = prod_projector(d);
  auto f = prod_cocycle(G, d);
  Diagonal id{ident(60)};
  FpMatrix M = prod_projection(d, P, id, f);
  CHECK(M.cols == P.width);
  CHECK(rank(M) == 1);
  // coboundaries project to zero; adding one changes nothing
  ProdCocycle b = f;
  auto cob = coboundary_basis(d.refs[0], 2);
  for (auto& r : b.blocks[0].rows) r = cob[rng() % cob.size()];
  CHECK(rank(prod_projection(d, P, id, b)) == 0);
  ProdCocycle g = f;
  for (auto& r : g.blocks[0].rows) {
    const auto& c = cob[rng() % cob.size()];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] + c[j]) % 2;
  }
  CHECK(prod_projection(d, P, id, g) == M);
  // left GL_k equivariance
  for (int t = 0; t < 6; ++t) {
    FpMatrix alpha(2, 2, 2);
    do {
      for (auto& x : alpha.a) x = int(rng() % 2);
    } while (rank(alpha) < 2);
    ProdCocycle h = f;
    FpMatrix F = FpMatrix::from_rows(2, f.blocks[0].rows, 3600);
    h.blocks[0].rows = mat_mul(alpha, F).to_rows();
    CHECK(prod_projection(d, P, id, h) == mat_mul(alpha, M));
  }
}

TEST_CASE("block code equivalence") {
  std::mt19937_64 rng(11);
  FpMatrix M = FpMatrix::from_rows(2, {{1, 0, 1, 0, 1, 1}, {0, 1, 1, 1, 0, 0}});
  std::vector<int> one{0, 0, 0};
  auto all = block_code_equiv(M, M, 2, one, one);
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().sigma == std::vector<int>{0, 1, 2});
  // swap the first two blocks
  FpMatrix S = permute_columns(M, Perm{2, 3, 0, 1, 4, 5});
  auto sw = block_code_equiv(M, S, 2, one, one);
  bool found = false;
  for (const auto& be : sw) {
    found = found || be.sigma == std::vector<int>{1, 0, 2};
    for (int i = 0; i < 3; ++i) {
      FpMatrix b1 = select_columns(M, {2 * i, 2 * i + 1});
      FpMatrix b2 = select_columns(S, {2 * be.sigma[i], 2 * be.sigma[i] + 1});
      CHECK(mat_mul(be.X, b1) == b2);
    }
  }
  CHECK(found);
  // classes restrict sigma
  std::vector<int> split{0, 1, 0};
  for (const auto& be : block_code_equiv(M, S, 2, split, split)) CHECK(be.sigma[1] == 1);
  CHECK(block_code_equiv(M, FpMatrix::from_rows(2, {{1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 1}}), 2, one, one).empty());
  CHECK_THROWS(block_code_equiv(M, M, 3, one, one));

  // exhaustive cross-check against a per-sigma linear solve, and the
  // generic engine
  for (int t = 0; t < 120; ++t) {
    int p = (t % 2) ? 3 : 2, k = 1 + int(rng() % 2), l = 1 + int(rng() % 3), w = 1 + int(rng() % 3);
    std::vector<int> cls(l);
    for (auto& c : cls) c = int(rng() % 2);
    FpMatrix A(p, k, l * w);
    for (auto& x : A.a) x = int(rng() % p);
    // B = X·A with blocks permuted within classes, or random
    FpMatrix B(p, k, l * w);
    std::vector<int> perm(l);
    for (int i = 0; i < l; ++i) perm[i] = i;
    if (rng() % 3) {
      std::shuffle(perm.begin(), perm.end(), rng);
      bool ok = true;
      for (int i = 0; i < l; ++i) ok = ok && cls[i] == cls[perm[i]];
      if (!ok)
        for (int i = 0; i < l; ++i) perm[i] = i;
      FpMatrix X(p, k, k);
      do {
        for (auto& x : X.a) x = int(rng() % p);
      } while (rank(X) < k);
      FpMatrix XA = mat_mul(X, A);
      for (int i = 0; i < l; ++i)
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < w; ++c) B(r, perm[i] * w + c) = XA(r, i * w + c);
    } else {
      for (auto& x : B.a) x = int(rng() % p);
    }
    auto got = block_code_equiv(A, B, w, cls, cls);
    std::vector<std::vector<int>> expect;
    std::vector<int> s(l);
    for (int i = 0; i < l; ++i) s[i] = i;
    do {
      bool ok = true;
      for (int i = 0; i < l; ++i) ok = ok && cls[i] == cls[s[i]];
      if (!ok) continue;
      std::vector<FpMatrix> parts;
      for (int i = 0; i < l; ++i) {
        std::vector<int> cols;
        for (int c = 0; c < w; ++c) cols.push_back(s[i] * w + c);
        parts.push_back(select_columns(B, cols));
      }
      auto X = solve_left(A, hstack(parts));
      // an invertible X exists iff the row spaces agree
      if (row_space(A) == row_space(hstack(parts))) expect.push_back(s);
      (void)X;
    } while (std::next_permutation(s.begin(), s.end()));
    std::vector<std::vector<int>> have;
    for (const auto& be : got) {
      have.push_back(be.sigma);
      REQUIRE(inverse(be.X));
    }
    CHECK(have == expect);
    std::vector<std::vector<int>> gen;
    for (const auto& be : block_code_equiv(A, B, w, cls, cls, false, true)) gen.push_back(be.sigma);
    std::sort(have.begin(), have.end());
    CHECK(gen == have);
  }
}

TEST_CASE("splitting off a central factor") {
  auto SL = build_group(kSL25);
  auto G = build_group(std::string("direct_product(cyclic(2),") + kSL25 + ")");
  auto d = *check_central_radical(G).dec;
  auto s = split_off_center(G, d);
  REQUIRE(s);
  CHECK(s->A1.order() == 2);
  CHECK(s->rank == 1);
  CHECK(oracle_iso(s->reduced, SL).has_value());
  CHECK(oracle_iso(G, direct_product({cyclic_group(2), s->reduced})).has_value());
  // idempotent
  auto dr = check_central_radical(s->reduced);
  REQUIRE(dr.dec);
  CHECK_FALSE(split_off_center(s->reduced, *dr.dec));
  CHECK_FALSE(split_off_center(SL, *check_central_radical(SL).dec));
  auto Z = build_group(kZ2A5);
  auto sz = split_off_center(Z, *check_central_radical(Z).dec);
  REQUIRE(sz);
  CHECK(sz->reduced.order() == 60);
}

TEST_CASE("central radical isomorphism") {
  auto S = build_group(kSL25), Z = build_group(kZ2A5);
  CHECK_FALSE(iso_centrad(S, Z));
  CHECK(iso_centrad(S, relabel_group(S, 4)));
  CHECK(iso_centrad(Z, relabel_group(Z, 5)));
  CHECK_FALSE(iso_centrad(S, sym_group(5)));
  CHECK_THROWS(iso_centrad(sym_group(4), sym_group(4)));
  auto ZS = build_group(std::string("direct_product(cyclic(2),") + kSL25 + ")");
  auto ZZ = build_group(std::string("direct_product(cyclic(2),") + kZ2A5 + ")");
  CHECK_FALSE(iso_centrad(ZS, ZZ));
  CHECK(iso_centrad(ZS, relabel_group(ZS, 9)));
  CHECK(iso_centrad(alt_group(6), relabel_group(alt_group(6), 2)));
}

TEST_CASE("two A5 factors") {
  const auto &G0 = a5sq(0), &G1 = a5sq(1), &G2 = a5sq(2), &G3 = a5sq(3);
  CHECK(involutions(G1) == involutions(G2));
  CHECK(involutions(G1) != involutions(G3));
  CHECK(iso_centrad(G1, G2));
  CHECK_FALSE(iso_centrad(G1, G3));
  CHECK_FALSE(iso_centrad(G0, G1));
  CHECK(iso_centrad(G3, relabel_group(G3, 1)));
  auto r = aut_coset_centrad(G1, G2);
  REQUIRE(r.iso);
  CHECK(is_isomorphism(G1, G2, *r.iso));
  CHECK(gen_order(G1, r.aut_gens) == 14400);
  auto r3 = aut_coset_centrad(G3, G3);
  REQUIRE(r3.iso);
  for (const auto& a : r3.aut_gens) CHECK(is_isomorphism(G3, G3, a));
  CHECK(gen_order(G3, r3.aut_gens) == 28800);
  CHECK_FALSE(aut_coset_centrad(G1, G3).iso);
}

TEST_CASE("factorwise equivalence agrees with the whole quotient") {
  // f and f + d(sum u_i) are factorwise cohomologous, and sum u_i solves
  // the whole system; changing one factor's class breaks both.
  const auto& G = a5sq(3);
  auto d = *check_central_radical(G).dec;
  auto f = prod_cocycle(G, d);
  std::mt19937_64 rng(2);
  std::vector<std::vector<int>> u(2, std::vector<int>(60));
  for (auto& ui : u)
    for (int a = 1; a < 60; ++a) ui[a] = int(rng() % 2);
  ProdCocycle g = f;
  for (int i = 0; i < 2; ++i) {
    const auto& T = d.factors[i].table;
    for (int a = 0; a < 60; ++a)
      for (int b = 0; b < 60; ++b)
        g.blocks[i].rows[0][a * 60 + b] = (f.blocks[i].rows[0][a * 60 + b] + u[i][a] + u[i][b] + u[i][T.mul(a, b)]) % 2;
  }
  auto P = prod_projector(d);
  Diagonal id{ident(60), ident(60)};
  CHECK(prod_projection(d, P, id, f) == prod_projection(d, P, id, g));
  const auto& Q = d.quot.table;
  bool whole = true;
  for (Elem x = 0; x < Q.order() && whole; ++x)
    for (Elem y = 0; y < Q.order(); ++y) {
      int lhs = (f.value(d, x, y)[0] + g.value(d, x, y)[0]) % 2;
      Elem xy = Q.mul(x, y);
      int rhs = 0;
      for (int i = 0; i < 2; ++i) rhs += u[i][d.component(x, i)] + u[i][d.component(y, i)] + u[i][d.component(xy, i)];
      if (lhs != rhs % 2) {
        whole = false;
        break;
      }
    }
  CHECK(whole);
  // the trivial class on factor 0: restricting the whole difference to T_0
  // gives the factor difference, which does not project to zero
  ProdCocycle h = f;
  for (auto& v : h.blocks[0].rows[0]) v = 0;
  auto Mf = prod_projection(d, P, id, f), Mh = prod_projection(d, P, id, h);
  CHECK(Mf != Mh);
  for (Elem a : d.factors[0].T.elems)
    for (Elem b : d.factors[0].T.elems) {
      int whole_diff = (f.value(d, a, b)[0] + h.value(d, a, b)[0]) % 2;
      int fa = d.component(a, 0), fb = d.component(b, 0);
      CHECK(whole_diff == (f.blocks[0].at(0, fa, fb) + h.blocks[0].at(0, fa, fb)) % 2);
    }
}

TEST_CASE("central radical automorphism groups") {
  auto S = build_group(kSL25), Z = build_group(kZ2A5);
  for (const auto* G : {&S, &Z}) {
    auto r = aut_coset_centrad(*G, *G);
    REQUIRE(r.iso);
    for (const auto& a : r.aut_gens) CHECK(is_isomorphism(*G, *G, a));
    CHECK(gen_order(*G, r.aut_gens) == 120);
  }
  CHECK_FALSE(aut_coset_centrad(S, Z).iso);
  auto ZS = build_group(std::string("direct_product(cyclic(2),") + kSL25 + ")");
  auto r = aut_coset_centrad(ZS, relabel_group(ZS, 3));
  REQUIRE(r.iso);
  // Aut(SL(2,5)) times Hom(Z_2, Z(SL(2,5)))
  CHECK(gen_order(ZS, r.aut_gens) == 240);
  auto a5 = aut_coset_centrad(alt_group(5), alt_group(5));
  CHECK(gen_order(alt_group(5), a5.aut_gens) == 120);
  CHECK(gen_order(alt_group(5), a5.aut_gens) == oracle_aut(alt_group(5)).size());
  CHECK_THROWS(aut_coset_centrad(sym_group(4), sym_group(4)));
}
