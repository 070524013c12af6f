#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "gpi/codeq.hpp"

using namespace gpi;

namespace {

FpMatrix random_code(std::mt19937_64& rng, int p, int d, int m) {
  FpMatrix A(p, d, m);
  for (int& x : A.a) x = int(rng() % p);
  return A;
}

std::set<Perm> brute(const FpMatrix& A, const FpMatrix& B) {
  std::set<Perm> out;
  Perm s = perm_identity(A.cols);
  FpMatrix RB = row_space(B);
  do {
    if (row_space(permute_columns(A, s)) == RB) out.insert(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

}  // namespace

TEST_CASE("column permutation convention") {
  FpMatrix A = FpMatrix::from_rows(2, {{1, 1, 0}});
  Perm s{1, 2, 0};
  CHECK(permute_columns(A, s) == FpMatrix::from_rows(2, {{0, 1, 1}}));
}

TEST_CASE("basic equivalences") {
  FpMatrix I0 = FpMatrix::from_rows(2, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(basic_equivalences(I0, I0).group.order() == 4);
  FpMatrix A = FpMatrix::from_rows(2, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  FpMatrix B = FpMatrix::from_rows(2, {{1, 0, 0, 1}, {0, 1, 1, 0}});
  auto C = basic_equivalences(A, B);
  REQUIRE_FALSE(C.empty());
  for (const auto& g : C.group.elements()) CHECK(equivalence_transform(A, B, perm_mul(*C.rep, g)));
  FpMatrix D = FpMatrix::from_rows(2, {{1, 0, 1, 1}, {0, 1, 0, 1}});
  CHECK(basic_equivalences(A, D).empty());
  CHECK_THROWS_AS(basic_equivalences(B, FpMatrix::from_rows(2, {{0, 1, 1, 1}, {1, 0, 0, 1}})), Error);
}

TEST_CASE("small code equivalences") {
  FpMatrix A = FpMatrix::from_rows(2, {{1, 1, 0}});
  FpMatrix B = FpMatrix::from_rows(2, {{0, 1, 1}});
  auto C = code_equivalence(A, B);
  REQUIRE_FALSE(C.empty());
  CHECK(C.group.order() == 2);
  CHECK(code_equivalence(A, A).contains(perm_identity(3)));
  // unequal ranks
  CHECK(code_equivalence(FpMatrix::from_rows(2, {{1, 0}, {1, 0}}), FpMatrix::from_rows(2, {{1, 0}, {0, 1}})).empty());
  CHECK_THROWS_AS(code_equivalence(A, FpMatrix::from_rows(3, {{0, 1, 1}})), Error);
}

TEST_CASE("code equivalence matches enumeration") {
  std::mt19937_64 rng(12);
  int nonempty = 0;
  for (int t = 0; t < 120; ++t) {
    int p = t % 2 ? 3 : 2, d = 1 + int(rng() % 3), m = d + int(rng() % (7 - d));
    FpMatrix A = random_code(rng, p, d, m), B;
    if (t % 3) {
      Perm s = perm_identity(m);
      std::shuffle(s.begin(), s.end(), rng);
      B = permute_columns(A, s);
      FpMatrix T = random_code(rng, p, d, d);
      if (inverse(T)) B = mat_mul(T, B);
    } else {
      B = random_code(rng, p, d, m);
    }
    auto C = code_equivalence(A, B);
    auto E = brute(A, B);
    CHECK(C.empty() == E.empty());
    if (!C.empty()) {
      ++nonempty;
      CHECK(E.count(*C.rep));
      CHECK(C.group.order() == E.size());
    }
  }
  CHECK(nonempty > 50);
}

TEST_CASE("generalized code equivalence") {
  std::mt19937_64 rng(5);
  FpMatrix A = random_code(rng, 2, 2, 4);
  CHECK(generalized_code_equivalence(A, A, PermGroup(4)).contains(perm_identity(4)));
  // blocks {0,1},{2,3}; B swaps the blocks
  FpMatrix X = FpMatrix::from_rows(2, {{1, 0, 0, 0}, {0, 1, 1, 1}});
  FpMatrix Y = permute_columns(X, {2, 3, 0, 1});
  PermGroup S(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  auto G = generalized_code_equivalence(X, Y, S);
  auto U = code_equivalence(X, Y);
  CHECK_FALSE(U.empty());
  std::set<Perm> inS;
  for (const auto& g : S.elements())
    if (equivalence_transform(X, Y, g)) inS.insert(g);
  CHECK(G.empty());
  CHECK(inS.empty());
  if (!G.empty())
    for (const auto& g : G.group.elements()) CHECK(inS.count(perm_mul(*G.rep, g)));
  // trivial S: equal row spans
  FpMatrix Z = mat_mul(FpMatrix::from_rows(2, {{1, 1}, {0, 1}}), X);
  CHECK_FALSE(generalized_code_equivalence(X, Z, PermGroup(4)).empty());
  CHECK(generalized_code_equivalence(X, Y, PermGroup(4)).empty());
}

TEST_CASE("transform is invertible for rank-deficient generators") {
  FpMatrix A = FpMatrix::from_rows(3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 0}});
  Perm s{2, 0, 1};
  FpMatrix B = FpMatrix::from_rows(3, {{0, 0, 0}, {2, 0, 1}, {1, 0, 2}});
  auto T = equivalence_transform(A, B, s);
  REQUIRE(T);
  CHECK(rank(*T) == 3);
  CHECK(mat_mul(*T, permute_columns(A, s)) == B);
}
