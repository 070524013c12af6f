#include "gpi/codeq.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gpi/exec.hpp"
#include "gpi/graph.hpp"

namespace gpi {

FpMatrix permute_columns(const FpMatrix& A, const Perm& sigma) {
  FpMatrix R(A.p, A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) R(i, sigma[j]) = A(i, j);
  return R;
}

FpMatrix canonical_generator(const FpMatrix& A) { return row_space(A); }

std::optional<FpMatrix> equivalence_transform(const FpMatrix& A, const FpMatrix& B,
                                              const Perm& sigma) {
  if (A.rows != B.rows || A.cols != B.cols) return std::nullopt;
  FpMatrix AP = permute_columns(A, sigma);
  if (row_space(AP) != row_space(B)) return std::nullopt;
  // AP = CA·E and B = CB·E for a basis E; extend CA, CB to invertible
  // matrices with the same unit columns so that T·CA = CB.
  FpMatrix E = row_space(B);
  if (E.rows == 0) return FpMatrix::identity(A.p, A.rows);
  auto CA = solve_left(E, AP), CB = solve_left(E, B);
  if (!CA || !CB) return std::nullopt;
  auto extend = [&](FpMatrix C) {
    std::vector<FpMatrix> parts{C};
    int have = C.cols;
    for (int e = 0; e < C.rows && have < C.rows; ++e) {
      FpMatrix u(C.p, C.rows, 1);
      u(e, 0) = 1;
      FpMatrix trial = hstack({hstack(parts), u});
      if (rank(trial) > have) {
        parts.push_back(u);
        ++have;
      }
    }
    return hstack(parts);
  };
  auto inv = inverse(extend(*CA));
  if (!inv) return std::nullopt;
  return mat_mul(extend(*CB), *inv);
}

namespace {

struct Reduced {
  FpMatrix R;                           // distinct columns in first-occurrence order
  std::vector<std::vector<int>> cls;    // original columns behind each reduced column
  std::vector<int> color;               // class size
  std::vector<int> pivots;
};

Reduced dedup(const FpMatrix& A) {
  Reduced r;
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> cols;
  for (int j = 0; j < A.cols; ++j) {
    std::vector<int> c(A.rows);
    for (int i = 0; i < A.rows; ++i) c[i] = A(i, j);
    auto [it, fresh] = seen.emplace(c, int(cols.size()));
    if (fresh) {
      cols.push_back(c);
      r.cls.emplace_back();
    }
    r.cls[it->second].push_back(j);
  }
  r.R = FpMatrix(A.p, A.rows, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < A.rows; ++i) r.R(i, int(j)) = cols[j][i];
  for (auto& c : r.cls) r.color.push_back(int(c.size()));
  r.pivots = rref(r.R).pivots;
  return r;
}

std::vector<std::vector<int>> subsets(int m, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(d);
  std::iota(s.begin(), s.end(), 0);
  if (d > m) return out;
  while (true) {
    out.push_back(s);
    int i = d - 1;
    while (i >= 0 && s[i] == m - d + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < d; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::vector<int> complement(const std::vector<int>& S, int m) {
  std::vector<char> in(m, 0);
  for (int x : S) in[x] = 1;
  std::vector<int> r;
  for (int x = 0; x < m; ++x)
    if (!in[x]) r.push_back(x);
  return r;
}

// The non-identity block of A in systematic form relative to the columns S.
std::optional<std::vector<std::vector<int>>> systematic_block(const FpMatrix& A,
                                                              const std::vector<int>& S) {
  auto inv = inverse(select_columns(A, S));
  if (!inv) return std::nullopt;
  FpMatrix rest = mat_mul(*inv, select_columns(A, complement(S, A.cols)));
  return rest.to_rows();
}

// Column permutations of the reduced codes that send SA onto SB and carry
// A's systematic form to B's, as a coset rep∘(A -> A group).
PermCoset subset_match(const Reduced& A, const std::vector<int>& SA, const Reduced& B,
                       const std::vector<int>& SB) {
  int m = A.R.cols, d = A.R.rows;
  PermCoset empty{std::nullopt, PermGroup(m)};
  auto A1 = systematic_block(A.R, SA);
  auto B1 = systematic_block(B.R, SB);
  if (!A1 || !B1) return empty;
  auto RA = complement(SA, m), RB = complement(SB, m);
  BipartiteColors ca, cb;
  ca.cells = *A1;
  cb.cells = *B1;
  if (d > 0 && m - d == 0) ca.cells.assign(d, {}), cb.cells.assign(d, {});
  for (int x : SA) ca.row_colors.push_back(A.color[x]);
  for (int x : SB) cb.row_colors.push_back(B.color[x]);
  for (int x : RA) ca.col_colors.push_back(A.color[x]);
  for (int x : RB) cb.col_colors.push_back(B.color[x]);
  PermCoset bc = colored_bipartite_iso(ca, cb);
  if (bc.empty()) return empty;
  auto translate = [&](const Perm& g, const std::vector<int>& S2, const std::vector<int>& R2) {
    Perm s(m);
    for (int i = 0; i < d; ++i) s[SA[i]] = S2[g[i]];
    for (int j = 0; j < m - d; ++j) s[RA[j]] = R2[g[d + j] - d];
    return s;
  };
  std::vector<Perm> gens;
  for (const auto& g : bc.group.strong_generators()) gens.push_back(translate(g, SA, RA));
  return PermCoset{translate(*bc.rep, SB, RB), PermGroup(m, gens)};
}

Perm expand(const Perm& s, const Reduced& A, const Reduced& B, int m) {
  Perm out(m);
  for (std::size_t k = 0; k < A.cls.size(); ++k)
    for (std::size_t i = 0; i < A.cls[k].size(); ++i) out[A.cls[k][i]] = B.cls[s[k]][i];
  return out;
}

void check_shapes(const FpMatrix& A, const FpMatrix& B) {
  if (A.p != B.p) throw Error("FieldMismatch", "codes over different fields");
  if (A.cols != B.cols) throw Error("LengthMismatch", "codes of different length");
}

PermGroup symmetric_group(int m) {
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  return PermGroup(m, symmetric_generators(all, m));
}

PermGroup reduced_automorphisms(const Reduced& A) {
  int m = A.R.cols, d = A.R.rows;
  auto subs = subsets(m, d);
  std::vector<PermCoset> hits(subs.size());
  exec::parallel_for(std::int64_t(subs.size()), [&](std::int64_t k) {
    hits[k] = subset_match(A, A.pivots, A, subs[k]);
  });
  std::vector<Perm> gens;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k] == A.pivots) {
      for (const auto& g : hits[k].group.strong_generators()) gens.push_back(g);
    } else if (hits[k].rep) {
      gens.push_back(*hits[k].rep);
    }
  }
  return PermGroup(m, gens);
}

}  // namespace

PermCoset basic_equivalences(const FpMatrix& A, const FpMatrix& B) {
  check_shapes(A, B);
  int d = A.rows;
  if (B.rows != d) throw Error("NotSystematic", "row counts differ");
  for (const auto* X : {&A, &B})
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if ((*X)(i, j) != (i == j)) throw Error("NotSystematic", "leading block is not the identity");
  Reduced ra, rb;
  ra.R = A;
  rb.R = B;
  ra.color.assign(A.cols, 1);
  rb.color.assign(B.cols, 1);
  std::vector<int> S(d);
  std::iota(S.begin(), S.end(), 0);
  return subset_match(ra, S, rb, S);
}

std::optional<Perm> code_equivalent(const FpMatrix& A0, const FpMatrix& B0) {
  check_shapes(A0, B0);
  FpMatrix A = canonical_generator(A0), B = canonical_generator(B0);
  int m = A.cols;
  if (A.rows != B.rows) return std::nullopt;
  if (A.rows == 0) return perm_identity(m);
  Reduced ra = dedup(A), rb = dedup(B);
  {
    auto x = ra.color, y = rb.color;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  auto subs = subsets(rb.R.cols, rb.R.rows);
  std::vector<std::optional<Perm>> res(subs.size());
  auto hit = exec::parallel_find_first(std::int64_t(subs.size()), [&](std::int64_t k) {
    res[k] = subset_match(ra, ra.pivots, rb, subs[k]).rep;
    return res[k].has_value();
  });
  if (!hit) return std::nullopt;
  Perm s = expand(*res[*hit], ra, rb, m);
  if (!equivalence_transform(A, B, s)) throw Error("Internal", "code equivalence failed to verify");
  return s;
}

PermGroup code_automorphisms(const FpMatrix& A0) {
  FpMatrix A = canonical_generator(A0);
  int m = A.cols;
  if (A.rows == 0 || A.rows == m) return symmetric_group(m);
  Reduced ra = dedup(A);
  PermGroup red = reduced_automorphisms(ra);
  std::vector<Perm> gens;
  for (const auto& g : red.strong_generators()) gens.push_back(expand(g, ra, ra, m));
  for (const auto& c : ra.cls)
    for (auto& g : symmetric_generators(c, m)) gens.push_back(g);
  for (const auto& g : gens)
    if (!equivalence_transform(A, A, g)) throw Error("Internal", "automorphism failed to verify");
  PermGroup G(m, gens);
  return PermGroup(m, reduce_generators(G));
}

CodeEqCoset code_equivalence(const FpMatrix& A, const FpMatrix& B) {
  CodeEqCoset out;
  out.rep = code_equivalent(A, B);
  out.group = code_automorphisms(A);
  return out;
}

PermCoset generalized_code_equivalence(const FpMatrix& A, const FpMatrix& B, const PermGroup& S) {
  if (S.degree() != A.cols) throw Error("LengthMismatch", "group degree differs from code length");
  auto C = code_equivalence(A, B);
  if (C.empty()) return PermCoset{std::nullopt, PermGroup(A.cols)};
  return coset_intersection(PermCoset{perm_identity(A.cols), S}, C);
}

}  // namespace gpi
