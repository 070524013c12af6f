#pragma once
// Permutation equivalence of linear codes over F_p.
//
// Convention: (A·σ)[:, σ(j)] = A[:, j]; B is equivalent to A under σ when
// B = T·(A·σ) for some invertible T. The equivalences form the left coset
// rep∘Aut(A).

#include <optional>
#include <vector>

#include "gpi/fp.hpp"
#include "gpi/perm.hpp"

namespace gpi {

using CodeEqCoset = PermCoset;

FpMatrix permute_columns(const FpMatrix& A, const Perm& sigma);
// Canonical rank-d generator (RREF without zero rows).
FpMatrix canonical_generator(const FpMatrix& A);
// T with B = T·(A·σ), T invertible, when σ is an equivalence.
std::optional<FpMatrix> equivalence_transform(const FpMatrix& A, const FpMatrix& B, const Perm& sigma);

// Equivalences that keep the first d columns among themselves, for A and B
// of the form [I_d | *].
PermCoset basic_equivalences(const FpMatrix& A, const FpMatrix& B);

CodeEqCoset code_equivalence(const FpMatrix& A, const FpMatrix& B);
// Decision only: stops at the first information set that admits a match.
std::optional<Perm> code_equivalent(const FpMatrix& A, const FpMatrix& B);
PermGroup code_automorphisms(const FpMatrix& A);
// Equivalences lying in the permutation group S.
PermCoset generalized_code_equivalence(const FpMatrix& A, const FpMatrix& B, const PermGroup& S);

}  // namespace gpi
