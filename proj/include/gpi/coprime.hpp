#pragma once
// Coprime extensions H ⋉ N with N abelian and H elementary abelian:
// decomposition, Ranum matrices and the reduction map Psi_p, and the
// isomorphism test through indexing tuples and code equivalence.

#include <optional>
#include <vector>

#include "gpi/fp.hpp"
#include "gpi/group.hpp"
#include "gpi/repthy.hpp"

namespace gpi {

struct CoprimeDecomposition {
  Subgroup N;     // abelian normal Hall subgroup
  Quotient quot;  // G/N with coset representatives
  // action[x][i]: reps[x] · N.elems[i] · reps[x]^-1
  std::vector<std::vector<Elem>> action;
};

// N = product of the abelian normal Sylow subgroups. nullopt when N is
// trivial while G is not, or when G/N shares a prime with N.
std::optional<CoprimeDecomposition> decompose_coprime(const CayleyTable& G);
// N = the normal abelian Hall q'-subgroup, if there is one.
std::optional<CoprimeDecomposition> decompose_coprime(const CayleyTable& G, int q);

// Automorphism of A = prod Z/p^{e_i} as its matrix on the basis: column j
// holds the coordinates of the image of g_j, u_ij taken mod p^{e_i}.
struct RanumMatrix {
  int p = 2;
  std::vector<int> exps;  // ascending
  IntMatrix u;

  long long modulus(int i) const;
  bool operator==(const RanumMatrix& o) const { return p == o.p && exps == o.exps && u == o.u; }
};

// alpha is an element map of the abelian p-group A (whole table).
RanumMatrix ranum_matrix(const CayleyTable& A, const AbelianBasis& b, const std::vector<Elem>& alpha);
std::vector<int> ranum_apply(const RanumMatrix& U, const std::vector<int>& x);
Elem ranum_apply(const CayleyTable& A, const AbelianBasis& b, const RanumMatrix& U, Elem x);
RanumMatrix ranum_mul(const RanumMatrix& U, const RanumMatrix& V);  // U * V = U∘V
RanumMatrix ranum_identity(int p, const std::vector<int>& exps);
// Divisibility constraints plus invertibility mod p.
bool ranum_valid(const RanumMatrix& U);
// Every automorphism of prod Z/p^{e_i}; meant for small groups.
std::vector<RanumMatrix> all_ranum_matrices(int p, const std::vector<int>& exps);

// Diagonal blocks (one per distinct exponent) reduced mod p.
std::vector<FpMatrix> psi_p_blocks(const RanumMatrix& U);
FpMatrix psi_p(const RanumMatrix& U);  // block diagonal

struct CoprimeClasses {
  bool hee = false, hprode = false, hae = false;
};
CoprimeClasses classify_coprime(const CayleyTable& G);

struct CoprimeVerdict {
  bool iso = false;
  std::optional<std::vector<Elem>> witness;  // verified isomorphism G1 -> G2
  long long instances = 0;                   // code-equivalence instances tried
};

// Each throws NotInClass when either group lies outside the class.
CoprimeVerdict iso_HEE(const CayleyTable& G1, const CayleyTable& G2);
CoprimeVerdict iso_HprodE(const CayleyTable& G1, const CayleyTable& G2);
CoprimeVerdict iso_HAE(const CayleyTable& G1, const CayleyTable& G2);

}  // namespace gpi
