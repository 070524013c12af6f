#pragma once
// Central extensions through their 2-cocycles: extraction, coboundaries,
// class comparison up to Aut(A), the projection killing coboundaries,
// automorphism groups of the quotient, and isomorphism of central
// extensions.

#include <functional>
#include <optional>
#include <vector>

#include "gpi/fp.hpp"
#include "gpi/group.hpp"
#include "gpi/perm.hpp"

namespace gpi {

// G = A·s(Q) with A central: g = a·s(x), s(x)s(y) = f(x,y)·s(xy).
struct ExtensionData {
  Subgroup A;
  AbelianBasis basis;  // of A, orders ascending
  Quotient quot;       // reps are the least element of each coset
  CocycleMatrix f;     // values in basis coordinates

  // (coordinates of a, x) for g = a·s(x)
  std::pair<std::vector<int>, Elem> split(const CayleyTable& G, Elem g) const;
};

ExtensionData extension_data(const CayleyTable& G, const Subgroup& A);  // throws NotCentral

// f^beta(x, y) = f(beta x, beta y) for beta : Q' -> Q given as an element map.
CocycleMatrix pull_back(const CocycleMatrix& f, const std::vector<Elem>& beta);
// Coboundary of the delta function at q, for every q in Q; rows over Z/modulus.
std::vector<std::vector<int>> coboundary_basis(const CayleyTable& Q, int modulus);

// Dimensions over F_p on normalized cochains. Light's reduction restricts
// the middle argument of the cocycle identity to a generating set.
int cocycle_space_dim(const CayleyTable& Q, int p, bool all_triples = false);
int coboundary_rank(const CayleyTable& Q, int p);

// Is there alpha in Aut(A) with f1 cohomologous to alpha·f2? Compares the
// spans <R^(p,mu), B^2(Q, Z/p^mu)> for every cyclic factor Z/p^mu of A.
bool class_equal_up_to_autA(const CayleyTable& Q, const CocycleMatrix& f1, const CocycleMatrix& f2);

// Projection of C^2(Q, F_p) onto the non-pivot coordinates of the
// coboundary echelon form, along B^2. Applied row by row.
struct Projection {
  int p = 2, qn = 0;
  FpMatrix echelon;             // RREF of the coboundaries
  std::vector<int> pivots;      // pivot column per echelon row
  std::vector<int> free_cols;   // coordinates of W_0

  std::vector<int> reduce(std::vector<int> row) const;   // full length, zero on pivots
  std::vector<int> coords(const std::vector<int>& row) const;  // W_0 coordinates
  FpMatrix matrix(const CocycleMatrix& f) const;          // k x dim W_0
};
Projection invariant_projection(const CayleyTable& Q, int p);

// Aut(Q) acting on the elements of Q, by a subgroup search whose base is a
// generating set of Q.
PermGroup aut_group(const CayleyTable& Q);
std::vector<std::vector<Elem>> enumerate_aut(const CayleyTable& Q, std::size_t guard = 100000);
std::optional<std::vector<Elem>> find_isomorphism(const CayleyTable& Q1, const CayleyTable& Q2);
// Greedy generating set, larger element orders first.
std::vector<Elem> generating_set(const CayleyTable& Q);

using CharSubgroup = std::function<Subgroup(const CayleyTable&)>;

// Decision for groups whose characteristic subgroup charfun(G) (default the
// center) is central. Throws HypothesisFailed otherwise.
bool iso_central_generic(const CayleyTable& G1, const CayleyTable& G2, const CharSubgroup& charfun = {});

struct CentralIsoResult {
  std::optional<std::vector<Elem>> iso;        // verified G1 -> G2
  std::vector<std::vector<Elem>> aut_gens;     // verified automorphisms of G1
};
// Center elementary abelian; returns one isomorphism (if any) and
// generators of Aut(G1). Throws HypothesisFailed otherwise.
CentralIsoResult iso_coset_central_elemab(const CayleyTable& G1, const CayleyTable& G2);

// Element map G1 -> G2 from f1 = alpha·f2^beta + coboundary, A elementary.
// alpha maps A2 coordinates to A1 coordinates; beta : Q1 -> Q2.
std::optional<std::vector<Elem>> lift_pair(const CayleyTable& G1, const ExtensionData& e1, const CayleyTable& G2,
                                           const ExtensionData& e2, const FpMatrix& alpha,
                                           const std::vector<Elem>& beta);

// Generators of {X in GL_k(F_p) : X·M = M}.
std::vector<FpMatrix> row_stabilizer_generators(const FpMatrix& M);

// Homomorphisms Q -> F_p^k as the solution space of delta(xy) = delta(x) + delta(y).
std::vector<std::vector<std::vector<int>>> kernel_homomorphisms(const CayleyTable& Q, int p, int k);

}  // namespace gpi
