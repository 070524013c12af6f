#pragma once
// Representations of Z_q^l over F_p with p != q: the irreducibles f_v built
// from a factor of the cyclotomic polynomial, decomposition into irreducible
// components, and indexing tuples.

#include <map>
#include <vector>

#include "gpi/fp.hpp"

namespace gpi {

using Poly = std::vector<int>;  // coefficients low to high, no trailing zeros
using IntMatrix = std::vector<std::vector<long long>>;

Poly poly_trim(Poly a);
Poly poly_mul(const Poly& a, const Poly& b, int p);
Poly poly_mod(const Poly& a, const Poly& m, int p);
Poly poly_div(const Poly& a, const Poly& m, int p);
Poly poly_gcd(Poly a, Poly b, int p);  // monic

// Monic irreducible factors of Phi_q over F_p, sorted so that the first one
// is least when coefficients are compared from the top degree down.
std::vector<Poly> factor_cyclotomic(int q, int p);
// Squarefree input; Berlekamp's algorithm.
std::vector<Poly> berlekamp(const Poly& f, int p);
FpMatrix companion(const Poly& g, int p);

// A representation of Z_q^l given by the images of the standard basis.
struct MatRep {
  int q = 2, l = 0, p = 2, k = 0;
  std::vector<FpMatrix> gens;

  FpMatrix image(const std::vector<int>& u) const;
  // all q^l vectors, first coordinate most significant
  std::vector<std::vector<int>> domain() const;
  void check() const;  // commuting, order dividing q, invertible
};

MatRep trivial_rep(int q, int l, int p, int k);
MatRep direct_sum(const MatRep& a, const MatRep& b);
// Same representation in the basis given by the columns of Pm.
MatRep conjugate_rep(const MatRep& a, const FpMatrix& Pm);
// u -> rep(psi u) for psi in GL_l(Z_q).
MatRep compose_rep(const MatRep& a, const IntMatrix& psi);

// f_v: u -> M^{(v.u mod q)}, M the companion matrix of the first factor.
MatRep irreducible_rep(const std::vector<int>& v, int q, int l, int p);
bool is_irreducible(const MatRep& rep);
// Trace equality; decides equivalence of irreducibles.
bool chars_equal(const MatRep& a, const MatRep& b);
// Equivalence of arbitrary representations through their decompositions.
bool reps_equivalent(const MatRep& a, const MatRep& b);
bool labels_equivalent(const std::vector<int>& u, const std::vector<int>& v, int q, int p);

struct RepComponent {
  MatRep rep;  // irreducible
  int mult = 0;
  std::vector<std::vector<int>> labels;  // all v with f_v equivalent, sorted
};
std::vector<RepComponent> decompose_rep(const MatRep& rep);

// For each multiplicity w, the chosen labels of the classes of that
// multiplicity, sorted.
using IndexingTuple = std::map<int, std::vector<std::vector<int>>>;
// All indexing tuples; the first takes the least label of every class.
std::vector<IndexingTuple> indexing_tuples(const MatRep& rep);
std::vector<IndexingTuple> indexing_tuples(const std::vector<RepComponent>& comps);

}  // namespace gpi
