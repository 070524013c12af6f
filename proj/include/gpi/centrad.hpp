#pragma once
// Groups whose radical is the center, elementary abelian, with G/Z(G) a
// direct product of non-abelian simple groups (or of small perfect
// indecomposable groups): socle decomposition, diagonals, product cocycles,
// block code equivalence, and the isomorphism test and coset.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/cohom.hpp"
#include "gpi/fp.hpp"
#include "gpi/group.hpp"

namespace gpi {

struct SocleFactor {
  Subgroup T;                  // in Qbar
  CayleyTable table;           // T on local indices (position in T.elems)
  Subgroup U;                  // preimage in G
  int cls = 0;                 // isomorphism class
  std::vector<Elem> from_ref;  // class reference (local) -> T (local), an isomorphism
};

struct SocleDecomposition {
  Subgroup A;            // Z(G)
  AbelianBasis basis;    // of A
  int p = 2, k = 0;      // A = Z_p^k
  Quotient quot;         // Qbar = G/A
  std::vector<SocleFactor> factors;
  std::vector<CayleyTable> refs;  // one reference table per class
  std::vector<int> class_sizes;   // l_c
  bool bounded = false;           // factors found by bounded enumeration
  // comp[x * l + i]: local index of the T_i component of x in Qbar
  std::vector<int> comp;
  // product section Qbar -> G, s(x) = prod_i s_i(x_i)
  std::vector<Elem> section;

  int length() const { return int(factors.size()); }
  int component(Elem x, int i) const { return comp[std::size_t(x) * factors.size() + i]; }
  Elem compose(const std::vector<int>& local) const;  // Qbar element from components
};

struct CentradOptions {
  int perfect_bound = 60;    // largest perfect factor the bounded enumeration looks for
  bool simple_first = true;  // try the simple-factor decomposition first
};

// nullopt with a reason tag: CenterNotElementary, RadicalNotCentral,
// NotProductOfSimple.
struct RadicalCheck {
  std::optional<SocleDecomposition> dec;
  std::string reason;
};
RadicalCheck check_central_radical(const CayleyTable& G, const CentradOptions& opt = {});

// Every element of prime order has a non-abelian normal closure.
bool no_abelian_normal(const CayleyTable& Q);

// Re-expresses the class structure of dec against other reference tables
// (class c of the result is refs[c]). False when some factor matches none.
bool align_classes(SocleDecomposition& dec, const std::vector<CayleyTable>& refs);

// One automorphism of the class reference per factor.
using Diagonal = std::vector<std::vector<Elem>>;

// The product of Aut(reference) over the factors in mixed radix order, the
// last factor varying fastest.
struct Diagonals {
  std::vector<int> cls;                                    // class of each factor
  std::vector<std::vector<std::vector<Elem>>> class_auts;  // Aut of each reference

  std::uint64_t count() const;
  Diagonal at(std::uint64_t i) const;
  std::vector<std::size_t> digits(std::uint64_t i) const;
};
Diagonals enumerate_diagonals(const SocleDecomposition& dec, std::size_t guard = 100000);

// Per-factor blocks f_i : T_i x T_i -> A (local indices) of the cocycle of
// the product section.
struct ProdCocycle {
  int p = 2;
  std::vector<CocycleMatrix> blocks;

  // k x sum |T_i|^2
  FpMatrix concat() const;
  // f(x, y) = sum_i f_i(x_i, y_i) on Qbar
  std::vector<int> value(const SocleDecomposition& dec, Elem x, Elem y) const;
};
ProdCocycle prod_cocycle(const CayleyTable& G, const SocleDecomposition& dec);

// One invariant projection per class reference; blocks are zero-padded to
// the widest one.
struct ProdProjector {
  std::vector<Projection> per_class;
  int width = 0;
};
ProdProjector prod_projector(const SocleDecomposition& dec);

// Block i = projection of f_i pulled back to the reference through delta_i.
FpMatrix prod_block(const SocleDecomposition& dec, const ProdProjector& P, const ProdCocycle& f, int i,
                    const std::vector<Elem>& delta_i);
FpMatrix prod_projection(const SocleDecomposition& dec, const ProdProjector& P, const Diagonal& delta,
                         const ProdCocycle& f);

// sigma with X·(block i of M1) = block sigma[i] of M2 and
// class2[sigma[i]] = class1[i].
struct BlockEquiv {
  std::vector<int> sigma;
  FpMatrix X;
};
// All such sigma (or the first one), by backtracking pruned on the row
// spaces of the assigned column prefix. generic routes the instance through
// the generalized code equivalence engine instead. Throws ShapeMismatch.
std::vector<BlockEquiv> block_code_equiv(const FpMatrix& M1, const FpMatrix& M2, int width,
                                         const std::vector<int>& class1, const std::vector<int>& class2,
                                         bool first_only = false, bool generic = false);

// A' <= A with G = A' x G/A' when the projected cocycle matrix has rank < k.
struct CenterSplit {
  Subgroup A1;          // A'
  CayleyTable reduced;  // G/A'
  int rank = 0;         // rank of the projected cocycle matrix
};
std::optional<CenterSplit> split_off_center(const CayleyTable& G, const SocleDecomposition& dec);

// False when exactly one group is in the class; throws NotInClass when
// neither is.
bool iso_centrad(const CayleyTable& G1, const CayleyTable& G2);

// Generators of Aut(G1) and one isomorphism G1 -> G2 if there is one. Throws
// HypothesisFailed when G1 is outside the class.
CentralIsoResult aut_coset_centrad(const CayleyTable& G1, const CayleyTable& G2);

// "CentralRadicalSimple", "CentralRadicalPerfectBounded" or "".
std::string centrad_tag(const CayleyTable& G);

}  // namespace gpi
