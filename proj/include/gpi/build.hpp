#pragma once
// Group constructors and the descriptor language used for the corpus.
//
//   cyclic(n)  elem_abelian(p,k)  abelian([n1,n2,...])  sym(n)  alt(n)
//   dihedral(n)  sl2(p)  direct_product(d1,d2,...)
//   semidirect(q=,l=,p=,k=,action=[...][,n=[moduli]])
//   central_ext(Q=desc, A=[moduli], cocycle=zero|lift(desc)|factors(c,...)|rows([...]))
//   relabel(desc, seed)

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gpi/group.hpp"

namespace gpi {

struct Descriptor;

struct DescValue {
  enum Kind { Int, List, Node } kind = Int;
  long long i = 0;
  std::vector<DescValue> list;
  std::shared_ptr<Descriptor> node;
};

struct Descriptor {
  std::string name;
  std::vector<DescValue> args;
  std::vector<std::pair<std::string, DescValue>> named;

  const DescValue* get(const std::string& key, std::size_t pos) const;
  std::string str() const;
};

Descriptor parse_descriptor(const std::string& text);
CayleyTable build_group(const Descriptor& d);
CayleyTable build_group(const std::string& text);

using IntMatrix = std::vector<std::vector<long long>>;

CayleyTable cyclic_group(int n);
CayleyTable abelian_group(const std::vector<int>& moduli);
CayleyTable elem_abelian_group(int p, int k);
CayleyTable sym_group(int n);
CayleyTable alt_group(int n);
CayleyTable dihedral_group(int n);
CayleyTable sl2_group(int p);
CayleyTable direct_product(const std::vector<CayleyTable>& factors);
// Z_q^l acting on prod Z/moduli through commuting integer matrices (column
// convention: x -> M x). Elements are (h, x) with h most significant.
CayleyTable semidirect_group(int q, int l, const std::vector<int>& moduli,
                             const std::vector<IntMatrix>& action);
// Elements are (q, a) with q most significant; product
// (a1,q1)(a2,q2) = (a1+a2+f(q1,q2), q1 q2). f must be a normalized cocycle.
CayleyTable central_ext_group(const CayleyTable& Q, const CocycleMatrix& f);
CayleyTable relabel_group(const CayleyTable& G, std::uint64_t seed,
                          std::vector<Elem>* map_out = nullptr);
// Apply an arbitrary bijection fixing 0: element a becomes perm[a].
CayleyTable permute_group(const CayleyTable& G, const std::vector<Elem>& perm);

// Cocycle of Q (values in prod Z/moduli) pulled back from the extension D of
// its center: D/Z(D) must be isomorphic to Q and Z(D) must have the given
// invariants.
CocycleMatrix lift_cocycle(const CayleyTable& Q, const std::vector<int>& moduli,
                           const CayleyTable& D);

}  // namespace gpi
