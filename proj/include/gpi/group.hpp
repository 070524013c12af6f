#pragma once
// Finite groups given by their multiplication tables.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/error.hpp"

namespace gpi {

using Elem = int;

class CayleyTable {
 public:
  CayleyTable() = default;
  // Builds without checking the group axioms; callers that hold untrusted
  // data go through validate_table instead.
  static CayleyTable unchecked(int n, const std::vector<int>& grid);

  int order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return tab_[std::size_t(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  Elem pow(Elem a, long long e) const;
  std::vector<int> grid() const;

  std::vector<std::string> labels;

  bool operator==(const CayleyTable& o) const {
    return n_ == o.n_ && tab_ == o.tab_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint16_t> tab_;
  std::vector<int> inv_;
};

// Throws Error with kind NotLatin, NoIdentity or NotAssociative; the message
// carries the offending row/column or witness triple.
struct ValidationFailure {
  std::string kind;
  std::array<int, 3> witness{-1, -1, -1};
};
std::optional<ValidationFailure> check_table(int n, const std::vector<int>& grid);
CayleyTable validate_table(int n, const std::vector<int>& grid);

struct Subgroup {
  std::vector<Elem> elems;  // sorted, contains 0
  bool is_normal = false;
  int order() const { return int(elems.size()); }
  bool contains(Elem g) const;
};

struct GroupHom {
  std::vector<Elem> image;
};

struct AbelianBasis {
  std::vector<Elem> gens;
  std::vector<int> orders;  // ascending
};

int element_order(const CayleyTable& G, Elem g);
std::vector<int> element_orders(const CayleyTable& G);
bool is_abelian(const CayleyTable& G);
bool is_abelian(const CayleyTable& G, const std::vector<Elem>& S);
Subgroup center(const CayleyTable& G);
Subgroup closure(const CayleyTable& G, const std::vector<Elem>& S);
Subgroup normal_closure(const CayleyTable& G, const std::vector<Elem>& S);
bool is_subgroup(const CayleyTable& G, const std::vector<Elem>& S);
bool is_normal(const CayleyTable& G, const std::vector<Elem>& S);
Subgroup whole(const CayleyTable& G);
Subgroup commutator_subgroup(const CayleyTable& G);

struct Quotient {
  CayleyTable table;
  GroupHom proj;            // G -> quotient
  std::vector<Elem> reps;   // minimal element of each coset
};
Quotient quotient(const CayleyTable& G, const Subgroup& N);

std::vector<Elem> sylow_elements(const CayleyTable& G, int p);

// Table of a subgroup; element i of the result is H.elems[i].
CayleyTable subgroup_table(const CayleyTable& G, const Subgroup& H);

AbelianBasis abelian_basis(const CayleyTable& G);
AbelianBasis abelian_basis(const CayleyTable& G, const Subgroup& A);
// Coordinates of g in the basis (exponent of each generator). The group
// must be abelian and g must lie in the span of the basis.
std::vector<int> basis_coordinates(const CayleyTable& G, const AbelianBasis& b,
                                   Elem g);
// Lookup table for all coordinates at once: maps element -> coordinate
// vector, or empty vector for elements outside the span.
std::vector<std::vector<int>> coordinate_table(const CayleyTable& G,
                                               const AbelianBasis& b);
Elem basis_element(const CayleyTable& G, const AbelianBasis& b,
                   const std::vector<int>& x);

bool is_homomorphism(const CayleyTable& G, const CayleyTable& H,
                     const std::vector<Elem>& img);
bool is_isomorphism(const CayleyTable& G, const CayleyTable& H,
                    const std::vector<Elem>& img);
std::vector<Elem> compose_maps(const std::vector<Elem>& outer,
                               const std::vector<Elem>& inner);
std::vector<Elem> invert_map(const std::vector<Elem>& m);

// Prime factorization helpers used throughout.
std::vector<int> prime_divisors(long long n);
bool is_prime(long long n);
bool is_prime_power(long long n, int* p = nullptr, int* e = nullptr);

// Integer coefficients of a 2-cocycle Q x Q -> A, A = prod Z/moduli[i].
struct CocycleMatrix {
  std::vector<int> moduli;
  int qn = 0;
  std::vector<std::vector<int>> rows;  // rows[i][p * qn + q]
  int k() const { return int(moduli.size()); }
  int at(int i, int p, int q) const { return rows[i][std::size_t(p) * qn + q]; }
};

bool is_cocycle(const CayleyTable& Q, const CocycleMatrix& f);
bool is_normalized(const CocycleMatrix& f);

}  // namespace gpi
