#pragma once
// Brute-force generator-enumeration oracle. Independent of the structural
// algorithms; used to certify their answers at small order.

#include <optional>
#include <vector>

#include "gpi/group.hpp"

namespace gpi {

inline constexpr int kDefaultGuard = 256;

// Short generating sequence: a single generator if cyclic, else the
// lexicographically first generating pair, else a greedy extension.
std::vector<Elem> small_generating_set(const CayleyTable& G);

// First isomorphism in lexicographic order of generator images, or nullopt.
std::optional<std::vector<Elem>> oracle_iso(const CayleyTable& G, const CayleyTable& H,
                                            int guard = kDefaultGuard);
std::vector<std::vector<Elem>> oracle_aut(const CayleyTable& G, int guard = kDefaultGuard);

}  // namespace gpi
