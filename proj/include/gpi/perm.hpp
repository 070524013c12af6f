#pragma once
// Permutation groups with a base and strong generating set.
//
// A permutation is its image array; perm_mul(a, b) is a∘b (b acts first).
// Cosets are left cosets rep∘G.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/error.hpp"

namespace gpi {

using Perm = std::vector<int>;
// Word letters: +(i+1) is generator i, -(i+1) its inverse. A word
// w0 w1 ... evaluates to w0∘w1∘...
using Word = std::vector<int>;

Perm perm_identity(int m);
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inv(const Perm& a);
bool perm_is_identity(const Perm& a);
bool perm_is_valid(const Perm& a);
std::string perm_str(const Perm& a);
Perm parse_perm(const std::string& s);
Perm eval_word(const Word& w, const std::vector<Perm>& gens, int m);

class PermGroup {
 public:
  PermGroup() = default;
  explicit PermGroup(int m) : m_(m) {}
  PermGroup(int m, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {},
            bool track_words = false);

  int degree() const { return m_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<int>& base() const { return base_; }
  std::vector<Perm> strong_generators() const { return strong_; }
  int levels() const { return int(base_.size()); }
  // orbit of base[i] under the stabilizer of base[0..i-1], in discovery order
  const std::vector<int>& orbit(int i) const { return lv_[i].orbit; }
  bool in_orbit(int i, int pt) const { return lv_[i].idx[pt] >= 0; }
  // u with u(base[i]) = pt
  const Perm& transversal_elem(int i, int pt) const { return lv_[i].u[lv_[i].idx[pt]]; }
  const Perm& transversal_inv(int i, int pt) const { return lv_[i].uinv[lv_[i].idx[pt]]; }
  // strong generators fixing base[0..i-1]
  std::vector<Perm> level_generators(int i) const;

  std::uint64_t order() const;
  bool contains(const Perm& g) const;
  // residue and the level at which sifting stopped (levels() if it passed)
  std::pair<Perm, int> sift(Perm g, int start = 0) const;
  std::optional<Word> word_of(const Perm& g) const;
  std::vector<Perm> elements(std::size_t cap = 5000000) const;
  bool is_trivial() const { return strong_.empty(); }

 private:
  struct Level {
    std::vector<int> sgens;  // indices into strong_
    std::vector<int> orbit;
    std::vector<int> idx;    // point -> position in orbit, -1 if absent
    std::vector<Perm> u, uinv;
    std::vector<Word> uw;
  };
  int m_ = 0;
  bool words_ = false;
  std::vector<Perm> gens_;
  std::vector<Perm> strong_;
  std::vector<Word> sword_;
  std::vector<int> base_;
  std::vector<Level> lv_;

  void add_level(int pt);
  void compute_orbit(int i);
  void schreier_sims();
};

struct PermCoset {
  std::optional<Perm> rep;
  PermGroup group;
  bool empty() const { return !rep.has_value(); }
  bool contains(const Perm& g) const;
};

PermGroup bsgs_build(const std::vector<Perm>& gens, int m);
std::optional<Word> membership(const PermGroup& G, const Perm& g);
PermGroup pointwise_stabilizer(const PermGroup& G, const std::vector<int>& B);
// action[x] is the image of point x in the second domain, or -1 for points
// the action ignores.
PermGroup kernel_of_action(const PermGroup& G, const std::vector<int>& action);
std::vector<Perm> reduce_generators(const PermGroup& G);
std::vector<std::vector<int>> orbits(const PermGroup& G);
std::vector<std::vector<int>> orbits_of(const std::vector<Perm>& gens, int m);
// Minimal block system of a transitive group, or nullopt if primitive.
std::optional<std::vector<std::vector<int>>> minimal_blocks(const PermGroup& G);
// Same, for the action on a G-stable subset `pts` (on which G is transitive).
std::optional<std::vector<std::vector<int>>> minimal_blocks_on(const std::vector<Perm>& gens,
                                                               const std::vector<int>& pts);
PermGroup intersect(const PermGroup& G, const PermGroup& H);
PermCoset coset_intersection(const PermCoset& c1, const PermCoset& c2);
inline constexpr std::size_t kTransversalCap = 1000000;
std::vector<Perm> transversal(const PermGroup& G, const PermGroup& H,
                              std::size_t cap = kTransversalCap);
// Lexicographically least element of the left coset g∘H in base-image order.
Perm canonical_coset_rep(const PermGroup& H, const Perm& g);
// Young subgroup generators: Sym of each cell.
std::vector<Perm> symmetric_generators(const std::vector<int>& cell, int m);

}  // namespace gpi
