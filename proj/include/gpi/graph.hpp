#pragma once
// Small-graph isomorphism through edge-fixed layers, and the color
// automorphism coset search it relies on.

#include <optional>
#include <utility>
#include <vector>

#include "gpi/perm.hpp"

namespace gpi {

using Edge = std::pair<int, int>;

struct Graph {
  int m = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_colors;    // parallel to edges; empty means all 0
  std::vector<int> vertex_colors;  // empty means all 0

  int vcolor(int v) const { return vertex_colors.empty() ? 0 : vertex_colors[v]; }
  int ecolor(int i) const { return edge_colors.empty() ? 0 : edge_colors[i]; }
  // m*m table holding edge color + 1, or 0 for a non-edge
  std::vector<int> adjacency() const;
  void check() const;  // throws BadGraph on loops, duplicates or out-of-range ends
};

// Edge-preserving (and color-preserving) bijection X -> Y.
bool is_graph_isomorphism(const Graph& X, const Graph& Y, const Perm& phi);

// X_r: the edges of X lying on paths of length <= r through e. The vertex
// set is unchanged; vertices outside X_r are isolated.
Graph layered_subgraph(const Graph& X, Edge e, int r);
// Vertices of X_r.
std::vector<int> layer_vertices(const Graph& X, Edge e, int r);

// Generators of the kernel of restricting Aut_e(X_{r+1}) to X_r: the full
// symmetric group on every class of new vertices sharing their fathers.
std::vector<Perm> kernel_layer_generators(const Graph& X, Edge e, int r);

// Elements g of c with tgt[g(x)] == src[x] for all x in B, where B is
// stable under c.group. Colors are indexed by point over the whole domain.
PermCoset color_coset(const PermCoset& c, const std::vector<int>& B, const std::vector<int>& src,
                      const std::vector<int>& tgt, std::size_t cap = kTransversalCap);
PermGroup color_stabilizer(const PermGroup& G, const std::vector<int>& B,
                           const std::vector<int>& colors, std::size_t cap = kTransversalCap);

// Automorphisms of the connected graph X that map e to itself.
PermGroup aut_edge_fixed(const Graph& X, Edge e);
// Isomorphisms X -> Y of connected graphs sending e to f, as rep∘Aut_e(X).
PermCoset edge_iso_coset(const Graph& X, Edge e, const Graph& Y, Edge f);

std::optional<Perm> graph_iso(const Graph& X, const Graph& Y);

// Edge-colored complete bipartite graph: a d x c color matrix plus optional
// row and column colors.
struct BipartiteColors {
  std::vector<std::vector<int>> cells;
  std::vector<int> row_colors, col_colors;  // empty means uniform
};

// Pairs (s0, s1) in Sym(d) x Sym(c) with B[s0(i)][s1(j)] == A[i][j] and
// matching row/column colors. Points 0..d-1 are rows, d..d+c-1 columns.
PermCoset colored_bipartite_iso(const BipartiteColors& A, const BipartiteColors& B);
PermCoset colored_bipartite_iso(const std::vector<std::vector<int>>& A1,
                                const std::vector<std::vector<int>>& B1);

}  // namespace gpi
