#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "torustri/bigint.hpp"
#include "torustri/paths.hpp"
#include "torustri/rng.hpp"

namespace torustri {

struct ForestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A forest with tau trees and rho tree-vertices, stored as an array of nodes.
// Nodes 0..tau are the floors (the paper's floors 1..tau+1, the last one
// childless); the remaining nodes are tree-vertices. Children are kept in
// counterclockwise order.
struct Forest {
  int tau = 0;
  std::vector<int> parent;                 // -1 for floors
  std::vector<std::vector<int>> children;  // per node, ccw order

  int size() const { return static_cast<int>(parent.size()); }
  int num_tree_vertices() const { return size() - tau - 1; }
  bool is_floor(int u) const { return u <= tau; }
  int floor_of(int u) const;  // 0-based floor index
  int depth(int u) const;     // floors have depth 1

  // Checks the four forest conditions (prefix-closure is structural here;
  // validates parent/child consistency and the childless last floor).
  void validate() const;
};

struct WellLabeledForest {
  Forest forest;
  std::vector<int> label;  // per node; 0 on floors, -1 on floor children

  int rho() const { return forest.num_tree_vertices(); }
  int tau() const { return forest.tau; }

  // Checks label conditions: 0 on floors, -1 on depth-2 nodes, sibling labels
  // nondecreasing within [l(u)-1, l(u)+1] under tree-vertices.
  void validate() const;

  // Stems per gap of tree-vertex u (gap g sits before child g+1; there are
  // c_u+1 gaps and exactly 2 stems). Derived from the labels.
  std::vector<int> stem_gaps(int u) const;
};

// Contour pair of a well-labeled forest: vertex contour r_F, contour function
// C_F(i) = fl(r_F(i)) - |r_F(i)| and label walk L(i) = l(r_F(i)), on
// [0, 2 rho + tau].
struct ContourPair {
  std::vector<int> vertex;  // r_F as node ids
  std::vector<int> C;
  std::vector<int> L;
};

ContourPair contour_pair(const WellLabeledForest& wf);
WellLabeledForest from_contour(const std::vector<int>& C, const std::vector<int>& L);

// Bijection with inverse 3-dominating words of length 4 rho + tau:
// counterclockwise walk writing 1 on outgoing tree-edges and 0 on ingoing
// tree-edges, stems and outgoing floor-edges.
BinaryWord encode_word(const WellLabeledForest& wf);
WellLabeledForest decode_word(const BinaryWord& b, long long rho, long long tau);

// |F^rho_tau| = tau/(4 rho + tau) * C(4 rho + tau, rho)
Bignum count_forests(long long rho, long long tau);

// Exactly uniform over F^rho_tau via the first-passage walk and the word
// bijection.
WellLabeledForest sample_uniform_forest(long long rho, long long tau, Philox& rng);

// tau-Galton-Watson forest (floors: Geometric(3/4); tree-vertices: the
// size-biased law, equivalently NegativeBinomial(3, 3/4)) conditioned on rho
// tree-vertices by rejection, then 2 stems per tree-vertex placed uniformly.
// Throws ForestError after max_attempts rejections.
WellLabeledForest sample_gw_forest(long long rho, long long tau, Philox& rng,
                                   long long max_attempts = 2000000);

// Offspring laws of the tau-Galton-Watson forest: floors draw
// Geometric(3/4); tree-vertices draw the size-biased law (NB(3, 3/4)).
long long gw_floor_offspring(Philox& rng);
long long gw_tree_offspring(Philox& rng);

// Per-vertex child permutations.
using PermutationVector = std::vector<std::vector<int>>;

PermutationVector identity_permutations(const Forest& f);
PermutationVector random_permutations(const Forest& f, Philox& rng);

enum class SymmetrizeMode { Partial, Complete };

// Partial: edge labels stay at their child positions (always well-labeled).
// Complete: edge labels ride with the children (possibly not well-labeled).
WellLabeledForest symmetrize(const WellLabeledForest& wf, const PermutationVector& p,
                             SymmetrizeMode mode);

// Text format: contour line (parenthesized ints) + label line.
std::string forest_to_text(const WellLabeledForest& wf);
WellLabeledForest forest_from_text(const std::string& text);

}  // namespace torustri
