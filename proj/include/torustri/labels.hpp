#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "torustri/closure.hpp"
#include "torustri/unicell.hpp"

namespace torustri {

struct UnclassifiedEdge : MapError {
  UnclassifiedEdge() : MapError("edge fits no E_N / E_P / E_R class") {}
};

// Labels of the angle sequence A = (a_0..a_l) of Gamma, propagated to G+,
// with the per-vertex min/max/first-index tables.
struct LabelTable {
  std::vector<int> lambda_A;   // per A index; lambda_A[0] = 3, lambda_A[l] = 0
  std::vector<int> vertex_A;   // incident vertex of each angle
  std::vector<char> sep_stem;  // separator between a_i and a_{i+1} is a stem
  std::vector<int> m, M, b;    // per vertex: min/max label, first angle index

  int ell() const { return static_cast<int>(lambda_A.size()) - 1; }
};

LabelTable compute_labels(const LabeledTriangulation& g);

// min lambda over the A-index interval [b(u), b(v)] (order-normalized).
int mbar(const LabelTable& t, int u, int v);

enum class EdgeClass { Normal, Proper, RootPath };

// Classification of the edges of T into E_N / E_P / E_R.
std::vector<EdgeClass> classify_edges(const UnicellularMap& t);

// (lambda(a_{j+1}) - lambda(a_i), lambda(a_{i+1}) - lambda(a_j)) for edge e
// of T, with (i, j) the A positions flanking its two sides.
std::pair<int, int> edge_label_variation(const UnicellularMap& t, const LabelTable& lt,
                                         int edge);

// BFS distances from a source vertex over the edges of g (root half ignored).
std::vector<int> bfs_distances(const RotMap& g, int source);

struct RightmostWalk {
  std::vector<int> walk_halves;    // W_R(e): directed out-halves, in order
  std::vector<int> walk_vertices;  // u_0 .. u_k (k = |walk_halves|)
  std::vector<int> path_halves;    // P_R(e) after the loop deletions
  std::vector<int> path_vertices;
  std::vector<int> h_set;          // inner P_R vertices with right-outgoing edges
};

// Rightmost walk from the directed edge e (an out-half), truncated at the
// first visit of the root vertex, with the pruned right-to-root path.
RightmostWalk rightmost_walk(const LabeledTriangulation& g, int out_half);

// The ending periodic part of the un-truncated rightmost walk from e;
// for closure outputs this is the root triangle.
std::vector<int> rightmost_cycle(const LabeledTriangulation& g, int out_half);

struct SubpathType {
  char leave;         // 'L' or 'R'
  char enter;         // 'L' or 'R'
  char region;        // 'l', 'r' (contractible, disk left/right) or 'n'
  bool has_h;         // contains vertices of h(e)
  int c;              // the constant of the length inequality
  std::string name() const;
};

// Classify a path S = (s_vertices) meeting P_R only at its endpoints
// u_i -> u_j (i < j) into one of the 24 types.
SubpathType classify_subpath_type(const LabeledTriangulation& g,
                                  const RightmostWalk& pr,
                                  const std::vector<int>& s_halves, int i, int j);

// Shortest path from u to the root vertex maximizing common edges with
// P_R(e); returned as vertex list.
std::vector<int> shortest_path_max_common(const LabeledTriangulation& g, int u,
                                          const RightmostWalk& pr);

// Count of interior edges leaving a contractible simple cycle (y = t - 3).
int disk_leaving_edges(const LabeledTriangulation& g, const std::vector<int>& cycle_halves,
                       bool disk_on_left);

// Whether the simple cycle is null-homologous, and if so which side bounds
// the disk (true = left).
std::optional<bool> contractible_disk_side(const RotMap& g,
                                           const std::vector<int>& cycle_halves);

}  // namespace torustri
