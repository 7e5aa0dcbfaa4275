#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torustri {

// Errors thrown by map construction / queries.
struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonInvolutionTwin : MapError {
  NonInvolutionTwin() : MapError("twin is not a fixed-point-free involution on non-stems") {}
};
struct BrokenPermutation : MapError {
  BrokenPermutation() : MapError("next_ccw is not a permutation") {}
};
struct GenusMismatch : MapError {
  GenusMismatch(int declared, int computed)
      : MapError("declared genus " + std::to_string(declared) + " but Euler count gives " +
                 std::to_string(computed)) {}
};
struct NotGenusOne : MapError {
  NotGenusOne() : MapError("operation requires a genus-1 map") {}
};
struct Disconnected : MapError {
  Disconnected() : MapError("map is not connected") {}
};

constexpr int kNoTwin = -1;

// A map on an oriented surface given as a rotation system. Half-edges carry a
// twin pairing (absent twin = stem, a dangling half-edge) and the
// counterclockwise successor around their vertex. Vertices and faces are orbit
// data derived from the two permutations; they are recomputed on construction
// and never stored authoritatively anywhere else.
//
// Face traversal: alpha(h) = twin(h), or h itself for a stem. The orbit of
// phi = next_ccw o alpha walks each face counterclockwise (face on the left);
// a stem is passed once per orbit, standing for both of its sides.
class RotMap {
 public:
  RotMap() = default;

  // half_edge_table[i] = (twin or kNoTwin, next_ccw)
  static RotMap build(const std::vector<std::pair<int, int>>& half_edge_table,
                      std::optional<int> declared_genus = std::nullopt);

  int num_half_edges() const { return static_cast<int>(next_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_first_.size()); }
  int num_edges() const { return num_edges_; }   // stems excluded
  int num_faces() const { return static_cast<int>(face_first_.size()); }
  int num_stems() const { return num_stems_; }
  int genus() const { return genus_; }

  bool is_stem(int h) const { return twin_[h] == kNoTwin; }
  int twin(int h) const { return twin_[h]; }
  int next_ccw(int h) const { return next_[h]; }
  int prev_ccw(int h) const { return prev_[h]; }
  int alpha(int h) const { return twin_[h] == kNoTwin ? h : twin_[h]; }
  int phi(int h) const { return next_[alpha(h)]; }  // face successor (ccw walk)
  int vertex_of(int h) const { return vertex_[h]; }
  int face_of(int h) const { return face_[h]; }
  int vertex_rep(int v) const { return vertex_first_[v]; }
  int face_rep(int f) const { return face_first_[f]; }
  int degree(int v) const { return vertex_degree_[v]; }

  // Half-edges of the face orbit through h, in ccw order.
  std::vector<int> face_orbit(int h) const;
  // All faces as orbit lists.
  std::vector<std::vector<int>> faces() const;
  // Half-edges around the vertex of h, in ccw order starting at h.
  std::vector<int> vertex_orbit(int h) const;

  // Edge ids: one id per twin pair, dense, stems get -1. edge_half(e) is the
  // half-edge with the smaller id of the pair (the edge's reference side).
  int edge_id(int h) const { return edge_id_[h]; }
  int edge_half(int e) const { return edge_half_[e]; }

  bool connected() const;

  // Per-edge Z^2 labels from a tree-cotree decomposition: spanning tree edges
  // are (0,0), the two leftover generators are (1,0) and (0,1), and every face
  // boundary sums to zero. Sign convention: label counts positively when the
  // edge is traversed along its reference side edge_half(e). Requires a
  // connected genus-1 map.
  std::vector<std::array<long long, 2>> homology_labels() const;

  // True iff the genus-1 map has no contractible loop and no homotopic pair of
  // multiple edges (on the torus: null-homologous <=> contractible for these).
  bool is_essentially_simple() const;

  std::string to_json(std::optional<int> root_half_edge = std::nullopt) const;
  static RotMap from_json(const std::string& text, std::optional<int>* root_out = nullptr);

 private:
  void compute_orbits();

  std::vector<int> twin_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> vertex_;
  std::vector<int> face_;
  std::vector<int> vertex_first_;
  std::vector<int> face_first_;
  std::vector<int> vertex_degree_;
  std::vector<int> edge_id_;
  std::vector<int> edge_half_;
  int num_edges_ = 0;
  int num_stems_ = 0;
  int genus_ = 0;
};

}  // namespace torustri
