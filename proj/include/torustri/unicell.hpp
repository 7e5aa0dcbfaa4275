#pragma once

#include <optional>
#include <vector>

#include "torustri/rotmap.hpp"

namespace torustri {

struct NotUnicellular : MapError {
  NotUnicellular() : MapError("map is not a one-face genus-1 map") {}
};
struct MissingRoot : MapError {
  MissingRoot() : MapError("operation needs a rooted map") {}
};
struct NotACycleOfMap : MapError {
  NotACycleOfMap() : MapError("walk is not one of the map's cycles") {}
};
struct InvalidSlot : MapError {
  InvalidSlot() : MapError("root slot must be one of the four closure angles") {}
};

enum class Shape { Square, Hexagonal };

// A directed closed walk on the map, as a sequence of half-edges h with
// consecutive ones sharing vertex_of(h_{i+1}) == vertex_of(twin(h_i)).
using Cycle = std::vector<int>;

// Toroidal unicellular map: one face, genus 1, n vertices, n+1 edges, with the
// stem-degree rules of the T_r / U classes. The root angle is identified by
// the half-edge h whose ccw-following angle it is; for T_r maps the root stem
// is next_ccw(root_angle).
class UnicellularMap {
 public:
  RotMap map;
  std::optional<int> root_angle;  // angle (h, next_ccw(h)); root stem = next_ccw(h)
  std::optional<int> root_half;   // kernel-rooting half-edge for U_r classes

  int n() const { return map.num_vertices(); }

  // one face + genus 1 + edge count n+1
  bool is_unicellular() const;

  Shape shape() const;
  std::vector<int> special_vertices() const;

  // The 2 (square) or 3 (hexagonal) cycles, as directed closed walks,
  // in a deterministic order.
  std::vector<Cycle> cycles() const;

  // Degree rules for membership in T_r(n) (rooted = true) or U(n).
  bool stem_degrees_ok(bool rooted) const;

  void validate(bool rooted) const;
};

enum class GammaMode { EdgesAndStems, StemsOnly };

// Per-edge canonical orientation: orient[e] is the out-half-edge of edge e.
// Stems are always outgoing from their incident vertex.
struct CanonicalOrientation {
  std::vector<int> out_half;  // per edge id
  bool outgoing(const RotMap& m, int h) const {
    if (m.is_stem(h)) return true;
    return out_half[m.edge_id(h)] == h;
  }
};

// The root-sweep orientation of a rooted unicellular map: walking clockwise
// around the unique face from the root angle, the first time an edge is met
// it is oriented counterclockwise w.r.t. the face.
CanonicalOrientation canonical_orientation(const UnicellularMap& t);

// gamma(C): outgoing incidences on the right minus on the left of the
// directed cycle. EdgesAndStems counts oriented edges and stems (T_r
// convention, needs an orientation); StemsOnly counts stems (U convention).
int gamma(const UnicellularMap& u, const Cycle& cycle, GammaMode mode,
          const CanonicalOrientation* orient = nullptr);

// gamma vanishes on every cycle of the map (2 or 3 cycles).
bool is_balanced(const UnicellularMap& u);

// Simulates the complete closure; true iff no attachment wraps over the root
// angle.
bool is_safe(const UnicellularMap& t);

// Remove the root angle and root stem of a T_{r}(n) map: U(n) member.
UnicellularMap strip_root(const UnicellularMap& t);

// The four angles of U that remain in the special face when the stemless
// closure is run; returned as angle ids (half-edges of U).
std::array<int, 4> root_slots(const UnicellularMap& u);

// Insert a root stem in slot (0..3): T_{r,b}(n) member.
UnicellularMap add_root(const UnicellularMap& u, int slot);

// The clockwise angle sequence around the unique face starting from the angle
// identified by `start_angle` (angle ids in visiting order). For each step i,
// separator_is_stem[i] tells whether angles i and i+1 are consecutive around
// a stem (else an edge side); separator_half[i] is the half-edge walked.
struct AngleSequence {
  std::vector<int> angles;
  std::vector<char> separator_is_stem;
  std::vector<int> separator_half;
};
AngleSequence clockwise_angles(const RotMap& m, int start_angle);

}  // namespace torustri
