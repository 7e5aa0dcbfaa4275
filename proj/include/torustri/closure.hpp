#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torustri/rng.hpp"
#include "torustri/unicell.hpp"

namespace torustri {

struct SafetyViolation : MapError {
  SafetyViolation() : MapError("attachment would wrap over the root angle") {}
};
struct NoAdmissibleTriple : MapError {
  NoAdmissibleTriple() : MapError("no admissible triple available (corrupt map)") {}
};

struct ClosureStep {
  int k;            // 1-based step index
  int stem;         // stem half-edge id (in Gamma)
  int attach_angle; // index in A of the angle a(s) the stem was attached to
};

struct ClosureTrace {
  std::vector<ClosureStep> steps;
};

// The closed triangulation G+ (root half-edge kept as the unique twin-less
// half-edge), with the propagated angle labels and the canonical
// 3-orientation.
struct LabeledTriangulation {
  RotMap g;
  int root_half = -1;   // dangling root half-edge id
  int root_angle = -1;  // angle (root_half, next_ccw(root_half))
  CanonicalOrientation orient;
  std::vector<int> angle_ancestor;  // per half-edge h: index in A of Gamma
  std::vector<int> lambda;          // per half-edge h: label of angle h

  int root_vertex() const { return g.vertex_of(root_half); }
  std::string to_json() const;
};

// Gamma = T plus the dangling root half-edge inside the root angle.
// Returns the new map and the root half-edge id.
std::pair<RotMap, int> with_root_half_edge(const UnicellularMap& t);

// The deterministic complete closure of a safe balanced rooted unicellular
// map: sweep counterclockwise from the root angle, closing each stem on the
// two edges preceding it. Throws SafetyViolation on unsafe input.
std::pair<LabeledTriangulation, ClosureTrace> complete_closure(const UnicellularMap& t);

// Closure taking admissible triples in an arbitrary (seeded) valid order;
// the result must coincide with the deterministic sweep.
std::pair<LabeledTriangulation, ClosureTrace> complete_closure_random_order(
    const UnicellularMap& t, Philox& rng);

struct ClosureReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Structural checks on a closure output: 2n triangular faces, 3n edges,
// essential simplicity, outdegree 3, gamma = 0 on two independent
// non-contractible cycles, rightmost walks ending on the root triangle.
ClosureReport verify_closure_output(const LabeledTriangulation& g);

// Canonical serialization of a rooted map (BFS relabeling from the root
// half-edge); equal strings iff equal rooted maps.
std::string canonical_form(const RotMap& m, int root_half);

}  // namespace torustri
