#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "torustri/forests.hpp"
#include "torustri/paths.hpp"
#include "torustri/unicell.hpp"

namespace torustri {

struct UnknownKernel : MapError {
  UnknownKernel() : MapError("map does not match any kernel type") {}
};
struct InconsistentParameters : MapError {
  InconsistentParameters() : MapError("parameter vector violates the class constraints") {}
};

// Kernel row: gamma-sum constraints and the stem flags c_1..c_6 per type.
struct KernelSpec {
  int k;
  int t;
  int gamma12;  // gamma_1 + gamma_2 (k >= 1)
  int gamma23;  // gamma_2 + gamma_3 (k >= 1)
  std::array<int, 6> c;
};

const KernelSpec& kernel_spec(int k);

struct ParameterVector {
  int k = 0;
  std::vector<long long> rho, tau, gamma, sigma;  // length 2t
  int t() const { return k == 0 ? 2 : 3; }
  long long n() const;
  void validate(int n) const;  // the constraint system of R^0 / R^k
};

struct DecomposedMap {
  int k = 0;
  std::vector<WellLabeledForest> forests;  // 2t, in part order
  std::vector<MotzkinPath> motzkin;        // t, read along the chain direction

  ParameterVector params() const;
  std::string to_json() const;
  static DecomposedMap from_json(const std::string& text);
};

// Assembles the kernel-rooted unicellular map of U_{r,b}(n) from its
// components. part_vertex, when given, receives per part the map vertex
// visited at each contour position of that part's forest.
UnicellularMap assemble(const DecomposedMap& d,
                        std::vector<std::vector<int>>* part_vertex = nullptr);

// Inverse of assemble on kernel-rooted balanced unicellular maps.
DecomposedMap decompose(const UnicellularMap& u,
                        std::vector<std::vector<int>>* part_vertex = nullptr);

// Shifted labeling S of the unicellular map, its concatenated precursor and
// the vertex contour of the stem-stripped map Q.
struct ShiftedLabeling {
  std::vector<int> S_bullet;  // on [0, I]
  std::vector<int> S;         // on [0, 2n+1]
  std::vector<int> rQ;        // vertex ids, on [0, 2n+1]
};

ShiftedLabeling shifted_labeling(const DecomposedMap& d);

// d0(i,j) = m(rQ(i)) + m(rQ(j)) - 2 mbar(rQ(i), rQ(j)) evaluated with a label
// table of the rooted map.
struct LabelTable;  // labels.hpp
int pseudo_distance_d0(const ShiftedLabeling& s, const LabelTable& lt, int i, int j);

}  // namespace torustri
