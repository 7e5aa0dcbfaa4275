#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torustri/bigint.hpp"
#include "torustri/closure.hpp"
#include "torustri/decomp.hpp"
#include "torustri/rng.hpp"
#include "torustri/unicell.hpp"

namespace torustri {

// ---- exhaustive oracles ----------------------------------------------------

// Direct brute force over rooted boundary words: all of T_{r,s,b}(n).
// Exponential; n <= 4 in practice.
std::vector<UnicellularMap> enumerate_trsb_brute(int n, bool* budget_exceeded = nullptr,
                                                 long long budget = -1);

// Decomposition-side enumeration: all parameter vectors and component tuples,
// assembled and rooted through the four closure slots, deduplicated.
struct OracleEnumeration {
  int n = 0;
  std::vector<UnicellularMap> maps;  // T_{r,s,b}(n)
  std::vector<std::string> keys;
  std::map<std::string, int> index_of_key;
  std::map<std::string, int> hit_count;  // times each key was produced
};
OracleEnumeration enumerate_all(int n);

// Canonical key of a rooted unicellular map.
std::string unicellular_key(const UnicellularMap& t);

// All parameter vectors of the constraint set C_n (test oracle; small n).
std::vector<ParameterVector> all_parameter_vectors(int n);

// ---- exact counting --------------------------------------------------------

Bignum three_t_rsb(int n);  // 3 |T_{r,s,b}(n)|
Bignum count_g(int n);      // |G(n)|

// ---- sampling --------------------------------------------------------------

enum class ArithMode { Exact, Float };

// Weight tables for the law P_n, built once per (n, mode) and shared
// read-only across replicas.
class ParameterLaw {
 public:
  ParameterLaw(int n, ArithMode mode);
  ~ParameterLaw();
  ParameterLaw(const ParameterLaw&) = delete;
  ParameterLaw& operator=(const ParameterLaw&) = delete;

  int n() const { return n_; }
  ArithMode mode() const { return mode_; }
  const Bignum& exact_total() const;  // 3 |T_{r,s,b}(n)| (exact mode)

  ParameterVector sample(Philox& rng) const;
  // exact probability of one parameter vector under P_n (exact mode)
  double probability(const ParameterVector& p) const;

 private:
  struct Impl;
  int n_;
  ArithMode mode_;
  std::unique_ptr<Impl> impl_;
};

struct SampleRecord {
  uint64_t seed = 0;
  uint64_t stream = 0;
  int n = 0;
  ArithMode mode = ArithMode::Exact;
  ParameterVector params;
  DecomposedMap components;
  UnicellularMap rooted;  // T in T_{r,s,b}(n)
  LabeledTriangulation closed;
  double elapsed_ms = 0;
};

// Exactly uniform over G(n); deterministic in (law, seed, stream).
SampleRecord sample_triangulation(const ParameterLaw& law, uint64_t seed, uint64_t stream);

ParameterVector sample_parameters(const ParameterLaw& law, Philox& rng);

}  // namespace torustri
