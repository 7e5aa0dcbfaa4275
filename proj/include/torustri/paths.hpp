#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustri/bigint.hpp"
#include "torustri/rng.hpp"

namespace torustri {

struct PathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer sequence (M_0..M_sigma) with M_0 = 0, steps in {-1,0,1}.
struct MotzkinPath {
  std::vector<int> values;  // size sigma+1

  int length() const { return static_cast<int>(values.size()) - 1; }
  int endpoint() const { return values.back(); }
  bool valid() const;

  std::string to_ascii() const;                     // step alphabet "+0-"
  static MotzkinPath from_ascii(const std::string& s);
};

// Extension: insert (M_i+1) on flat steps and (M_i+1),(M_i+2) on up steps.
// Maps M_sigma^gamma into M_{2 sigma + gamma}^gamma; the result has no flat step.
MotzkinPath extend(const MotzkinPath& m);

// Inverse: (M_sigma - gamma, ..., M_0 - gamma) in M_sigma^{-gamma}; involution.
MotzkinPath inverse(const MotzkinPath& m);

// c-shift of an extended path Mt in M_{2s+g}^g, c in {0,1}:
//   c=0: prepend 0 to the whole path shifted by -1,
//   c=1: prepend 0,1 to the whole path.
// Lands in M_{2s+g+c+1}^{g+c-1} and keeps steps in {-1,+1}.
MotzkinPath c_shift(const MotzkinPath& extended, int c);

struct BinaryWord {
  std::vector<uint8_t> bits;

  int size() const { return static_cast<int>(bits.size()); }
  long long count0() const;
  long long count1() const;
  BinaryWord reversed() const;

  std::string to_string() const;
  static BinaryWord from_string(const std::string& s);
};

// Every nonempty prefix has strictly more than k times as many 0s as 1s.
bool is_k_dominating(const BinaryWord& b, int k);

// Cycle lemma: with p zeros and q ones and p >= k q, exactly p - k q of the
// p+q rotations are k-dominating. Returns the rotation offsets.
std::vector<int> k_dominating_rotations(const BinaryWord& b, int k);

// |M_sigma^gamma| exactly (trinomial count).
Bignum count_motzkin(int sigma, int gamma);

// Exactly uniform over M_sigma^gamma: draw the number of up-steps from the
// trinomial terms, then shuffle the step multiset.
MotzkinPath sample_motzkin_bridge(int sigma, int gamma, Philox& rng);

// Walk with steps in {-3,+1} from 0 hitting tau at its last step for the
// first time (class P_{3, 3 rho + tau, rho}).
struct FirstPassageWalk {
  std::vector<int> values;  // size 4 rho + tau + 1
  bool valid(int tau) const;
};

// Exactly uniform over P_{3, 3 rho + tau, rho}: uniform {-3,1} bridge to tau,
// then the Bertoin-Chaumont-Pitman rotation at the first time the walk hits
// (max - nu) with nu uniform in {0..tau-1}.
FirstPassageWalk sample_first_passage(long long rho, long long tau, Philox& rng);

// The word <-> walk correspondence of the first-passage encoding:
// bit 1 -> step -3, bit 0 -> step +1.
BinaryWord word_from_walk(const FirstPassageWalk& w);
FirstPassageWalk walk_from_word(const BinaryWord& b);

}  // namespace torustri
