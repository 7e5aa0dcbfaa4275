#include "doctest.h"

#include <map>
#include <set>

#include "torustri/forests.hpp"

using namespace torustri;

namespace {

// the paper's running example in F^13_6, given by its contour pair
const std::vector<int> kExC = {0, -1, -2, -3, -2, -1, -2, -1, 0, 1, 0, 1, 2, 1, 2, 1, 0,
                               1, 2,  3,  4,  3,  2,  3,  4,  5, 4, 3, 4, 3, 4, 5, 6};
const std::vector<int> kExL = {0, -1, -2, -1, -2, -1, -1, -1, 0, 0, -1, 0, 0, -1, 0, -1, -1,
                               -1, 0, 0,  0,  -1, -2, -1, 0,  0, -1, -1, -1, -1, -1, 0, 0};

std::string canonical_key(const WellLabeledForest& wf) {
  ContourPair cp = contour_pair(wf);
  std::string s;
  for (int x : cp.C) s += std::to_string(x) + ",";
  s += ";";
  for (int x : cp.L) s += std::to_string(x) + ",";
  return s;
}

// brute force |F^rho_tau| by enumerating words (test-only oracle)
long long brute_count(long long rho, long long tau) {
  long long n = 4 * rho + tau;
  long long count = 0;
  for (long long mask = 0; mask < (1LL << n); ++mask) {
    if (__builtin_popcountll(mask) != rho) continue;
    BinaryWord b;
    for (long long i = 0; i < n; ++i) b.bits.push_back((mask >> i) & 1);
    try {
      decode_word(b, rho, tau);
      ++count;
    } catch (const ForestError&) {
    }
  }
  return count;
}

}  // namespace

TEST_CASE("paper example: contour pair round trip") {
  WellLabeledForest wf = from_contour(kExC, kExL);
  CHECK(wf.rho() == 13);
  CHECK(wf.tau() == 6);
  ContourPair cp = contour_pair(wf);
  CHECK(cp.C == kExC);
  CHECK(cp.L == kExL);
  // spot-check the vertex contour against the paper's listing: position 3 is
  // the depth-4 vertex 1111, position 8 is back at floor 1, position 32 ends
  // at floor 7
  CHECK(wf.forest.depth(cp.vertex[3]) == 4);
  CHECK(cp.vertex[8] == 0);
  CHECK(cp.vertex[32] == 6);
}

TEST_CASE("paper example: word encoding") {
  WellLabeledForest wf = from_contour(kExC, kExL);
  BinaryWord b = encode_word(wf);
  CHECK(b.to_string() ==
        "1100100000100000010000100010100000001100000001010001000000");
  CHECK(b.size() == 4 * 13 + 6);
  CHECK(b.count1() == 13);
  CHECK(is_k_dominating(b.reversed(), 3));
  WellLabeledForest back = decode_word(b, 13, 6);
  CHECK(canonical_key(back) == canonical_key(wf));
}

TEST_CASE("word round trips on random forests") {
  Philox rng(3, 0);
  for (int trial = 0; trial < 400; ++trial) {
    long long tau = 1 + rng.below(5);
    long long rho = rng.below(8);
    WellLabeledForest wf = sample_uniform_forest(rho, tau, rng);
    CHECK(wf.rho() == rho);
    CHECK(wf.tau() == tau);
    BinaryWord b = encode_word(wf);
    WellLabeledForest back = decode_word(b, rho, tau);
    CHECK(canonical_key(back) == canonical_key(wf));
    ContourPair cp = contour_pair(wf);
    CHECK(cp.C.back() == tau);
    WellLabeledForest back2 = from_contour(cp.C, cp.L);
    CHECK(canonical_key(back2) == canonical_key(wf));
  }
}

TEST_CASE("count_forests matches brute force for 4rho+tau <= 16") {
  CHECK(count_forests(0, 1) == 1);
  CHECK(count_forests(1, 1) == 1);
  CHECK(count_forests(2, 1) == 4);
  CHECK(count_forests(1, 2) == 2);
  for (long long tau = 1; tau <= 16; ++tau)
    for (long long rho = 0; 4 * rho + tau <= 16; ++rho)
      CHECK(count_forests(rho, tau) == brute_count(rho, tau));
}

TEST_CASE("uniform forest sampler matches enumeration at (2,1)") {
  Philox rng(17, 0);
  std::map<std::string, int> freq;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) freq[canonical_key(sample_uniform_forest(2, 1, rng))]++;
  CHECK(freq.size() == 4);  // |F^2_1| = 4
  double expected = draws / 4.0;
  double chi2 = 0;
  for (auto& [k, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 21.1);  // dof 3, p ~ 1e-4
}

TEST_CASE("(1,1) has a single element") {
  Philox rng(9, 0);
  std::set<std::string> seen;
  for (int i = 0; i < 50; ++i) seen.insert(canonical_key(sample_uniform_forest(1, 1, rng)));
  CHECK(seen.size() == 1);
}

TEST_CASE("GW sampler agrees with the uniform law") {
  Philox rng(23, 0);
  for (auto [rho, tau] : std::vector<std::pair<long long, long long>>{
           {1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    std::map<std::string, int> fu, fg;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      fu[canonical_key(sample_uniform_forest(rho, tau, rng))]++;
      fg[canonical_key(sample_gw_forest(rho, tau, rng))]++;
    }
    CHECK(fu.size() == fg.size());
    // two-sample chi-square
    double chi2 = 0;
    int classes = 0;
    for (auto& [k, c1] : fu) {
      double c2 = fg.count(k) ? fg[k] : 0.0;
      double tot = c1 + c2;
      chi2 += (c1 - tot / 2) * (c1 - tot / 2) / (tot / 2) +
              (c2 - tot / 2) * (c2 - tot / 2) / (tot / 2);
      ++classes;
    }
    CHECK(chi2 < 3.0 * classes + 40.0);
  }
}

TEST_CASE("geometric offspring probabilities") {
  Philox rng(31, 0);
  const int draws = 400000;
  int g0 = 0, b0 = 0;
  for (int i = 0; i < draws; ++i) {
    if (gw_floor_offspring(rng) == 0) ++g0;
    if (gw_tree_offspring(rng) == 0) ++b0;
  }
  // P(G=0) = 3/4; P(B=0) = 27/64 (five sigma bands)
  CHECK(std::abs(g0 / double(draws) - 0.75) < 5 * std::sqrt(0.75 * 0.25 / draws));
  CHECK(std::abs(b0 / double(draws) - 27.0 / 64) <
        5 * std::sqrt((27.0 / 64) * (37.0 / 64) / draws));
}

TEST_CASE("symmetrization") {
  Philox rng(41, 0);
  for (int trial = 0; trial < 200; ++trial) {
    long long tau = 1 + rng.below(3);
    long long rho = rng.below(8);
    WellLabeledForest wf = sample_uniform_forest(rho, tau, rng);
    PermutationVector id = identity_permutations(wf.forest);
    CHECK(canonical_key(symmetrize(wf, id, SymmetrizeMode::Partial)) == canonical_key(wf));
    CHECK(canonical_key(symmetrize(wf, id, SymmetrizeMode::Complete)) == canonical_key(wf));
    PermutationVector p = random_permutations(wf.forest, rng);
    WellLabeledForest part = symmetrize(wf, p, SymmetrizeMode::Partial);
    part.validate();  // partial symmetrization stays well-labeled
    CHECK(part.rho() == rho);
  }
}

TEST_CASE("complete symmetrization edge-label marginals are uniform") {
  // exhaustively: over F^1_1 and all p, trivially uniform; use (2,1) with
  // random p and check the empirical distribution of a fixed edge label
  Philox rng(43, 0);
  std::map<int, int> freq;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    WellLabeledForest wf = sample_uniform_forest(2, 1, rng);
    PermutationVector p = random_permutations(wf.forest, rng);
    WellLabeledForest comp = symmetrize(wf, p, SymmetrizeMode::Complete);
    // label of the edge into the deepest-last tree-vertex
    int u = comp.forest.size() - 1;
    int pu = comp.forest.parent[u];
    if (comp.forest.is_floor(pu)) continue;
    freq[comp.label[u] - comp.label[pu]]++;
  }
  REQUIRE(freq.size() <= 3);
  long long tot = 0;
  for (auto& [k, c] : freq) tot += c;
  for (auto& [k, c] : freq) {
    CHECK(c > 0.28 * tot);
    CHECK(c < 0.39 * tot);
  }
}

TEST_CASE("forest text format round trip") {
  Philox rng(47, 0);
  WellLabeledForest wf = sample_uniform_forest(5, 2, rng);
  std::string text = forest_to_text(wf);
  WellLabeledForest back = forest_from_text(text);
  CHECK(canonical_key(back) == canonical_key(wf));
}
