#include "doctest.h"

#include <map>
#include <set>

#include "torustri/paths.hpp"

using namespace torustri;

namespace {

MotzkinPath mk(std::vector<int> v) {
  MotzkinPath m;
  m.values = std::move(v);
  return m;
}

// all step sequences of length sigma ending at gamma (test-only oracle)
int enumerate_motzkin(int sigma, int gamma) {
  int count = 0;
  for (long long code = 0; code < static_cast<long long>(std::pow(3, sigma)) + 0; ++code) {
    long long c = code;
    int pos = 0;
    for (int i = 0; i < sigma; ++i) {
      pos += static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    if (pos == gamma) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("extension of the paper example") {
  MotzkinPath m = mk({0, 1, 0, 0, -1, -2});
  MotzkinPath e = extend(m);
  CHECK(e.values == std::vector<int>{0, 1, 2, 1, 0, 1, 0, -1, -2});
  CHECK(e.length() == 2 * 5 + (-2));
  CHECK(e.endpoint() == -2);
}

TEST_CASE("extension of an all-down path is unchanged") {
  MotzkinPath m = mk({0, -1, -2, -3});
  CHECK(extend(m).values == m.values);
}

TEST_CASE("inverse of the paper example and involution") {
  MotzkinPath m = mk({0, 1, 0, 0, -1, -2});
  MotzkinPath inv = inverse(m);
  CHECK(inv.values == std::vector<int>{0, 1, 2, 2, 3, 2});
  CHECK(inverse(inv).values == m.values);
}

TEST_CASE("extension of the inverse of the paper example") {
  MotzkinPath m = mk({0, 1, 0, 0, -1, -2});
  MotzkinPath ei = extend(inverse(m));
  CHECK(ei.values == std::vector<int>{0, 1, 2, 1, 2, 3, 2, 3, 2, 3, 4, 3, 2});
  CHECK(ei.length() == 2 * 5 - (-2));
  CHECK(ei.endpoint() == 2);
}

TEST_CASE("c-shift lands in the stated class with unit steps") {
  Philox rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int sigma = 1 + static_cast<int>(rng.below(6));
    int gamma = static_cast<int>(rng.below(2 * sigma + 1)) - sigma;
    if (count_motzkin(sigma, gamma) == 0) continue;
    MotzkinPath m = sample_motzkin_bridge(sigma, gamma, rng);
    MotzkinPath ext = extend(m);
    for (int c = 0; c <= 1; ++c) {
      MotzkinPath sh = c_shift(ext, c);
      CHECK(sh.length() == 2 * sigma + gamma + c + 1);
      CHECK(sh.endpoint() == gamma + c - 1);
      CHECK(sh.values[0] == 0);
      for (int i = 1; i <= sh.length(); ++i) {
        int d = sh.values[i] - sh.values[i - 1];
        CHECK((d == 1 || d == -1));
      }
    }
  }
}

TEST_CASE("k-dominating words") {
  CHECK_FALSE(is_k_dominating(BinaryWord::from_string("01001"), 1));
  CHECK(is_k_dominating(BinaryWord::from_string("000011001"), 1));
  CHECK_FALSE(is_k_dominating(BinaryWord::from_string("000011001"), 2));
  CHECK(is_k_dominating(BinaryWord::from_string("0000"), 5));
}

TEST_CASE("cycle lemma: rotation counts are exactly p - kq") {
  BinaryWord b = BinaryWord::from_string("000011001");
  auto rots = k_dominating_rotations(b, 1);
  CHECK(rots.size() == 3);  // p - kq = 6 - 3
  Philox rng(11, 0);
  for (int trial = 0; trial < 300; ++trial) {
    int q = static_cast<int>(rng.below(4));
    int k = 1 + static_cast<int>(rng.below(3));
    int p = k * q + static_cast<int>(rng.below(6));
    BinaryWord w;
    w.bits.assign(p, 0);
    w.bits.insert(w.bits.end(), q, 1);
    for (int i = static_cast<int>(w.bits.size()) - 1; i > 0; --i)
      std::swap(w.bits[i], w.bits[rng.below(i + 1)]);
    if (w.size() == 0) continue;
    CHECK(static_cast<int>(k_dominating_rotations(w, k).size()) == p - k * q);
  }
}

TEST_CASE("count_motzkin matches enumeration") {
  CHECK(count_motzkin(0, 0) == 1);
  CHECK(count_motzkin(2, 0) == 3);
  CHECK(count_motzkin(5, -2) == 30);
  for (int sigma = 0; sigma <= 7; ++sigma)
    for (int gamma = -sigma; gamma <= sigma; ++gamma)
      CHECK(count_motzkin(sigma, gamma) == enumerate_motzkin(sigma, gamma));
  // row sums: sum_gamma |M_sigma^gamma| = 3^sigma
  for (int sigma = 0; sigma <= 20; ++sigma) {
    Bignum total = 0;
    for (int gamma = -sigma; gamma <= sigma; ++gamma) total += count_motzkin(sigma, gamma);
    Bignum pow3 = 1;
    for (int i = 0; i < sigma; ++i) pow3 *= 3;
    CHECK(total == pow3);
  }
}

TEST_CASE("motzkin bridge sampler is uniform (chi-square)") {
  Philox rng(42, 0);
  const int sigma = 4, gamma = 0;
  std::map<std::string, int> freq;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) freq[sample_motzkin_bridge(sigma, gamma, rng).to_ascii()]++;
  Bignum classes = count_motzkin(sigma, gamma);
  CHECK(static_cast<int>(freq.size()) == static_cast<int>(classes));
  double expected = static_cast<double>(draws) / static_cast<double>(classes);
  double chi2 = 0;
  for (auto& [k, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  // 18 classes, dof 17; p=1e-4 cutoff ~ 45.3
  CHECK(chi2 < 45.3);
}

TEST_CASE("motzkin degenerate classes") {
  Philox rng(1, 0);
  CHECK(sample_motzkin_bridge(3, 3, rng).values == std::vector<int>{0, 1, 2, 3});
  CHECK(sample_motzkin_bridge(1, 0, rng).values == std::vector<int>{0, 0});
}

TEST_CASE("first passage walk validity and degenerate cases") {
  Philox rng(5, 0);
  for (int trial = 0; trial < 500; ++trial) {
    long long rho = rng.below(6);
    long long tau = 1 + rng.below(5);
    FirstPassageWalk w = sample_first_passage(rho, tau, rng);
    CHECK(w.valid(static_cast<int>(tau)));
  }
  FirstPassageWalk w0 = sample_first_passage(0, 3, rng);
  CHECK(w0.values == std::vector<int>{0, 1, 2, 3});
  // rho=1, tau=1: unique valid walk (cycle lemma count 1/5 C(5,1) = 1)
  FirstPassageWalk w1 = sample_first_passage(1, 1, rng);
  CHECK(w1.values == std::vector<int>{0, -3, -2, -1, 0, 1});
}

TEST_CASE("first passage sampler is uniform over P_{3,3rho+tau,rho}") {
  // rho=2, tau=2: enumerate the class by brute force over step placements
  const long long rho = 2, tau = 2;
  const int n = static_cast<int>(4 * rho + tau);
  std::set<std::string> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<int> steps(n, 1);
      steps[i] = steps[j] = -3;
      int pos = 0, mx = 0;
      bool ok = true;
      for (int t = 0; t < n; ++t) {
        pos += steps[t];
        if (t < n - 1 && pos >= static_cast<int>(tau)) ok = false;
        mx = std::max(mx, pos);
      }
      if (ok && pos == static_cast<int>(tau)) {
        std::string key;
        for (int s : steps) key += (s == 1 ? 'u' : 'd');
        all.insert(key);
      }
    }
  }
  REQUIRE(!all.empty());
  Philox rng(2024, 0);
  std::map<std::string, int> freq;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    FirstPassageWalk w = sample_first_passage(rho, tau, rng);
    std::string key;
    for (size_t t = 1; t < w.values.size(); ++t)
      key += (w.values[t] - w.values[t - 1] == 1 ? 'u' : 'd');
    REQUIRE(all.count(key));
    freq[key]++;
  }
  double expected = static_cast<double>(draws) / all.size();
  double chi2 = 0;
  for (auto& [k, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  // dof = |classes| - 1; generous 1e-4-level cutoff
  CHECK(chi2 < 3.0 * all.size() + 40.0);
}
