#pragma once

#include <cstdint>
#include <array>

namespace torustri {

// Philox4x32-10 counter-based generator. A stream is (key, counter); draws
// advance the counter only, so replica i can use the independent stream
// derived from (master_seed, i) and results do not depend on scheduling.
class Philox {
 public:
  Philox() : Philox(0, 0) {}
  Philox(uint64_t seed, uint64_t stream) {
    key_[0] = static_cast<uint32_t>(seed);
    key_[1] = static_cast<uint32_t>(seed >> 32);
    ctr_ = {0u, 0u, static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    buf_pos_ = 4;
  }

  using result_type = uint32_t;
  static constexpr uint32_t min() { return 0; }
  static constexpr uint32_t max() { return 0xffffffffu; }

  uint32_t operator()() {
    if (buf_pos_ == 4) {
      buf_ = block(ctr_, key_);
      if (++ctr_[0] == 0 && ++ctr_[1] == 0) ++ctr_[2];
      buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
  }

  uint64_t next_u64() {
    uint64_t lo = (*this)();
    uint64_t hi = (*this)();
    return lo | (hi << 32);
  }

  // uniform in [0, n), unbiased (rejection)
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  double uniform01() {  // in [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static std::array<uint32_t, 4> block(std::array<uint32_t, 4> c, std::array<uint32_t, 2> k) {
    constexpr uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      uint64_t p0 = uint64_t(M0) * c[0];
      uint64_t p1 = uint64_t(M1) * c[2];
      uint32_t h0 = uint32_t(p0 >> 32), l0 = uint32_t(p0);
      uint32_t h1 = uint32_t(p1 >> 32), l1 = uint32_t(p1);
      c = {h1 ^ c[1] ^ k[0], l1, h0 ^ c[3] ^ k[1], l0};
      k[0] += W0;
      k[1] += W1;
    }
    return c;
  }

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> ctr_;
  std::array<uint32_t, 4> buf_{};
  int buf_pos_;
};

}  // namespace torustri
