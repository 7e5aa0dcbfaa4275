#include "torustri/paths.hpp"

#include <algorithm>
#include <cstdlib>

namespace torustri {

bool MotzkinPath::valid() const {
  if (values.empty() || values[0] != 0) return false;
  for (size_t i = 1; i < values.size(); ++i) {
    int d = values[i] - values[i - 1];
    if (d < -1 || d > 1) return false;
  }
  return true;
}

std::string MotzkinPath::to_ascii() const {
  std::string s;
  for (size_t i = 1; i < values.size(); ++i) {
    int d = values[i] - values[i - 1];
    s += (d == 1 ? '+' : d == 0 ? '0' : '-');
  }
  return s;
}

MotzkinPath MotzkinPath::from_ascii(const std::string& s) {
  MotzkinPath m;
  m.values.reserve(s.size() + 1);
  m.values.push_back(0);
  for (char c : s) {
    int d = c == '+' ? 1 : c == '0' ? 0 : c == '-' ? -1 : 2;
    if (d == 2) throw PathError("bad motzkin character");
    m.values.push_back(m.values.back() + d);
  }
  return m;
}

MotzkinPath extend(const MotzkinPath& m) {
  MotzkinPath out;
  out.values.push_back(m.values[0]);
  for (int i = 0; i < m.length(); ++i) {
    int a = m.values[i], b = m.values[i + 1];
    if (b == a) {
      out.values.push_back(a + 1);
    } else if (b == a + 1) {
      out.values.push_back(a + 1);
      out.values.push_back(a + 2);
    }
    out.values.push_back(b);
  }
  return out;
}

MotzkinPath inverse(const MotzkinPath& m) {
  MotzkinPath out;
  int g = m.endpoint();
  out.values.reserve(m.values.size());
  for (auto it = m.values.rbegin(); it != m.values.rend(); ++it) out.values.push_back(*it - g);
  return out;
}

MotzkinPath c_shift(const MotzkinPath& extended, int c) {
  MotzkinPath out;
  out.values.reserve(extended.values.size() + 1 + c);
  out.values.push_back(0);
  if (c == 1) {
    out.values.push_back(1);
    for (int v : extended.values) out.values.push_back(v);
  } else {
    for (int v : extended.values) out.values.push_back(v - 1);
  }
  return out;
}

long long BinaryWord::count0() const {
  long long c = 0;
  for (auto b : bits) c += (b == 0);
  return c;
}

long long BinaryWord::count1() const {
  long long c = 0;
  for (auto b : bits) c += (b == 1);
  return c;
}

BinaryWord BinaryWord::reversed() const {
  BinaryWord r;
  r.bits.assign(bits.rbegin(), bits.rend());
  return r;
}

std::string BinaryWord::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s += char('0' + b);
  return s;
}

BinaryWord BinaryWord::from_string(const std::string& s) {
  BinaryWord w;
  w.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw PathError("bad binary word character");
    w.bits.push_back(static_cast<uint8_t>(c - '0'));
  }
  return w;
}

bool is_k_dominating(const BinaryWord& b, int k) {
  long long zeros = 0, ones = 0;
  for (auto bit : b.bits) {
    if (bit)
      ++ones;
    else
      ++zeros;
    if (zeros <= static_cast<long long>(k) * ones) return false;
  }
  return true;
}

std::vector<int> k_dominating_rotations(const BinaryWord& b, int k) {
  const long long p = b.count0(), q = b.count1();
  if (p < static_cast<long long>(k) * q) throw PathError("cycle lemma needs p >= k q");
  // Prefix walk with 0 -> +1, 1 -> -k. A rotation at j is k-dominating iff
  // every strict prefix of the rotated word keeps the walk positive, which a
  // direct check verifies in O(n) per candidate; candidates are minima scans.
  const int n = b.size();
  std::vector<int> out;
  for (int j = 0; j < n; ++j) {
    long long walk = 0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      walk += b.bits[(j + i) % n] ? -static_cast<long long>(k) : 1;
      if (walk <= 0 && i < n - 1) {
        ok = false;
        break;
      }
      if (i == n - 1 && walk <= 0) ok = false;
    }
    if (ok) out.push_back(j);
  }
  return out;
}

Bignum count_motzkin(int sigma, int gamma) {
  if (std::abs(gamma) > sigma) return 0;
  // u up-steps, u - gamma down-steps, sigma - 2u + gamma flat steps
  Bignum total = 0;
  for (int u = std::max(0, gamma); 2 * u - gamma <= sigma; ++u) {
    int flats = sigma - 2 * u + gamma;
    total += binomial(sigma, u) * binomial(sigma - u, u - gamma);
    (void)flats;
  }
  return total;
}

MotzkinPath sample_motzkin_bridge(int sigma, int gamma, Philox& rng) {
  if (std::abs(gamma) > sigma) throw PathError("empty Motzkin class");
  Bignum total = count_motzkin(sigma, gamma);
  if (total == 0) throw PathError("empty Motzkin class");
  // choose the number of up-steps proportionally to its trinomial term
  Bignum target;
  {
    // uniform big integer in [0, total)
    int bits = static_cast<int>(boost::multiprecision::msb(total)) + 1;
    do {
      target = 0;
      for (int i = 0; i < bits; i += 32) target = (target << 32) | rng();
      target >>= (((bits + 31) / 32) * 32 - bits);
    } while (target >= total);
  }
  int ups = -1;
  Bignum acc = 0;
  for (int u = std::max(0, gamma); 2 * u - gamma <= sigma; ++u) {
    acc += binomial(sigma, u) * binomial(sigma - u, u - gamma);
    if (target < acc) {
      ups = u;
      break;
    }
  }
  std::vector<int> steps;
  steps.insert(steps.end(), ups, 1);
  steps.insert(steps.end(), ups - gamma, -1);
  steps.insert(steps.end(), sigma - 2 * ups + gamma, 0);
  for (int i = static_cast<int>(steps.size()) - 1; i > 0; --i)
    std::swap(steps[i], steps[rng.below(i + 1)]);
  MotzkinPath m;
  m.values.push_back(0);
  for (int s : steps) m.values.push_back(m.values.back() + s);
  return m;
}

bool FirstPassageWalk::valid(int tau) const {
  if (values.empty() || values[0] != 0 || values.back() != tau) return false;
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] >= tau) return false;
  for (size_t i = 1; i < values.size(); ++i) {
    int d = values[i] - values[i - 1];
    if (d != 1 && d != -3) return false;
  }
  return true;
}

FirstPassageWalk sample_first_passage(long long rho, long long tau, Philox& rng) {
  if (tau < 1 || rho < 0) throw PathError("need tau >= 1, rho >= 0");
  const long long n = 4 * rho + tau;
  std::vector<int> steps(n, 1);
  for (long long i = 0; i < rho; ++i) steps[i] = -3;
  for (long long i = n - 1; i > 0; --i) std::swap(steps[i], steps[rng.below(i + 1)]);
  // first time the bridge hits (max - nu)
  long long nu = static_cast<long long>(rng.below(tau));
  std::vector<long long> s(n + 1, 0);
  long long mx = 0;
  for (long long i = 0; i < n; ++i) {
    s[i + 1] = s[i] + steps[i];
    mx = std::max(mx, s[i + 1]);
  }
  long long level = mx - nu, cut = 0;
  for (long long i = 0; i <= n; ++i) {
    if (s[i] == level) {
      cut = i;
      break;
    }
  }
  FirstPassageWalk w;
  w.values.resize(n + 1);
  w.values[0] = 0;
  for (long long i = 0; i < n; ++i)
    w.values[i + 1] = w.values[i] + steps[(cut + i) % n];
  return w;
}

BinaryWord word_from_walk(const FirstPassageWalk& w) {
  BinaryWord b;
  b.bits.reserve(w.values.size() - 1);
  for (size_t i = 1; i < w.values.size(); ++i)
    b.bits.push_back(w.values[i] - w.values[i - 1] == -3 ? 1 : 0);
  return b;
}

FirstPassageWalk walk_from_word(const BinaryWord& b) {
  FirstPassageWalk w;
  w.values.push_back(0);
  for (auto bit : b.bits) w.values.push_back(w.values.back() + (bit ? -3 : 1));
  return w;
}

}  // namespace torustri
