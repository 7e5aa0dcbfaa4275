#include "torustri/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

namespace torustri {

// ---------------------------------------------------------------- brute force

std::vector<UnicellularMap> enumerate_trsb_brute(int n, bool* budget_exceeded,
                                                 long long budget) {
  const int L = 4 * n + 1;
  const int nstems = 2 * n - 1;
  std::vector<UnicellularMap> out;
  if (budget_exceeded) *budget_exceeded = false;

  std::vector<char> is_stem_pos(L, 0);
  std::vector<int> sides;
  std::vector<int> match(L);
  std::vector<int> next(L), vertex(L);
  long long examined = 0;
  bool stop = false;

  auto handle_complete = [&]() {
    if (budget >= 0 && ++examined > budget) {
      if (budget_exceeded) *budget_exceeded = true;
      stop = true;
      return;
    }
    for (int p = 0; p < L; ++p) {
      int a = is_stem_pos[p] ? p : match[p];
      next[p] = (a + 1) % L;
    }
    std::fill(vertex.begin(), vertex.end(), -1);
    int vcount = 0;
    for (int p = 0; p < L; ++p) {
      if (vertex[p] != -1) continue;
      for (int x = p; vertex[x] == -1; x = next[x]) vertex[x] = vcount;
      ++vcount;
    }
    if (vcount != n) return;
    std::vector<std::pair<int, int>> table(L);
    for (int p = 0; p < L; ++p)
      table[p] = {is_stem_pos[p] ? kNoTwin : match[p], next[p]};
    UnicellularMap t;
    try {
      t.map = RotMap::build(table, 1);
      int h_star = is_stem_pos[L - 1] ? (L - 1) : match[L - 1];
      t.root_angle = h_star;
      if (!t.stem_degrees_ok(true)) return;
      if (!is_safe(t)) return;
      if (!is_balanced(t)) return;
    } catch (const MapError&) {
      return;
    }
    out.push_back(std::move(t));
  };

  std::function<void()> match_rec = [&]() {
    if (stop) return;
    int first = -1;
    for (int p : sides)
      if (match[p] == -1) {
        first = p;
        break;
      }
    if (first == -1) {
      handle_complete();
      return;
    }
    for (int q : sides) {
      if (q <= first || match[q] != -1) continue;
      match[first] = q;
      match[q] = first;
      match_rec();
      match[first] = match[q] = -1;
      if (stop) return;
    }
  };

  std::vector<int> comb(std::max(nstems - 1, 0));
  std::iota(comb.begin(), comb.end(), 1);
  while (!stop) {
    std::fill(is_stem_pos.begin(), is_stem_pos.end(), 0);
    is_stem_pos[0] = 1;
    for (int c : comb) is_stem_pos[c] = 1;
    sides.clear();
    for (int p = 0; p < L; ++p)
      if (!is_stem_pos[p]) sides.push_back(p);
    std::fill(match.begin(), match.end(), -1);
    match_rec();
    if (comb.empty()) break;
    int i = static_cast<int>(comb.size()) - 1;
    while (i >= 0 && comb[i] == L - 1 - (static_cast<int>(comb.size()) - 1 - i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (size_t j = i + 1; j < comb.size(); ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

std::string unicellular_key(const UnicellularMap& t) {
  if (!t.root_angle) throw MissingRoot();
  return canonical_form(t.map, *t.root_angle);
}

// ------------------------------------------------------------- enumerate_all

namespace {

std::vector<WellLabeledForest> all_forests(long long rho, long long tau) {
  std::vector<WellLabeledForest> out;
  long long len = 4 * rho + tau;
  for (long long mask = 0; mask < (1LL << len); ++mask) {
    if (__builtin_popcountll(mask) != rho) continue;
    BinaryWord b;
    for (long long i = 0; i < len; ++i) b.bits.push_back((mask >> i) & 1);
    try {
      out.push_back(decode_word(b, rho, tau));
    } catch (const ForestError&) {
    }
  }
  return out;
}

std::vector<MotzkinPath> all_motzkin(int sigma, int gamma) {
  std::vector<MotzkinPath> out;
  long long total = 1;
  for (int i = 0; i < sigma; ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    MotzkinPath m;
    m.values.push_back(0);
    long long c = code;
    for (int i = 0; i < sigma; ++i) {
      m.values.push_back(m.values.back() + static_cast<int>(c % 3) - 1);
      c /= 3;
    }
    if (m.endpoint() == gamma) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<ParameterVector> all_parameter_vectors(int n) {
  std::vector<ParameterVector> out;
  for (int k = 0; k <= 9; ++k) {
    const KernelSpec& spec = kernel_spec(k);
    const int t = spec.t;
    long long budget = n - (t - 1);
    if (budget < 0) continue;
    std::vector<long long> sigma(t, 0);
    std::function<void(int, long long)> rec_sigma = [&](int i, long long left) {
      if (i == t) {
        long long m = left;
        auto with_gamma = [&](std::vector<long long> g) {
          ParameterVector p;
          p.k = k;
          p.sigma.assign(2 * t, 0);
          p.gamma.assign(2 * t, 0);
          p.tau.assign(2 * t, 0);
          for (int i2 = 0; i2 < t; ++i2) {
            p.sigma[i2] = p.sigma[i2 + t] = sigma[i2];
            p.gamma[i2] = g[i2];
            p.gamma[i2 + t] = -g[i2];
          }
          for (int i2 = 0; i2 < 2 * t; ++i2) {
            int ii = i2 < t ? i2 : i2 - t;
            p.tau[i2] = 2 * p.sigma[ii] + p.gamma[i2] + spec.c[i2] + 1;
            if (p.tau[i2] < 1) return;
          }
          std::vector<long long> rho(2 * t, 0);
          std::function<void(int, long long)> rec_rho = [&](int j, long long rleft) {
            if (j == 2 * t - 1) {
              rho[j] = rleft;
              p.rho = rho;
              p.validate(n);
              out.push_back(p);
              return;
            }
            for (long long r = 0; r <= rleft; ++r) {
              rho[j] = r;
              rec_rho(j + 1, rleft - r);
            }
          };
          rec_rho(0, m);
        };
        if (k == 0) {
          with_gamma({0, 0});
        } else {
          for (long long g1 = -sigma[0]; g1 <= sigma[0]; ++g1) {
            long long g2 = spec.gamma12 - g1;
            long long g3 = spec.gamma23 - g2;
            if (std::llabs(g2) > sigma[1] || std::llabs(g3) > sigma[2]) continue;
            with_gamma({g1, g2, g3});
          }
        }
        return;
      }
      for (long long s = 0; s <= left; ++s) {
        sigma[i] = s;
        rec_sigma(i + 1, left - s);
      }
    };
    rec_sigma(0, budget);
  }
  return out;
}

OracleEnumeration enumerate_all(int n) {
  OracleEnumeration res;
  res.n = n;
  for (const ParameterVector& p : all_parameter_vectors(n)) {
    const int t = p.t();
    std::vector<std::vector<WellLabeledForest>> fsets(2 * t);
    std::vector<std::vector<MotzkinPath>> msets(t);
    for (int i = 0; i < 2 * t; ++i) fsets[i] = all_forests(p.rho[i], p.tau[i]);
    for (int i = 0; i < t; ++i)
      msets[i] = all_motzkin(static_cast<int>(p.sigma[i]), static_cast<int>(p.gamma[i]));
    std::vector<size_t> idx(3 * t, 0);
    while (true) {
      DecomposedMap d;
      d.k = p.k;
      for (int i = 0; i < 2 * t; ++i) d.forests.push_back(fsets[i][idx[i]]);
      for (int i = 0; i < t; ++i) d.motzkin.push_back(msets[i][idx[2 * t + i]]);
      UnicellularMap u = assemble(d);
      for (int slot = 0; slot < 4; ++slot) {
        UnicellularMap trooted = add_root(u, slot);
        std::string key = unicellular_key(trooted);
        auto it = res.index_of_key.find(key);
        if (it == res.index_of_key.end()) {
          res.index_of_key[key] = static_cast<int>(res.maps.size());
          res.maps.push_back(trooted);
          res.keys.push_back(key);
        }
        res.hit_count[key]++;
      }
      int pos = 0;
      for (; pos < 3 * t; ++pos) {
        size_t limit = pos < 2 * t ? fsets[pos].size() : msets[pos - 2 * t].size();
        if (++idx[pos] < limit) break;
        idx[pos] = 0;
      }
      if (pos == 3 * t) break;
    }
  }
  return res;
}

// ------------------------------------------------------------ law tables

namespace {

std::vector<std::vector<Bignum>> trinomial_rows(int maxs) {
  std::vector<std::vector<Bignum>> T(maxs + 1);
  T[0] = {1};
  for (int s = 1; s <= maxs; ++s) {
    T[s].assign(2 * s + 1, 0);
    auto& prev = T[s - 1];
    for (int i = 0; i < static_cast<int>(prev.size()); ++i) {
      T[s][i] += prev[i];
      T[s][i + 1] += prev[i];
      T[s][i + 2] += prev[i];
    }
  }
  return T;
}

inline Bignum tri_at(const std::vector<std::vector<Bignum>>& T, long long s, long long g) {
  if (s < 0 || s >= static_cast<long long>(T.size()) || std::llabs(g) > s) return 0;
  return T[s][s + g];
}

// D_B(u, w) = sum over sigma2 + sigma3 = u of T_{s2}(w) T_{s3}(w - B)
std::vector<std::vector<Bignum>> build_pair_table(const std::vector<std::vector<Bignum>>& T,
                                                  int maxu, int B) {
  std::vector<std::vector<Bignum>> d(maxu + 1);
  for (int u = 0; u <= maxu; ++u) {
    d[u].assign(2 * u + 3, 0);
    for (int w = -(u + 1); w <= u + 1; ++w) {
      Bignum sum = 0;
      for (int s2 = 0; s2 <= u; ++s2) {
        Bignum a = tri_at(T, s2, w);
        if (a == 0) continue;
        sum += a * tri_at(T, u - s2, w - B);
      }
      d[u][u + 1 + w] = sum;
    }
  }
  return d;
}

inline Bignum pair_at(const std::vector<std::vector<Bignum>>& d, long long u, long long w) {
  if (u < 0 || u >= static_cast<long long>(d.size()) || std::llabs(w) > u + 1) return 0;
  return d[u][u + 1 + w];
}

// Fuss-Catalan count: number of forest tuples with total tau = T and total
// rho = m (the tau/(4m+tau) C(4m+tau, m) ballot formula).
Bignum fuss_catalan(long long m, long long T) {
  if (m < 0 || T < 1) return m == 0 && T == 0 ? 1 : 0;
  return binomial(4 * m + T, m) * T / (4 * m + T);
}

double lg(double x) { return std::lgamma(x); }

double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return lg(n + 1) - lg(k + 1) - lg(n - k + 1);
}

double log_fuss_catalan(long long m, long long T) {
  if (m < 0 || T < 1) return -INFINITY;
  return std::log(static_cast<double>(T)) - std::log(static_cast<double>(4 * m + T)) +
         log_binomial(4 * m + T, m);
}

double logsum(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

struct ParameterLaw::Impl {
  // exact tables
  std::vector<std::vector<Bignum>> T;
  std::map<int, std::vector<std::vector<Bignum>>> pair;  // by B
  std::vector<Bignum> w_k;
  std::vector<std::vector<Bignum>> w_ks;
  Bignum total = 0;
  // float tables (log space, truncated to the effective support)
  int smax = 0;
  std::vector<std::vector<double>> lT;
  std::map<int, std::vector<std::vector<double>>> lpair;
  std::vector<double> lw_k;
  std::vector<std::vector<double>> lw_ks;
  double log_total = -INFINITY;

  double ltri(long long s, long long g) const {
    if (s < 0 || s > smax || std::llabs(g) > s) return -INFINITY;
    long long w = (long long)lT[s].size() / 2;
    if (std::llabs(g) > w) return -INFINITY;
    return lT[s][w + g];
  }
  double lpair_at(int B, long long u, long long w) const {
    if (u < 0 || u > smax) return -INFINITY;
    const auto& row = lpair.at(B)[u];
    long long half = (long long)row.size() / 2;
    if (std::llabs(w) > half) return -INFINITY;
    return row[half + w];
  }
};

ParameterLaw::ParameterLaw(int n, ArithMode mode)
    : n_(n), mode_(mode), impl_(new Impl) {
  Impl& im = *impl_;
  if (mode == ArithMode::Exact) {
    im.T = trinomial_rows(n);
    im.pair[0] = build_pair_table(im.T, n, 0);
    im.pair[1] = build_pair_table(im.T, n, 1);
    im.pair[-1] = build_pair_table(im.T, n, -1);
    im.w_k.assign(10, 0);
    im.w_ks.assign(10, {});
    for (int k = 0; k <= 9; ++k) {
      const KernelSpec& spec = kernel_spec(k);
      const int t = spec.t;
      long long smax = n - (t - 1);
      if (smax < 0) continue;
      im.w_ks[k].assign(smax + 1, 0);
      for (long long s = 0; s <= smax; ++s) {
        long long m = n - (t - 1) - s;
        Bignum fc = binomial(4LL * n, m) * (4 * s + 4 * (t - 1)) / (4LL * n);
        if (fc == 0) continue;
        Bignum inner = 0;
        if (k == 0) {
          for (long long s1 = 0; s1 <= s; ++s1)
            inner += tri_at(im.T, s1, 0) * tri_at(im.T, s - s1, 0);
          im.w_ks[k][s] = 3 * fc * inner;
        } else {
          int A = spec.gamma12, B = spec.gamma23;
          const auto& pt = im.pair.at(B);
          for (long long s1 = 0; s1 <= s; ++s1)
            for (long long g1 = -s1; g1 <= s1; ++g1) {
              Bignum a = tri_at(im.T, s1, g1);
              if (a == 0) continue;
              inner += a * pair_at(pt, s - s1, A - g1);
            }
          im.w_ks[k][s] = 2 * fc * inner;
        }
        im.w_k[k] += im.w_ks[k][s];
      }
    }
    for (int k = 0; k <= 9; ++k) im.total += im.w_k[k];
  } else {
    // effective support: sigma-sums concentrate on the sqrt(n) scale
    int smax = std::min<long long>(n, 24 + static_cast<long long>(10.0 * std::sqrt(double(n))));
    im.smax = smax;
    im.lT.resize(smax + 1);
    std::vector<double> prev = {0.0};  // log T_0
    im.lT[0] = prev;
    for (int s = 1; s <= smax; ++s) {
      int width = std::min<int>(s, 18 + static_cast<int>(9.0 * std::sqrt(double(s))));
      std::vector<double> cur(2 * width + 1, -INFINITY);
      int pw = (static_cast<int>(prev.size()) - 1) / 2;
      for (int g = -width; g <= width; ++g) {
        double acc = -INFINITY;
        for (int dgi = -1; dgi <= 1; ++dgi) {
          int gp = g + dgi;
          if (std::abs(gp) <= pw) acc = logsum(acc, prev[pw + gp]);
        }
        cur[width + g] = acc;
      }
      im.lT[s] = cur;
      prev = std::move(cur);
    }
    for (int B : {-1, 0, 1}) {
      auto& tab = im.lpair[B];
      tab.resize(smax + 1);
      for (int u = 0; u <= smax; ++u) {
        int width = std::min<int>(u + 1, 20 + static_cast<int>(9.0 * std::sqrt(double(u + 1))));
        tab[u].assign(2 * width + 1, -INFINITY);
        for (int w = -width; w <= width; ++w) {
          double acc = -INFINITY;
          for (int s2 = 0; s2 <= u; ++s2) {
            double a = im.ltri(s2, w);
            if (a == -INFINITY) continue;
            double b = im.ltri(u - s2, w - B);
            if (b == -INFINITY) continue;
            acc = logsum(acc, a + b);
          }
          tab[u][width + w] = acc;
        }
      }
    }
    im.lw_k.assign(10, -INFINITY);
    im.lw_ks.assign(10, {});
    for (int k = 0; k <= 9; ++k) {
      const KernelSpec& spec = kernel_spec(k);
      const int t = spec.t;
      long long cap = std::min<long long>(n - (t - 1), smax);
      if (cap < 0) continue;
      im.lw_ks[k].assign(cap + 1, -INFINITY);
      for (long long s = 0; s <= cap; ++s) {
        long long m = n - (t - 1) - s;
        double lfc = std::log(double(4 * s + 4 * (t - 1))) - std::log(4.0 * n) +
                     log_binomial(4.0 * n, double(m));
        double inner = -INFINITY;
        if (k == 0) {
          for (long long s1 = 0; s1 <= s; ++s1) {
            double a = im.ltri(s1, 0), b = im.ltri(s - s1, 0);
            if (a == -INFINITY || b == -INFINITY) continue;
            inner = logsum(inner, a + b);
          }
          im.lw_ks[k][s] = std::log(3.0) + lfc + inner;
        } else {
          int A = spec.gamma12, B = spec.gamma23;
          for (long long s1 = 0; s1 <= s; ++s1) {
            int width = (static_cast<int>(im.lT[s1].size()) - 1) / 2;
            for (long long g1 = -width; g1 <= width; ++g1) {
              double a = im.ltri(s1, g1);
              if (a == -INFINITY) continue;
              double b = im.lpair_at(B, s - s1, A - g1);
              if (b == -INFINITY) continue;
              inner = logsum(inner, a + b);
            }
          }
          im.lw_ks[k][s] = std::log(2.0) + lfc + inner;
        }
        im.lw_k[k] = logsum(im.lw_k[k], im.lw_ks[k][s]);
      }
      im.log_total = logsum(im.log_total, im.lw_k[k]);
    }
  }
}

ParameterLaw::~ParameterLaw() = default;

const Bignum& ParameterLaw::exact_total() const {
  if (mode_ != ArithMode::Exact) throw MapError("exact total needs exact mode");
  return impl_->total;
}

Bignum three_t_rsb(int n) {
  ParameterLaw law(n, ArithMode::Exact);
  return law.exact_total();
}

Bignum count_g(int n) { return three_t_rsb(n) / 3; }

namespace {

Bignum draw_below_big(Philox& rng, const Bignum& total) {
  if (total <= 1) return 0;
  int bits = static_cast<int>(boost::multiprecision::msb(total)) + 1;
  Bignum x;
  do {
    x = 0;
    int words = (bits + 31) / 32;
    for (int i = 0; i < words; ++i) x = (x << 32) | rng();
    x >>= (words * 32 - bits);
  } while (x >= total);
  return x;
}

}  // namespace

ParameterVector ParameterLaw::sample(Philox& rng) const {
  const Impl& im = *impl_;
  const int n = n_;
  ParameterVector p;
  long long s = 0, s1 = 0, s2 = 0, g1 = 0;
  int k = 0;
  if (mode_ == ArithMode::Exact) {
    Bignum target = draw_below_big(rng, im.total);
    for (k = 0; k < 10; ++k) {
      if (target < im.w_k[k]) break;
      target -= im.w_k[k];
    }
    const KernelSpec& spec = kernel_spec(k);
    const int t = spec.t;
    for (s = 0;; ++s) {
      if (target < im.w_ks[k][s]) break;
      target -= im.w_ks[k][s];
    }
    long long m = n - (t - 1) - s;
    Bignum fc = binomial(4LL * n, m) * (4 * s + 4 * (t - 1)) / (4LL * n);
    Bignum pref = (k == 0 ? 3 : 2) * fc;
    if (k == 0) {
      for (s1 = 0;; ++s1) {
        Bignum w = pref * tri_at(im.T, s1, 0) * tri_at(im.T, s - s1, 0);
        if (target < w) break;
        target -= w;
      }
      s2 = s - s1;
    } else {
      int A = spec.gamma12, B = spec.gamma23;
      const auto& pt = im.pair.at(B);
      bool found = false;
      for (s1 = 0; s1 <= s && !found; ++s1) {
        for (g1 = -s1; g1 <= s1; ++g1) {
          Bignum w = pref * tri_at(im.T, s1, g1) * pair_at(pt, s - s1, A - g1);
          if (target < w) {
            found = true;
            break;
          }
          target -= w;
        }
      }
      if (!found) throw MapError("exact sampler walk overflow");
      --s1;
      long long u = s - s1;
      long long g2 = A - g1, g3 = B - g2;
      Bignum outer = pref * tri_at(im.T, s1, g1);
      for (s2 = 0;; ++s2) {
        Bignum w = outer * tri_at(im.T, s2, g2) * tri_at(im.T, u - s2, g3);
        if (target < w) break;
        target -= w;
      }
    }
  } else {
    double u01 = rng.uniform01();
    double acc = 0;
    for (k = 0; k < 10; ++k) {
      acc += std::exp(im.lw_k[k] - im.log_total);
      if (u01 < acc || k == 9) break;
    }
    const KernelSpec& spec = kernel_spec(k);
    const int t = spec.t;
    {
      double u2 = rng.uniform01();
      double a2 = 0;
      long long cap = static_cast<long long>(im.lw_ks[k].size()) - 1;
      for (s = 0; s <= cap; ++s) {
        a2 += std::exp(im.lw_ks[k][s] - im.lw_k[k]);
        if (u2 < a2 || s == cap) break;
      }
    }
    long long m = n - (t - 1) - s;
    double lfc = std::log(double(4 * s + 4 * (t - 1))) - std::log(4.0 * n) +
                 log_binomial(4.0 * n, double(m));
    double lpref = std::log(k == 0 ? 3.0 : 2.0) + lfc;
    double ltot = im.lw_ks[k][s];
    if (k == 0) {
      double u2 = rng.uniform01(), a2 = 0;
      for (s1 = 0; s1 <= s; ++s1) {
        double w = lpref + im.ltri(s1, 0) + im.ltri(s - s1, 0);
        a2 += std::exp(w - ltot);
        if (u2 < a2 || s1 == s) break;
      }
      s2 = s - s1;
    } else {
      int A = spec.gamma12, B = spec.gamma23;
      double u2 = rng.uniform01(), a2 = 0;
      bool found = false;
      for (s1 = 0; s1 <= s && !found; ++s1) {
        int width = (static_cast<int>(im.lT[s1].size()) - 1) / 2;
        for (g1 = -width; g1 <= width; ++g1) {
          double w = lpref + im.ltri(s1, g1) + im.lpair_at(B, s - s1, A - g1);
          if (w == -INFINITY) continue;
          a2 += std::exp(w - ltot);
          if (u2 < a2) {
            found = true;
            break;
          }
        }
      }
      if (!found) throw MapError("float sampler walk overflow (sigma1)");
      --s1;
      long long u = s - s1;
      long long g2 = A - g1, g3 = B - g2;
      double louter = lpref + im.ltri(s1, g1);
      double ltot2 = louter + im.lpair_at(B, u, g2);
      double u3 = rng.uniform01(), a3 = 0;
      for (s2 = 0; s2 <= u; ++s2) {
        double w = louter + im.ltri(s2, g2) + im.ltri(u - s2, g3);
        if (w == -INFINITY) continue;
        a3 += std::exp(w - ltot2);
        if (u3 < a3 || s2 == u) break;
      }
    }
  }
  const KernelSpec& spec = kernel_spec(k);
  const int t = spec.t;
  p.k = k;
  p.sigma.assign(2 * t, 0);
  p.gamma.assign(2 * t, 0);
  p.tau.assign(2 * t, 0);
  p.rho.assign(2 * t, 0);
  if (k == 0) {
    p.sigma[0] = p.sigma[2] = s1;
    p.sigma[1] = p.sigma[3] = s - s1;
  } else {
    long long u = s - s1;
    long long g2 = spec.gamma12 - g1, g3 = spec.gamma23 - g2;
    p.sigma[0] = p.sigma[3] = s1;
    p.sigma[1] = p.sigma[4] = s2;
    p.sigma[2] = p.sigma[5] = u - s2;
    p.gamma[0] = g1;
    p.gamma[1] = g2;
    p.gamma[2] = g3;
    p.gamma[3] = -g1;
    p.gamma[4] = -g2;
    p.gamma[5] = -g3;
  }
  for (int i = 0; i < 2 * t; ++i) {
    int ii = i < t ? i : i - t;
    p.tau[i] = 2 * p.sigma[ii] + p.gamma[i] + spec.c[i] + 1;
  }
  // rho sequentially: rho_i ~ f_{tau_i}(r) * FC(m - r, Ttail)
  long long m = n - (t - 1) - s;
  long long Ttail = 0;
  for (int i = 0; i < 2 * t; ++i) Ttail += p.tau[i];
  for (int i = 0; i < 2 * t - 1; ++i) {
    Ttail -= p.tau[i];
    long long r = 0;
    if (mode_ == ArithMode::Exact) {
      Bignum stage_total = fuss_catalan(m, Ttail + p.tau[i]);
      Bignum target = draw_below_big(rng, stage_total);
      for (r = 0;; ++r) {
        Bignum w = count_forests(r, p.tau[i]) * fuss_catalan(m - r, Ttail);
        if (target < w) break;
        target -= w;
      }
    } else {
      double ltot = log_fuss_catalan(m, Ttail + p.tau[i]);
      double u2 = rng.uniform01(), a2 = 0;
      for (r = 0; r <= m; ++r) {
        double w = std::log(double(p.tau[i])) - std::log(double(4 * r + p.tau[i])) +
                   log_binomial(double(4 * r + p.tau[i]), double(r)) +
                   log_fuss_catalan(m - r, Ttail);
        a2 += std::exp(w - ltot);
        if (u2 < a2 || r == m) break;
      }
    }
    p.rho[i] = r;
    m -= r;
  }
  p.rho[2 * t - 1] = m;
  p.validate(n);
  return p;
}

double ParameterLaw::probability(const ParameterVector& p) const {
  if (mode_ != ArithMode::Exact) throw MapError("probability needs exact mode");
  p.validate(n_);
  const int t = p.t();
  Bignum w = (p.k == 0 ? 3 : 2);
  for (int i = 0; i < 2 * t; ++i) w *= count_forests(p.rho[i], p.tau[i]);
  for (int i = 0; i < t; ++i)
    w *= tri_at(impl_->T, p.sigma[i], p.gamma[i]);
  // probability of the parameter vector: number of component tuples times the
  // per-tuple mass (2+1_{k=0})/total
  return to_double(Bignum(w)) / to_double(impl_->total);
}

ParameterVector sample_parameters(const ParameterLaw& law, Philox& rng) {
  return law.sample(rng);
}

SampleRecord sample_triangulation(const ParameterLaw& law, uint64_t seed, uint64_t stream) {
  auto t0 = std::chrono::steady_clock::now();
  SampleRecord rec;
  rec.seed = seed;
  rec.stream = stream;
  rec.n = law.n();
  rec.mode = law.mode();
  Philox rng(seed, stream);
  rec.params = law.sample(rng);
  const int t = rec.params.t();
  rec.components.k = rec.params.k;
  for (int i = 0; i < 2 * t; ++i)
    rec.components.forests.push_back(
        sample_uniform_forest(rec.params.rho[i], rec.params.tau[i], rng));
  for (int i = 0; i < t; ++i)
    rec.components.motzkin.push_back(sample_motzkin_bridge(
        static_cast<int>(rec.params.sigma[i]), static_cast<int>(rec.params.gamma[i]), rng));
  UnicellularMap u = assemble(rec.components);
  int slot = static_cast<int>(rng.below(4));
  rec.rooted = add_root(u, slot);
  auto [g, trace] = complete_closure(rec.rooted);
  (void)trace;
  rec.closed = std::move(g);
  rec.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace torustri
