#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace torustri {

using Bignum = boost::multiprecision::cpp_int;

// C(n, k) as an exact big integer; 0 when k < 0 or k > n.
inline Bignum binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  Bignum r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline double to_double(const Bignum& x) { return x.convert_to<double>(); }

}  // namespace torustri
