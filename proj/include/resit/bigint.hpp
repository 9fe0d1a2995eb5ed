#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "resit/errors.hpp"

namespace resit {

// Exact integer and rational scalars. Combinatorial quantities (multinomials,
// binomials, geometric sums of prime powers) are always computed here first
// and only then embedded into a coefficient field, so no modular wrap-around
// can corrupt them.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// n choose k, with the usual conventions for k < 0 or k > n.
inline BigInt binomial(const BigInt& n, long k) {
  if (k < 0 || n < k) return 0;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact: a product of i+1 consecutive integers is divisible by (i+1)!
  }
  return r;
}

// n! / (parts[0]! * ... * parts[m-1]!). The parts must be nonnegative and sum
// to n; anything else is a caller bug surfaced as PartsMismatch.
inline BigInt multinomial(long n, const std::vector<long>& parts) {
  if (n < 0) fail(Err::PartsMismatch, "multinomial of negative size");
  long total = 0;
  for (long x : parts) {
    if (x < 0) fail(Err::PartsMismatch, "negative part in multinomial");
    total += x;
  }
  if (total != n) {
    fail(Err::PartsMismatch, "parts sum to " + std::to_string(total) + ", expected " + std::to_string(n));
  }
  BigInt r = 1;
  long cum = 0;
  for (long x : parts) {
    cum += x;
    r *= binomial(cum, x);
  }
  return r;
}

// 1 + p + ... + p^n (n >= 0), the level-n ramification scale factor.
inline BigInt geometric_sum(std::uint64_t p, long n) {
  BigInt acc = 0;
  BigInt pw = 1;
  for (long k = 0; k <= n; ++k) {
    acc += pw;
    pw *= p;
  }
  return acc;
}

inline BigInt big_pow(std::uint64_t base, long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace resit
