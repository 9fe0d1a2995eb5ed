#pragma once

#include <cstdint>
#include <string>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"

namespace resit {

// F_p for a word-sized prime p. Elements are bare residues in [0, p); the
// field object carries p and performs all arithmetic, so elements stay cheap
// to copy inside series.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p > (std::uint64_t(1) << 31)) {
      fail(Err::OutOfRange, "prime modulus " + std::to_string(p) + " exceeds the supported range (2^31)");
    }
    if (!is_prime_u64(p)) {
      fail(Err::BadParameters, "p = " + std::to_string(p) + " is not prime");
    }
  }

  std::uint64_t p() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  bool same(const PrimeField& o) const { return p_ == o.p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }

  Element embed(const BigInt& n) const {
    BigInt r = n % p_;
    if (r < 0) r += p_;
    return r.convert_to<std::uint64_t>();
  }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    // residues are < 2^31, so the product fits in 64 bits
    return a * b % p_;
  }

  Element inv(Element a) const {
    if (a == 0) fail(Err::ZeroInversion, "0 has no inverse in F_" + std::to_string(p_));
    // extended Euclid on signed words; p < 2^31 keeps everything in range
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t qq = r / new_r;
      t -= qq * new_t;
      std::swap(t, new_t);
      r -= qq * new_r;
      std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Element>(t);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool eq(Element a, Element b) const { return a == b; }
  ZeroTest test_zero(Element a) const { return a == 0 ? ZeroTest::Zero : ZeroTest::NonZero; }

  std::string str(Element a) const { return std::to_string(a); }

 private:
  std::uint64_t p_;
};

}  // namespace resit
