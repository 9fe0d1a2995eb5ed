#pragma once

#include <string>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"

namespace resit {

// Exact rational coefficients. boost's cpp_rational keeps every value in
// lowest terms with a positive denominator, which is exactly the normal form
// the rest of the library expects.
class RationalField {
 public:
  using Element = BigRational;

  std::uint64_t characteristic() const { return 0; }
  bool same(const RationalField&) const { return true; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element embed(const BigInt& n) const { return Element(n); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }

  Element inv(const Element& a) const {
    if (a == 0) fail(Err::ZeroInversion, "0 has no inverse");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool eq(const Element& a, const Element& b) const { return a == b; }
  ZeroTest test_zero(const Element& a) const {
    return a == 0 ? ZeroTest::Zero : ZeroTest::NonZero;
  }

  std::string str(const Element& a) const {
    BigInt num = numerator(a), den = denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

}  // namespace resit
