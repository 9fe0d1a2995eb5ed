#pragma once

#include <cstdint>
#include <string>

#include "resit/bigint.hpp"
#include "resit/errors.hpp"

namespace resit {

// Three-valued zero test. Truncated Laurent coefficients can be
// indistinguishable from zero at their current t-precision; every branch that
// needs a definite answer treats Indeterminate as a PrecisionLoss error
// instead of guessing.
enum class ZeroTest { Zero, NonZero, Indeterminate };

// Result of an order-style query on a truncated object: a definite value, a
// definitely infinite one (exact data), or "larger than everything visible".
struct OrdResult {
  enum class Kind { Finite, Infinite, Unresolved };
  Kind kind = Kind::Unresolved;
  long value = 0;  // Finite: the order itself; Unresolved: order > value

  static OrdResult finite(long v) { return {Kind::Finite, v}; }
  static OrdResult infinite() { return {Kind::Infinite, 0}; }
  static OrdResult unresolved(long greater_than) { return {Kind::Unresolved, greater_than}; }

  bool is_finite() const { return kind == Kind::Finite; }

  std::string str() const {
    switch (kind) {
      case Kind::Finite: return std::to_string(value);
      case Kind::Infinite: return "infinity";
      case Kind::Unresolved: return ">" + std::to_string(value);
    }
    return "?";
  }
};

// Square-and-multiply over any coefficient field; negative exponents invert
// first (and so inherit ZeroInversion on zero bases).
template <class F>
typename F::Element field_pow(const F& f, typename F::Element base, BigInt e) {
  if (e < 0) {
    base = f.inv(base);
    e = -e;
  }
  auto acc = f.one();
  while (e > 0) {
    if (bit_test(e, 0)) acc = f.mul(acc, base);
    e >>= 1;
    if (e > 0) base = f.mul(base, base);
  }
  return acc;
}

// The canonical ring map Z -> K extended to ratios n/d with d invertible.
template <class F>
typename F::Element embed_ratio(const F& f, const BigInt& num, const BigInt& den) {
  return f.mul(f.embed(num), f.inv(f.embed(den)));
}

}  // namespace resit
