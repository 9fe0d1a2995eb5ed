#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"
#include "resit/prime_field.hpp"

namespace resit {

// Valuation of a truncated Laurent series element: finite, genuinely +infinity
// (exact zero), or merely "at least prec" because the element is
// indistinguishable from zero at its current t-precision.
struct ValuationResult {
  enum class Kind { Finite, Infinite, BelowPrecision };
  Kind kind = Kind::Infinite;
  std::int64_t v = 0;  // Finite: the valuation; BelowPrecision: zero mod t^v

  static ValuationResult finite(std::int64_t v) { return {Kind::Finite, v}; }
  static ValuationResult infinite() { return {Kind::Infinite, 0}; }
  static ValuationResult below(std::int64_t prec) { return {Kind::BelowPrecision, prec}; }

  bool is_finite() const { return kind == Kind::Finite; }

  std::string str() const {
    switch (kind) {
      case Kind::Finite: return std::to_string(v);
      case Kind::Infinite: return "infinity";
      case Kind::BelowPrecision: return ">=" + std::to_string(v);
    }
    return "?";
  }
};

// The local field K = F_p((t)) with truncated expansions.
//
// An element stores the t-digits it is certain about: digits[i] is the
// coefficient of t^{v+i}, and every exponent below `know` is determined.
// know == kExact means all omitted digits are genuinely zero, so polynomials
// in t and t^-1 (the inputs that matter to the nonarchimedean bounds) pass
// through arithmetic without fake precision loss; `1 - 1` stays an exact zero
// while genuinely truncated data degrades honestly. Field-level tprec caps
// the one operation that must truncate, inversion of a non-monomial unit.
class LaurentField {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

  struct Element {
    std::int64_t v = 0;                  // valuation; meaningful iff !digits.empty()
    std::vector<std::uint64_t> digits;   // digits[0] != 0 when nonempty
    std::int64_t know = kExact;          // exponents < know are determined
  };

  explicit LaurentField(std::uint64_t p, std::int64_t tprec = 64) : base_(p), tprec_(tprec) {
    if (tprec < 1) fail(Err::BadParameters, "t-precision must be >= 1");
  }

  std::uint64_t p() const { return base_.p(); }
  std::uint64_t characteristic() const { return base_.p(); }
  std::int64_t tprec() const { return tprec_; }
  const PrimeField& residue_field() const { return base_; }
  bool same(const LaurentField& o) const { return p() == o.p(); }

  Element zero() const { return Element{}; }
  Element one() const { return Element{0, {1}, kExact}; }
  Element uniformizer() const { return Element{1, {1}, kExact}; }

  Element embed(const BigInt& n) const {
    std::uint64_t r = base_.embed(n);
    if (r == 0) return zero();
    return Element{0, {r}, kExact};
  }

  // Build an element from raw digits of t^v..t^{v+digits.size()-1}; know may
  // be kExact (everything beyond is zero) or an absolute exponent bound.
  Element make(std::int64_t v, std::vector<std::uint64_t> digits, std::int64_t know = kExact) const {
    for (auto& d : digits) d %= p();
    if (know != kExact) {
      if (know <= v) {
        digits.clear();
      } else if (static_cast<std::int64_t>(digits.size()) > know - v) {
        digits.resize(static_cast<std::size_t>(know - v));
      } else {
        digits.resize(static_cast<std::size_t>(know - v), 0);
      }
    }
    return normalize(v, std::move(digits), know);
  }

  Element add(const Element& a, const Element& b) const {
    if (is_exact_zero(a)) return b;
    if (is_exact_zero(b)) return a;
    std::int64_t know = std::min(a.know, b.know);
    std::int64_t lo = std::min(start(a), start(b));
    std::int64_t hi;  // one past the last digit we can state
    if (know == kExact) {
      hi = std::max(end(a), end(b));
    } else {
      hi = know;
    }
    if (lo >= hi) {
      // both zero below the shared knowledge bound
      return know == kExact ? Element{} : Element{0, {}, know};
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(hi - lo), 0);
    for (std::int64_t e = lo; e < hi; ++e) {
      out[static_cast<std::size_t>(e - lo)] = base_.add(digit_at(a, e), digit_at(b, e));
    }
    return normalize(lo, std::move(out), know);
  }

  Element neg(const Element& a) const {
    Element r = a;
    for (auto& d : r.digits) d = base_.neg(d);
    return r;
  }

  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  Element mul(const Element& a, const Element& b) const {
    if (is_exact_zero(a) || is_exact_zero(b)) return Element{};
    if (a.digits.empty() || b.digits.empty()) {
      // at least one factor is zero-below-precision; the product is zero below
      // the sum of the available lower bounds
      std::int64_t bound = (a.digits.empty() ? a.know : a.v) + (b.digits.empty() ? b.know : b.v);
      return Element{0, {}, bound};
    }
    std::int64_t v = a.v + b.v;
    std::int64_t know = kExact;
    if (a.know != kExact) know = std::min(know, a.know + b.v);
    if (b.know != kExact) know = std::min(know, b.know + a.v);
    std::size_t len;
    if (know == kExact) {
      len = a.digits.size() + b.digits.size() - 1;
    } else {
      len = static_cast<std::size_t>(know - v);
    }
    std::vector<std::uint64_t> out(len, 0);
    for (std::size_t i = 0; i < a.digits.size(); ++i) {
      if (a.digits[i] == 0) continue;
      for (std::size_t j = 0; j < b.digits.size() && i + j < len; ++j) {
        if (b.digits[j] == 0) continue;
        out[i + j] = base_.add(out[i + j], base_.mul(a.digits[i], b.digits[j]));
      }
    }
    return normalize(v, std::move(out), know);
  }

  Element inv(const Element& a) const {
    if (a.digits.empty()) {
      fail(Err::ZeroInversion, is_exact_zero(a)
                                   ? "0 has no inverse"
                                   : "element is indistinguishable from 0 at t-precision " +
                                         std::to_string(a.know));
    }
    if (a.know == kExact && a.digits.size() == 1) {
      return Element{-a.v, {base_.inv(a.digits[0])}, kExact};  // exact monomial
    }
    // invert the unit part as a power series in t; an exact multi-digit unit
    // still has an infinite expansion, so cap it at the field t-precision
    std::size_t rel = a.know == kExact ? static_cast<std::size_t>(tprec_) : a.digits.size();
    std::vector<std::uint64_t> out(rel, 0);
    std::uint64_t lead_inv = base_.inv(a.digits[0]);
    out[0] = lead_inv;
    for (std::size_t k = 1; k < rel; ++k) {
      std::uint64_t s = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        std::uint64_t aj = j < a.digits.size() ? a.digits[j] : 0;
        if (aj == 0) continue;
        s = base_.add(s, base_.mul(aj, out[k - j]));
      }
      out[k] = base_.neg(base_.mul(s, lead_inv));
    }
    return normalize(-a.v, std::move(out), -a.v + static_cast<std::int64_t>(rel));
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  // Equality up to shared t-precision; exact elements compare in full.
  bool eq(const Element& a, const Element& b) const {
    std::int64_t know = std::min(a.know, b.know);
    if (know == kExact) {
      return a.digits == b.digits && (a.digits.empty() || a.v == b.v);
    }
    std::int64_t lo = std::min(start(a), start(b));
    for (std::int64_t e = lo; e < know; ++e) {
      if (digit_at(a, e) != digit_at(b, e)) return false;
    }
    return true;
  }

  ZeroTest test_zero(const Element& a) const {
    if (!a.digits.empty()) return ZeroTest::NonZero;
    return a.know == kExact ? ZeroTest::Zero : ZeroTest::Indeterminate;
  }

  ValuationResult valuation(const Element& a) const {
    if (!a.digits.empty()) return ValuationResult::finite(a.v);
    if (a.know == kExact) return ValuationResult::infinite();
    return ValuationResult::below(a.know);
  }

  std::string str(const Element& a) const {
    if (a.digits.empty()) {
      if (a.know == kExact) return "0";
      return "O(t^" + std::to_string(a.know) + ")";
    }
    std::string out;
    for (std::size_t i = 0; i < a.digits.size(); ++i) {
      if (a.digits[i] == 0) continue;
      std::int64_t e = a.v + static_cast<std::int64_t>(i);
      if (!out.empty()) out += "+";
      if (e == 0) {
        out += std::to_string(a.digits[i]);
      } else {
        if (a.digits[i] != 1) out += std::to_string(a.digits[i]) + "*";
        out += (e == 1) ? "t" : "t^" + std::to_string(e);
      }
    }
    if (out.empty()) out = "0";  // nonzero element with all displayed digits zero cannot happen
    if (a.know != kExact) out += "+O(t^" + std::to_string(a.know) + ")";
    return out;
  }

 private:
  static bool is_exact_zero(const Element& a) { return a.digits.empty() && a.know == kExact; }

  // first exponent at which the element may be nonzero
  static std::int64_t start(const Element& a) {
    return a.digits.empty() ? a.know : a.v;
  }
  // one past the last stored digit
  static std::int64_t end(const Element& a) {
    return a.digits.empty() ? a.know : a.v + static_cast<std::int64_t>(a.digits.size());
  }

  static std::uint64_t digit_at(const Element& a, std::int64_t e) {
    if (a.digits.empty()) return 0;
    std::int64_t i = e - a.v;
    if (i < 0 || i >= static_cast<std::int64_t>(a.digits.size())) return 0;
    return a.digits[static_cast<std::size_t>(i)];
  }

  Element normalize(std::int64_t v, std::vector<std::uint64_t> digits, std::int64_t know) const {
    std::size_t lead = 0;
    while (lead < digits.size() && digits[lead] == 0) ++lead;
    if (lead == digits.size()) {
      if (know == kExact) return Element{};
      return Element{0, {}, know};
    }
    if (lead > 0) {
      digits.erase(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(lead));
      v += static_cast<std::int64_t>(lead);
    }
    if (know == kExact) {
      while (!digits.empty() && digits.back() == 0) digits.pop_back();
    } else {
      digits.resize(static_cast<std::size_t>(know - v), 0);
    }
    return Element{v, std::move(digits), know};
  }

  PrimeField base_;
  std::int64_t tprec_;
};

}  // namespace resit
