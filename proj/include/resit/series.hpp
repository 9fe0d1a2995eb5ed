#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"

namespace resit {

// Truncated power series over a coefficient field F: coefficients of
// z^0..z^W, known mod z^{W+1}. The exact flag records that every omitted
// coefficient is genuinely zero (the series is a polynomial), which lets
// precision grow back on demand; every arithmetic operation propagates it
// honestly.
//
// F supplies value-type elements plus the operations zero/one/embed/add/sub/
// neg/mul/inv/div/eq/test_zero/characteristic/same/str. Fields are cheap to
// copy and each series carries its own.
template <class F>
class PowerSeries {
 public:
  using Field = F;
  using Elt = typename F::Element;

  PowerSeries(F field, std::vector<Elt> coeffs, long w, bool exact)
      : f_(std::move(field)), c_(std::move(coeffs)), w_(w), exact_(exact) {
    if (w_ < 1) fail(Err::PrecisionTooSmall, "working precision must be >= 1");
    if (static_cast<long>(c_.size()) > w_ + 1) {
      // dropping a nonzero coefficient forfeits exactness
      for (std::size_t j = static_cast<std::size_t>(w_) + 1; j < c_.size(); ++j) {
        if (f_.test_zero(c_[j]) != ZeroTest::Zero) {
          exact_ = false;
          break;
        }
      }
      c_.resize(static_cast<std::size_t>(w_) + 1);
    } else {
      c_.resize(static_cast<std::size_t>(w_) + 1, f_.zero());
    }
  }

  static PowerSeries make(const F& field, std::vector<Elt> coeffs, long w, bool exact) {
    if (coeffs.empty()) fail(Err::EmptyInput, "series needs at least one coefficient");
    return PowerSeries(field, std::move(coeffs), w, exact);
  }

  // Integer-coefficient convenience constructor.
  static PowerSeries from_ints(const F& field, const std::vector<long>& ints, long w,
                               bool exact = true) {
    if (ints.empty()) fail(Err::EmptyInput, "series needs at least one coefficient");
    std::vector<Elt> coeffs;
    coeffs.reserve(ints.size());
    for (long v : ints) coeffs.push_back(field.embed(BigInt(v)));
    return PowerSeries(field, std::move(coeffs), w, exact);
  }

  static PowerSeries zero(const F& field, long w) {
    return PowerSeries(field, {field.zero()}, w, true);
  }
  static PowerSeries identity(const F& field, long w) {
    return PowerSeries(field, {field.zero(), field.one()}, w, true);
  }
  static PowerSeries constant(const F& field, Elt c, long w) {
    return PowerSeries(field, {std::move(c)}, w, true);
  }

  const F& field() const { return f_; }
  long prec() const { return w_; }
  bool exact() const { return exact_; }
  const std::vector<Elt>& coeffs() const { return c_; }

  // Coefficient of z^j; beyond W this is zero for exact polynomials and
  // unknowable otherwise.
  Elt coeff(long j) const {
    if (j < 0) fail(Err::OutOfRange, "negative exponent");
    if (j <= w_) return c_[static_cast<std::size_t>(j)];
    if (exact_) return f_.zero();
    fail(Err::InsufficientPrecision,
         "coefficient of z^" + std::to_string(j) + " lies beyond precision W=" + std::to_string(w_));
  }

  // Largest stored exponent with a nonzero coefficient, or -1 for zero.
  long top_degree() const {
    for (long j = w_; j >= 0; --j) {
      if (f_.test_zero(c_[static_cast<std::size_t>(j)]) != ZeroTest::Zero) return j;
    }
    return -1;
  }

  // Re-truncate to precision w. Raising precision is honest only for exact
  // polynomials; lowering it keeps exactness only when nothing nonzero drops.
  PowerSeries at_prec(long w) const {
    if (w == w_) return *this;
    if (w > w_ && !exact_) {
      fail(Err::InsufficientPrecision, "cannot raise precision of an inexact series");
    }
    return PowerSeries(f_, c_, w, exact_);
  }

  OrdResult ord() const {
    for (long j = 0; j <= w_; ++j) {
      switch (f_.test_zero(c_[static_cast<std::size_t>(j)])) {
        case ZeroTest::NonZero: return OrdResult::finite(j);
        case ZeroTest::Zero: break;
        case ZeroTest::Indeterminate:
          fail(Err::PrecisionLoss, "coefficient of z^" + std::to_string(j) +
                                       " is zero only up to its t-precision; raise tprec");
      }
    }
    return exact_ ? OrdResult::infinite() : OrdResult::unresolved(w_);
  }

  // ord(f - z): the multiplicity of the fixed point at the origin.
  OrdResult mult() const {
    require_fixed_origin();
    return sub(*this, identity(f_, w_)).ord();
  }

  PowerSeries neg() const {
    std::vector<Elt> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f_.neg(x));
    return PowerSeries(f_, std::move(out), w_, exact_);
  }

  friend PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
    a.require_same_field(b);
    auto [w, exact] = join(a, b);
    std::vector<Elt> out(static_cast<std::size_t>(w) + 1, a.f_.zero());
    for (long j = 0; j <= w; ++j) {
      out[static_cast<std::size_t>(j)] = a.f_.add(a.padded(j), b.padded(j));
    }
    return PowerSeries(a.f_, std::move(out), w, exact);
  }

  friend PowerSeries sub(const PowerSeries& a, const PowerSeries& b) { return add(a, b.neg()); }

  friend PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
    a.require_same_field(b);
    auto [w, exact] = join(a, b);
    const F& f = a.f_;
    std::vector<Elt> out(static_cast<std::size_t>(w) + 1, f.zero());
    long atop = std::min(a.w_, w), btop = std::min(b.w_, w);
    for (long i = 0; i <= atop; ++i) {
      const Elt& ai = a.c_[static_cast<std::size_t>(i)];
      if (f.test_zero(ai) == ZeroTest::Zero) continue;
      for (long j = 0; j <= std::min(btop, w - i); ++j) {
        const Elt& bj = b.c_[static_cast<std::size_t>(j)];
        if (f.test_zero(bj) == ZeroTest::Zero) continue;
        auto& slot = out[static_cast<std::size_t>(i + j)];
        slot = f.add(slot, f.mul(ai, bj));
      }
    }
    if (exact && a.top_degree() + b.top_degree() > w) exact = false;
    return PowerSeries(f, std::move(out), w, exact);
  }

  PowerSeries scalar_mul(const Elt& s) const {
    std::vector<Elt> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f_.mul(s, x));
    return PowerSeries(f_, std::move(out), w_, exact_);
  }

  // f(g(z)) by Horner evaluation; requires g(0) = 0 so truncation commutes
  // with substitution. Exactness falls out of the arithmetic: polynomial
  // inputs whose composed degree fits within W stay exact.
  friend PowerSeries compose(const PowerSeries& a, const PowerSeries& g) {
    a.require_same_field(g);
    switch (g.f_.test_zero(g.c_[0])) {
      case ZeroTest::Zero: break;
      case ZeroTest::NonZero:
        fail(Err::CompositionDomain, "substituted series must vanish at 0");
      case ZeroTest::Indeterminate:
        fail(Err::PrecisionLoss, "constant term of the substituted series is unresolved");
    }
    auto [w, exact] = join(a, g);
    const F& f = a.f_;
    PowerSeries acc = zero(f, w);
    PowerSeries gw = g.w_ == w ? g : PowerSeries(f, g.c_, w, g.exact_);
    long top = a.exact_ ? a.top_degree() : std::min(a.w_, w);
    if (top < 0) top = 0;
    for (long j = top; j >= 0; --j) {
      acc = mul(acc, gw);
      if (j <= a.w_ && f.test_zero(a.c_[static_cast<std::size_t>(j)]) != ZeroTest::Zero) {
        auto& slot = acc.c_[0];
        slot = f.add(slot, a.c_[static_cast<std::size_t>(j)]);
        // adding a polynomial's constant coefficient never disturbs exactness,
        // but mirror the padded-coefficient rule for inexact a
      }
      if (j == 0) break;
    }
    acc.exact_ = acc.exact_ && exact;
    return acc;
  }

  // Multiplicative inverse of a unit: the standard triangular solve.
  PowerSeries mul_inverse() const {
    if (f_.test_zero(c_[0]) != ZeroTest::NonZero) {
      fail(Err::NonUnitConstantTerm, "constant term must be a unit");
    }
    Elt lead = f_.inv(c_[0]);
    std::vector<Elt> out(static_cast<std::size_t>(w_) + 1, f_.zero());
    out[0] = lead;
    for (long k = 1; k <= w_; ++k) {
      Elt s = f_.zero();
      for (long j = 1; j <= k; ++j) {
        const Elt& uj = c_[static_cast<std::size_t>(j)];
        if (f_.test_zero(uj) == ZeroTest::Zero) continue;
        s = f_.add(s, f_.mul(uj, out[static_cast<std::size_t>(k - j)]));
      }
      out[static_cast<std::size_t>(k)] = f_.neg(f_.mul(lead, s));
    }
    bool exact = exact_ && top_degree() == 0;  // only constants invert exactly
    return PowerSeries(f_, std::move(out), w_, exact);
  }

  // Compositional inverse: phi(result) = result(phi) = z mod z^{W+1}.
  PowerSeries comp_inverse() const {
    require_fixed_origin();
    if (w_ < 1 || f_.test_zero(c_[1]) != ZeroTest::NonZero) {
      fail(Err::NotInvertible, "series must have an invertible linear coefficient");
    }
    Elt lin_inv = f_.inv(c_[1]);
    std::vector<Elt> b(static_cast<std::size_t>(w_) + 1, f_.zero());
    b[1] = lin_inv;
    // b_n is determined by forcing the z^n coefficient of phi(psi) to vanish;
    // psi below uses b_1..b_{n-1}, so phi(psi) needs recomputing only mod
    // z^{n+1} each round.
    for (long n = 2; n <= w_; ++n) {
      PowerSeries psi(f_, std::vector<Elt>(b.begin(), b.begin() + n), n, false);
      PowerSeries comp = compose(PowerSeries(f_, c_, n, false), psi);
      b[static_cast<std::size_t>(n)] =
          f_.neg(f_.mul(lin_inv, comp.c_[static_cast<std::size_t>(n)]));
    }
    return PowerSeries(f_, std::move(b), w_, false);
  }

  // n-fold self-composition. Exact sparse polynomials iterate by a chain of
  // single compositions, which keeps each Horner step linear in the sparsity;
  // everything else uses binary powering on the composition monoid.
  PowerSeries iterate(long n) const {
    require_fixed_origin();
    if (n < 0) fail(Err::BadParameters, "iteration count must be >= 0");
    if (n == 0) return identity(f_, w_);
    if (n == 1) return *this;
    long nnz = 0;
    for (const auto& x : c_) {
      if (f_.test_zero(x) != ZeroTest::Zero) ++nnz;
    }
    if (exact_ && nnz <= 8) {
      PowerSeries acc = *this;
      for (long k = 1; k < n; ++k) acc = compose(acc, *this);
      return acc;
    }
    PowerSeries acc = identity(f_, w_);
    PowerSeries base = *this;
    long e = n;
    while (e > 0) {
      if (e & 1) acc = compose(acc, base);
      e >>= 1;
      if (e > 0) base = compose(base, base);
    }
    return acc;
  }

  // phi o f o phi^{-1}.
  friend PowerSeries conjugate(const PowerSeries& phi, const PowerSeries& f) {
    return compose(phi, compose(f, phi.comp_inverse()));
  }

  // n-th power under multiplication.
  friend PowerSeries pow(const PowerSeries& a, long n) {
    if (n < 0) fail(Err::BadParameters, "power must be >= 0");
    PowerSeries acc = PowerSeries::constant(a.f_, a.f_.one(), a.w_);
    PowerSeries base = a;
    while (n > 0) {
      if (n & 1) acc = mul(acc, base);
      n >>= 1;
      if (n > 0) base = mul(base, base);
    }
    return acc;
  }

  PowerSeries derivative() const {
    if (w_ < 2) fail(Err::PrecisionTooSmall, "derivative needs precision >= 2");
    std::vector<Elt> out;
    out.reserve(static_cast<std::size_t>(w_));
    for (long j = 1; j <= w_; ++j) {
      out.push_back(f_.mul(f_.embed(BigInt(j)), c_[static_cast<std::size_t>(j)]));
    }
    return PowerSeries(f_, std::move(out), w_ - 1, exact_);
  }

  // Multiply by z^k (k >= 0): coefficients shift up and the precision window
  // genuinely widens, since the vacated low coefficients are exactly zero.
  PowerSeries shift_up(long k) const {
    if (k < 0) fail(Err::BadParameters, "shift must be >= 0");
    std::vector<Elt> out(static_cast<std::size_t>(w_ + k) + 1, f_.zero());
    for (long j = 0; j <= w_; ++j) out[static_cast<std::size_t>(j + k)] = c_[static_cast<std::size_t>(j)];
    return PowerSeries(f_, std::move(out), w_ + k, exact_);
  }

  // Divide by z^k; every dropped coefficient must be certifiably zero.
  PowerSeries shift_down(long k) const {
    if (k < 0) fail(Err::BadParameters, "shift must be >= 0");
    if (k == 0) return *this;
    if (w_ - k < 1) fail(Err::PrecisionTooSmall, "shift exhausts the precision window");
    for (long j = 0; j < k; ++j) {
      if (f_.test_zero(c_[static_cast<std::size_t>(j)]) != ZeroTest::Zero) {
        fail(Err::NotDivisible, "coefficient of z^" + std::to_string(j) + " is not zero");
      }
    }
    std::vector<Elt> out(c_.begin() + k, c_.end());
    return PowerSeries(f_, std::move(out), w_ - k, exact_);
  }

  // Coefficientwise equality through exponent n (beyond-precision exponents
  // must be covered by exactness on both sides).
  friend bool equal_mod(const PowerSeries& a, const PowerSeries& b, long n) {
    a.require_same_field(b);
    for (long j = 0; j <= n; ++j) {
      if (!a.f_.eq(a.coeff(j), b.coeff(j))) return false;
    }
    return true;
  }

  friend bool equal(const PowerSeries& a, const PowerSeries& b) {
    auto [w, exact] = join(a, b);
    (void)exact;
    return equal_mod(a, b, w);
  }

  std::string str() const {
    std::string out;
    for (long j = 0; j <= w_; ++j) {
      const Elt& x = c_[static_cast<std::size_t>(j)];
      if (f_.test_zero(x) == ZeroTest::Zero) continue;
      std::string cs = f_.str(x);
      bool composite = cs.find_first_of("+-/") != std::string::npos && cs.size() > 1;
      if (!out.empty()) out += " + ";
      if (j == 0) {
        out += composite ? "(" + cs + ")" : cs;
        continue;
      }
      std::string zs = (j == 1) ? "z" : "z^" + std::to_string(j);
      if (cs == "1") {
        out += zs;
      } else if (composite) {
        out += "(" + cs + ")*" + zs;
      } else {
        out += cs + "*" + zs;
      }
    }
    if (out.empty()) out = "0";
    if (!exact_) out += " + O(z^" + std::to_string(w_ + 1) + ")";
    return out;
  }

 private:
  void require_same_field(const PowerSeries& o) const {
    if (!f_.same(o.f_)) fail(Err::FieldMismatch, "series live over different fields");
  }

  void require_fixed_origin() const {
    switch (f_.test_zero(c_[0])) {
      case ZeroTest::Zero: return;
      case ZeroTest::NonZero:
        fail(Err::NotAFixedPoint, "series must vanish at the origin");
      case ZeroTest::Indeterminate:
        fail(Err::PrecisionLoss, "constant term is unresolved at its t-precision");
    }
  }

  // Common working precision of a binary operation: inexact operands cap it,
  // exact ones stretch to match.
  friend std::pair<long, bool> join(const PowerSeries& a, const PowerSeries& b) {
    if (a.exact_ && b.exact_) return {std::max(a.w_, b.w_), true};
    if (a.exact_) return {b.w_, false};
    if (b.exact_) return {a.w_, false};
    return {std::min(a.w_, b.w_), false};
  }

  // Coefficient with exact padding beyond the stored window.
  Elt padded(long j) const { return j <= w_ ? c_[static_cast<std::size_t>(j)] : f_.zero(); }

  F f_;
  std::vector<Elt> c_;
  long w_;
  bool exact_;
};

}  // namespace resit
