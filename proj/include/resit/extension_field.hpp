#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"
#include "resit/prime_field.hpp"

namespace resit {

// F_p[x]/(m) for a monic irreducible m. Elements are coefficient vectors of
// fixed length deg(m) in the basis 1, x, ..., x^{deg-1}. The field is kept
// small (p^deg <= 10^6) so that exhaustive element searches stay feasible.
class ExtensionField {
 public:
  using Element = std::vector<std::uint64_t>;

  // modulus holds m_0..m_deg with m_deg == 1.
  ExtensionField(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    PrimeField base(p);  // validates primality
    while (modulus.size() > 1 && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 2) fail(Err::BadParameters, "extension modulus must have degree >= 1");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) fail(Err::BadParameters, "extension modulus must be monic");
    std::size_t deg = modulus.size() - 1;
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < deg; ++i) {
      size *= p;
      if (size > 1000000) {
        fail(Err::OutOfRange, "field size p^deg exceeds 10^6; choose a smaller extension");
      }
    }
    if (!irreducible(base, modulus)) {
      fail(Err::BadParameters, "extension modulus is reducible over F_" + std::to_string(p));
    }
    ctx_ = std::make_shared<const Ctx>(Ctx{base, std::move(modulus), deg, size});
  }

  std::uint64_t p() const { return ctx_->base.p(); }
  std::uint64_t characteristic() const { return p(); }
  std::size_t degree() const { return ctx_->deg; }
  std::uint64_t size() const { return ctx_->size; }
  const std::vector<std::uint64_t>& modulus() const { return ctx_->mod; }

  bool same(const ExtensionField& o) const {
    return p() == o.p() && ctx_->mod == o.ctx_->mod;
  }

  Element zero() const { return Element(ctx_->deg, 0); }
  Element one() const {
    Element e(ctx_->deg, 0);
    e[0] = 1;
    return e;
  }
  Element generator() const {  // the residue class of x
    Element e(ctx_->deg, 0);
    if (ctx_->deg > 1) {
      e[1] = 1;
    } else {
      // deg 1: x is congruent to -m_0
      e[0] = ctx_->base.neg(ctx_->mod[0]);
    }
    return e;
  }

  Element embed(const BigInt& n) const {
    Element e(ctx_->deg, 0);
    e[0] = ctx_->base.embed(n);
    return e;
  }

  // Element from raw coefficients of 1, x, ..., reduced mod p, padded to deg.
  Element make(std::vector<std::uint64_t> coeffs) const {
    if (coeffs.size() > ctx_->deg) {
      fail(Err::BadParameters, "element has more coefficients than the extension degree");
    }
    coeffs.resize(ctx_->deg, 0);
    for (auto& c : coeffs) c %= p();
    return coeffs;
  }

  Element add(const Element& a, const Element& b) const {
    Element r(ctx_->deg);
    for (std::size_t i = 0; i < ctx_->deg; ++i) r[i] = ctx_->base.add(a[i], b[i]);
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r(ctx_->deg);
    for (std::size_t i = 0; i < ctx_->deg; ++i) r[i] = ctx_->base.sub(a[i], b[i]);
    return r;
  }
  Element neg(const Element& a) const {
    Element r(ctx_->deg);
    for (std::size_t i = 0; i < ctx_->deg; ++i) r[i] = ctx_->base.neg(a[i]);
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    const auto& fp = ctx_->base;
    std::size_t deg = ctx_->deg;
    std::vector<std::uint64_t> prod(2 * deg - 1, 0);
    for (std::size_t i = 0; i < deg; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (b[j] == 0) continue;
        prod[i + j] = fp.add(prod[i + j], fp.mul(a[i], b[j]));
      }
    }
    // reduce by the monic modulus
    for (std::size_t d = prod.size(); d-- > deg;) {
      std::uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::size_t j = 0; j < deg; ++j) {
        prod[d - deg + j] = fp.sub(prod[d - deg + j], fp.mul(c, ctx_->mod[j]));
      }
    }
    prod.resize(deg);
    return prod;
  }

  Element inv(const Element& a) const {
    if (test_zero(a) == ZeroTest::Zero) {
      fail(Err::ZeroInversion, "0 has no inverse in F_" + std::to_string(p()) + "^" +
                                   std::to_string(ctx_->deg));
    }
    // extended Euclid in F_p[x] against the modulus
    const auto& fp = ctx_->base;
    Poly r0(ctx_->mod), r1(a);
    trim(r1);
    Poly t0{{0}}, t1{{1}};
    while (!(r1.size() == 1 && r1[0] == 0)) {
      auto [quot, rem] = poly_divmod(fp, r0, r1);
      Poly t2 = poly_sub(fp, t0, poly_mul(fp, quot, t1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r0 is now a nonzero constant gcd
    std::uint64_t scale = fp.inv(r0[0]);
    Element out(ctx_->deg, 0);
    for (std::size_t i = 0; i < t0.size() && i < ctx_->deg; ++i) out[i] = fp.mul(t0[i], scale);
    return out;
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool eq(const Element& a, const Element& b) const { return a == b; }
  ZeroTest test_zero(const Element& a) const {
    for (auto c : a) {
      if (c != 0) return ZeroTest::NonZero;
    }
    return ZeroTest::Zero;
  }

  // k-th element in the base-p odometer order; used for exhaustive searches.
  Element element_at(std::uint64_t k) const {
    Element e(ctx_->deg, 0);
    for (std::size_t i = 0; i < ctx_->deg; ++i) {
      e[i] = k % p();
      k /= p();
    }
    return e;
  }

  std::string str(const Element& a) const {
    std::string out;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(a[i]);
      } else {
        if (a[i] != 1) out += std::to_string(a[i]) + "*";
        out += (i == 1) ? "x" : "x^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  using Poly = std::vector<std::uint64_t>;  // dense, lowest degree first

  struct Ctx {
    PrimeField base;
    std::vector<std::uint64_t> mod;
    std::size_t deg;
    std::uint64_t size;
  };

  static void trim(Poly& f) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
  }

  static Poly poly_mul(const PrimeField& fp, const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = fp.add(r[i + j], fp.mul(a[i], b[j]));
      }
    }
    trim(r);
    return r;
  }

  static Poly poly_sub(const PrimeField& fp, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint64_t x = i < a.size() ? a[i] : 0;
      std::uint64_t y = i < b.size() ? b[i] : 0;
      r[i] = fp.sub(x, y);
    }
    trim(r);
    return r;
  }

  static std::pair<Poly, Poly> poly_divmod(const PrimeField& fp, Poly num, const Poly& den) {
    trim(num);
    Poly quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 1, 0);
    std::uint64_t lead_inv = fp.inv(den.back());
    while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
      std::size_t shift = num.size() - den.size();
      std::uint64_t c = fp.mul(num.back(), lead_inv);
      quot[shift] = c;
      for (std::size_t i = 0; i < den.size(); ++i) {
        num[shift + i] = fp.sub(num[shift + i], fp.mul(c, den[i]));
      }
      trim(num);
      if (num.size() == 1 && num[0] == 0) break;
      if (num.size() < den.size()) break;
    }
    trim(quot);
    return {quot, num};
  }

  // Trial division by every monic polynomial of degree 1..deg/2.
  static bool irreducible(const PrimeField& fp, const Poly& mod) {
    std::size_t deg = mod.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < d; ++i) count *= fp.p();
      for (std::uint64_t k = 0; k < count; ++k) {
        Poly g(d + 1, 0);
        g[d] = 1;
        std::uint64_t kk = k;
        for (std::size_t i = 0; i < d; ++i) {
          g[i] = kk % fp.p();
          kk /= fp.p();
        }
        auto [quot, rem] = poly_divmod(fp, mod, g);
        (void)quot;
        if (rem.size() == 1 && rem[0] == 0) return false;
      }
    }
    return true;
  }

  std::shared_ptr<const Ctx> ctx_;
};

}  // namespace resit
