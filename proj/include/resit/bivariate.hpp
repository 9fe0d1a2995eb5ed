#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"
#include "resit/prime_field.hpp"

namespace resit {

// F_p[x0, x1], the coefficient ring for symbolic identity checks. Elements
// are sparse: (e0, e1) -> nonzero coefficient. The ring mimics the field
// interface closely enough to serve as a power series coefficient type;
// inversion is defined only for nonzero constants.
class BivariateRing {
 public:
  using Monomial = std::pair<std::uint32_t, std::uint32_t>;
  using Element = std::map<Monomial, std::uint64_t>;

  explicit BivariateRing(std::uint64_t p) : base_(p) {}

  std::uint64_t p() const { return base_.p(); }
  std::uint64_t characteristic() const { return base_.p(); }
  bool same(const BivariateRing& o) const { return p() == o.p(); }

  Element zero() const { return {}; }
  Element one() const { return constant(1); }
  Element x0() const { return Element{{{1, 0}, 1}}; }
  Element x1() const { return Element{{{0, 1}, 1}}; }

  Element constant(std::uint64_t c) const {
    c %= p();
    if (c == 0) return {};
    return Element{{{0, 0}, c}};
  }

  Element embed(const BigInt& n) const { return constant(base_.embed(n)); }

  Element add(const Element& a, const Element& b) const {
    Element r = a;
    for (const auto& [m, c] : b) {
      std::uint64_t s = base_.add(get(r, m), c);
      if (s == 0) r.erase(m);
      else r[m] = s;
    }
    return r;
  }

  Element neg(const Element& a) const {
    Element r;
    for (const auto& [m, c] : a) r[m] = base_.neg(c);
    return r;
  }

  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  Element mul(const Element& a, const Element& b) const {
    Element r;
    for (const auto& [ma, ca] : a) {
      for (const auto& [mb, cb] : b) {
        Monomial m{ma.first + mb.first, ma.second + mb.second};
        std::uint64_t s = base_.add(get(r, m), base_.mul(ca, cb));
        if (s == 0) r.erase(m);
        else r[m] = s;
      }
    }
    return r;
  }

  Element scalar_mul(std::uint64_t c, const Element& a) const {
    c %= p();
    Element r;
    if (c == 0) return r;
    for (const auto& [m, cc] : a) r[m] = base_.mul(c, cc);
    return r;
  }

  Element pow(const Element& a, std::uint64_t e) const {
    Element r = one();
    Element b = a;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  Element inv(const Element& a) const {
    if (a.empty()) fail(Err::ZeroInversion, "0 has no inverse");
    if (a.size() == 1 && a.begin()->first == Monomial{0, 0}) {
      return constant(base_.inv(a.begin()->second));
    }
    fail(Err::NotInvertible, "only nonzero constants are invertible in F_p[x0,x1]");
  }

  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool eq(const Element& a, const Element& b) const { return a == b; }

  ZeroTest test_zero(const Element& a) const {
    return a.empty() ? ZeroTest::Zero : ZeroTest::NonZero;
  }

  // Evaluate at concrete field values (for spot checks against numerics).
  std::uint64_t eval(const Element& a, std::uint64_t v0, std::uint64_t v1) const {
    std::uint64_t acc = 0;
    for (const auto& [m, c] : a) {
      std::uint64_t term = c;
      term = base_.mul(term, pow_u64(v0, m.first));
      term = base_.mul(term, pow_u64(v1, m.second));
      acc = base_.add(acc, term);
    }
    return acc;
  }

  std::string str(const Element& a) const {
    if (a.empty()) return "0";
    // descending total degree, then descending x0 degree
    std::map<std::pair<std::int64_t, std::int64_t>, std::string> ordered;
    for (const auto& [m, c] : a) {
      std::string t;
      bool unit_coeff = (c == 1) && (m.first || m.second);
      if (!unit_coeff) t += std::to_string(c);
      auto var = [&](const char* name, std::uint32_t e) {
        if (e == 0) return;
        if (!t.empty()) t += "*";
        t += name;
        if (e > 1) t += "^" + std::to_string(e);
      };
      var("x0", m.first);
      var("x1", m.second);
      ordered[{-static_cast<std::int64_t>(m.first) - m.second,
               -static_cast<std::int64_t>(m.first)}] = t;
    }
    std::string out;
    for (const auto& [k, t] : ordered) {
      if (!out.empty()) out += "+";
      out += t;
    }
    return out;
  }

 private:
  static std::uint64_t get(const Element& a, const Monomial& m) {
    auto it = a.find(m);
    return it == a.end() ? 0 : it->second;
  }

  std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) const {
    std::uint64_t r = 1;
    b %= p();
    while (e > 0) {
      if (e & 1) r = base_.mul(r, b);
      b = base_.mul(b, b);
      e >>= 1;
    }
    return r;
  }

  PrimeField base_;
};

}  // namespace resit
