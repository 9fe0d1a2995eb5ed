#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/dynamics.hpp"
#include "resit/errors.hpp"
#include "resit/index.hpp"
#include "resit/laurent_field.hpp"
#include "resit/prime_field.hpp"
#include "resit/series.hpp"

namespace resit {

// Coefficientwise reduction mod t of a series over F_p((t)). Every
// coefficient must be integral; a coefficient whose constant digit is hidden
// behind its own precision cannot be reduced.
inline PowerSeries<PrimeField> reduce(const PowerSeries<LaurentField>& f) {
  const LaurentField& K = f.field();
  const PrimeField& k = K.residue_field();
  std::vector<PrimeField::Element> out;
  out.reserve(f.coeffs().size());
  for (long j = 0; j <= f.prec(); ++j) {
    auto c = f.coeff(j);
    if (c.digits.empty()) {
      if (c.know != LaurentField::kExact && c.know <= 0) {
        fail(Err::PrecisionLoss,
             "coefficient of z^" + std::to_string(j) + " is O(t^" + std::to_string(c.know) +
                 "); raise tprec");
      }
      out.push_back(k.zero());
      continue;
    }
    if (c.v < 0) {
      fail(Err::NotIntegral, "coefficient of z^" + std::to_string(j) +
                                 " has valuation " + std::to_string(c.v));
    }
    out.push_back(c.v == 0 ? c.digits[0] : k.zero());
  }
  return PowerSeries<PrimeField>::make(k, std::move(out), f.prec(), f.exact());
}

// Weierstrass degree: the order in zeta of the reduction. Infinite means the
// reduction vanishes; Unresolved means it vanishes to the working window.
inline OrdResult weierstrass_degree(const PowerSeries<LaurentField>& f) {
  return reduce(f).ord();
}

struct NewtonPolygon {
  struct Segment {
    BigRational slope;
    long length = 0;
  };
  long lo = 0, hi = 0;                            // exponent range of the source points
  std::vector<std::pair<long, std::int64_t>> vertices;  // (exponent, valuation)
  std::vector<Segment> segments;

  // smallest valuation among the roots the hull certifies inside the open
  // unit disk (negative-slope segments); empty when there are none
  std::optional<BigRational> min_positive_root_valuation() const {
    std::optional<BigRational> best;
    for (const auto& s : segments) {
      if (s.slope < 0) best = -s.slope;  // slopes increase, the last negative one wins
    }
    return best;
  }

  std::optional<BigRational> max_root_valuation() const {
    if (segments.empty() || !(segments.front().slope < 0)) return std::nullopt;
    return -segments.front().slope;
  }
};

// Lower convex hull of {(i, v(c_i)) : c_i != 0, from <= i <= W}. A segment of
// slope s < 0 and horizontal length L certifies L roots of valuation -s in
// the algebraic closure, counted with multiplicity.
inline NewtonPolygon newton_polygon(const PowerSeries<LaurentField>& f, long from) {
  const LaurentField& K = f.field();
  std::vector<std::pair<long, std::int64_t>> pts;
  for (long j = std::max(from, 0L); j <= f.prec(); ++j) {
    auto c = f.coeff(j);
    switch (K.test_zero(c)) {
      case ZeroTest::Zero:
        break;
      case ZeroTest::Indeterminate:
        fail(Err::PrecisionLoss, "coefficient of z^" + std::to_string(j) +
                                     " is zero to its t-precision; raise tprec");
      case ZeroTest::NonZero:
        pts.emplace_back(j, c.v);
        break;
    }
  }
  if (pts.empty()) fail(Err::EmptyRange, "no nonzero coefficients in the requested range");
  NewtonPolygon np;
  np.lo = pts.front().first;
  np.hi = pts.back().first;
  auto cross = [](const std::pair<long, std::int64_t>& a, const std::pair<long, std::int64_t>& b,
                  const std::pair<long, std::int64_t>& c) {
    return BigInt(b.first - a.first) * (c.second - a.second) -
           BigInt(b.second - a.second) * (c.first - a.first);
  };
  for (const auto& pt : pts) {
    while (np.vertices.size() >= 2 &&
           cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0) {
      np.vertices.pop_back();
    }
    np.vertices.push_back(pt);
  }
  for (std::size_t i = 1; i < np.vertices.size(); ++i) {
    long dx = np.vertices[i].first - np.vertices[i - 1].first;
    BigInt dy = BigInt(np.vertices[i].second) - np.vertices[i - 1].second;
    np.segments.push_back({BigRational(dy, BigInt(dx)), dx});
  }
  return np;
}

// Exact quotient F / G when G divides F to the working window: factor out
// zeta^{ord G} from both and multiply by the inverse of the unit part.
template <class F>
PowerSeries<F> series_quotient(const PowerSeries<F>& a, const PowerSeries<F>& b) {
  OrdResult og = b.ord();
  if (og.kind == OrdResult::Kind::Infinite) fail(Err::ZeroDivisor, "division by the zero series");
  if (og.kind == OrdResult::Kind::Unresolved) {
    fail(Err::ZeroDivisor, "divisor vanishes to the working window; raise the precision");
  }
  auto num = a.shift_down(og.value);
  auto den = b.shift_down(og.value);
  return mul(num, den.mul_inverse());
}

struct PeriodicLevel {
  long n = 0;
  long i = -1;                                // i_n over K
  std::int64_t v_delta = 0;                   // t-valuation of delta_n
  std::optional<BigRational> ratio_bound;     // v(delta_n / delta_{n-1}) / p^n, n >= 1
  OrdResult wideg;                            // level 0: wideg(f - z); else wideg of the quotient
  bool wideg_equality = false;                // = i_0 + 2, resp. = i_n - i_{n-1} + p^n
  std::optional<NewtonPolygon> polygon;       // hull of the quotient, cut at wideg
  std::optional<BigRational> min_root_valuation;
};

struct PeriodicBoundReport {
  std::uint64_t p = 0;
  long q = 0;
  std::int64_t v_a = 0;
  ValuationResult v_resit;
  std::optional<BigRational> bound;  // b = v(a) + v(resit)/p, when resit != 0
  std::string verdict;               // "bounded" | "vacuous"
  std::vector<PeriodicLevel> levels;
};

// Periodic-point valuation bounds over K = F_p((t)): the bound
// b = v(a) + v(resit(f))/p, the per-level delta valuations and quotient
// Newton polygons, and the Weierstrass-degree equality tests.
inline PeriodicBoundReport periodic_bound_report(const PowerSeries<LaurentField>& f, long n_max) {
  const LaurentField& K = f.field();
  std::uint64_t p = K.characteristic();
  if (p == 2) fail(Err::CharTwo, "the bound needs odd characteristic");
  if (n_max < 0) fail(Err::BadParameters, "need n_max >= 0");
  OrdResult m = f.mult();
  if (m.kind != OrdResult::Kind::Finite) {
    fail(Err::InsufficientPrecision, "multiplicity unresolved");
  }
  long q = m.value - 1;
  if (q < 1 || q > static_cast<long>(p) - 1) {
    fail(Err::OutOfRange, "need 1 <= q <= p-1, got q = " + std::to_string(q));
  }
  if (!K.eq(f.coeff(1), K.one())) fail(Err::NotTangentToIdentity, "need f'(0) = 1");
  for (long j = 0; j <= f.prec(); ++j) {
    auto c = f.coeff(j);
    if (!c.digits.empty() && c.v < 0) {
      fail(Err::NotIntegral,
           "coefficient of z^" + std::to_string(j) + " has valuation " + std::to_string(c.v));
    }
  }

  PeriodicBoundReport rep;
  rep.p = p;
  rep.q = q;
  auto a = f.coeff(q + 1);
  rep.v_a = K.valuation(a).v;
  if (f.prec() < 2 * q + 1) {
    fail(Err::InsufficientPrecision, "need W >= 2q+1 to compute resit");
  }
  auto r = iterative_residue(f);
  rep.v_resit = K.valuation(r);
  switch (rep.v_resit.kind) {
    case ValuationResult::Kind::Finite:
      rep.bound = BigRational(rep.v_a) + BigRational(BigInt(rep.v_resit.v), BigInt(p));
      rep.verdict = "bounded";
      break;
    case ValuationResult::Kind::Infinite:
      rep.verdict = "vacuous";  // resit = 0: the bound says nothing
      break;
    case ValuationResult::Kind::BelowPrecision:
      fail(Err::PrecisionLoss, "resit vanishes to its t-precision; raise tprec");
  }

  auto id = PowerSeries<LaurentField>::identity(K, f.prec());
  auto iterates = detail::prime_power_iterates(f, p, n_max);
  std::vector<long> is;
  std::vector<std::int64_t> vds;
  for (long n = 0; n <= n_max; ++n) {
    const auto& g = iterates[static_cast<std::size_t>(n)];
    OrdResult mg = g.mult();
    if (mg.kind != OrdResult::Kind::Finite) {
      fail(Err::InsufficientPrecision,
           "multiplicity of the level-" + std::to_string(n) + " iterate is unresolved; raise W");
    }
    PeriodicLevel lvl;
    lvl.n = n;
    lvl.i = mg.value - 1;
    auto diff = sub(g, id);
    auto delta = diff.coeff(mg.value);
    lvl.v_delta = K.valuation(delta).v;
    // For an integral series the negative-slope part of the hull is complete
    // as soon as a unit coefficient appears, i.e. once the Weierstrass degree
    // of the quotient resolves; past it only slopes >= 0 can attach. Hulls
    // are therefore cut there, and left empty when wideg is out of reach.
    auto disk_polygon = [](const PowerSeries<LaurentField>& quot,
                           const OrdResult& wd) -> std::optional<NewtonPolygon> {
      if (!wd.is_finite() || wd.value == 0) return std::nullopt;
      return newton_polygon(quot.at_prec(wd.value), 0);
    };
    if (n == 0) {
      lvl.wideg = weierstrass_degree(diff);
      lvl.wideg_equality = lvl.wideg.is_finite() && lvl.wideg.value == lvl.i + 2;
      auto unit = diff.shift_down(lvl.i + 1);
      lvl.polygon = disk_polygon(unit, weierstrass_degree(unit));
    } else {
      auto prev_diff = sub(iterates[static_cast<std::size_t>(n) - 1], id);
      auto quot = series_quotient(diff, prev_diff);
      lvl.ratio_bound = BigRational(BigInt(lvl.v_delta) - vds.back(), big_pow(p, n));
      lvl.wideg = weierstrass_degree(quot);
      long expected = lvl.i - is.back() + static_cast<long>(big_pow(p, n));
      lvl.wideg_equality = lvl.wideg.is_finite() && lvl.wideg.value == expected;
      lvl.polygon = disk_polygon(quot, lvl.wideg);
    }
    if (lvl.polygon) lvl.min_root_valuation = lvl.polygon->min_positive_root_valuation();
    is.push_back(lvl.i);
    vds.push_back(lvl.v_delta);
    rep.levels.push_back(std::move(lvl));
  }
  return rep;
}

}  // namespace resit
