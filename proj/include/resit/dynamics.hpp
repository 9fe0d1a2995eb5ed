#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/descriptor.hpp"
#include "resit/errors.hpp"
#include "resit/index.hpp"
#include "resit/series.hpp"

namespace resit {

// Delta_0 = z, Delta_m = Delta_{m-1} o f - Delta_{m-1}. In characteristic p
// the telescoping collapses to Delta_p = f^p - z.
template <class F>
std::vector<PowerSeries<F>> delta_sequence(const PowerSeries<F>& f, long m_max) {
  if (m_max < 0) fail(Err::BadParameters, "need m_max >= 0");
  std::vector<PowerSeries<F>> out;
  out.reserve(static_cast<std::size_t>(m_max) + 1);
  out.push_back(PowerSeries<F>::identity(f.field(), f.prec()));
  for (long m = 1; m <= m_max; ++m) {
    const auto& prev = out.back();
    out.push_back(sub(compose(prev, f), prev));
  }
  return out;
}

// q (1 + p + ... + p^n), the minimal n-th lower ramification number of a
// series of multiplicity q+1 when q <= p-1.
inline BigInt sen_lower_bound(long q, std::uint64_t p, long n) {
  if (q < 1 || n < 0 || !is_prime_u64(p)) fail(Err::BadParameters, "need q >= 1, n >= 0, p prime");
  return BigInt(q) * geometric_sum(p, n);
}

template <class F>
struct RamificationLevel {
  long n = 0;
  bool resolved = false;
  long i = -1;                               // i_n, when resolved
  std::optional<typename F::Element> delta;  // coefficient of zeta^{i_n+1} in f^{p^n}
  long min_i = -1;                           // when unresolved: i_n >= min_i
  std::optional<bool> sen_congruence;        // i_n = i_{n-1} mod p^n (n >= 1)
  std::optional<bool> sen_bound;             // i_n >= q(1+p+...+p^n) (only for q <= p-1)
};

template <class F>
struct RamificationReport {
  std::uint64_t p = 0;
  long q = -1;  // i_0, when level 0 is resolved
  std::vector<RamificationLevel<F>> levels;
  std::string q_ramified;  // "equality-at-all-computed-levels" | "no" | "undecided"
  std::optional<typename F::Element> resit;
};

namespace detail {

// f^{p^0}, f^{p^1}, ..., f^{p^{n_max}}. Exact sparse inputs go through one
// long chain of single compositions (cheap: each Horner step is linear in the
// sparsity); everything else composes p-fold level by level.
template <class F>
std::vector<PowerSeries<F>> prime_power_iterates(const PowerSeries<F>& f, std::uint64_t p,
                                                 long n_max) {
  std::vector<PowerSeries<F>> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back(f);
  BigInt total = big_pow(p, n_max);
  if (total > 20000000) {
    fail(Err::OutOfRange, "p^n_max = " + total.str() + " exceeds the iteration budget");
  }
  long nnz = 0;
  for (const auto& x : f.coeffs()) {
    if (f.field().test_zero(x) != ZeroTest::Zero) ++nnz;
  }
  if (f.exact() && nnz <= 8) {
    PowerSeries<F> acc = f;
    long next = static_cast<long>(p);
    for (long k = 2; k <= static_cast<long>(total); ++k) {
      acc = compose(acc, f);
      if (k == next) {
        out.push_back(acc);
        next *= static_cast<long>(p);
      }
    }
  } else {
    for (long lvl = 1; lvl <= n_max; ++lvl) {
      PowerSeries<F> acc = out.back();
      for (std::uint64_t j = 1; j < p; ++j) acc = compose(acc, out.back());
      out.push_back(acc);
    }
  }
  return out;
}

}  // namespace detail

// Lower ramification data i_n = mult(f^{p^n}) - 1 with the leading
// coefficients delta_n, Sen verdicts, and the q-ramification equality check.
template <class F>
RamificationReport<F> lower_ramification(const PowerSeries<F>& f, long n_max) {
  const F& K = f.field();
  std::uint64_t p = K.characteristic();
  if (p == 0) fail(Err::UnsupportedField, "lower ramification needs positive characteristic");
  if (n_max < 0) fail(Err::BadParameters, "need n_max >= 0");
  OrdResult m0 = f.mult();  // also validates f(0) = 0
  if (!K.eq(f.coeff(1), K.one())) {
    fail(Err::NotTangentToIdentity, "need f'(0) = 1");
  }
  RamificationReport<F> rep;
  rep.p = p;
  auto id = PowerSeries<F>::identity(K, f.prec());

  auto iterates = detail::prime_power_iterates(f, p, n_max);
  for (long n = 0; n <= n_max; ++n) {
    RamificationLevel<F> lvl;
    lvl.n = n;
    OrdResult m = n == 0 ? m0 : iterates[static_cast<std::size_t>(n)].mult();
    if (m.kind == OrdResult::Kind::Finite) {
      lvl.resolved = true;
      lvl.i = m.value - 1;
      lvl.delta = sub(iterates[static_cast<std::size_t>(n)], id).coeff(m.value);
    } else if (m.kind == OrdResult::Kind::Unresolved) {
      lvl.min_i = m.value;  // mult > value, so i_n >= value
    } else {
      fail(Err::IdentitySeries, "f^(p^" + std::to_string(n) + ") = z exactly");
    }
    rep.levels.push_back(std::move(lvl));
  }

  if (rep.levels[0].resolved) rep.q = rep.levels[0].i;
  long q = rep.q;

  bool all_equal = true, violation = false, gap = false;
  for (long n = 0; n <= n_max; ++n) {
    auto& lvl = rep.levels[static_cast<std::size_t>(n)];
    if (n >= 1) {
      auto& prev = rep.levels[static_cast<std::size_t>(n) - 1];
      if (lvl.resolved && prev.resolved) {
        lvl.sen_congruence = (BigInt(lvl.i) - prev.i) % big_pow(p, n) == 0;
      }
    }
    if (q >= 1) {
      BigInt bound = sen_lower_bound(q, p, n);
      if (q <= static_cast<long>(p) - 1 && lvl.resolved) lvl.sen_bound = lvl.i >= bound;
      if (lvl.resolved) {
        if (lvl.i != bound) {
          all_equal = false;
          violation = true;
        }
      } else if (lvl.min_i > bound) {
        all_equal = false;
        violation = true;  // i_n certified above the equality value
      } else {
        gap = true;  // cannot decide this level
      }
    } else {
      gap = true;
    }
  }
  if (violation) {
    rep.q_ramified = "no";
  } else if (all_equal && !gap) {
    rep.q_ramified = "equality-at-all-computed-levels";
  } else {
    rep.q_ramified = "undecided";
  }

  if (p != 2 && q >= 0 && f.prec() >= 2 * q + 1) {
    rep.resit = iterative_residue(f);
  }
  return rep;
}

// For p odd and q = mult(f)-1 in {1..p-1} with p not dividing q,
// f is q-ramified exactly when resit(f) != 0.
template <class F>
bool is_q_ramified_criterion(const PowerSeries<F>& f) {
  const F& K = f.field();
  std::uint64_t p = K.characteristic();
  if (p == 0) fail(Err::UnsupportedField, "q-ramification needs positive characteristic");
  if (p == 2) fail(Err::CharTwo, "criterion needs odd characteristic");
  OrdResult m = f.mult();
  if (m.kind != OrdResult::Kind::Finite) {
    fail(Err::InsufficientPrecision, "multiplicity unresolved");
  }
  long q = m.value - 1;
  if (q < 1 || q > static_cast<long>(p) - 1) {
    fail(Err::OutOfRange,
         "criterion applies for 1 <= q <= p-1, got q = " + std::to_string(q));
  }
  auto r = iterative_residue(f);
  return K.test_zero(r) == ZeroTest::NonZero;
}

// Direct check: equality i_n = q(1+p+...+p^n) at every level up to n_max.
template <class F>
bool is_q_ramified_direct(const PowerSeries<F>& f, long n_max) {
  auto rep = lower_ramification(f, n_max);
  if (rep.q_ramified == "undecided") {
    BigInt needed = sen_lower_bound(std::max(rep.q, 1L), rep.p, n_max) + std::max(rep.q, 1L) + 1;
    fail(Err::InsufficientPrecision,
         "cannot decide level " + std::to_string(n_max) + "; need W >= " + needed.str());
  }
  return rep.q_ramified == "equality-at-all-computed-levels";
}

// Ramification-number prediction i_n = i_0 + (1+p+...+p^{n-1})(i_1 - i_0),
// valid when p does not divide i_0 and i_1 < (p^2-p+1) i_0.
inline std::optional<BigInt> laubie_saine_predict(long i0, long i1, std::uint64_t p, long n) {
  if (i0 < 1 || i1 < i0 || n < 0 || !is_prime_u64(p)) {
    fail(Err::BadParameters, "need 1 <= i0 <= i1, n >= 0, p prime");
  }
  if (i0 % static_cast<long>(p) == 0) return std::nullopt;
  if (BigInt(i1) >= (BigInt(p) * p - p + 1) * i0) return std::nullopt;
  if (n == 0) return BigInt(i0);
  return BigInt(i0) + geometric_sum(p, n - 1) * (BigInt(i1) - i0);
}

// Closed forms for the two leading coefficients of f^{p^n} - zeta when
// f = zeta(1 + a0 zeta^q + a1 zeta^{2q}) with p odd and q <= p-1: putting
// d = (p^{n+1}-1)/(p-1), e = (p^n-1)/(p-1), and R = (q+1)/2 - a1/a0^2,
//
//   f^{p^n} - zeta = chi_n zeta^{qd+1} + psi_n zeta^{qd+q+1} + ...
//   chi_n = a0^d R^e,  psi_n = -a0^{d+1} R^{e+1}   (n >= 1),
//
// with (chi_0, psi_0) = (a0, a1).
template <class F>
std::pair<typename F::Element, typename F::Element> chi_psi(const PowerSeries<F>& f, long n) {
  const F& K = f.field();
  std::uint64_t p = K.characteristic();
  if (p < 3) fail(Err::UnsupportedField, "closed forms need odd characteristic");
  if (n < 0) fail(Err::BadParameters, "need n >= 0");
  OrdResult m = f.mult();
  if (m.kind != OrdResult::Kind::Finite) {
    fail(Err::InsufficientPrecision, "multiplicity unresolved");
  }
  long q = m.value - 1;
  if (q < 1 || q > static_cast<long>(p) - 1) {
    fail(Err::OutOfRange, "need 1 <= q <= p-1, got q = " + std::to_string(q));
  }
  if (!K.eq(f.coeff(1), K.one())) fail(Err::NotTangentToIdentity, "need f'(0) = 1");
  if (f.prec() < 2 * q + 1) {
    fail(Err::InsufficientPrecision, "need W >= 2q+1 to read a0 and a1");
  }
  // shape f = zeta(1 + a0 zeta^q + a1 zeta^{2q}) mod zeta^{3q+2}, as far as visible
  for (long j = 2; j <= std::min(f.prec(), 3 * q + 1); ++j) {
    if (j == q + 1 || j == 2 * q + 1) continue;
    if (K.test_zero(f.coeff(j)) != ZeroTest::Zero) {
      fail(Err::BadParameters,
           "series is not of the shape zeta(1 + a0 zeta^q + a1 zeta^{2q}): nonzero z^" +
               std::to_string(j));
    }
  }
  auto a0 = f.coeff(q + 1);
  auto a1 = f.coeff(2 * q + 1);
  if (n == 0) return {a0, a1};
  BigInt d = geometric_sum(p, n), e = geometric_sum(p, n - 1);
  auto R = K.sub(embed_ratio(K, BigInt(q) + 1, 2), K.div(a1, K.mul(a0, a0)));
  auto chi = K.mul(field_pow(K, a0, d), field_pow(K, R, e));
  auto psi = K.neg(K.mul(field_pow(K, a0, d + 1), field_pow(K, R, e + 1)));
  return {chi, psi};
}

// One step of the normal-form pipeline: conjugating by phi = z(1 + c z^k)
// with c = -a_{q+k} / (a_q (k - q)) kills the z^{q+k+1} coefficient while
// leaving z^{q+1}..z^{q+k} alone. k = q is the obstructed term: its
// coefficient carries the index and cannot be removed this way.
template <class F>
std::pair<PowerSeries<F>, PowerSeries<F>> remove_term(const PowerSeries<F>& f, long k) {
  const F& K = f.field();
  if (k < 1) fail(Err::BadParameters, "need k >= 1");
  OrdResult m = f.mult();
  if (m.kind != OrdResult::Kind::Finite) {
    fail(Err::InsufficientPrecision, "multiplicity unresolved");
  }
  long q = m.value - 1;
  if (q < 1) fail(Err::NotMultiple, "need mult(f) >= 2");
  auto shift = K.embed(BigInt(k) - q);
  if (K.test_zero(shift) == ZeroTest::Zero) {
    fail(Err::ObstructedTerm, "k = " + std::to_string(k) + " is congruent to q = " +
                                  std::to_string(q) + " in the field; term is obstructed");
  }
  auto aq = f.coeff(q + 1);
  auto aqk = f.coeff(q + k + 1);
  auto c = K.neg(K.div(aqk, K.mul(aq, shift)));
  std::vector<typename F::Element> pc(static_cast<std::size_t>(k) + 2, K.zero());
  pc[1] = K.one();
  pc[static_cast<std::size_t>(k) + 1] = c;
  auto phi = PowerSeries<F>::make(K, std::move(pc), f.prec(), true);
  return {phi, conjugate(phi, f)};
}

template <class F>
struct NormalFormResult {
  PowerSeries<F> conjugacy;
  PowerSeries<F> g;
  typename F::Element ind;
};

// Prop-2.4-style normal form: scale a_q to 1, then remove the removable
// terms below z^{2q+p+1}, skipping the obstructed k = q. The result is
// g = z(1 + z^q + ind(f) z^{2q}) mod z^{2q+p+1}.
template <class F>
NormalFormResult<F> normal_form(const PowerSeries<F>& f) {
  const F& K = f.field();
  std::uint64_t p = K.characteristic();
  if (p == 0) fail(Err::UnsupportedField, "the normal form needs positive characteristic");
  OrdResult m = f.mult();
  if (m.kind != OrdResult::Kind::Finite) {
    fail(Err::InsufficientPrecision, "multiplicity unresolved");
  }
  long q = m.value - 1;
  if (q < 1 || q > static_cast<long>(p) - 1) {
    fail(Err::OutOfRange, "need 1 <= q <= p-1, got q = " + std::to_string(q));
  }
  long w_needed = 2 * q + static_cast<long>(p) + 1;
  if (f.prec() < w_needed) {
    fail(Err::InsufficientPrecision,
         "need W >= 2q+p+1 = " + std::to_string(w_needed) + ", have W = " + std::to_string(f.prec()));
  }
  auto aq = f.coeff(q + 1);
  auto root = q_th_root(K, aq, q);
  if (!root) {
    fail(Err::NoQthRoot, "a_q has no q-th root in the field; pass an extension containing one");
  }
  std::vector<typename F::Element> sc{K.zero(), *root};
  auto phi_total = PowerSeries<F>::make(K, std::move(sc), f.prec(), true);
  auto g = conjugate(phi_total, f);
  for (long k = 1; k < q; ++k) {
    auto [phi, h] = remove_term(g, k);
    phi_total = compose(phi, phi_total);
    g = h;
  }
  auto ind = g.coeff(2 * q + 1);
  for (long k = q + 1; k <= q + static_cast<long>(p) - 1; ++k) {
    auto [phi, h] = remove_term(g, k);
    phi_total = compose(phi, phi_total);
    g = h;
  }
  return {std::move(phi_total), std::move(g), std::move(ind)};
}

// Order of a root of unity, field by field. Finite fields power through the
// cyclic group; elsewhere only the obvious torsion exists.
inline std::optional<long> unit_order(const PrimeField& K, PrimeField::Element g) {
  auto x = g;
  for (long k = 1; k < static_cast<long>(K.p()); ++k) {
    if (K.eq(x, K.one())) return k;
    x = K.mul(x, g);
  }
  return std::nullopt;
}

inline std::optional<long> unit_order(const ExtensionField& K, const ExtensionField::Element& g) {
  auto x = g;
  for (long k = 1; k < static_cast<long>(K.size()); ++k) {
    if (K.eq(x, K.one())) return k;
    x = K.mul(x, g);
  }
  return std::nullopt;
}

inline std::optional<long> unit_order(const RationalField& K, const RationalField::Element& g) {
  if (K.eq(g, K.one())) return 1;
  if (K.eq(g, K.embed(-1))) return 2;
  return std::nullopt;
}

inline std::optional<long> unit_order(const LaurentField& K, const LaurentField::Element& g) {
  if (g.digits.empty()) return std::nullopt;
  if (g.v != 0) return std::nullopt;  // |g| != 1, no torsion
  bool constant = g.digits.size() == 1;
  if (g.know != LaurentField::kExact) {
    // a unit that merely looks constant at this precision cannot be certified
    fail(Err::PrecisionLoss, "multiplier is only known mod t^" + std::to_string(g.know));
  }
  if (!constant) return std::nullopt;  // 1 + (higher terms) is torsion-free in char p
  return unit_order(K.residue_field(), g.digits[0]);
}

template <class F>
struct MultiplierReduction {
  long order = 0;             // multiplicative order of f'(0)
  PowerSeries<F> g;           // f^order, tangent to the identity
  OrdResult q_prime;          // mult(g) - 1, possibly unresolved
  std::optional<typename F::Element> resit_g;
  std::string verdict;        // "<q'>-ramified" | "not-<q'>-ramified" | "criterion-inapplicable"
};

// Root-of-unity multiplier reduction: if f'(0) = gamma has finite order q,
// f^q is tangent to the identity and the q-ramification criterion applies to
// it whenever its multiplicity stays in range.
template <class F>
MultiplierReduction<F> multiplier_order_reduce(const PowerSeries<F>& f) {
  const F& K = f.field();
  OrdResult zero_ord = f.ord();
  if (zero_ord.kind == OrdResult::Kind::Finite && zero_ord.value == 0) {
    fail(Err::NotAFixedPoint, "series must vanish at the origin");
  }
  auto gamma = f.coeff(1);
  if (K.test_zero(gamma) != ZeroTest::NonZero) {
    fail(Err::NotInvertible, "multiplier f'(0) must be a unit");
  }
  auto ord = unit_order(K, gamma);
  if (!ord) fail(Err::NotFiniteOrder, "multiplier is not a root of unity");
  MultiplierReduction<F> out{*ord, f.iterate(*ord), OrdResult::infinite(), std::nullopt, ""};
  out.q_prime = [&] {
    auto m = out.g.mult();
    if (m.kind == OrdResult::Kind::Finite) return OrdResult::finite(m.value - 1);
    if (m.kind == OrdResult::Kind::Unresolved) return OrdResult::unresolved(m.value);
    return OrdResult::infinite();
  }();
  std::uint64_t p = K.characteristic();
  if (out.q_prime.is_finite() && p >= 3 && out.q_prime.value >= 1 &&
      out.q_prime.value <= static_cast<long>(p) - 1 && out.g.prec() >= 2 * out.q_prime.value + 1) {
    out.resit_g = iterative_residue(out.g);
    bool ramified = K.test_zero(*out.resit_g) == ZeroTest::NonZero;
    out.verdict = (ramified ? "" : "not-") + std::to_string(out.q_prime.value) + "-ramified";
  } else {
    out.verdict = "criterion-inapplicable";
  }
  return out;
}

}  // namespace resit
