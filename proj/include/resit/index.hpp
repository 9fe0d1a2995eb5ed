#pragma once

#include <optional>
#include <string>

#include "resit/bigint.hpp"
#include "resit/common.hpp"
#include "resit/errors.hpp"
#include "resit/multi_index.hpp"
#include "resit/series.hpp"

namespace resit {

// The residue fixed point index of f at the origin: the coefficient of 1/z
// in the Laurent expansion of 1/(z - f(z)). Computed here directly from that
// definition: with m = mult(f), z - f = z^m w for a unit w, so the 1/z
// coefficient of 1/(z - f) is the z^{m-1} coefficient of 1/w.
template <class F>
typename F::Element laurent_index(const PowerSeries<F>& f) {
  const F& K = f.field();
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "the identity has no isolated fixed point at 0");
  }
  if (m.kind == OrdResult::Kind::Unresolved) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  long mm = m.value;
  if (f.prec() < 2 * mm - 1) {
    fail(Err::InsufficientPrecision, "need W >= 2*mult - 1 = " + std::to_string(2 * mm - 1) +
                                         ", have W = " + std::to_string(f.prec()));
  }
  auto diff = sub(PowerSeries<F>::identity(K, f.prec()), f);  // z - f
  if (mm == 1) return K.inv(diff.coeff(1));  // 1/(1 - f'(0))
  auto w = diff.shift_down(mm);
  return w.mul_inverse().coeff(mm - 1);
}

// The closed index formula for a series of multiplicity q+1 >= 2: writing
// f = z(1 + a_q z^q + ... + a_{2q} z^{2q} + ...),
//
//   ind(f) = -a_q^{-(q+1)} * sum over admissible iota of
//            (-1)^{q-iota_0} binom(q-iota_0; iota_1..iota_q) prod_j a_{q+j}^{iota_j},
//
// one term per integer partition of q. Only a_q..a_{2q} enter.
template <class F>
typename F::Element closed_index(const PowerSeries<F>& f) {
  const F& K = f.field();
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "the identity has no isolated fixed point at 0");
  }
  if (m.kind == OrdResult::Kind::Unresolved) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  long q = m.value - 1;
  if (q < 1) fail(Err::NotMultiple, "closed formula needs mult(f) >= 2");
  if (f.prec() < 2 * q + 1) {
    fail(Err::InsufficientPrecision, "need W >= 2q+1 = " + std::to_string(2 * q + 1) +
                                         ", have W = " + std::to_string(f.prec()));
  }
  // a_j is the z^{j+1} coefficient of f
  auto a = [&](long j) { return f.coeff(j + 1); };
  typename F::Element sum = K.zero();
  for (const MultiIndex& mi : enumerate_multi_indices(q)) {
    long n = q - mi.iota[0];
    std::vector<long> parts(mi.iota.begin() + 1, mi.iota.end());
    BigInt count = multinomial(n, parts);
    if (n % 2 != 0) count = -count;
    typename F::Element term = K.embed(count);
    for (long j = 0; j <= q; ++j) {
      if (mi.iota[static_cast<std::size_t>(j)] == 0) continue;
      term = K.mul(term, field_pow(K, a(q + j), BigInt(mi.iota[static_cast<std::size_t>(j)])));
    }
    sum = K.add(sum, term);
  }
  auto scale = field_pow(K, a(q), BigInt(-(q + 1)));
  return K.neg(K.mul(scale, sum));
}

// The iterative residue: resit(f) = mult(f)/2 - ind(f), defined away from
// characteristic 2.
template <class F>
typename F::Element iterative_residue(const PowerSeries<F>& f) {
  const F& K = f.field();
  if (K.characteristic() == 2) fail(Err::CharTwo, "resit is undefined in characteristic 2");
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Unresolved) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "resit needs an isolated fixed point");
  }
  long q = m.value - 1;
  auto ind = q >= 1 ? closed_index(f) : laurent_index(f);
  auto half_mult = embed_ratio(K, BigInt(m.value), BigInt(2));
  return K.sub(half_mult, ind);
}

template <class F>
struct IndexReport {
  long mult = 0;
  long q = 0;
  typename F::Element ind;
  std::optional<typename F::Element> resit;  // absent in characteristic 2
  std::string algorithm;                     // "laurent", "closed", or "both-agree"
};

// Compute the index by every applicable algorithm and cross-check.
template <class F>
IndexReport<F> index_report(const PowerSeries<F>& f) {
  const F& K = f.field();
  IndexReport<F> rep;
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "the identity has no isolated fixed point at 0");
  }
  if (m.kind == OrdResult::Kind::Unresolved) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  rep.mult = m.value;
  rep.q = m.value - 1;
  rep.ind = laurent_index(f);
  rep.algorithm = "laurent";
  if (rep.q >= 1 && f.prec() >= 2 * rep.q + 1) {
    auto closed = closed_index(f);
    if (!K.eq(closed, rep.ind)) {
      fail(Err::BadParameters, "internal check failed: index algorithms disagree");
    }
    rep.algorithm = "both-agree";
  }
  if (K.characteristic() != 2) rep.resit = iterative_residue(f);
  return rep;
}

}  // namespace resit
