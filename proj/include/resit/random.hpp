#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/extension_field.hpp"
#include "resit/laurent_field.hpp"
#include "resit/prime_field.hpp"
#include "resit/rational_field.hpp"
#include "resit/series.hpp"

namespace resit {

using Rng = std::mt19937_64;

inline PrimeField::Element random_element(const PrimeField& f, Rng& rng) {
  return std::uniform_int_distribution<std::uint64_t>(0, f.p() - 1)(rng);
}

inline ExtensionField::Element random_element(const ExtensionField& f, Rng& rng) {
  std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, f.size() - 1)(rng);
  return f.element_at(k);
}

inline RationalField::Element random_element(const RationalField&, Rng& rng) {
  std::int64_t num = std::uniform_int_distribution<std::int64_t>(-20, 20)(rng);
  std::int64_t den = std::uniform_int_distribution<std::int64_t>(1, 20)(rng);
  return BigRational(BigInt(num), BigInt(den));
}

inline LaurentField::Element random_element(const LaurentField& f, Rng& rng) {
  std::int64_t v = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
  std::vector<std::uint64_t> digits(len);
  std::uniform_int_distribution<std::uint64_t> d(0, f.p() - 1);
  for (auto& x : digits) x = d(rng);
  return f.make(v, std::move(digits));
}

// Nonzero variant for inversion and division tests.
template <class F>
typename F::Element random_nonzero(const F& f, Rng& rng) {
  for (int tries = 0; tries < 256; ++tries) {
    auto x = random_element(f, rng);
    if (f.test_zero(x) == ZeroTest::NonZero) return x;
  }
  return f.one();
}

// Random truncated series with unconstrained coefficients.
template <class F>
PowerSeries<F> random_series(const F& f, long w, Rng& rng, bool exact = false) {
  std::vector<typename F::Element> c;
  c.reserve(static_cast<std::size_t>(w) + 1);
  for (long j = 0; j <= w; ++j) c.push_back(random_element(f, rng));
  return PowerSeries<F>::make(f, std::move(c), w, exact);
}

// Random series with a simple zero at the origin: c_0 = 0, c_1 invertible.
template <class F>
PowerSeries<F> random_invertible(const F& f, long w, Rng& rng, bool exact = false) {
  auto s = random_series(f, w, rng, exact);
  std::vector<typename F::Element> c = s.coeffs();
  c[0] = f.zero();
  c[1] = random_nonzero(f, rng);
  return PowerSeries<F>::make(f, std::move(c), w, exact);
}

// Random wildly ramified series of multiplicity q+1:
// f = z(1 + a_q z^q + ...) with a_q != 0.
template <class F>
PowerSeries<F> random_wild(const F& f, long w, long q, Rng& rng, bool exact = false) {
  if (q < 1 || q + 1 > w) fail(Err::BadParameters, "need 1 <= q and q+1 <= W");
  std::vector<typename F::Element> c(static_cast<std::size_t>(w) + 1, f.zero());
  c[1] = f.one();
  c[static_cast<std::size_t>(q) + 1] = random_nonzero(f, rng);
  for (long j = q + 2; j <= w; ++j) c[static_cast<std::size_t>(j)] = random_element(f, rng);
  return PowerSeries<F>::make(f, std::move(c), w, exact);
}

}  // namespace resit
