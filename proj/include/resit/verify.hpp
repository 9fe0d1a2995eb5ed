#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/bivariate.hpp"
#include "resit/common.hpp"
#include "resit/dynamics.hpp"
#include "resit/errors.hpp"
#include "resit/index.hpp"
#include "resit/prime_field.hpp"
#include "resit/series.hpp"

namespace resit {

// One row of the iterate-difference recursions over F_p[x0, x1]: the
// coefficients of zeta^{qm+1}, zeta^{qm+l+1} and zeta^{qm+2l+1} in the m-th
// finite difference Delta_m of the generic series.
struct RecursionTriple {
  long m = 0;
  BivariateRing::Element alpha;
  BivariateRing::Element beta;
  BivariateRing::Element gamma;
};

// Outcome of one identity check, kept re-renderable: both sides are carried
// as strings so a report can show exactly what was compared.
struct CongruenceVerdict {
  std::string claim;
  std::string computed;
  std::string expected;
  bool equal = false;
};

// Closed-form counterpart of a recursion row. The gamma component is only
// available for p >= 5: its formula divides by 6, which is invertible in the
// local ring at p exactly when p >= 5.
struct ClosedFormTriple {
  BivariateRing::Element alpha;
  BivariateRing::Element beta;
  std::optional<BivariateRing::Element> gamma;
};

namespace detail {

inline void require_odd_prime(std::uint64_t p) {
  if (p == 2 || !is_prime_u64(p)) {
    fail(Err::BadParameters, "p = " + std::to_string(p) + " must be an odd prime");
  }
}

// Integer product prod_{j in [1, m], j not excluded} (qj + 1) in exact
// arithmetic; reduction happens only when the result is embedded.
inline BigInt qj_product(long q, long m, long skip1 = 0, long skip2 = 0) {
  BigInt r = 1;
  for (long j = 1; j <= m; ++j) {
    if (j == skip1 || j == skip2) continue;
    r *= BigInt(q) * j + 1;
  }
  return r;
}

}  // namespace detail

// The three coupled recursions of Case 1 (l = q), rows m = 1 .. m_max. All
// integer factors (qm+1 and binomials in it) are computed exactly before
// embedding into F_p.
inline std::vector<RecursionTriple> case1_recursions(std::uint64_t p, long q, long m_max) {
  detail::require_odd_prime(p);
  if (q < 1) fail(Err::BadParameters, "q must be >= 1");
  if (m_max < 1 || m_max > static_cast<long>(p)) {
    fail(Err::BadParameters, "need 1 <= m_max <= p");
  }
  BivariateRing B(p);
  const auto x0 = B.x0();
  const auto x1 = B.x1();
  std::vector<RecursionTriple> out;
  out.push_back({1, x0, x1, B.zero()});
  for (long m = 1; m < m_max; ++m) {
    const auto& cur = out.back();
    BigInt qm1 = BigInt(q) * m + 1;
    BigInt qm1next = BigInt(q) * (m + 1) + 1;
    BigInt qm1nextnext = BigInt(q) * (m + 2) + 1;
    auto alpha = B.mul(B.mul(x0, B.embed(qm1)), cur.alpha);
    auto beta_from_alpha = B.add(B.mul(B.pow(x0, 2), B.embed(binomial(qm1, 2))),
                                 B.mul(x1, B.embed(qm1)));
    auto beta = B.add(B.mul(beta_from_alpha, cur.alpha),
                      B.mul(B.mul(x0, B.embed(qm1next)), cur.beta));
    auto gamma_from_alpha =
        B.add(B.mul(B.pow(x0, 3), B.embed(binomial(qm1, 3))),
              B.mul(B.mul(x0, x1), B.embed(BigInt(q) * m * qm1)));
    auto gamma_from_beta = B.add(B.mul(B.pow(x0, 2), B.embed(binomial(qm1next, 2))),
                                 B.mul(x1, B.embed(qm1next)));
    auto gamma = B.add(B.add(B.mul(gamma_from_alpha, cur.alpha),
                             B.mul(gamma_from_beta, cur.beta)),
                       B.mul(B.mul(x0, B.embed(qm1nextnext)), cur.gamma));
    out.push_back({m + 1, alpha, beta, gamma});
  }
  return out;
}

// Closed-form solutions of the Case 1 recursions at a single row m, with
// H(s) = x0^2 * qs/2 + x1. The gamma formula needs 1/6 and is therefore
// restricted to p >= 5; for p = 3 the recursion itself is the only
// authority and gamma stays empty.
inline ClosedFormTriple case1_closed_forms(std::uint64_t p, long q, long m) {
  detail::require_odd_prime(p);
  if (q < 1) fail(Err::BadParameters, "q must be >= 1");
  if (m < 1 || m > static_cast<long>(p)) fail(Err::BadParameters, "need 1 <= m <= p");
  BivariateRing B(p);
  const auto x0 = B.x0();
  const auto x1 = B.x1();
  const auto half = B.inv(B.embed(BigInt(2)));
  auto H = [&](long s) {
    return B.add(B.mul(B.mul(B.pow(x0, 2), half), B.embed(BigInt(q) * s)), x1);
  };

  ClosedFormTriple out;
  out.alpha = B.mul(B.pow(x0, static_cast<std::uint64_t>(m)),
                    B.embed(detail::qj_product(q, m - 1)));

  auto beta_sum = B.zero();
  for (long r = 1; r <= m; ++r) {
    beta_sum = B.add(beta_sum, B.mul(H(r - 1), B.embed(detail::qj_product(q, m, r))));
  }
  out.beta = B.mul(B.pow(x0, static_cast<std::uint64_t>(m - 1)), beta_sum);

  if (p >= 5) {
    if (m == 1) {
      out.gamma = B.zero();
    } else {
      const auto sixth = B.inv(B.embed(BigInt(6)));
      auto acc = B.zero();
      for (long s = 1; s <= m - 1; ++s) {
        auto inner = B.add(B.mul(B.mul(B.pow(x0, 2), sixth), B.embed(BigInt(q) * s - 1)), x1);
        auto first = B.mul(B.mul(B.mul(B.pow(x0, 2), B.embed(BigInt(q) * s)), inner),
                           B.embed(detail::qj_product(q, m + 1, s + 1, s + 2)));
        auto tail = B.zero();
        for (long r = 1; r <= s; ++r) {
          tail = B.add(tail, B.mul(H(r - 1), B.embed(detail::qj_product(q, m + 1, r, s + 2))));
        }
        acc = B.add(acc, B.add(first, B.mul(H(s + 1), tail)));
      }
      out.gamma = B.mul(B.pow(x0, static_cast<std::uint64_t>(m - 2)), acc);
    }
  }
  return out;
}

namespace detail {

inline void require_case2_shape(std::uint64_t p, long q, long l) {
  require_odd_prime(p);
  if (q < static_cast<long>(p) + 1 || q % static_cast<long>(p) == 0) {
    fail(Err::BadParameters, "q must be >= p+1 and prime to p");
  }
  if (l < 1 || (q - l) % static_cast<long>(p) != 0) {
    fail(Err::BadParameters, "l must be >= 1 and congruent to q mod p");
  }
  if (l > static_cast<long>(p) - 1 && 2 * l + 1 > q) {
    fail(Err::BadParameters, "need l <= p-1 or 2l+1 <= q");
  }
}

}  // namespace detail

// The decoupled recursions of Case 2 (q >= p+1, offset l), rows m = 1 ..
// m_max. The l-conditions are exactly the admissibility gate of the
// statement being checked.
inline std::vector<RecursionTriple> case2_recursions(std::uint64_t p, long q, long l,
                                                     long m_max) {
  detail::require_case2_shape(p, q, l);
  if (m_max < 1 || m_max > static_cast<long>(p)) {
    fail(Err::BadParameters, "need 1 <= m_max <= p");
  }
  BivariateRing B(p);
  const auto x0 = B.x0();
  const auto x1 = B.x1();
  std::vector<RecursionTriple> out;
  out.push_back({1, x0, x1, B.zero()});
  for (long m = 1; m < m_max; ++m) {
    const auto& cur = out.back();
    BigInt qm1 = BigInt(q) * m + 1;
    BigInt qml1 = BigInt(q) * m + l + 1;
    BigInt qm2l1 = BigInt(q) * m + 2 * l + 1;
    auto alpha = B.mul(B.mul(x0, B.embed(qm1)), cur.alpha);
    auto beta = B.add(B.mul(B.mul(x1, B.embed(qm1)), cur.alpha),
                      B.mul(B.mul(x0, B.embed(qml1)), cur.beta));
    auto gamma = B.add(B.mul(B.mul(x1, B.embed(qml1)), cur.beta),
                       B.mul(B.mul(x0, B.embed(qm2l1)), cur.gamma));
    out.push_back({m + 1, alpha, beta, gamma});
  }
  return out;
}

namespace detail {

// Target polynomials of the p-th row: x0^{p-1} (x0^2 (q+1)/2 - x1) and
// -x0^{p-2} (x0^2 (q+1)/2 - x1)^2 when q <= p-1, and -x0^{p-1} x1,
// -x0^{p-2} x1^2 when q >= p+1.
inline std::pair<BivariateRing::Element, BivariateRing::Element> row_p_targets(
    const BivariateRing& B, std::uint64_t p, long q) {
  const auto x0 = B.x0();
  const auto x1 = B.x1();
  if (q < static_cast<long>(p)) {
    auto core = B.sub(B.mul(B.mul(B.pow(x0, 2), B.inv(B.embed(BigInt(2)))),
                            B.embed(BigInt(q) + 1)),
                      x1);
    auto beta = B.mul(B.pow(x0, p - 1), core);
    auto gamma = B.neg(B.mul(B.pow(x0, p - 2), B.mul(core, core)));
    return {beta, gamma};
  }
  auto beta = B.neg(B.mul(B.pow(x0, p - 1), x1));
  auto gamma = B.neg(B.mul(B.pow(x0, p - 2), B.mul(x1, x1)));
  return {beta, gamma};
}

inline CongruenceVerdict poly_verdict(const BivariateRing& B, std::string claim,
                                      const BivariateRing::Element& computed,
                                      const BivariateRing::Element& expected) {
  return {std::move(claim), B.str(computed), B.str(expected), B.eq(computed, expected)};
}

}  // namespace detail

// Row p of the Case 1 recursions against the displayed targets: alpha_p = 0,
// beta_p and gamma_p as in row_p_targets. Requires 1 <= q <= p-1.
inline std::vector<CongruenceVerdict> main_lemma_case1_check(std::uint64_t p, long q) {
  detail::require_odd_prime(p);
  if (q < 1 || q > static_cast<long>(p) - 1) {
    fail(Err::BadParameters, "case 1 needs 1 <= q <= p-1");
  }
  BivariateRing B(p);
  auto rows = case1_recursions(p, q, static_cast<long>(p));
  const auto& top = rows.back();
  auto [beta_t, gamma_t] = detail::row_p_targets(B, p, q);
  std::string tag = " (p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")";
  return {
      detail::poly_verdict(B, "alpha_p vanishes" + tag, top.alpha, B.zero()),
      detail::poly_verdict(B, "beta_p matches its display" + tag, top.beta, beta_t),
      detail::poly_verdict(B, "gamma_p matches its display" + tag, top.gamma, gamma_t),
  };
}

// Row p of the Case 2 recursions against the displayed targets.
inline std::vector<CongruenceVerdict> main_lemma_case2_check(std::uint64_t p, long q, long l) {
  BivariateRing B(p);
  auto rows = case2_recursions(p, q, l, static_cast<long>(p));
  const auto& top = rows.back();
  auto [beta_t, gamma_t] = detail::row_p_targets(B, p, q);
  std::string tag = " (p=" + std::to_string(p) + ", q=" + std::to_string(q) +
                    ", l=" + std::to_string(l) + ")";
  return {
      detail::poly_verdict(B, "alpha_p vanishes" + tag, top.alpha, B.zero()),
      detail::poly_verdict(B, "beta_p matches its display" + tag, top.beta, beta_t),
      detail::poly_verdict(B, "gamma_p matches its display" + tag, top.gamma, gamma_t),
  };
}

// Recursion rows versus closed forms for every m <= p (gamma only when the
// closed form exists, i.e. p >= 5).
inline std::vector<CongruenceVerdict> closed_form_check(std::uint64_t p, long q) {
  BivariateRing B(p);
  auto rows = case1_recursions(p, q, static_cast<long>(p));
  std::vector<CongruenceVerdict> out;
  for (const auto& row : rows) {
    auto closed = case1_closed_forms(p, q, row.m);
    std::string tag = "m=" + std::to_string(row.m) + " (p=" + std::to_string(p) +
                      ", q=" + std::to_string(q) + ")";
    out.push_back(detail::poly_verdict(B, "alpha closed form at " + tag, closed.alpha, row.alpha));
    out.push_back(detail::poly_verdict(B, "beta closed form at " + tag, closed.beta, row.beta));
    if (closed.gamma) {
      out.push_back(detail::poly_verdict(B, "gamma closed form at " + tag, *closed.gamma, row.gamma));
    }
  }
  return out;
}

// Delta_m of the truncated generic series (tail variables set to zero) over
// the bivariate coefficient ring, compared with the claimed three-term
// expansion for every m <= m_max.
inline std::vector<CongruenceVerdict> delta_expansion_check(std::uint64_t p, long q, long l,
                                                            long m_max) {
  detail::require_odd_prime(p);
  if (q < 1 || q % static_cast<long>(p) == 0) {
    fail(Err::BadParameters, "q must be positive and prime to p");
  }
  if (m_max < 1 || m_max > static_cast<long>(p)) {
    fail(Err::BadParameters, "need 1 <= m_max <= p");
  }
  std::vector<RecursionTriple> rows;
  if (l == q && q <= static_cast<long>(p) - 1) {
    rows = case1_recursions(p, q, m_max);
  } else {
    rows = case2_recursions(p, q, l, m_max);
  }

  BivariateRing B(p);
  long w = q * m_max + 2 * l + 1;
  std::vector<BivariateRing::Element> c(static_cast<std::size_t>(w) + 1, B.zero());
  c[1] = B.one();
  c[static_cast<std::size_t>(q + 1)] = B.x0();
  c[static_cast<std::size_t>(q + l + 1)] = B.x1();
  auto f = PowerSeries<BivariateRing>::make(B, std::move(c), w, true);
  auto deltas = delta_sequence(f, m_max);

  std::vector<CongruenceVerdict> out;
  for (long m = 1; m <= m_max; ++m) {
    long top = q * m + 2 * l + 1;
    const auto& row = rows[static_cast<std::size_t>(m - 1)];
    std::vector<BivariateRing::Element> e(static_cast<std::size_t>(top) + 1, B.zero());
    e[static_cast<std::size_t>(q * m + 1)] = row.alpha;
    e[static_cast<std::size_t>(q * m + l + 1)] = row.beta;
    e[static_cast<std::size_t>(top)] = row.gamma;
    auto expected = PowerSeries<BivariateRing>::make(B, std::move(e), top, true);
    auto computed = deltas[static_cast<std::size_t>(m)].at_prec(top);
    std::string claim = "Delta_m expansion at m=" + std::to_string(m) +
                        " (p=" + std::to_string(p) + ", q=" + std::to_string(q) +
                        ", l=" + std::to_string(l) + ")";
    out.push_back({claim, computed.str(), expected.str(), equal_mod(computed, expected, top)});
  }
  return out;
}

namespace detail {

// f^n mod z^{w+1} over F_p on raw residue vectors. Grid sweeps instantiate
// thousands of series, so convolutions accumulate in plain words and reduce
// once per coefficient; the caller guarantees (w+1)(p-1)^2 fits in 64 bits.
inline std::vector<std::uint64_t> iterate_mod_p(const std::vector<std::uint64_t>& f,
                                                std::uint64_t p, long n, long w) {
  std::vector<long> sup;  // nonzero positions of f above the constant term
  for (long j = 1; j <= w; ++j) {
    if (f[static_cast<std::size_t>(j)]) sup.push_back(j);
  }
  auto compose_with_f = [&](const std::vector<std::uint64_t>& a) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(w) + 1, 0);
    std::vector<std::uint64_t> fpow = f;  // f^i, order i, truncated at w
    out[0] = a[0];
    for (long i = 1; i <= w; ++i) {
      if (a[static_cast<std::size_t>(i)]) {
        std::uint64_t ai = a[static_cast<std::size_t>(i)];
        for (long k = i; k <= w; ++k) {
          out[static_cast<std::size_t>(k)] += ai * fpow[static_cast<std::size_t>(k)];
        }
      }
      if (i == w) break;
      std::vector<std::uint64_t> next(static_cast<std::size_t>(w) + 1, 0);
      for (long s = i; s < w; ++s) {
        std::uint64_t v = fpow[static_cast<std::size_t>(s)];
        if (!v) continue;
        for (long j : sup) {
          if (j > w - s) break;
          next[static_cast<std::size_t>(s + j)] += v * f[static_cast<std::size_t>(j)];
        }
      }
      for (auto& x : next) x %= p;
      fpow.swap(next);
    }
    for (auto& x : out) x %= p;
    return out;
  };
  std::vector<std::uint64_t> acc = f;
  for (long k = 1; k < n; ++k) acc = compose_with_f(acc);
  return acc;
}

}  // namespace detail

// Instantiates the generic series at concrete residues (vals[i] is the value
// of x_i; the tail starts at zeta^{q+2l+2} with x_2), computes f^p at
// W = qp+2l+2, and checks the three claims: the zeta^{qp+l+1} coefficient
// equals the beta display, the zeta^{qp+2l+1} coefficient equals the gamma
// display, and everything between zeta^2 and zeta^{qp+l} vanishes.
inline CongruenceVerdict generic_iterate_check(std::uint64_t p, long q, long l,
                                               const std::vector<std::uint64_t>& vals) {
  detail::require_odd_prime(p);
  if (q < 1 || q % static_cast<long>(p) == 0) {
    fail(Err::BadParameters, "q must be positive and prime to p");
  }
  if (l < 1 || (q - l) % static_cast<long>(p) != 0 ||
      (l > static_cast<long>(p) - 1 && 2 * l + 1 > q)) {
    fail(Err::BadParameters, "l must be admissible: l = q mod p, and l <= p-1 or 2l+1 <= q");
  }
  if (vals.size() < 2) fail(Err::BadParameters, "instantiation needs at least x0 and x1");
  PrimeField K(p);
  std::uint64_t x0 = vals[0] % p;
  std::uint64_t x1 = vals[1] % p;
  if (x0 == 0) fail(Err::BadParameters, "x0 must be nonzero");

  long w = q * static_cast<long>(p) + 2 * l + 2;
  std::vector<std::uint64_t> c(static_cast<std::size_t>(w) + 1, 0);
  c[1] = 1;
  c[static_cast<std::size_t>(q + 1)] = x0;
  c[static_cast<std::size_t>(q + l + 1)] = x1;
  for (std::size_t i = 2; i < vals.size(); ++i) {
    long pos = q + 2 * l + static_cast<long>(i);  // zeta^{q+2l+(i-1)} inside the unit
    if (pos > w) break;
    c[static_cast<std::size_t>(pos)] = vals[i] % p;
  }

  std::vector<std::uint64_t> it;
  if (static_cast<unsigned __int128>(w + 1) * (p - 1) * (p - 1) <=
      static_cast<unsigned __int128>(UINT64_MAX)) {
    it = detail::iterate_mod_p(c, p, static_cast<long>(p), w);
  } else {
    auto fs = PowerSeries<PrimeField>::make(K, c, w, true);
    it = fs.iterate(static_cast<long>(p)).coeffs();
  }

  long beta_pos = q * static_cast<long>(p) + l + 1;
  long gamma_pos = q * static_cast<long>(p) + 2 * l + 1;
  std::string stray = it[1] == 1 ? "none" : "z^1";
  for (long j = 2; j <= w && stray == "none"; ++j) {
    if (j == beta_pos || j == gamma_pos || j == w) continue;
    if (it[static_cast<std::size_t>(j)] != 0) stray = "z^" + std::to_string(j);
  }
  BivariateRing B(p);
  auto [beta_t, gamma_t] = detail::row_p_targets(B, p, q);
  std::uint64_t beta_e = B.eval(beta_t, x0, x1);
  std::uint64_t gamma_e = B.eval(gamma_t, x0, x1);
  std::uint64_t beta_c = it[static_cast<std::size_t>(beta_pos)];
  std::uint64_t gamma_c = it[static_cast<std::size_t>(gamma_pos)];

  std::string claim = "p-th iterate congruence (p=" + std::to_string(p) +
                      ", q=" + std::to_string(q) + ", l=" + std::to_string(l) + ")";
  auto side = [&](std::uint64_t b, std::uint64_t g, const std::string& s) {
    return "beta=" + std::to_string(b) + ", gamma=" + std::to_string(g) + ", stray=" + s;
  };
  bool equal = beta_c == beta_e && gamma_c == gamma_e && stray == "none";
  return {claim, side(beta_c, gamma_c, stray), side(beta_e, gamma_e, "none"), equal};
}

// For w(n) = an + b on F_p with a != 0 and s' the root of w: the product of
// w(s) over s != s' and the sum of the inverses. Both are independent of
// (a, b): the product is -1 and the sum is 0.
inline std::pair<PrimeField::Element, PrimeField::Element> wilson_products(std::uint64_t p,
                                                                           std::uint64_t a,
                                                                           std::uint64_t b) {
  detail::require_odd_prime(p);
  PrimeField K(p);
  a %= p;
  b %= p;
  if (a == 0) fail(Err::ZeroSlope, "w(n) = an + b needs a nonzero slope");
  auto root = K.neg(K.mul(K.inv(a), b));
  auto prod = K.one();
  auto sum = K.zero();
  for (std::uint64_t s = 0; s < p; ++s) {
    if (s == root) continue;
    auto w = K.add(K.mul(a, s), b);
    prod = K.mul(prod, w);
    sum = K.add(sum, K.inv(w));
  }
  return {prod, sum};
}

// f^n - z against n(f - z) + binom(n,2)(q+1) a^2 z^{2q+1} mod z^{2q+2},
// where q+1 = mult(f) and a is the z^{q+1} coefficient.
template <class F>
CongruenceVerdict fniter_check(const PowerSeries<F>& f, long n) {
  const F& K = f.field();
  if (n < 1) fail(Err::BadParameters, "n must be >= 1");
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "the identity iterates to itself");
  }
  if (!m.is_finite()) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  long q = m.value - 1;
  if (q < 1) fail(Err::NotMultiple, "need mult(f) >= 2");
  long w = 2 * q + 1;
  if (f.prec() < w) {
    fail(Err::InsufficientPrecision, "need W >= 2q+1 = " + std::to_string(w));
  }
  auto id = PowerSeries<F>::identity(K, f.prec());
  auto lhs = sub(f.iterate(n), id).at_prec(w);
  auto a = f.coeff(q + 1);
  auto scaled = sub(f, id).at_prec(w).scalar_mul(K.embed(BigInt(n)));
  std::vector<typename F::Element> tail(static_cast<std::size_t>(w) + 1, K.zero());
  tail[static_cast<std::size_t>(w)] =
      K.mul(K.embed(binomial(BigInt(n), 2) * (q + 1)), K.mul(a, a));
  auto rhs = add(scaled, PowerSeries<F>::make(K, std::move(tail), w, true));
  std::string claim = "iterate difference mod z^" + std::to_string(w + 1) +
                      " at n=" + std::to_string(n);
  return {claim, lhs.str(), rhs.str(), equal_mod(lhs, rhs, w)};
}

// resit(f^n) against resit(f)/n, away from characteristic 2 and for n prime
// to the characteristic.
template <class F>
CongruenceVerdict resit_iteration_check(const PowerSeries<F>& f, long n) {
  const F& K = f.field();
  if (n < 1) fail(Err::BadParameters, "n must be >= 1");
  if (K.characteristic() == 2) fail(Err::CharTwo, "resit is undefined in characteristic 2");
  if (K.characteristic() != 0 && n % static_cast<long>(K.characteristic()) == 0) {
    fail(Err::CharDividesN,
         "n = " + std::to_string(n) + " is divisible by the characteristic");
  }
  if (!K.eq(f.coeff(1), K.one())) {
    fail(Err::NotTangentToIdentity, "need f'(0) = 1");
  }
  auto lhs = iterative_residue(f.iterate(n));
  auto rhs = K.mul(iterative_residue(f), K.inv(K.embed(BigInt(n))));
  std::string claim = "resit division law at n=" + std::to_string(n);
  return {claim, K.str(lhs), K.str(rhs), K.eq(lhs, rhs)};
}

// ind(f^n) for odd n in characteristic 2: equals ind(f)+1 exactly when q is
// even and n = 3 mod 4, and ind(f) otherwise.
template <class F>
CongruenceVerdict index_iteration_char2_check(const PowerSeries<F>& f, long n) {
  const F& K = f.field();
  if (K.characteristic() != 2) {
    fail(Err::BadParameters, "this identity lives in characteristic 2");
  }
  if (n < 1 || n % 2 == 0) fail(Err::BadParameters, "n must be odd and >= 1");
  OrdResult m = f.mult();
  if (m.kind == OrdResult::Kind::Infinite) {
    fail(Err::IdentitySeries, "the identity iterates to itself");
  }
  if (!m.is_finite()) {
    fail(Err::InsufficientPrecision,
         "multiplicity unresolved: f = z mod z^" + std::to_string(m.value + 1));
  }
  long q = m.value - 1;
  if (q < 1) fail(Err::NotMultiple, "need mult(f) >= 2");
  auto base = laurent_index(f);
  auto lhs = laurent_index(f.iterate(n));
  bool bump = (q % 2 == 0) && (n % 4 == 3);
  auto rhs = bump ? K.add(base, K.one()) : base;
  std::string claim = std::string("index iteration law at n=") + std::to_string(n) +
                      (bump ? " (shifted branch)" : " (fixed branch)");
  return {claim, K.str(lhs), K.str(rhs), K.eq(lhs, rhs)};
}

}  // namespace resit
