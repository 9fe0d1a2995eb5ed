#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "resit/random.hpp"
#include "resit/verify.hpp"

using namespace resit;

namespace {

template <class F>
PowerSeries<F> S(const F& f, std::vector<long> ints, long w, bool exact = true) {
  return PowerSeries<F>::from_ints(f, ints, w, exact);
}

// Full random instantiation of the generic series: every tail slot filled,
// x0, x2, x3 forced nonzero.
std::vector<std::uint64_t> random_instantiation(std::uint64_t p, long q, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> any(0, p - 1);
  std::uniform_int_distribution<std::uint64_t> unit(1, p - 1);
  std::size_t n = static_cast<std::size_t>(q * (static_cast<long>(p) - 1) + 3);
  std::vector<std::uint64_t> vals(n);
  for (auto& v : vals) v = any(rng);
  vals[0] = unit(rng);
  vals[2] = unit(rng);
  vals[3] = unit(rng);
  return vals;
}

}  // namespace

TEST_CASE("case 1 recursion rows") {
  BivariateRing B3(3);
  auto rows = case1_recursions(3, 1, 3);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].m == 1);
  REQUIRE(B3.eq(rows[0].alpha, B3.x0()));
  REQUIRE(B3.eq(rows[0].beta, B3.x1()));
  REQUIRE(B3.eq(rows[0].gamma, B3.zero()));

  // at the top row: alpha_3 = 0, beta_3 = x0^2 (x0^2 - x1),
  // gamma_3 = -x0 (x0^2 - x1)^2
  auto core = B3.sub(B3.pow(B3.x0(), 2), B3.x1());
  REQUIRE(B3.eq(rows[2].alpha, B3.zero()));
  REQUIRE(B3.eq(rows[2].beta, B3.mul(B3.pow(B3.x0(), 2), core)));
  REQUIRE(B3.eq(rows[2].gamma, B3.neg(B3.mul(B3.x0(), B3.mul(core, core)))));

  auto deep = case1_recursions(5, 3, 5);
  BivariateRing B5(5);
  REQUIRE(B5.eq(deep.back().alpha, B5.zero()));

  REQUIRE_THROWS_MATCHES(case1_recursions(3, 1, 4), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case1_recursions(4, 1, 2), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case1_recursions(2, 1, 2), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case1_recursions(3, 0, 2), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("closed forms solve the case 1 recursions") {
  // alpha_2 = x0^2 (q+1) telescoped once
  BivariateRing B5(5);
  auto two = case1_closed_forms(5, 3, 2);
  REQUIRE(B5.eq(two.alpha, B5.mul(B5.pow(B5.x0(), 2), B5.embed(BigInt(4)))));
  REQUIRE(two.gamma.has_value());

  // gamma has no closed form at p = 3
  auto three = case1_closed_forms(3, 1, 3);
  REQUIRE_FALSE(three.gamma.has_value());

  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    for (long q = 1; q < static_cast<long>(p); ++q) {
      for (const auto& v : closed_form_check(p, q)) {
        INFO(v.claim << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
}

TEST_CASE("row p congruences, case 1") {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    for (long q = 1; q < static_cast<long>(p); ++q) {
      for (const auto& v : main_lemma_case1_check(p, q)) {
        INFO(v.claim << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
  REQUIRE_THROWS_MATCHES(main_lemma_case1_check(5, 5), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("case 2 recursion rows and gate") {
  BivariateRing B(3);
  auto rows = case2_recursions(3, 4, 1, 3);
  REQUIRE(B.eq(rows[0].alpha, B.x0()));
  REQUIRE(B.eq(rows[2].alpha, B.zero()));
  REQUIRE(B.eq(rows[2].beta, B.neg(B.mul(B.pow(B.x0(), 2), B.x1()))));
  REQUIRE(B.eq(rows[2].gamma, B.neg(B.mul(B.x0(), B.mul(B.x1(), B.x1())))));

  REQUIRE_THROWS_MATCHES(case2_recursions(3, 4, 2, 3), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case2_recursions(3, 6, 3, 3), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case2_recursions(3, 2, 2, 3), Error, ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(case2_recursions(3, 10, 7, 3), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("row p congruences, case 2") {
  for (std::uint64_t p : {3ull, 5ull}) {
    for (long q = static_cast<long>(p) + 1; q <= 3 * static_cast<long>(p); ++q) {
      if (q % static_cast<long>(p) == 0) continue;
      long l = q % static_cast<long>(p);
      for (const auto& v : main_lemma_case2_check(p, q, l)) {
        INFO(v.claim << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
  // the 2l+1 <= q branch, with l beyond p-1
  const std::vector<std::array<long, 3>> wide = {{3, 10, 4}, {3, 13, 4}, {5, 17, 7}};
  for (const auto& [p, q, l] : wide) {
    for (const auto& v : main_lemma_case2_check(static_cast<std::uint64_t>(p), q, l)) {
      INFO(v.claim << ": " << v.computed << " vs " << v.expected);
      REQUIRE(v.equal);
    }
  }
}

TEST_CASE("delta expansion over the bivariate ring") {
  for (long q : {1L, 2L}) {
    for (const auto& v : delta_expansion_check(3, q, q, 3)) {
      INFO(v.claim << ": " << v.computed << " vs " << v.expected);
      REQUIRE(v.equal);
    }
  }
  for (const auto& v : delta_expansion_check(3, 4, 1, 3)) {
    INFO(v.claim << ": " << v.computed << " vs " << v.expected);
    REQUIRE(v.equal);
  }
  REQUIRE_THROWS_MATCHES(delta_expansion_check(3, 3, 3, 3), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("generic iterate worked examples") {
  auto v1 = generic_iterate_check(3, 1, 1, {1, 0});
  REQUIRE(v1.equal);
  REQUIRE(v1.computed == "beta=1, gamma=2, stray=none");

  auto v2 = generic_iterate_check(3, 4, 1, {1, 1});
  REQUIRE(v2.equal);
  REQUIRE(v2.computed == "beta=2, gamma=2, stray=none");

  REQUIRE_THROWS_MATCHES(generic_iterate_check(3, 1, 1, {0, 1}), Error,
                         ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(generic_iterate_check(3, 3, 3, {1, 1}), Error,
                         ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(generic_iterate_check(3, 1, 1, {1}), Error,
                         ErrCode(Err::BadParameters));
}

TEST_CASE("raw iterate path agrees with the series engine") {
  Rng rng(71);
  for (std::uint64_t p : {3ull, 5ull}) {
    PrimeField K(p);
    std::uniform_int_distribution<std::uint64_t> any(0, p - 1);
    for (int rep = 0; rep < 20; ++rep) {
      long w = 12 + static_cast<long>(rep % 5);
      std::vector<std::uint64_t> c(static_cast<std::size_t>(w) + 1, 0);
      for (long j = 1; j <= w; ++j) c[static_cast<std::size_t>(j)] = any(rng);
      c[1] = 1;
      long n = 2 + rep % 4;
      auto fast = detail::iterate_mod_p(c, p, n, w);
      auto slow = PowerSeries<PrimeField>::make(K, c, w, false).iterate(n);
      for (long j = 0; j <= w; ++j) {
        REQUIRE(fast[static_cast<std::size_t>(j)] == slow.coeff(j));
      }
    }
  }
}

TEST_CASE("generic iterate over the case grids") {
  Rng rng(72);
  // case 1: l = q
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    for (long q = 1; q < static_cast<long>(p); ++q) {
      for (int rep = 0; rep < 200; ++rep) {
        auto v = generic_iterate_check(p, q, q, random_instantiation(p, q, rng));
        INFO(v.claim << " rep " << rep << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
  // case 2 base grid and the wide-l pairs
  std::vector<std::array<long, 3>> grid;
  for (long p : {3L, 5L}) {
    for (long q = p + 1; q <= 3 * p; ++q) {
      if (q % p != 0) grid.push_back({p, q, q % p});
    }
  }
  grid.push_back({3, 10, 4});
  grid.push_back({3, 13, 4});
  grid.push_back({5, 17, 7});
  for (const auto& [p, q, l] : grid) {
    for (int rep = 0; rep < 200; ++rep) {
      auto v = generic_iterate_check(static_cast<std::uint64_t>(p), q, l,
                                     random_instantiation(static_cast<std::uint64_t>(p), q, rng));
      INFO(v.claim << " rep " << rep << ": " << v.computed << " vs " << v.expected);
      REQUIRE(v.equal);
    }
  }
}

TEST_CASE("wilson products") {
  auto [p1, s1] = wilson_products(5, 1, 0);
  REQUIRE(p1 == 4);
  REQUIRE(s1 == 0);
  auto [p2, s2] = wilson_products(7, 3, 2);
  REQUIRE(p2 == 6);
  REQUIRE(s2 == 0);
  auto [p3, s3] = wilson_products(3, 2, 1);
  REQUIRE(p3 == 2);
  REQUIRE(s3 == 0);

  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (std::uint64_t a = 1; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        auto [prod, sum] = wilson_products(p, a, b);
        REQUIRE(prod == p - 1);
        REQUIRE(sum == 0);
      }
    }
  }
  REQUIRE_THROWS_MATCHES(wilson_products(5, 0, 2), Error, ErrCode(Err::ZeroSlope));
  REQUIRE_THROWS_MATCHES(wilson_products(9, 1, 2), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("iterate difference law") {
  RationalField Q;
  auto f = S(Q, {0, 1, 1}, 6);
  auto v = fniter_check(f, 3);
  REQUIRE(v.equal);
  // f^3 - z = 3z^2 + 6z^3 mod z^4
  auto lhs = sub(f.iterate(3), PowerSeries<RationalField>::identity(Q, 6));
  REQUIRE(Q.eq(lhs.coeff(2), Q.embed(BigInt(3))));
  REQUIRE(Q.eq(lhs.coeff(3), Q.embed(BigInt(6))));

  PrimeField F3(3);
  auto g = S(F3, {0, 1, 1}, 5);
  auto vg = fniter_check(g, 2);
  REQUIRE(vg.equal);
  auto glhs = sub(g.iterate(2), PowerSeries<PrimeField>::identity(F3, 5));
  REQUIRE(glhs.coeff(2) == 2);
  REQUIRE(glhs.coeff(3) == 2);

  REQUIRE(fniter_check(f, 1).equal);
  REQUIRE_THROWS_MATCHES(fniter_check(S(Q, {0, 1}, 4), 2), Error, ErrCode(Err::IdentitySeries));
  REQUIRE_THROWS_MATCHES(fniter_check(S(Q, {0, 2, 1}, 4), 2), Error, ErrCode(Err::NotMultiple));
  REQUIRE_THROWS_MATCHES(fniter_check(S(Q, {0, 1, 0, 1}, 4, false), 2), Error,
                         ErrCode(Err::InsufficientPrecision));
}

TEST_CASE("iterate difference law on random series") {
  Rng rng(73);
  RationalField Q;
  PrimeField F2(2), F3(3), F5(5);
  for (int rep = 0; rep < 100; ++rep) {
    long q = 1 + rep % 3;
    long n = 1 + rep % 6;
    REQUIRE(fniter_check(random_wild(Q, 2 * q + 3, q, rng), n).equal);
    REQUIRE(fniter_check(random_wild(F2, 2 * q + 3, q, rng), n).equal);
    REQUIRE(fniter_check(random_wild(F3, 2 * q + 3, q, rng), n).equal);
    REQUIRE(fniter_check(random_wild(F5, 2 * q + 3, q, rng), n).equal);
  }
}

TEST_CASE("resit division law") {
  PrimeField F5(5);
  auto f = S(F5, {0, 1, 1}, 5);
  auto v = resit_iteration_check(f, 2);
  REQUIRE(v.equal);
  REQUIRE(iterative_residue(f.iterate(2)) == 3);

  REQUIRE(resit_iteration_check(f, 1).equal);
  REQUIRE_THROWS_MATCHES(resit_iteration_check(f, 5), Error, ErrCode(Err::CharDividesN));
  REQUIRE_THROWS_MATCHES(resit_iteration_check(S(F5, {0, 2, 1}, 5), 2), Error,
                         ErrCode(Err::NotTangentToIdentity));
  PrimeField F2(2);
  REQUIRE_THROWS_MATCHES(resit_iteration_check(S(F2, {0, 1, 1}, 5), 3), Error,
                         ErrCode(Err::CharTwo));

  RationalField Q;
  for (long n = 1; n <= 4; ++n) {
    auto zero_case = resit_iteration_check(S(Q, {0, 1, 1, 1}, 5), n);
    REQUIRE(zero_case.equal);
    REQUIRE(Q.eq(iterative_residue(S(Q, {0, 1, 1, 1}, 5)), Q.zero()));
  }
}

TEST_CASE("resit division law on random series") {
  Rng rng(74);
  for (std::uint64_t p : {3ull, 5ull, 7ull}) {
    PrimeField K(p);
    for (long n = 2; n < static_cast<long>(p); ++n) {
      for (int rep = 0; rep < 50; ++rep) {
        long q = 1 + rep % 3;
        auto f = random_wild(K, 2 * q + 4, q, rng);
        auto v = resit_iteration_check(f, n);
        INFO(v.claim << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
}

TEST_CASE("index iteration in characteristic 2") {
  PrimeField F2(2);
  auto f = S(F2, {0, 1, 0, 1}, 8);  // q = 2
  auto bumped = index_iteration_char2_check(f, 3);
  REQUIRE(bumped.equal);
  REQUIRE(laurent_index(f) == 0);
  REQUIRE(laurent_index(f.iterate(3)) == 1);
  REQUIRE(index_iteration_char2_check(f, 5).equal);

  auto g = S(F2, {0, 1, 1}, 8);  // q = 1
  REQUIRE(index_iteration_char2_check(g, 3).equal);
  REQUIRE(laurent_index(g.iterate(3)) == laurent_index(g));

  PrimeField F3(3);
  REQUIRE_THROWS_MATCHES(index_iteration_char2_check(S(F3, {0, 1, 1}, 5), 3), Error,
                         ErrCode(Err::BadParameters));
  REQUIRE_THROWS_MATCHES(index_iteration_char2_check(f, 2), Error, ErrCode(Err::BadParameters));

  Rng rng(75);
  for (long q = 1; q <= 4; ++q) {
    for (long n : {3L, 5L, 7L, 9L}) {
      for (int rep = 0; rep < 10; ++rep) {
        auto h = random_wild(F2, 2 * q + 6, q, rng);
        auto v = index_iteration_char2_check(h, n);
        INFO(v.claim << ": " << v.computed << " vs " << v.expected);
        REQUIRE(v.equal);
      }
    }
  }
}

TEST_CASE("characteristic zero index iteration identity") {
  Rng rng(76);
  RationalField Q;
  for (long q = 1; q <= 4; ++q) {
    for (int rep = 0; rep < 50; ++rep) {
      auto f = random_wild(Q, 2 * q + 1, q, rng);
      auto base = closed_index(f);
      for (long n = 1; n <= 6; ++n) {
        auto lhs = closed_index(f.iterate(n));
        auto inner = Q.add(base, Q.mul(embed_ratio(Q, binomial(BigInt(n), 2) * (q + 1), BigInt(n)),
                                       Q.one()));
        auto rhs = Q.mul(Q.inv(Q.embed(BigInt(n))), inner);
        REQUIRE(Q.eq(lhs, rhs));
      }
    }
  }
}
