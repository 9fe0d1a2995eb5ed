#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "resit/index.hpp"
#include "resit/random.hpp"

using namespace resit;

namespace {

template <class F>
PowerSeries<F> S(const F& f, const std::vector<long>& ints, long w, bool exact = true) {
  return PowerSeries<F>::from_ints(f, ints, w, exact);
}

}  // namespace

TEST_CASE("multi-index enumeration") {
  auto one = enumerate_multi_indices(1);
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].iota == std::vector<long>{0, 1});

  auto two = enumerate_multi_indices(2);
  REQUIRE(two.size() == 2);
  for (const auto& mi : two) {
    REQUIRE(mi.weight() == 2);
    REQUIRE(mi.degree() == 2);
  }

  REQUIRE(enumerate_multi_indices(4).size() == 5);   // p(4)
  REQUIRE(enumerate_multi_indices(10).size() == 42); // p(10)
  for (const auto& mi : enumerate_multi_indices(10)) {
    REQUIRE(mi.weight() == 10);
    REQUIRE(mi.degree() == 10);
  }
  REQUIRE_THROWS_MATCHES(enumerate_multi_indices(0), Error, ErrCode(Err::BadParameters));
}

TEST_CASE("laurent index basics") {
  RationalField Q;
  REQUIRE(Q.eq(laurent_index(S(Q, {0, 2}, 3)), Q.embed(-1)));         // 1/(1-2)
  REQUIRE(Q.eq(laurent_index(S(Q, {0, 2}, 1)), Q.embed(-1)));         // minimal W for mult 1
  REQUIRE(Q.eq(laurent_index(S(Q, {0, 1, 0, 1}, 5)), Q.zero()));      // z(1+z^2)
  REQUIRE(Q.eq(laurent_index(S(Q, {0, 1, 1}, 3)), Q.zero()));         // z(1+z^q), constant w
  REQUIRE(Q.eq(laurent_index(S(Q, {0, 1, 1, 3}, 3)), Q.embed(3)));    // a_2/a_1^2 = 3

  REQUIRE_THROWS_MATCHES(laurent_index(PowerSeries<RationalField>::identity(Q, 4)), Error,
                         ErrCode(Err::IdentitySeries));
  REQUIRE_THROWS_MATCHES(laurent_index(S(Q, {0, 1}, 4, false)), Error,
                         ErrCode(Err::InsufficientPrecision));
  // mult 3 resolved at W=4 but the index needs W >= 5
  REQUIRE_THROWS_MATCHES(laurent_index(S(Q, {0, 1, 0, 1, 2}, 4, false)), Error,
                         ErrCode(Err::InsufficientPrecision));
}

TEST_CASE("index of z(1+z^q) vanishes for every q") {
  PrimeField F7(7);
  for (long q = 1; q <= 5; ++q) {
    std::vector<long> c(static_cast<std::size_t>(q) + 2, 0);
    c[1] = 1;
    c[static_cast<std::size_t>(q) + 1] = 1;
    auto f = S(F7, c, 2 * q + 1);
    REQUIRE(F7.eq(laurent_index(f), F7.zero()));
    REQUIRE(F7.eq(closed_index(f), F7.zero()));
  }
}

TEST_CASE("closed index examples") {
  RationalField Q;
  REQUIRE(Q.eq(closed_index(S(Q, {0, 1, 1, 3}, 3)), Q.embed(3)));

  PrimeField F5(5);
  // z(1 + z^2 + z^3 + 2 z^4), q = 2
  REQUIRE(F5.eq(closed_index(S(F5, {0, 1, 0, 1, 1, 2}, 5)), 1));
  REQUIRE(F5.eq(laurent_index(S(F5, {0, 1, 0, 1, 1, 2}, 5)), 1));

  REQUIRE_THROWS_MATCHES(closed_index(S(Q, {0, 2}, 3)), Error, ErrCode(Err::NotMultiple));
  REQUIRE_THROWS_MATCHES(closed_index(S(Q, {0, 1, 0, 1, 2}, 4, false)), Error,
                         ErrCode(Err::InsufficientPrecision));
}

TEST_CASE("closed and laurent index agree on random series") {
  Rng rng(20240801);
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    PrimeField F(p);
    for (long q = 1; q < static_cast<long>(p); ++q) {
      for (int trial = 0; trial < 60; ++trial) {
        auto f = random_wild(F, 2 * q + 1, q, rng);
        REQUIRE(F.eq(closed_index(f), laurent_index(f)));
      }
    }
  }
  RationalField Q;
  for (long q = 1; q <= 6; ++q) {
    for (int trial = 0; trial < 20; ++trial) {
      auto f = random_wild(Q, 2 * q + 1, q, rng);
      REQUIRE(Q.eq(closed_index(f), laurent_index(f)));
    }
  }
}

TEST_CASE("index is a conjugacy invariant") {
  PrimeField F7(7);
  ExtensionField F9(3, {2, 2, 1});
  RationalField Q;
  Rng rng(6174);
  auto run = [&](const auto& fld, long w, int trials) {
    for (int i = 0; i < trials; ++i) {
      long q = 1 + static_cast<long>(rng() % 2);
      auto f = random_wild(fld, w, q, rng);
      auto phi = random_invertible(fld, w, rng);
      auto g = conjugate(phi, f);
      REQUIRE(fld.eq(laurent_index(g), laurent_index(f)));
    }
  };
  run(F7, 9, 60);
  run(F9, 9, 40);
  run(Q, 7, 25);
}

TEST_CASE("shift and scaling laws of the closed formula") {
  // P_q(a_q,...,a_{2q} + lambda a_q^2) = P_q(a_q,...,a_{2q}) + lambda
  // P_q(lambda a_q, ..., lambda a_{2q}) = lambda^{-1} P_q(a_q, ..., a_{2q})
  PrimeField F11(11);
  RationalField Q;
  Rng rng(271828);
  auto run = [&](const auto& fld, int trials) {
    using Fld = std::decay_t<decltype(fld)>;
    for (int i = 0; i < trials; ++i) {
      long q = 1 + static_cast<long>(rng() % 3);
      auto f = random_wild(fld, 2 * q + 1, q, rng);
      auto lambda = random_nonzero(fld, rng);
      auto base = closed_index(f);

      auto c1 = f.coeffs();
      auto aq = c1[static_cast<std::size_t>(q) + 1];
      c1[static_cast<std::size_t>(2 * q) + 1] =
          fld.add(c1[static_cast<std::size_t>(2 * q) + 1], fld.mul(lambda, fld.mul(aq, aq)));
      auto shifted = PowerSeries<Fld>::make(fld, c1, f.prec(), false);
      REQUIRE(fld.eq(closed_index(shifted), fld.add(base, lambda)));

      auto c2 = f.coeffs();
      for (long j = q + 1; j <= 2 * q + 1; ++j) {
        c2[static_cast<std::size_t>(j)] = fld.mul(lambda, c2[static_cast<std::size_t>(j)]);
      }
      auto scaled = PowerSeries<Fld>::make(fld, c2, f.prec(), false);
      REQUIRE(fld.eq(closed_index(scaled), fld.div(base, lambda)));
    }
  };
  run(F11, 100);
  run(Q, 40);
}

TEST_CASE("iterative residue") {
  RationalField Q;
  // f = z(1 + z + a z^2): resit = 1 - a
  for (long a = -3; a <= 3; ++a) {
    auto f = S(Q, {0, 1, 1, a}, 3);
    REQUIRE(Q.eq(iterative_residue(f), Q.embed(1 - a)));
  }

  // f = zeta(1 + zeta^{p+1} + zeta^{p+2} + zeta^{2(p+1)}) over F_p: resit = 1
  for (std::uint64_t p : {3ull, 5ull, 7ull}) {
    PrimeField F(p);
    long q = static_cast<long>(p) + 1;
    std::vector<long> c(static_cast<std::size_t>(2 * q) + 2, 0);
    c[1] = 1;
    c[static_cast<std::size_t>(q) + 1] = 1;
    c[static_cast<std::size_t>(q) + 2] = 1;
    c[static_cast<std::size_t>(2 * q) + 1] = 1;
    auto P = S(F, c, 2 * q + 1);
    REQUIRE(F.eq(iterative_residue(P), F.one()));
  }

  // f = zeta + zeta^p over F_p: resit = ind = 0
  for (std::uint64_t p : {3ull, 5ull, 7ull}) {
    PrimeField F(p);
    std::vector<long> c(p + 1, 0);
    c[1] = 1;
    c[p] = 1;
    auto P = S(F, c, 2 * static_cast<long>(p) - 1);
    REQUIRE(F.eq(iterative_residue(P), F.zero()));
    REQUIRE(F.eq(laurent_index(P), F.zero()));
  }

  PrimeField F2(2);
  REQUIRE_THROWS_MATCHES(iterative_residue(S(F2, {0, 1, 1}, 3)), Error, ErrCode(Err::CharTwo));
}

TEST_CASE("genericity identity links resit to the closed sum") {
  // a_q^{q+1} resit(f) = (q+1)/2 a_q^{q+1} + sum over admissible iota of
  // (-1)^{q-iota_0} binom(q-iota_0; iota) prod a_{q+j}^{iota_j}
  PrimeField F7(7);
  RationalField Q;
  Rng rng(141421);
  auto run = [&](const auto& fld, int trials) {
    for (int i = 0; i < trials; ++i) {
      long q = 1 + static_cast<long>(rng() % 3);
      auto f = random_wild(fld, 2 * q + 1, q, rng);
      auto a = [&](long j) { return f.coeff(j + 1); };
      auto sum = fld.zero();
      for (const MultiIndex& mi : enumerate_multi_indices(q)) {
        long n = q - mi.iota[0];
        BigInt count = multinomial(n, std::vector<long>(mi.iota.begin() + 1, mi.iota.end()));
        if (n % 2 != 0) count = -count;
        auto term = fld.embed(count);
        for (long j = 0; j <= q; ++j) {
          if (mi.iota[static_cast<std::size_t>(j)] == 0) continue;
          term = fld.mul(term,
                         field_pow(fld, a(q + j), BigInt(mi.iota[static_cast<std::size_t>(j)])));
        }
        sum = fld.add(sum, term);
      }
      auto aq_pow = field_pow(fld, a(q), BigInt(q + 1));
      auto lhs = fld.mul(aq_pow, iterative_residue(f));
      auto rhs = fld.add(fld.mul(embed_ratio(fld, q + 1, 2), aq_pow), sum);
      REQUIRE(fld.eq(lhs, rhs));
    }
  };
  run(F7, 80);
  run(Q, 30);
}

TEST_CASE("index report cross-checks the algorithms") {
  RationalField Q;
  auto rep = index_report(S(Q, {0, 1, 1, 3}, 3));
  REQUIRE(rep.mult == 2);
  REQUIRE(rep.q == 1);
  REQUIRE(Q.eq(rep.ind, Q.embed(3)));
  REQUIRE(rep.resit.has_value());
  REQUIRE(Q.eq(*rep.resit, Q.embed(-2)));
  REQUIRE(rep.algorithm == "both-agree");

  auto rep1 = index_report(S(Q, {0, 2}, 3));
  REQUIRE(rep1.mult == 1);
  REQUIRE(rep1.algorithm == "laurent");

  PrimeField F2(2);
  auto rep2 = index_report(S(F2, {0, 1, 1, 1}, 3));
  REQUIRE_FALSE(rep2.resit.has_value());
}
