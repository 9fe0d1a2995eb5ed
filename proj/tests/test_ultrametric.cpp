#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "resit/random.hpp"
#include "resit/ultrametric.hpp"

using namespace resit;

namespace {

using LElt = LaurentField::Element;
using LSeries = PowerSeries<LaurentField>;

LSeries LS(const LaurentField& L, std::vector<LElt> cs, long w) {
  return LSeries::make(L, std::move(cs), w, true);
}

// zeta (1 + a zeta^q + zeta^{q+1}) over K, the bound-verification family
LSeries bump(const LaurentField& L, long q, const LElt& a, long w) {
  std::vector<LElt> c(static_cast<std::size_t>(w) + 1, L.zero());
  c[1] = L.one();
  c[static_cast<std::size_t>(q) + 1] = a;
  c[static_cast<std::size_t>(q) + 2] = L.one();
  return LS(L, std::move(c), w);
}

}  // namespace

TEST_CASE("reduction of integral series") {
  LaurentField L(5, 16);
  PrimeField F5(5);
  auto t = L.uniformizer();

  auto a = reduce(LS(L, {L.zero(), t, L.one()}, 4));  // t z + z^2
  REQUIRE(equal(a, PowerSeries<PrimeField>::from_ints(F5, {0, 0, 1}, 4)));

  auto b = reduce(LS(L, {L.zero(), t, L.mul(t, t)}, 4));  // everything in the maximal ideal
  REQUIRE(b.ord().kind == OrdResult::Kind::Infinite);

  auto c = reduce(LS(L, {L.zero(), L.add(L.one(), t)}, 3));  // (1+t) z
  REQUIRE(equal(c, PowerSeries<PrimeField>::identity(F5, 3)));

  REQUIRE_THROWS_MATCHES(reduce(LS(L, {L.zero(), L.inv(t)}, 3)), Error,
                         ErrCode(Err::NotIntegral));
  REQUIRE_THROWS_MATCHES(reduce(LS(L, {L.zero(), L.make(0, {}, 0)}, 3)), Error,
                         ErrCode(Err::PrecisionLoss));
  // O(t^2) still reduces to 0: the constant digit is certified
  auto d = reduce(LS(L, {L.zero(), L.make(0, {}, 2)}, 3));
  REQUIRE(F5.test_zero(d.coeff(1)) == ZeroTest::Zero);
}

TEST_CASE("weierstrass degree") {
  LaurentField L(5, 16);
  auto t = L.uniformizer();
  REQUIRE(weierstrass_degree(LS(L, {L.zero(), t, L.one()}, 4)).value == 2);

  auto f = bump(L, 1, t, 8);
  auto id = LSeries::identity(L, 8);
  auto w = weierstrass_degree(sub(f, id));
  REQUIRE(w.is_finite());
  REQUIRE(w.value == 3);

  auto vanishing = weierstrass_degree(LS(L, {L.zero(), t, t}, 4));
  REQUIRE_FALSE(vanishing.is_finite());
}

TEST_CASE("newton polygon hulls") {
  LaurentField L(5, 16);
  auto t = L.uniformizer();

  auto np = newton_polygon(LS(L, {L.zero(), L.zero(), t, L.one()}, 5), 0);
  REQUIRE(np.lo == 2);
  REQUIRE(np.hi == 3);
  REQUIRE(np.vertices == std::vector<std::pair<long, std::int64_t>>{{2, 1}, {3, 0}});
  REQUIRE(np.segments.size() == 1);
  REQUIRE(np.segments[0].slope == BigRational(-1));
  REQUIRE(np.segments[0].length == 1);
  REQUIRE(np.min_positive_root_valuation() == BigRational(1));

  auto t2 = L.mul(t, t);
  auto np2 = newton_polygon(
      LS(L, {L.zero(), t2, L.zero(), L.zero(), L.zero(), L.one()}, 6), 0);
  REQUIRE(np2.segments.size() == 1);
  REQUIRE(np2.segments[0].slope == BigRational(-1, 2));
  REQUIRE(np2.segments[0].length == 4);
  REQUIRE(np2.min_positive_root_valuation() == BigRational(1, 2));

  // restricting the range drops the negative-slope segment
  auto np3 = newton_polygon(LS(L, {L.zero(), L.zero(), t, L.one()}, 5), 3);
  REQUIRE(np3.segments.empty());
  REQUIRE_FALSE(np3.min_positive_root_valuation().has_value());

  REQUIRE_THROWS_MATCHES(newton_polygon(LSeries::zero(L, 4), 0), Error, ErrCode(Err::EmptyRange));
  REQUIRE_THROWS_MATCHES(
      newton_polygon(LS(L, {L.zero(), L.make(0, {}, 3), L.one()}, 4), 0), Error,
      ErrCode(Err::PrecisionLoss));
}

TEST_CASE("newton polygon internal consistency on random series") {
  Rng rng(77);
  LaurentField L(5, 12);
  for (int rep = 0; rep < 500; ++rep) {
    long w = 3 + static_cast<long>(rng() % 10);
    std::vector<LElt> cs;
    for (long j = 0; j <= w; ++j) cs.push_back(random_element(L, rng));
    auto f = LS(L, std::move(cs), w);
    std::vector<std::pair<long, std::int64_t>> pts;
    for (long j = 0; j <= w; ++j) {
      auto c = f.coeff(j);
      if (L.test_zero(c) == ZeroTest::NonZero) pts.emplace_back(j, c.v);
    }
    if (pts.empty()) continue;
    auto np = newton_polygon(f, 0);
    long total = 0;
    for (std::size_t s = 0; s < np.segments.size(); ++s) {
      total += np.segments[s].length;
      if (s > 0) REQUIRE(np.segments[s - 1].slope < np.segments[s].slope);
    }
    REQUIRE(total == np.hi - np.lo);
    // every source point lies on or above every hull edge over its span
    for (std::size_t s = 0; s + 1 < np.vertices.size(); ++s) {
      auto [x1, y1] = np.vertices[s];
      auto [x2, y2] = np.vertices[s + 1];
      for (const auto& [x, y] : pts) {
        if (x < x1 || x > x2) continue;
        REQUIRE(BigInt(x2 - x1) * (y - y1) - BigInt(y2 - y1) * (x - x1) >= 0);
      }
    }
  }
}

TEST_CASE("series quotient") {
  LaurentField L(5, 16);
  auto t = L.uniformizer();
  auto f = bump(L, 1, t, 8);
  auto id = LSeries::identity(L, 8);

  auto a = series_quotient(LS(L, {L.zero(), L.zero(), L.zero(), L.one(), L.one()}, 6),
                           LS(L, {L.zero(), L.one()}, 6));
  REQUIRE(equal(a, LS(L, {L.zero(), L.zero(), L.one(), L.one()}, 5)));

  std::vector<LElt> z2{L.zero(), L.zero(), L.one()};
  auto b = series_quotient(sub(f, id), LS(L, z2, 8));
  REQUIRE(L.eq(b.coeff(0), t));
  REQUIRE(L.eq(b.coeff(1), L.one()));

  auto c = series_quotient(f, f);
  REQUIRE(equal(c, LSeries::constant(L, L.one(), 7)));

  REQUIRE_THROWS_MATCHES(series_quotient(LS(L, z2, 4), LS(L, {L.zero(), L.zero(), L.zero(), L.one()}, 4)),
                         Error, ErrCode(Err::NotDivisible));
  REQUIRE_THROWS_MATCHES(series_quotient(f, LSeries::zero(L, 8)), Error, ErrCode(Err::ZeroDivisor));
  REQUIRE_THROWS_MATCHES(series_quotient(f, LSeries::make(L, {L.zero()}, 4, false)), Error,
                         ErrCode(Err::ZeroDivisor));

  RationalField Q;
  auto r = series_quotient(PowerSeries<RationalField>::from_ints(Q, {0, 0, 0, 2, 2}, 6),
                           PowerSeries<RationalField>::from_ints(Q, {0, 2}, 6));
  REQUIRE(equal(r, PowerSeries<RationalField>::from_ints(Q, {0, 0, 1, 1}, 5)));
}

TEST_CASE("periodic bound pipeline for q=1 over F_5((t))") {
  LaurentField L(5, 32);
  auto f = bump(L, 1, L.uniformizer(), 44);
  auto rep = periodic_bound_report(f, 1);
  REQUIRE(rep.p == 5);
  REQUIRE(rep.q == 1);
  REQUIRE(rep.v_a == 1);
  REQUIRE(rep.v_resit.is_finite());
  REQUIRE(rep.v_resit.v == -2);
  REQUIRE(rep.bound == BigRational(3, 5));
  REQUIRE(rep.verdict == "bounded");

  const auto& l0 = rep.levels[0];
  REQUIRE(l0.i == 1);
  REQUIRE(l0.v_delta == 1);
  REQUIRE(l0.wideg.value == 3);
  REQUIRE(l0.wideg_equality);
  REQUIRE(l0.min_root_valuation == BigRational(1));

  const auto& l1 = rep.levels[1];
  REQUIRE(l1.i == 6);
  REQUIRE(l1.v_delta == 4);  // 6 v(a) + v(resit)
  REQUIRE(l1.ratio_bound == BigRational(3, 5));
  REQUIRE(l1.wideg.value == 10);  // i_1 - i_0 + p
  REQUIRE(l1.wideg_equality);
  REQUIRE(l1.min_root_valuation == BigRational(3, 5));

  // the full hull of the level-1 quotient
  auto id = LSeries::identity(L, 44);
  auto quot = series_quotient(sub(f.iterate(5), id), sub(f, id));
  auto np = newton_polygon(quot, 0);
  REQUIRE(np.vertices == std::vector<std::pair<long, std::int64_t>>{{5, 3}, {10, 0}, {40, 0}, {42, 2}});
  REQUIRE(np.max_root_valuation() == BigRational(3, 5));
}

TEST_CASE("periodic bound pipeline for q=2 over F_5((t))") {
  LaurentField L(5, 32);
  auto f = bump(L, 2, L.uniformizer(), 44);
  auto rep = periodic_bound_report(f, 1);
  REQUIRE(rep.q == 2);
  REQUIRE(rep.v_resit.v == -3);
  REQUIRE(rep.bound == BigRational(2, 5));
  REQUIRE(rep.levels[0].i == 2);
  REQUIRE(rep.levels[0].wideg.value == 4);
  REQUIRE(rep.levels[0].wideg_equality);
  REQUIRE(rep.levels[1].i == 12);
  REQUIRE(rep.levels[1].v_delta == 3);  // 6 v(a) + v(resit)
  REQUIRE(rep.levels[1].ratio_bound == BigRational(2, 5));
  REQUIRE(rep.levels[1].min_root_valuation == BigRational(2, 5));
}

TEST_CASE("delta valuation formula at p=3") {
  LaurentField L(3, 24);
  auto f = bump(L, 1, L.uniformizer(), 16);
  auto rep = periodic_bound_report(f, 2);
  REQUIRE(rep.bound == BigRational(1, 3));
  std::vector<long> want_i{1, 4, 13};
  std::vector<std::int64_t> want_v{1, 2, 5};  // (1+3+...+3^n) v(a) + (3^n-1)/2 v(resit)
  for (long n = 0; n <= 2; ++n) {
    REQUIRE(rep.levels[static_cast<std::size_t>(n)].i == want_i[static_cast<std::size_t>(n)]);
    REQUIRE(rep.levels[static_cast<std::size_t>(n)].v_delta == want_v[static_cast<std::size_t>(n)]);
    if (n >= 1) REQUIRE(rep.levels[static_cast<std::size_t>(n)].ratio_bound == *rep.bound);
  }
}

TEST_CASE("vacuous verdict when resit vanishes") {
  LaurentField L(5, 16);
  auto t = L.uniformizer();
  // a_1 = a_0^2 makes ind = 1 and resit = (q+1)/2 - 1 = 0 for q = 1... over F_5
  // (q+1)/2 = 1 requires q = 1: resit = 1 - a1/a0^2
  std::vector<LElt> c{L.zero(), L.one(), t, L.mul(t, t)};
  auto f = LS(L, c, 12);
  auto rep = periodic_bound_report(f, 1);
  REQUIRE(rep.verdict == "vacuous");
  REQUIRE(rep.v_resit.kind == ValuationResult::Kind::Infinite);
  REQUIRE_FALSE(rep.bound.has_value());
}

TEST_CASE("periodic bound guards") {
  LaurentField L(5, 16);
  auto t = L.uniformizer();
  std::vector<LElt> bad{L.zero(), L.one(), L.inv(t)};
  REQUIRE_THROWS_MATCHES(periodic_bound_report(LS(L, bad, 12), 1), Error,
                         ErrCode(Err::NotIntegral));
  std::vector<LElt> deep(8, L.zero());
  deep[1] = L.one();
  deep[6] = t;
  REQUIRE_THROWS_MATCHES(periodic_bound_report(LS(L, deep, 7), 1), Error,
                         ErrCode(Err::OutOfRange));  // q = 5 = p
  // resit known only to O(t^2): 1 - (1 + O(t^2)) has no certified valuation
  std::vector<LElt> fuzzy{L.zero(), L.one(), L.one(), L.make(0, {1}, 2)};
  REQUIRE_THROWS_MATCHES(periodic_bound_report(LS(L, fuzzy, 12), 1), Error,
                         ErrCode(Err::PrecisionLoss));
  LaurentField L2(2, 8);
  REQUIRE_THROWS_MATCHES(
      periodic_bound_report(LS(L2, {L2.zero(), L2.one(), L2.one()}, 8), 1), Error,
      ErrCode(Err::CharTwo));
}

TEST_CASE("reduction commutes with composition") {
  Rng rng(91);
  LaurentField L(3, 10);
  auto integral = [&](bool unit_allowed) {
    std::vector<std::uint64_t> digits{1 + rng() % 2, rng() % 3};
    std::int64_t v = static_cast<std::int64_t>(rng() % 3);
    if (!unit_allowed && v == 0) v = 1;
    return L.make(v, digits, LaurentField::kExact);
  };
  for (int rep = 0; rep < 100; ++rep) {
    long w = 4 + static_cast<long>(rng() % 5);
    std::vector<LElt> fc, gc;
    fc.push_back(rng() % 2 ? L.zero() : integral(true));
    gc.push_back(L.zero());
    for (long j = 1; j <= w; ++j) {
      fc.push_back(rng() % 3 ? integral(true) : L.zero());
      gc.push_back(rng() % 3 ? integral(true) : L.zero());
    }
    auto f = LS(L, fc, w);
    auto g = LS(L, gc, w);
    REQUIRE(equal(reduce(compose(f, g)), compose(reduce(f), reduce(g))));
  }
}
