#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrays/angle.hpp"
#include "mrays/combinat.hpp"
#include "oracles.hpp"

using namespace mrays;

namespace {

oracle::Q to_q(const Angle& a) { return oracle::Q(a.numerator()) / oracle::Q(a.denominator()); }

}  // namespace

TEST_CASE("parse decimal and binary forms") {
  CHECK(parse_angle("9/56") == Angle(9, 56));
  CHECK(parse_angle("0.001:010") == Angle(9, 56));
  CHECK(parse_angle("1/3") == parse_angle("0.:01"));
  CHECK(parse_angle(" 18/112 ") == Angle(9, 56));
  CHECK(parse_angle("0") == Angle::zero());

  Angle one = parse_angle("0.:1");
  CHECK(one.is_one());
  CHECK(one == Angle::one());
  CHECK(one != Angle::zero());
  CHECK(parse_angle("7/7").is_one());
  CHECK(parse_angle("1").is_one());
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "1/0", "3/2", "a/b", "1/", "/3", "0.1", "0.12:1", "0.1:", "-1/3", "0.:2"})
    CHECK_THROWS_AS(parse_angle(bad), DomainError);
  CHECK_THROWS_AS(Angle(1, 0), DomainError);
  CHECK_THROWS_AS(Angle(5, 4), DomainError);
}

TEST_CASE("printing round-trips") {
  for (const Angle& a : {Angle(9, 56), Angle(1, 3), Angle::zero(), Angle::one(), Angle(25, 56), Angle(1, 2)}) {
    CHECK(parse_angle(a.to_string()) == a);
    CHECK(parse_angle(a.to_binary()) == a);
  }
  CHECK(Angle(9, 56).to_binary() == "0.001:010");
  CHECK(Angle(1, 3).to_binary() == "0.:01");
  CHECK(Angle::one().to_string() == "1");
}

TEST_CASE("doubling") {
  CHECK(double_angle(Angle(1, 3)) == Angle(2, 3));
  CHECK(double_angle(Angle(2, 3)) == Angle(1, 3));
  CHECK(double_angle(Angle(9, 56)) == Angle(9, 28));
  CHECK(double_angle(Angle::one()).is_one());
  CHECK(double_angle(Angle(1, 2)) == Angle::zero());
}

TEST_CASE("orbit types") {
  auto t = orbit_type(Angle(9, 56));
  CHECK(t.preperiod == 3);
  CHECK(t.period == 3);
  t = orbit_type(Angle(1, 2));
  CHECK(t.preperiod == 1);
  CHECK(t.period == 1);
  t = orbit_type(Angle(1, 5));
  CHECK(t.preperiod == 0);
  CHECK(t.period == 4);
  CHECK(orbit_type(Angle::one()).period == 1);
}

TEST_CASE("orbit type agrees with iteration for every denominator up to 512") {
  for (long long q = 1; q <= 512; ++q) {
    for (long long p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Angle a(p, q);
      auto mine = orbit_type(a);
      auto ref = oracle::orbit_type(to_q(a));
      REQUIRE(mine.preperiod == ref.preperiod);
      REQUIRE(mine.period == ref.period);

      // Minimality and the defining identity.
      auto iterate = [](Angle x, unsigned k) {
        for (unsigned i = 0; i < k; ++i) x = x.doubled();
        return x;
      };
      CHECK(iterate(a, mine.preperiod + mine.period) == iterate(a, mine.preperiod));
      if (mine.preperiod > 0)
        CHECK(iterate(a, mine.preperiod - 1 + mine.period) != iterate(a, mine.preperiod - 1));
      CHECK((mine.preperiod == 0) == (q % 2 == 1));
    }
  }
}

TEST_CASE("huge denominators stay exact") {
  BigInt m = (BigInt(1) << 100) - 1;
  Angle a(BigInt(5), m);
  auto t = orbit_type(a);
  CHECK(t.preperiod == 0);
  CHECK(t.period == 100);
  Angle b(BigInt(3), m << 7);
  CHECK(orbit_type(b).preperiod == 7);
}

TEST_CASE("enumerate exact period") {
  CHECK(enumerate_exact_period(1) == std::vector<Angle>{Angle::zero(), Angle::one()});
  CHECK(enumerate_exact_period(2) == std::vector<Angle>{Angle(1, 3), Angle(2, 3)});
  CHECK(enumerate_exact_period(3) ==
        std::vector<Angle>{Angle(1, 7), Angle(2, 7), Angle(3, 7), Angle(4, 7), Angle(5, 7), Angle(6, 7)});

  for (unsigned n = 1; n <= 12; ++n) {
    auto mine = enumerate_exact_period(n);
    CHECK(mine.size() == 2 * count_parabolic(n));
    CHECK(std::is_sorted(mine.begin(), mine.end()));
    auto ref = oracle::exact_period(n);
    REQUIRE(mine.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(to_q(mine[i]) == ref[i]);
  }
  for (unsigned n = 13; n <= 16; ++n) CHECK(enumerate_exact_period(n).size() == 2 * count_parabolic(n));
}

TEST_CASE("doubling is two-to-one onto each period set") {
  for (unsigned n = 2; n <= 10; ++n) {
    auto set = enumerate_exact_period(n);
    std::map<Angle, int> preimages;
    for (const Angle& a : set) ++preimages[a.doubled()];
    // Each angle has two preimages: one periodic in the set, the other one
    // step off the cycle.
    for (const Angle& a : set) {
      CHECK(preimages[a] == 1);
      Angle lo = a.half_low(), hi = a.half_high();
      CHECK(lo.doubled() == a);
      CHECK(hi.doubled() == a);
      bool lo_in = std::binary_search(set.begin(), set.end(), lo);
      bool hi_in = std::binary_search(set.begin(), set.end(), hi);
      CHECK(lo_in != hi_in);
      const Angle& off = lo_in ? hi : lo;
      CHECK(orbit_type(off).preperiod == 1);
      CHECK(orbit_type(off).period == n);
    }
  }
}

TEST_CASE("enumerate exact type") {
  auto v = enumerate_exact_type(3, 3);
  CHECK(std::find(v.begin(), v.end(), Angle(9, 56)) != v.end());
  for (const Angle& a : v) {
    CHECK(orbit_type(a).preperiod == 3);
    CHECK(orbit_type(a).period == 3);
  }
  CHECK(enumerate_exact_type(1, 1) == std::vector<Angle>{Angle(1, 2)});
}
