#include <doctest.h>

#include <random>

#include "qks/scalar.hpp"
#include "test_rng.hpp"

using namespace qks;
using qks::testing::random_cyclotomic;

TEST_SUITE("scalar") {

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  for (long n = 1; n <= 30; ++n) CHECK(cyclotomic_polynomial(n).size() == static_cast<std::size_t>(euler_phi(n) + 1));
}

TEST_CASE("basic field arithmetic") {
  auto z4 = Cyclotomic::root_of_unity(1, 4);
  CHECK(z4 * z4 == Cyclotomic(-1));
  auto z3 = Cyclotomic::root_of_unity(1, 3);
  CHECK(z3 + z3 * z3 == Cyclotomic(-1));
  auto z8 = Cyclotomic::root_of_unity(1, 8);
  CHECK((Cyclotomic(1, 2) * z8) / z8 == Cyclotomic(1, 2));
  CHECK_THROWS_AS(z8 / Cyclotomic(0), division_by_zero);
  CHECK_THROWS_AS(Cyclotomic(0).inverse(), division_by_zero);
}

TEST_CASE("roots of unity") {
  CHECK(Cyclotomic::root_of_unity(1, 1) == Cyclotomic(1));
  CHECK(Cyclotomic::root_of_unity(1, 2) == Cyclotomic(-1));
  auto i = Cyclotomic::root_of_unity(2, 8).minimize_conductor();
  CHECK(i.conductor() == 4);
  CHECK(i * i == Cyclotomic(-1));
  CHECK(i == Cyclotomic::root_of_unity(1, 4));
  for (long n = 1; n <= 12; ++n) {
    for (long j = 0; j < n; ++j) {
      auto z = Cyclotomic::root_of_unity(j, n);
      long expected = n / gcd_long(j, n);
      long order = 0;
      Cyclotomic p(1);
      for (long k = 1; k <= n; ++k) {
        p *= z;
        if (p.is_one()) {
          order = k;
          break;
        }
      }
      CHECK(order == expected);
    }
  }
}

TEST_CASE("conductor coercion") {
  auto one = Cyclotomic(1).coerce(12);
  CHECK(one.conductor() == 12);
  CHECK(one.is_one());
  auto m = Cyclotomic::root_of_unity(1, 2).coerce(6);
  CHECK(m == Cyclotomic::root_of_unity(3, 6));
  CHECK(m.conductor() == 6);
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(1, 4).coerce(6), conductor_error);
  auto back = Cyclotomic::root_of_unity(1, 3).coerce(12).descend(3);
  REQUIRE(back.has_value());
  CHECK(*back == Cyclotomic::root_of_unity(1, 3));
  CHECK_FALSE(Cyclotomic::root_of_unity(1, 12).descend(6).has_value());

  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    long n1 = 1 + static_cast<long>(rng() % 12);
    long n2 = 1 + static_cast<long>(rng() % 12);
    auto a = random_cyclotomic(rng, n1);
    auto b = random_cyclotomic(rng, n2);
    long l = lcm_long(n1, n2);
    CHECK(a.coerce(l) * b.coerce(l) == a * b);
    auto down = a.coerce(l).descend(n1);
    REQUIRE(down.has_value());
    CHECK(*down == a);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 1000; ++t) {
    long n = 1 + static_cast<long>(rng() % 24);
    auto a = random_cyclotomic(rng, n);
    auto b = random_cyclotomic(rng, n);
    auto c = random_cyclotomic(rng, n);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
  }
}

TEST_CASE("canonical equality") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    long n = 1 + static_cast<long>(rng() % 24);
    auto a = random_cyclotomic(rng, n);
    auto b = random_cyclotomic(rng, n);
    CHECK(((a - b).is_zero()) == (a.coefficients() == b.coefficients()));
    CHECK((a == a + Cyclotomic(0)));
  }
}

TEST_CASE("text round trip") {
  auto z = Cyclotomic::root_of_unity(1, 8);
  auto x = Cyclotomic(3, 2) * z * z * z - Cyclotomic(1, 3) + z;
  CHECK(x.to_string() == "-1/3 + z + 3/2*z^3");
  CHECK(Cyclotomic::parse(x.to_string(), 8) == x);
  CHECK(Cyclotomic::parse("z^4", 8) == Cyclotomic(-1));
  CHECK(Cyclotomic::parse("-z", 4) == -Cyclotomic::root_of_unity(1, 4));
  CHECK(Cyclotomic(0).to_string() == "0");
  CHECK_THROWS(Cyclotomic::parse("3*", 4));
  CHECK_THROWS(Cyclotomic::parse("q", 4));
}

}
