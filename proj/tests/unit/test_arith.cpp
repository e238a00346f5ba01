#include <numeric>
#include <random>

#include "doctest.h"
#include "ekspace/arith.hpp"
#include "ekspace/error.hpp"

using namespace ekspace;

TEST_CASE("ext_gcd") {
  const auto r = ext_gcd(6, 4);
  CHECK(r.g == 2);
  CHECK(6 * r.x + 4 * r.y == 2);
  CHECK(ext_gcd(0, 0).g == 0);
  const auto u = ext_gcd(1, -3);
  CHECK(u.g == 1);
  CHECK(1 * u.x + (-3) * u.y == 1);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = d(rng), b = d(rng);
    const auto g = ext_gcd(a, b);
    CHECK(g.g == std::gcd(a, b));
    CHECK(a * g.x + b * g.y == g.g);
  }
}

TEST_CASE("coprime lookups") {
  const CoprimalityTable t;
  CHECK(t.coprime(1, -3));
  CHECK_FALSE(t.coprime(4, 2));
  CHECK_FALSE(t.coprime(0, 7));
  CHECK_FALSE(t.coprime(0, 0));
  CHECK(t.gcd_is_one(0, -1));
  CHECK_FALSE(t.gcd_is_one(0, 2));
  CHECK_FALSE(t.gcd_is_one(0, 0));
}

TEST_CASE("coprime agrees with gcd beyond the table") {
  const CoprimalityTable t(50);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  for (int i = 0; i < 20000; ++i) {
    const std::int64_t a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    CHECK(t.coprime(a, b) == (ext_gcd(a, b).g == 1));
  }
}

TEST_CASE("table shape") {
  for (int n : {1, 7, 64, 200}) {
    const CoprimalityTable t(n);
    for (int i = 1; i <= n; ++i) {
      CHECK(t.entry(1, i));
      CHECK(t.entry(i, i) == (i == 1));
      for (int j = 1; j <= n; ++j) REQUIRE(t.entry(i, j) == t.entry(j, i));
    }
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(2, 5) == 3);
  CHECK(mod_inverse(7, 1) == 0);
  CHECK(mod_inverse(-2, 5) == 2);
  CHECK_THROWS_AS(mod_inverse(3, 9), Error);
}

TEST_CASE("sym_poly") {
  CHECK(sym_poly({-1, -1, 2}, 2) == WideInt(-3));
  CHECK(sym_poly({-2, 0, 2}, 3) == WideInt(0));
  CHECK(sym_poly({5, 5, 5}, 1) == WideInt(15));
  CHECK_THROWS(sym_poly({1, 2, 3}, 4));
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> d(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    const Triple v{d(rng), d(rng), d(rng)};
    const WideInt s1 = sym_poly(v, 1);
    const WideInt squares = WideInt(v[0]) * v[0] + WideInt(v[1]) * v[1] + WideInt(v[2]) * v[2];
    CHECK(s1 * s1 - WideInt(2) * sym_poly(v, 2) == squares);
  }
}

TEST_CASE("sym_residue") {
  CHECK(sym_residue(18, 1) == 0);
  CHECK(sym_residue(-5, 7) == 2);
  CHECK(sym_residue(6, 11) == -5);
  CHECK_THROWS_AS(sym_residue(3, 4), Error);
}

TEST_CASE("WideInt is checked") {
  const WideInt big = WideInt::from_raw(static_cast<__int128>(1) << 120);
  CHECK_THROWS_AS(big * big, Error);
  CHECK(WideInt::parse("-170141183460469231731687303715884105728").sign() < 0);
  CHECK_THROWS_AS(WideInt::parse("12x"), Error);
  CHECK(WideInt::parse("123456789012345678901234567").to_string() == "123456789012345678901234567");
  CHECK_THROWS_AS(big.to_int64(), Error);
}
