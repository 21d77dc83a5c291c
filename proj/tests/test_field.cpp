#include <doctest.h>

#include "heffter/field.hpp"

#include <set>

using namespace heffter;

TEST_CASE("make_field picks the published primitive roots by default") {
  CHECK(make_field(73, 4)->g() == 5);
  CHECK(make_field(71, 5)->g() == 7);
  CHECK(make_field(109, 6)->g() == 6);
  // the k=6 tables of the scan use these roots implicitly
  CHECK(make_field(157, 6)->g() == 5);
  CHECK(make_field(181, 6)->g() == 2);
  CHECK(make_field(229, 6)->g() == 6);
  CHECK(make_field(277, 6)->g() == 5);
}

TEST_CASE("make_field rejects non-primes and non-primitive roots") {
  CHECK_THROWS_AS(make_field(9, 3), not_prime);
  CHECK_THROWS_AS(make_field(1, 3), not_prime);
  CHECK_NOTHROW(make_field(73, 4, 5));
  CHECK_THROWS_AS(make_field(73, 4, 2), not_primitive);  // 2^9 = 1 mod 73
}

TEST_CASE("admissible") {
  CHECK(admissible(73, 4));
  CHECK(admissible(109, 6));
  CHECK_FALSE(admissible(73, 3));
  CHECK_FALSE(admissible(9, 4));  // not prime even though 9 = 2*4+1
  CHECK(admissible(31, 3));
  CHECK(admissible(727, 3));
}

TEST_CASE("dlog reproduces the F_73 phi values") {
  auto f = make_field(73, 4, 5);
  CHECK(f->dlog(68) == 37);
  CHECK(f->dlog(1) == 0);
  CHECK(f->dlog(52) == 3);
  CHECK_THROWS_AS(f->dlog(0), zero_element);
}

TEST_CASE("class_index over F_73") {
  auto f = make_field(73, 4, 5);
  CHECK(f->class_index(68) == 5);
  CHECK(f->class_index(25) == 2);
  CHECK(f->class_index(72) == 4);  // -1 in C^8_4
}

TEST_CASE("dlog round trip and multiplicativity") {
  auto f = make_field(73, 4, 5);
  for (elem x = 1; x < 73; ++x) CHECK(f->power(f->dlog(x)) == x);
  for (elem x = 1; x < 73; ++x)
    for (elem y : {2, 5, 29, 41, 72}) {
      CHECK(f->dlog(f->mul(x, y)) == (f->dlog(x) + f->dlog(y)) % 72);
      CHECK(f->class_index(f->mul(x, y)) ==
            (f->class_index(x) + f->class_index(y)) % 8);
    }
}

TEST_CASE("inverse and division") {
  auto f = make_field(73, 4, 5);
  for (elem x = 1; x < 73; ++x) CHECK(f->mul(x, f->inv(x)) == 1);
  CHECK(f->div(68, 68) == 1);
  CHECK_THROWS_AS(f->inv(0), zero_element);
}

TEST_CASE("class invariants over all admissible q < 1000, k = 3..8") {
  for (std::int64_t k = 3; k <= 8; ++k) {
    for (std::int64_t q = 3; q < 1000; q += 2) {
      if (!admissible(q, k)) continue;
      auto f = make_field(q, k);
      CHECK(f->class_index(q - 1) == k);  // -1 in C^{2k}_k
      CHECK(f->class_size() % 2 == 1);    // (q-1)/2k odd
      std::set<elem> seen;
      for (std::int64_t c = 0; c < 2 * k; ++c) {
        auto cls = f->class_elements(c);
        CHECK(static_cast<std::int64_t>(cls.size()) == f->class_size());
        for (elem x : cls) CHECK(seen.insert(x).second);
      }
      CHECK(static_cast<std::int64_t>(seen.size()) == q - 1);
    }
  }
}

TEST_CASE("primitivity of the returned generator") {
  for (std::int64_t q : {31, 71, 73, 109, 157, 727, 919}) {
    auto f = make_field(q, 3);
    std::set<elem> orbit;
    elem x = 1;
    for (std::int64_t i = 0; i < q - 1; ++i) {
      orbit.insert(x);
      x = f->mul(x, f->g());
    }
    CHECK(static_cast<std::int64_t>(orbit.size()) == q - 1);
  }
}
