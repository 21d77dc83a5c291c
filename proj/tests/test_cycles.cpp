#include <doctest.h>

#include "heffter/cycles.hpp"

#include <map>
#include <set>

#include "refdata.hpp"

using namespace heffter;

TEST_CASE("order_block_simple basics") {
  auto f = make_field(73, 4, 5);
  block_t b = order_block_simple(*f, {1, 68, 25, 52});
  CHECK(row_simple(*f, b));
  std::multiset<elem> in{1, 68, 25, 52}, out(b.begin(), b.end());
  CHECK(in == out);
  // idempotent on its own output
  CHECK(order_block_simple(*f, b) == b);
  // zero-sum 3-subsets are simple in any order
  auto f31 = make_field(31, 3);
  for (elem a = 1; a < 31; ++a)
    for (elem c = a + 1; c < 31; ++c) {
      elem d = f31->neg(f31->add(a, c));
      if (d == 0 || d == a || d == c) continue;
      if (d == f31->neg(a) || d == f31->neg(c) || a == f31->neg(c)) continue;
      CHECK(row_simple(*f31, {a, c, d}));
    }
}

TEST_CASE("base cycle of the q=73 block") {
  auto f = make_field(73, 4, 5);
  CHECK(partial_sums(*f, {1, 68, 25, 52}) == row_t{1, 69, 21, 0});
  // its edge differences, + or -, are the block itself
  row_t cyc{1, 69, 21, 0};
  std::multiset<elem> diffs;
  for (std::size_t i = 0; i < 4; ++i) {
    elem d = f->sub(cyc[(i + 1) % 4], cyc[i]);
    diffs.insert(std::min(d, f->neg(d)));
  }
  std::multiset<elem> want;
  for (elem x : {1, 68, 25, 52}) want.insert(std::min(x, f->neg(x)));
  CHECK(diffs == want);
}

TEST_CASE("cycle systems from the q=73 space") {
  auto S = expand(refdata::make_hdm(refdata::q73_w()));
  auto systems = build_cycle_systems(S);
  REQUIRE(systems.size() == 4);
  for (const auto& cs : systems) {
    CHECK(cs.cycles.size() == 9 * 73);
    CHECK(verify_cycle_system(cs).valid);
  }
  // all 6 unordered pairs orthogonal
  for (std::size_t a = 0; a + 1 < systems.size(); ++a)
    for (std::size_t b = a + 1; b < systems.size(); ++b)
      CHECK(verify_orthogonal(systems[a], systems[b]));
  // a system is never orthogonal to itself (k > 1 shared edges)
  CHECK_FALSE(verify_orthogonal(systems[0], systems[0]));
}

TEST_CASE("mutating a system breaks verification") {
  auto S = expand(refdata::make_hdm(refdata::q73_w()));
  auto systems = build_cycle_systems(S);
  auto dropped = systems[0];
  dropped.cycles.pop_back();
  CHECK_FALSE(verify_cycle_system(dropped).valid);
  auto doubled = systems[0];
  doubled.cycles.push_back(doubled.cycles.front());
  CHECK_FALSE(verify_cycle_system(doubled).valid);
}

TEST_CASE("difference coverage: each class hits every difference once") {
  auto S = expand(refdata::make_hdm(refdata::q73_w()));
  const field_ctx& f = S.field();
  for (const auto& cls : S.classes) {
    std::map<elem, int> count;
    for (const block_t& blk : cls) {
      row_t cyc = partial_sums(f, blk);
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        elem d = f.sub(cyc[(i + 1) % cyc.size()], cyc[i]);
        ++count[d];
        ++count[f.neg(d)];
      }
    }
    CHECK(count.size() == 72u);
    for (auto [d, c] : count) CHECK(c == 1);
  }
}

TEST_CASE("translation leaves edge differences unchanged") {
  auto f = make_field(73, 4, 5);
  row_t cyc{1, 69, 21, 0};
  for (elem gamma : {5, 29, 60}) {
    row_t shifted;
    for (elem v : cyc) shifted.push_back(f->add(v, gamma));
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(f->sub(shifted[(i + 1) % 4], shifted[i]) ==
            f->sub(cyc[(i + 1) % 4], cyc[i]));
  }
}

TEST_CASE("canonical cycle form starts at the minimum, towards the smaller neighbor") {
  cycle_t c{21, 0, 1, 69};
  auto canon = canonical_cycle(c);
  CHECK(canon[0] == 0);
  CHECK(canon[1] == 1);  // neighbors of 0 are 21 and 1
  // rotations and reflections share one canonical form
  cycle_t rot{1, 69, 21, 0}, refl{69, 1, 0, 21};
  CHECK(canonical_cycle(rot) == canon);
  CHECK(canonical_cycle(refl) == canon);
}

TEST_CASE("developing by zero reproduces the base cycles") {
  auto S = expand(refdata::make_hdm(refdata::q73_w()));
  const field_ctx& f = S.field();
  auto systems = build_cycle_systems(S);
  // gamma = 0 translates of each base cycle must appear in the system
  std::set<cycle_t> all(systems[0].cycles.begin(), systems[0].cycles.end());
  for (const block_t& blk : S.classes[0])
    CHECK(all.count(canonical_cycle(partial_sums(f, blk))));
}

TEST_CASE("q=109 achieves six mutually orthogonal 6-cycle systems") {
  // floor(n/k^3) = 0 guarantees nothing here, yet the (54,6;6) space delivers
  CHECK(guaranteed_count(109, 6) == 0);
  auto S = expand(refdata::make_hdm(refdata::q109_w()));
  auto systems = build_cycle_systems(S);
  REQUIRE(systems.size() == 6);
  for (const auto& cs : systems) {
    CHECK(cs.cycles.size() == 9 * 109);
    CHECK(verify_cycle_system(cs).valid);
  }
  int ortho = 0;
  for (std::size_t a = 0; a + 1 < systems.size(); ++a)
    for (std::size_t b = a + 1; b < systems.size(); ++b)
      ortho += verify_orthogonal(systems[a], systems[b]) ? 1 : 0;
  CHECK(ortho == 15);
}

TEST_CASE("make_cycle_system matches build_cycle_systems class by class") {
  auto S = expand(refdata::make_hdm(refdata::q73_w()));
  auto all = build_cycle_systems(S);
  for (std::size_t h = 0; h < all.size(); ++h)
    CHECK(make_cycle_system(S, h).cycles == all[h].cycles);
}

TEST_CASE("guaranteed_count") {
  CHECK(guaranteed_count(109, 6) == 0);   // floor(9/216)
  CHECK(guaranteed_count(6271, 3) == 38); // n = 1045
  CHECK(guaranteed_count(727, 3) == 4);   // n = 121, floor(121/27)
  CHECK_THROWS_AS(guaranteed_count(13, 3), not_admissible);  // n = 2 even
  CHECK_THROWS_AS(guaranteed_count(25, 3), not_admissible);  // not prime
  CHECK_THROWS_AS(guaranteed_count(73, 5), not_admissible);  // 10 misses 72
}
