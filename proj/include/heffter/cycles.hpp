#pragma once

// From a simple Heffter space to r mutually orthogonal k-cycle systems of
// K_q: each ordered block (b_0..b_{k-1}) yields the base cycle
// (s_0, s_1, ..., s_{k-2}, 0) of its partial sums, and a parallel class
// developed additively over F_q covers every edge of K_q exactly once.
// Vertices of K_q are the residues 0..q-1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heffter/errors.hpp"
#include "heffter/field.hpp"
#include "heffter/hdm.hpp"
#include "heffter/space.hpp"

namespace heffter {

using cycle_t = std::vector<elem>;  // k distinct vertices, closed implicitly

struct cycle_system {
  std::int64_t q = 0;
  std::int64_t k = 0;
  std::vector<cycle_t> cycles;
};

// canonical form: start at the minimum vertex, run towards its smaller
// neighbor; fixes rotation and direction for set-level comparison
inline cycle_t canonical_cycle(const cycle_t& c) {
  const std::size_t k = c.size();
  std::size_t at = static_cast<std::size_t>(
      std::min_element(c.begin(), c.end()) - c.begin());
  elem prev = c[(at + k - 1) % k], next = c[(at + 1) % k];
  cycle_t out(k);
  int dir = next < prev ? 1 : -1;
  for (std::size_t i = 0; i < k; ++i)
    out[i] = c[(at + k + dir * static_cast<std::ptrdiff_t>(i)) % k];
  return out;
}

// an ordering of a zero-sum block with pairwise distinct partial sums;
// first element fixed (rotations preserve the partial-sum set on zero-sum
// blocks), remaining positions tried in lexicographic order
inline block_t order_block_simple(const field_ctx& f, const block_t& block) {
  block_t sorted(block);
  for (elem& x : sorted) x = f.reduce(x);
  std::sort(sorted.begin(), sorted.end());
  block_t rest(sorted.begin() + 1, sorted.end());
  block_t trial(sorted.size());
  trial[0] = sorted[0];
  do {
    std::copy(rest.begin(), rest.end(), trial.begin() + 1);
    if (row_simple(f, trial)) return trial;
  } while (std::next_permutation(rest.begin(), rest.end()));
  // unreachable for k <= 10: every such block admits a simple ordering
  throw no_simple_ordering();
}

namespace detail {

inline cycle_t base_cycle(const field_ctx& f, const block_t& block) {
  cycle_t c = partial_sums(f, block);
  // zero-sum block: the last partial sum is 0, closing the cycle
  return c;
}

inline std::int64_t edge_key(std::int64_t q, elem a, elem b) {
  return a < b ? a * q + b : b * q + a;
}

}  // namespace detail

// the additive development of one parallel class,
// { base(blk) + gamma : blk in P_h, gamma in F_q }, n*q cycles; the caller
// is responsible for having verified the space
inline cycle_system make_cycle_system(const heffter_space& S, std::size_t h) {
  const field_ctx& f = S.field();
  const std::int64_t q = f.q();
  const auto& cls = S.classes.at(h);
  cycle_system cs{q, S.k(), {}};
  cs.cycles.reserve(cls.size() * q);
  for (const block_t& blk : cls) {
    block_t ordered = blk;
    if (!row_simple(f, ordered)) ordered = order_block_simple(f, ordered);
    cycle_t base = detail::base_cycle(f, ordered);
    for (elem gamma = 0; gamma < q; ++gamma) {
      cycle_t c(base.size());
      for (std::size_t i = 0; i < base.size(); ++i)
        c[i] = f.add(base[i], gamma);
      cs.cycles.push_back(canonical_cycle(c));
    }
  }
  return cs;
}

// r systems, one per parallel class
inline std::vector<cycle_system> build_cycle_systems(const heffter_space& S) {
  space_report rep = verify_space(S);
  if (!rep.valid())
    throw invalid_hdm("space fails verification: " + rep.witness);
  std::vector<cycle_system> out;
  out.reserve(S.classes.size());
  for (std::size_t h = 0; h < S.classes.size(); ++h)
    out.push_back(make_cycle_system(S, h));
  return out;
}

struct cycle_system_report {
  bool valid = true;
  std::string witness;
};

// every cycle closed on k distinct vertices, every K_q edge exactly once
inline cycle_system_report verify_cycle_system(const cycle_system& cs) {
  cycle_system_report rep;
  const std::int64_t q = cs.q;
  std::vector<std::uint8_t> count(q * q, 0);
  for (const cycle_t& c : cs.cycles) {
    if (static_cast<std::int64_t>(c.size()) != cs.k ||
        std::set<elem>(c.begin(), c.end()).size() != c.size()) {
      return {false, "cycle with repeated or missing vertices"};
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      elem a = c[i], b = c[(i + 1) % c.size()];
      std::int64_t key = detail::edge_key(q, a, b);
      if (count[key]++) {
        return {false, "edge {" + std::to_string(a) + "," + std::to_string(b) +
                           "} covered twice"};
      }
    }
  }
  std::int64_t covered = 0;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = a + 1; b < q; ++b)
      covered += count[a * q + b];
  if (covered != q * (q - 1) / 2)
    return {false, "covered " + std::to_string(covered) + " of " +
                       std::to_string(q * (q - 1) / 2) + " edges"};
  return rep;
}

// no cycle of one system shares more than one edge with a cycle of the
// other; both systems must partition E(K_q), so it suffices to count the
// (cycle-of-a, cycle-of-b) pair behind every edge
inline bool verify_orthogonal(const cycle_system& a, const cycle_system& b) {
  if (a.q != b.q || a.k != b.k) return false;
  const std::int64_t q = a.q;
  std::vector<std::int32_t> owner_a(q * q, -1);
  for (std::size_t id = 0; id < a.cycles.size(); ++id) {
    const cycle_t& c = a.cycles[id];
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t key = detail::edge_key(q, c[i], c[(i + 1) % c.size()]);
      if (owner_a[key] != -1) return false;  // a is not even a system
      owner_a[key] = static_cast<std::int32_t>(id);
    }
  }
  std::set<std::pair<std::int32_t, std::int32_t>> seen;
  for (std::size_t id = 0; id < b.cycles.size(); ++id) {
    const cycle_t& c = b.cycles[id];
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t key = detail::edge_key(q, c[i], c[(i + 1) % c.size()]);
      std::int32_t ia = owner_a[key];
      if (ia == -1) return false;
      if (!seen.emplace(ia, static_cast<std::int32_t>(id)).second)
        return false;  // two shared edges between one cycle pair
    }
  }
  return true;
}

// the guaranteed number floor(n / k^3) of mutually orthogonal k-cycle
// systems of order q = 2kn+1, n odd
inline std::int64_t guaranteed_count(std::int64_t q, std::int64_t k) {
  if (k < 3 || (q - 1) % (2 * k) != 0) throw not_admissible(q, k);
  const std::int64_t n = (q - 1) / (2 * k);
  if (n % 2 == 0 || !is_prime(q)) throw not_admissible(q, k);
  return n / (k * k * k);
}

}  // namespace heffter
