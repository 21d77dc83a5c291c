#pragma once

// Heffter spaces: the orbit expansion of a Heffter difference matrix into r
// parallel classes (block h,j = g^{2kj} B_h, tuples keeping column order),
// an independent verifier for all the space axioms, the density formula,
// the semiregular C^{2k} action, and the H(n;k) array carried by any two
// parallel classes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heffter/errors.hpp"
#include "heffter/field.hpp"
#include "heffter/halfset.hpp"
#include "heffter/hdm.hpp"

namespace heffter {

using block_t = std::vector<elem>;  // ordered k-tuple, position i in V_i

struct heffter_space {
  half_set halfset;
  std::vector<std::vector<block_t>> classes;  // r classes of n blocks

  const field_ctx& field() const { return halfset.field(); }
  std::int64_t r() const { return static_cast<std::int64_t>(classes.size()); }
  std::int64_t k() const { return halfset.k(); }
  std::int64_t points() const { return (field().q() - 1) / 2; }
  std::int64_t blocks_per_class() const { return points() / k(); }
};

// orbit expansion: class h = { t B_h : t in C^{2k} }, blocks ordered by
// t = g^{2kj}, j = 0..n-1
inline heffter_space expand(const heffter_difference_matrix& B) {
  if (!verify_hdm(B).valid()) throw invalid_hdm("matrix is not a valid HDM");
  const field_ctx& f = B.field();
  heffter_space S{B.halfset, {}};
  const std::int64_t n = f.class_size();
  S.classes.reserve(B.rows.size());
  for (const row_t& row : B.rows) {
    std::vector<block_t> cls;
    cls.reserve(n);
    for (std::int64_t j = 0; j < n; ++j) {
      elem t = f.power(2 * f.k() * j);
      block_t blk(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) blk[i] = f.mul(t, row[i]);
      cls.push_back(std::move(blk));
    }
    S.classes.push_back(std::move(cls));
  }
  return S;
}

struct space_report {
  bool half_set = true;       // points and their negatives split F_q^*
  bool configuration = true;  // block size k, every point on exactly r blocks
  bool additive = true;       // every block zero-sum
  bool partial_linear = true; // two points meet in at most one block
  bool resolvable = true;     // each class partitions the point set
  std::string witness;

  bool valid() const {
    return half_set && configuration && additive && partial_linear &&
           resolvable;
  }
};

// Independent verification: nothing here relies on how S was built; the
// point set is recovered from the blocks themselves.
inline space_report verify_space(const heffter_space& S) {
  const field_ctx& f = S.field();
  const std::int64_t q = f.q();
  space_report rep;
  auto note = [&rep](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };

  std::set<elem> points;
  for (const auto& cls : S.classes)
    for (const block_t& blk : cls)
      for (elem x : blk) points.insert(f.reduce(x));

  // half-set: V u -V = F_q^*, V n -V empty
  if (static_cast<std::int64_t>(points.size()) != (q - 1) / 2) {
    rep.half_set = false;
    note("point set has " + std::to_string(points.size()) +
         " elements, expected " + std::to_string((q - 1) / 2));
  } else {
    for (elem x : points) {
      if (x == 0 || points.count(f.neg(x))) {
        rep.half_set = false;
        note("points contain x and -x for x = " + std::to_string(x));
        break;
      }
    }
  }

  // configuration: uniform block size k and point degree r
  const std::size_t k = static_cast<std::size_t>(S.k());
  std::map<elem, std::int64_t> degree;
  for (const auto& cls : S.classes)
    for (const block_t& blk : cls) {
      if (blk.size() != k || std::set<elem>(blk.begin(), blk.end()).size() != k) {
        rep.configuration = false;
        note("block with repeated entries or wrong size");
      }
      for (elem x : blk) ++degree[f.reduce(x)];
    }
  for (const auto& [x, d] : degree)
    if (d != S.r()) {
      rep.configuration = false;
      note("point " + std::to_string(x) + " lies on " + std::to_string(d) +
           " blocks, expected " + std::to_string(S.r()));
      break;
    }

  // additivity
  for (const auto& cls : S.classes)
    for (const block_t& blk : cls) {
      elem s = 0;
      for (elem x : blk) s = f.add(s, f.reduce(x));
      if (s != 0) {
        rep.additive = false;
        note("non-zero-sum block, sum = " + std::to_string(s));
      }
    }

  // partial linear space via a pair-incidence map
  std::map<std::pair<elem, elem>, std::pair<std::size_t, std::size_t>> pair_block;
  std::size_t bid = 0;
  for (std::size_t h = 0; h < S.classes.size() && rep.partial_linear; ++h)
    for (const block_t& blk : S.classes[h]) {
      for (std::size_t a = 0; a + 1 < blk.size() && rep.partial_linear; ++a)
        for (std::size_t b = a + 1; b < blk.size(); ++b) {
          elem x = f.reduce(blk[a]), y = f.reduce(blk[b]);
          if (x > y) std::swap(x, y);
          auto [it, fresh] = pair_block.try_emplace({x, y}, h, bid);
          if (!fresh) {
            rep.partial_linear = false;
            note("points {" + std::to_string(x) + "," + std::to_string(y) +
                 "} lie on two blocks");
            break;
          }
        }
      ++bid;
    }

  // resolution: every class partitions the recovered point set
  for (std::size_t h = 0; h < S.classes.size(); ++h) {
    std::set<elem> covered;
    std::size_t total = 0;
    for (const block_t& blk : S.classes[h])
      for (elem x : blk) {
        covered.insert(f.reduce(x));
        ++total;
      }
    if (covered != points || total != points.size()) {
      rep.resolvable = false;
      note("class " + std::to_string(h + 1) +
           " does not partition the point set");
      break;
    }
  }
  return rep;
}

// exact density r(k-1)/(v-1)
struct rational {
  std::int64_t num = 0, den = 1;
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

inline rational density(std::int64_t v, std::int64_t k, std::int64_t r) {
  rational d{r * (k - 1), v - 1};
  std::int64_t g = std::gcd(d.num, d.den);
  if (g > 1) {
    d.num /= g;
    d.den /= g;
  }
  return d;
}

// true iff x -> t x maps every block onto a block of its own parallel class
inline bool automorphism_check(const heffter_space& S, elem t) {
  const field_ctx& f = S.field();
  if (f.class_index(t) != 0) throw not_in_subgroup(t);
  for (const auto& cls : S.classes) {
    std::set<std::set<elem>> blocks;
    for (const block_t& blk : cls) {
      std::set<elem> b;
      for (elem x : blk) b.insert(f.reduce(x));
      blocks.insert(std::move(b));
    }
    for (const block_t& blk : cls) {
      std::set<elem> image;
      for (elem x : blk) image.insert(f.mul(t, f.reduce(x)));
      if (!blocks.count(image)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Heffter arrays from two parallel classes

struct heffter_array {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<std::optional<elem>> cells;  // row-major n x n

  const std::optional<elem>& at(std::int64_t i, std::int64_t j) const {
    return cells[i * n + j];
  }
  std::optional<elem>& at(std::int64_t i, std::int64_t j) {
    return cells[i * n + j];
  }
};

// cell (i,j) holds the common element of B_i and B'_j, empty when disjoint
inline heffter_array to_heffter_array(const field_ctx& f,
                                      const std::vector<block_t>& P,
                                      const std::vector<block_t>& Pp) {
  const std::int64_t n = static_cast<std::int64_t>(P.size());
  heffter_array A;
  A.n = n;
  A.k = P.empty() ? 0 : static_cast<std::int64_t>(P[0].size());
  A.cells.assign(n * n, std::nullopt);
  for (std::int64_t i = 0; i < n; ++i) {
    std::set<elem> bi;
    for (elem x : P[i]) bi.insert(f.reduce(x));
    for (std::int64_t j = 0; j < n; ++j) {
      std::optional<elem> common;
      for (elem y : Pp[j]) {
        if (bi.count(f.reduce(y))) {
          if (common) throw ambiguous_cell(i, j);
          common = f.reduce(y);
        }
      }
      A.at(i, j) = common;
    }
  }
  return A;
}

// k filled cells and zero sum along every row and every column, entries a
// half-set of F_q
inline bool verify_heffter_array(const field_ctx& f, const heffter_array& A) {
  std::set<elem> entries;
  for (std::int64_t i = 0; i < A.n; ++i) {
    std::int64_t row_fill = 0, col_fill = 0;
    elem row_sum = 0, col_sum = 0;
    for (std::int64_t j = 0; j < A.n; ++j) {
      if (A.at(i, j)) {
        ++row_fill;
        row_sum = f.add(row_sum, *A.at(i, j));
        entries.insert(*A.at(i, j));
      }
      if (A.at(j, i)) {
        ++col_fill;
        col_sum = f.add(col_sum, *A.at(j, i));
      }
    }
    if (row_fill != A.k || col_fill != A.k || row_sum != 0 || col_sum != 0)
      return false;
  }
  if (static_cast<std::int64_t>(entries.size()) != (f.q() - 1) / 2)
    return false;
  for (elem x : entries)
    if (x == 0 || entries.count(f.neg(x))) return false;
  return true;
}

}  // namespace heffter
