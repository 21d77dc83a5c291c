#pragma once

// Search kernels for Heffter difference matrices.
//
//  * enumerate_rows: the normalized candidate space (b_0 = 1, b_i in V_i,
//    last entry forced by the zero-sum condition).
//  * exhaustive_max_r: exact maximum r via maximum clique on the row
//    compatibility graph (branch and bound, greedy coloring bound).
//  * find_hdm: existence search for a given r, exhaustive or seeded random.
//  * greedy_extend / greedy_build: the constructive row extension with the
//    forbidden sets Y_j, Y'_j, X, Z_1..Z_4, valid above the bound Q(k,r).
//  * q_bound / q_exceeds_bound / simplified_bound: the threshold formulas,
//    with an exact integer predicate for q > Q(k,r).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "heffter/field.hpp"
#include "heffter/halfset.hpp"
#include "heffter/hdm.hpp"

namespace heffter {

namespace detail {
inline void require(bool cond, const char* what) {
  if (!cond) throw error(std::string("internal check failed: ") + what);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// bounds

// n = (2r-1)(k-2) + r - 1, the cardinality budget of the forbidden set Z
inline std::int64_t z_budget(std::int64_t k, std::int64_t r) {
  return (2 * r - 1) * (k - 2) + r - 1;
}

// Q(k,r) = 1/4 [ (2k-1)^2 + sqrt((2k-1)^4 + 16k(kn+1)) ]^2
inline double q_bound(std::int64_t k, std::int64_t r) {
  const double n = static_cast<double>(z_budget(k, r));
  const double a = static_cast<double>((2 * k - 1) * (2 * k - 1));
  const double root = std::sqrt(a * a + 16.0 * k * (k * n + 1.0));
  const double half = (a + root) / 2.0;
  return half * half;
}

// exact integer test for q > Q(k,r): with A = (2k-1)^2 and m = 4k(kn+1),
// q > Q  <=>  q - m > 0  and  (q - m)^2 > A^2 q
inline bool q_exceeds_bound(std::int64_t q, std::int64_t k, std::int64_t r) {
  const std::int64_t n = z_budget(k, r);
  const std::int64_t a = (2 * k - 1) * (2 * k - 1);
  const std::int64_t m = 4 * k * (k * n + 1);
  if (q - m <= 0) return false;
  return (q - m) * (q - m) > a * a * q;
}

// the corollary's approximation by excess, 8k^4 r
inline std::int64_t simplified_bound(std::int64_t k, std::int64_t r) {
  return 8 * k * k * k * k * r;
}

// ---------------------------------------------------------------------------
// candidate rows

struct candidate_row_set {
  half_set halfset;
  bool simple_only = false;
  std::vector<row_t> rows;  // normalized, deterministic dlog-lex order
};

namespace detail {

// walk all (b_1..b_{k-2}) in V_1 x ... x V_{k-2} in dlog-lex order, close
// each tuple with b_{k-1} = -(1 + sum) and keep the row when that lands in
// V_{k-1}; fn(row) returning false aborts the walk
template <typename Fn>
inline void for_each_candidate(const half_set& hs, bool simple_only, Fn fn) {
  const field_ctx& f = hs.field();
  const std::int64_t k = hs.k();
  std::vector<std::vector<elem>> parts(k);
  for (std::int64_t i = 1; i < k; ++i) parts[i] = hs.part(i);

  row_t row(k);
  row[0] = 1;
  std::vector<std::size_t> idx(k, 0);
  std::int64_t j = 1;
  elem sum = 1;  // 1 + b_1 + ... + b_{j-1} for the current prefix
  while (j >= 1) {
    if (j == k - 1) {
      elem last = f.neg(sum);
      if (hs.locate(last) == k - 1) {
        row[k - 1] = last;
        if (!simple_only || row_simple(f, row))
          if (!fn(row)) return;
      }
      --j;
      continue;
    }
    if (idx[j] == parts[j].size()) {
      idx[j] = 0;
      sum = f.sub(sum, row[j]);  // drop this level's last value
      --j;
      continue;
    }
    if (idx[j] > 0) sum = f.sub(sum, row[j]);
    row[j] = parts[j][idx[j]];
    sum = f.add(sum, row[j]);
    ++idx[j];
    ++j;
  }
}

}  // namespace detail

inline candidate_row_set enumerate_rows(const half_set& hs,
                                        bool simple_only) {
  candidate_row_set out{hs, simple_only, {}};
  detail::for_each_candidate(hs, simple_only, [&out](const row_t& row) {
    out.rows.push_back(row);
    return true;
  });
  return out;
}

namespace detail {

// per-row signature: dlog(b_i) - dlog(b_j) mod (q-1) for all i < j; two rows
// are compatible iff their signatures differ in every coordinate
inline std::vector<std::int32_t> ratio_signature(const field_ctx& f,
                                                 const row_t& row) {
  const std::int64_t m = f.q() - 1;
  const std::size_t k = row.size();
  std::vector<std::int64_t> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = f.dlog(row[i]);
  std::vector<std::int32_t> sig;
  sig.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      sig.push_back(static_cast<std::int32_t>(((d[i] - d[j]) % m + m) % m));
  return sig;
}

inline bool signatures_compatible(const std::vector<std::int32_t>& a,
                                  const std::vector<std::int32_t>& b) {
  for (std::size_t p = 0; p < a.size(); ++p)
    if (a[p] == b[p]) return false;
  return true;
}

// adjacency as packed bitsets
struct bitgraph {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  explicit bitgraph(std::size_t n)
      : n(n), words((n + 63) / 64), bits(n * words, 0) {}

  void set_edge(std::size_t u, std::size_t v) {
    bits[u * words + v / 64] |= std::uint64_t(1) << (v % 64);
    bits[v * words + u / 64] |= std::uint64_t(1) << (u % 64);
  }
  bool edge(std::size_t u, std::size_t v) const {
    return bits[u * words + v / 64] >> (v % 64) & 1;
  }

  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words; ++w)
      d += static_cast<std::size_t>(__builtin_popcountll(bits[u * words + w]));
    return d;
  }
};

// exact maximum clique, Tomita-style: greedy sequential coloring bounds the
// best extension of each candidate set
class max_clique_solver {
 public:
  max_clique_solver(const bitgraph& g, std::int64_t node_budget)
      : g_(g), budget_(node_budget) {}

  std::vector<std::size_t> solve(std::size_t stop_at_size = SIZE_MAX) {
    stop_at_ = stop_at_size;
    best_.clear();
    nodes_ = 0;
    aborted_ = false;
    std::vector<std::size_t> order(g_.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) {
                auto da = g_.degree(a), db = g_.degree(b);
                return da != db ? da > db : a < b;
              });
    std::vector<std::size_t> current;
    expand(order, current);
    return best_;
  }

  bool exhausted() const { return !aborted_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  void expand(const std::vector<std::size_t>& cand,
              std::vector<std::size_t>& current) {
    if (aborted_ || best_.size() >= stop_at_) return;
    ++nodes_;
    if (budget_ > 0 && nodes_ > budget_) {
      aborted_ = true;
      return;
    }

    // color classes are independent sets: a clique takes at most one vertex
    // per class, so class index + 1 bounds any clique inside the prefix
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> ordered;
    std::vector<std::size_t> bound;
    ordered.reserve(cand.size());
    bound.reserve(cand.size());
    for (std::size_t v : cand) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (std::size_t u : classes[c])
          if (g_.edge(u, v)) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t v : classes[c]) {
        ordered.push_back(v);
        bound.push_back(c + 1);
      }

    for (std::size_t pos = ordered.size(); pos-- > 0;) {
      if (aborted_ || best_.size() >= stop_at_) return;
      if (current.size() + bound[pos] <= best_.size()) return;
      std::size_t v = ordered[pos];
      current.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t p = 0; p < pos; ++p)
        if (g_.edge(ordered[p], v)) next.push_back(ordered[p]);
      if (current.size() > best_.size()) best_ = current;
      if (!next.empty()) expand(next, current);
      current.pop_back();
    }
  }

  const bitgraph& g_;
  std::int64_t budget_;
  std::size_t stop_at_ = SIZE_MAX;
  std::vector<std::size_t> best_;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
};

inline bitgraph build_compatibility_graph(const field_ctx& f,
                                          const std::vector<row_t>& rows) {
  std::vector<std::vector<std::int32_t>> sigs;
  sigs.reserve(rows.size());
  for (const row_t& r : rows) sigs.push_back(ratio_signature(f, r));
  bitgraph g(rows.size());
  for (std::size_t a = 0; a + 1 < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      if (signatures_compatible(sigs[a], sigs[b])) g.set_edge(a, b);
  return g;
}

// deterministic bounded draw; std::uniform_int_distribution differs across
// standard libraries
struct rng {
  std::mt19937_64 engine;
  explicit rng(std::uint64_t seed) : engine(seed) {}
  std::uint64_t next(std::uint64_t n) { return engine() % n; }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// exhaustive maximum r

struct max_r_result {
  std::int64_t r_max = 0;
  heffter_difference_matrix witness;
  bool exhaustive = true;  // false when the node budget (or size cap) was hit
  std::int64_t nodes = 0;
  std::int64_t candidates = 0;
};

// Vertex cap for the quadratic compatibility graph; above it the search
// degrades to a seeded greedy lower bound flagged non-exhaustive.
inline constexpr std::size_t max_clique_vertex_cap = 30000;

inline max_r_result exhaustive_max_r(const half_set& hs, bool simple_only,
                                     std::int64_t node_budget = 0) {
  candidate_row_set cand = enumerate_rows(hs, simple_only);
  const field_ctx& f = hs.field();

  max_r_result res{0, heffter_difference_matrix{hs, {}}, true, 0, 0};
  res.candidates = static_cast<std::int64_t>(cand.rows.size());
  if (cand.rows.empty()) return res;

  std::vector<std::size_t> clique;
  if (cand.rows.size() <= max_clique_vertex_cap) {
    detail::bitgraph g = detail::build_compatibility_graph(f, cand.rows);
    detail::max_clique_solver solver(g, node_budget);
    clique = solver.solve();
    res.exhaustive = solver.exhausted();
    res.nodes = solver.nodes();
  } else {
    // greedy sweeps only; the result is a lower bound
    std::vector<std::vector<std::int32_t>> sigs;
    for (const row_t& r : cand.rows)
      sigs.push_back(detail::ratio_signature(f, r));
    detail::rng gen(1);
    for (int sweep = 0; sweep < 64; ++sweep) {
      std::vector<std::size_t> picked;
      for (std::size_t t = 0; t < 4 * cand.rows.size(); ++t) {
        std::size_t v = gen.next(cand.rows.size());
        ++res.nodes;
        bool ok = true;
        for (std::size_t u : picked)
          if (!detail::signatures_compatible(sigs[u], sigs[v])) {
            ok = false;
            break;
          }
        if (ok) picked.push_back(v);
      }
      if (picked.size() > clique.size()) clique = picked;
    }
    res.exhaustive = false;
  }

  res.r_max = static_cast<std::int64_t>(clique.size());
  for (std::size_t v : clique) res.witness.rows.push_back(cand.rows[v]);
  detail::require(verify_hdm(res.witness).valid(),
                  "max-r witness failed verification");
  return res;
}

// ---------------------------------------------------------------------------
// existence search for a target r

enum class search_status { found, not_found_exhaustive, budget_exceeded };

struct find_result {
  search_status status = search_status::not_found_exhaustive;
  std::optional<heffter_difference_matrix> matrix;
  std::int64_t nodes = 0;

  bool found() const { return status == search_status::found; }
};

enum class search_strategy { exhaustive, random };

namespace detail {

// uniform candidate row by rejection: free coordinates uniform in their
// parts, forced last entry checked against V_{k-1}
inline std::optional<row_t> sample_candidate(
    const half_set& hs, const std::vector<std::vector<elem>>& parts,
    bool simple_only, rng& gen) {
  const field_ctx& f = hs.field();
  const std::int64_t k = hs.k();
  row_t row(k);
  row[0] = 1;
  elem sum = 1;
  for (std::int64_t i = 1; i <= k - 2; ++i) {
    row[i] = parts[i][gen.next(parts[i].size())];
    sum = f.add(sum, row[i]);
  }
  elem last = f.neg(sum);
  if (hs.locate(last) != k - 1) return std::nullopt;
  row[k - 1] = last;
  if (simple_only && !row_simple(f, row)) return std::nullopt;
  return row;
}

}  // namespace detail

// Find a simple (V,k,r) HDM with exactly r rows.
//  exhaustive: depth-first over the normalized candidate set in its
//    deterministic order; "not found" is a nonexistence proof for simple
//    normalized matrices (hence for all such matrices, by row scaling).
//  random: seeded uniform row sampling growing a compatible set, restarting
//    when stuck.  Failure is not a nonexistence proof.
// node_budget counts row draws / compatibility probes; 0 = default.
inline find_result find_hdm(const half_set& hs, std::int64_t r,
                            search_strategy strategy = search_strategy::random,
                            std::uint64_t seed = 0,
                            std::int64_t node_budget = 0,
                            bool simple_only = true) {
  const field_ctx& f = hs.field();
  find_result res;
  if (r <= 0) {
    res.status = search_status::found;
    res.matrix = heffter_difference_matrix{hs, {}};
    return res;
  }

  if (strategy == search_strategy::exhaustive) {
    candidate_row_set cand = enumerate_rows(hs, simple_only);
    const std::size_t n = cand.rows.size();
    if (n < static_cast<std::size_t>(r)) return res;
    std::vector<std::vector<std::int32_t>> sigs;
    sigs.reserve(n);
    for (const row_t& row : cand.rows)
      sigs.push_back(detail::ratio_signature(f, row));

    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::size_t>> levels(r + 1);
    levels[0].resize(n);
    std::iota(levels[0].begin(), levels[0].end(), 0);
    bool budget_hit = false;

    std::function<bool(std::size_t)> dfs = [&](std::size_t depth) -> bool {
      if (depth == static_cast<std::size_t>(r)) return true;
      const std::vector<std::size_t>& avail = levels[depth];
      for (std::size_t pos = 0; pos < avail.size(); ++pos) {
        if (avail.size() - pos + depth < static_cast<std::size_t>(r)) break;
        std::size_t v = avail[pos];
        ++res.nodes;
        if (node_budget > 0 && res.nodes > node_budget) {
          budget_hit = true;
          return false;
        }
        chosen.push_back(v);
        if (depth + 1 == static_cast<std::size_t>(r)) return true;
        std::vector<std::size_t>& next = levels[depth + 1];
        next.clear();
        for (std::size_t p = pos + 1; p < avail.size(); ++p)
          if (detail::signatures_compatible(sigs[v], sigs[avail[p]]))
            next.push_back(avail[p]);
        if (dfs(depth + 1)) return true;
        chosen.pop_back();
        if (budget_hit) return false;
      }
      return false;
    };

    if (dfs(0)) {
      heffter_difference_matrix B{hs, {}};
      for (std::size_t v : chosen) B.rows.push_back(cand.rows[v]);
      detail::require(verify_hdm(B).valid() &&
                          (!simple_only || verify_simple(B)),
                      "exhaustive witness failed verification");
      res.status = search_status::found;
      res.matrix = std::move(B);
    } else {
      res.status = budget_hit ? search_status::budget_exceeded
                              : search_status::not_found_exhaustive;
    }
    return res;
  }

  // random strategy
  if (node_budget <= 0) node_budget = 20'000'000;
  detail::rng gen(seed);
  std::vector<std::vector<elem>> parts(hs.k());
  for (std::int64_t i = 1; i < hs.k(); ++i) parts[i] = hs.part(i);

  // materialize the candidate list when the free coordinate space is small;
  // otherwise draw rows by rejection
  double free_space = 1.0;
  for (std::int64_t i = 1; i <= hs.k() - 2; ++i)
    free_space *= static_cast<double>(parts[i].size());
  std::optional<std::vector<row_t>> pool;
  if (free_space <= 2e7) {
    pool = enumerate_rows(hs, simple_only).rows;
    if (pool->size() < static_cast<std::size_t>(r)) {
      res.status = search_status::not_found_exhaustive;
      return res;
    }
  }

  std::vector<row_t> current;
  std::vector<std::vector<std::int32_t>> cur_sigs;
  std::int64_t stuck = 0;
  const std::int64_t stuck_limit = 200 + 50 * r;
  while (res.nodes < node_budget) {
    ++res.nodes;
    std::optional<row_t> draw =
        pool ? std::optional<row_t>((*pool)[gen.next(pool->size())])
             : detail::sample_candidate(hs, parts, simple_only, gen);
    if (!draw) continue;
    const auto sig = detail::ratio_signature(f, *draw);
    bool ok = true;
    for (const auto& s : cur_sigs)
      if (!detail::signatures_compatible(sig, s)) {
        ok = false;
        break;
      }
    if (ok) {
      current.push_back(*draw);
      cur_sigs.push_back(sig);
      stuck = 0;
      if (current.size() == static_cast<std::size_t>(r)) {
        heffter_difference_matrix B{hs, current};
        detail::require(verify_hdm(B).valid() &&
                            (!simple_only || verify_simple(B)),
                        "random witness failed verification");
        res.status = search_status::found;
        res.matrix = std::move(B);
        return res;
      }
    } else if (++stuck > stuck_limit) {
      current.clear();
      cur_sigs.clear();
      stuck = 0;
    }
  }
  res.status = search_status::budget_exceeded;
  return res;
}

// ---------------------------------------------------------------------------
// greedy construction (standard half-set)

enum class greedy_stage { prefix, last_pair, none };

struct greedy_result {
  std::optional<heffter_difference_matrix> matrix;
  greedy_stage failed_stage = greedy_stage::none;
  std::int64_t failed_row = -1;     // 1-based row being added
  std::int64_t failed_column = -1;  // column whose choice set ran empty

  bool found() const { return matrix.has_value(); }
};

namespace detail {

inline std::vector<elem> choice_order(std::vector<elem> xs,
                                      bool seeded, rng& gen) {
  if (seeded)
    for (std::size_t i = xs.size(); i > 1; --i)
      std::swap(xs[i - 1], xs[gen.next(i)]);
  return xs;  // unseeded: increasing dlog order, as produced
}

}  // namespace detail

// One induction step of the constructive argument: extend a simple HDM A
// (r-1 rows, standard half-set) by the row (b_0,...,b_{k-3}, x, -x-s).
// Prefix entries avoid Y_j (ratio clashes against A) and Y'_j (repeated
// partial sums); x ranges over X = { x in V_{k-2} : -x-s in V_{k-1} } minus
// Z_1..Z_4.  Choices are tried in increasing dlog order when seed is empty,
// in seeded random order otherwise; no backtracking.  The extended matrix
// is re-verified before it is returned.
inline greedy_result greedy_extend(
    const heffter_difference_matrix& A,
    std::optional<std::uint64_t> seed = std::nullopt,
    bool literal_x_variant = false) {
  const field_ctx& f = A.field();
  const half_set& hs = A.halfset;
  const std::int64_t k = hs.k();
  const std::int64_t r_new = A.r() + 1;
  greedy_result res;
  res.failed_row = r_new;

  if (!hs.standard())
    throw error("greedy construction requires the standard half-set");
  detail::require(verify_hdm(A).valid() && verify_simple(A),
                  "greedy_extend input is not a simple HDM");

  detail::rng gen(seed.value_or(0));

  // prefix b_0..b_{k-3}
  std::vector<elem> b;
  for (std::int64_t j = 0; j <= k - 3; ++j) {
    std::set<elem> forbidden;
    if (j >= 1) {
      for (const row_t& a : A.rows)
        for (std::int64_t i = 0; i < j; ++i)
          forbidden.insert(f.mul(b[i], f.div(a[j], a[i])));  // Y_j
      elem suffix = 0;
      for (std::int64_t h = j - 1; h >= 0; --h) {
        suffix = f.add(suffix, b[h]);
        forbidden.insert(f.neg(suffix));  // Y'_j
      }
    }
    bool picked = false;
    for (elem cand : detail::choice_order(hs.part(j), seed.has_value(), gen)) {
      if (!forbidden.count(cand)) {
        b.push_back(cand);
        picked = true;
        break;
      }
    }
    if (!picked) {
      res.failed_stage = greedy_stage::prefix;
      res.failed_column = j;
      return res;
    }
  }

  elem s = 0;
  for (elem x : b) s = f.add(s, x);

  // The variant set asking x + s in C^{2k}_{k-1} differs from X because
  // -1 lies in C^{2k}_k; only the -x-s form keeps property (ii).  It stays
  // available for comparison.
  std::vector<elem> x_set;
  for (elem x : hs.part(k - 2)) {
    elem last = literal_x_variant ? f.add(x, s) : f.neg(f.add(x, s));
    if (hs.locate(last) == k - 1) x_set.push_back(x);
  }

  std::set<elem> z;
  for (const row_t& a : A.rows) {
    for (std::int64_t j = 0; j <= k - 3; ++j) {
      z.insert(f.mul(b[j], f.div(a[k - 2], a[j])));                   // Z_1
      z.insert(f.sub(f.neg(s), f.mul(b[j], f.div(a[k - 1], a[j])))); // Z_2
    }
    elem denom = f.add(f.reduce(a[k - 2]), f.reduce(a[k - 1]));
    detail::require(denom != 0, "Z_3 denominator vanished");
    z.insert(f.neg(f.mul(s, f.div(a[k - 2], denom))));                // Z_3
  }
  elem suffix = 0;
  for (std::int64_t i = k - 3; i >= 0; --i) {
    suffix = f.add(suffix, b[i]);
    z.insert(f.neg(suffix));  // Z_4
  }
  detail::require(static_cast<std::int64_t>(z.size()) <= z_budget(k, r_new),
                  "|Z| exceeded (2r-1)(k-2)+r-1");

  std::optional<elem> x_pick;
  for (elem cand : detail::choice_order(x_set, seed.has_value(), gen)) {
    if (!z.count(cand)) {
      x_pick = cand;
      break;
    }
  }
  if (!x_pick) {
    res.failed_stage = greedy_stage::last_pair;
    res.failed_column = k - 2;
    return res;
  }

  heffter_difference_matrix B = A;
  row_t row = b;
  row.push_back(*x_pick);
  row.push_back(f.neg(f.add(*x_pick, s)));
  B.rows.push_back(std::move(row));

  if (!verify_hdm(B).valid() || !verify_simple(B)) {
    // reachable only under literal_x_variant, whose completions break (ii)
    res.failed_stage = greedy_stage::last_pair;
    res.failed_column = k - 1;
    return res;
  }
  res.matrix = std::move(B);
  res.failed_row = -1;
  return res;
}

// iterate greedy_extend r times from the empty matrix
inline greedy_result greedy_build(
    const half_set& hs, std::int64_t r,
    std::optional<std::uint64_t> seed = std::nullopt) {
  heffter_difference_matrix cur{hs, {}};
  for (std::int64_t step = 0; step < r; ++step) {
    std::optional<std::uint64_t> step_seed;
    if (seed) step_seed = *seed * 0x9e3779b97f4a7c15ULL + step + 1;
    greedy_result g = greedy_extend(cur, step_seed);
    if (!g.found()) return g;
    cur = std::move(*g.matrix);
  }
  greedy_result res;
  res.matrix = std::move(cur);
  return res;
}

}  // namespace heffter
