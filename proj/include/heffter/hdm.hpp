#pragma once

// (V,k,r) Heffter difference matrices: r x k matrices B over a cyclotomic
// half-set V with
//   (i)   every row zero-sum in F_q,
//   (ii)  column B^i contained in V_i,
//   (iii) no column-pair ratio multiset B^i/B^j with repeated elements.
// B is simple when every row has pairwise distinct partial sums.
// Ratios are compared through dlog differences, never by field division.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heffter/errors.hpp"
#include "heffter/field.hpp"
#include "heffter/halfset.hpp"

namespace heffter {

using row_t = std::vector<elem>;

struct heffter_difference_matrix {
  half_set halfset;
  std::vector<row_t> rows;  // r rows of k entries

  const field_ctx& field() const { return halfset.field(); }
  std::int64_t r() const { return static_cast<std::int64_t>(rows.size()); }
  std::int64_t k() const { return halfset.k(); }
};

// first-witness detail for a failed property
struct hdm_witness {
  std::size_t row = 0;     // 0-based
  std::size_t row2 = 0;    // second row for property (iii)
  std::size_t col_i = 0;
  std::size_t col_j = 0;
  elem value = 0;
  std::string describe;
};

struct hdm_report {
  bool zero_sum = true;    // (i)
  bool membership = true;  // (ii)
  bool ratios = true;      // (iii)
  std::optional<hdm_witness> witness;

  bool valid() const { return zero_sum && membership && ratios; }
};

namespace detail {

inline void require_shape(const heffter_difference_matrix& B) {
  const auto q = B.field().q();
  for (std::size_t h = 0; h < B.rows.size(); ++h) {
    if (B.rows[h].size() != static_cast<std::size_t>(B.k()))
      throw invalid_hdm("row " + std::to_string(h + 1) +
                        " does not have k entries");
    for (std::size_t i = 0; i < B.rows[h].size(); ++i)
      if (B.rows[h][i] % q == 0) throw zero_entry(h, i);
  }
}

}  // namespace detail

// true iff no column pair (i,j) has a_i/a_j = b_i/b_j, i.e. the two rows can
// coexist under property (iii)
inline bool rows_compatible(const field_ctx& f, const row_t& a,
                            const row_t& b) {
  const std::int64_t m = f.q() - 1;
  const std::size_t k = a.size();
  std::vector<std::int64_t> da(k), db(k);
  for (std::size_t i = 0; i < k; ++i) {
    da[i] = f.dlog(a[i]);
    db[i] = f.dlog(b[i]);
  }
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if ((da[i] - da[j] - db[i] + db[j]) % m == 0) return false;
  return true;
}

inline hdm_report verify_hdm(const heffter_difference_matrix& B) {
  hdm_report rep;
  if (B.rows.empty()) return rep;  // the empty matrix is a (V,k,0) HDM
  detail::require_shape(B);

  const field_ctx& f = B.field();
  const std::size_t k = static_cast<std::size_t>(B.k());
  auto note = [&rep](hdm_witness w) {
    if (!rep.witness) rep.witness = std::move(w);
  };

  for (std::size_t h = 0; h < B.rows.size() && rep.zero_sum; ++h) {
    elem s = 0;
    for (elem x : B.rows[h]) s = f.add(s, f.reduce(x));
    if (s != 0) {
      rep.zero_sum = false;
      note({h, h, 0, 0, s,
            "row " + std::to_string(h + 1) + " sums to " + std::to_string(s)});
    }
  }

  for (std::size_t h = 0; h < B.rows.size() && rep.membership; ++h)
    for (std::size_t i = 0; i < k; ++i) {
      elem x = f.reduce(B.rows[h][i]);
      if (B.halfset.locate(x) != static_cast<std::int64_t>(i)) {
        rep.membership = false;
        note({h, h, i, i, x,
              "entry (" + std::to_string(h + 1) + "," + std::to_string(i) +
                  ") = " + std::to_string(x) + " is not in V_" +
                  std::to_string(i)});
        break;
      }
    }

  // (iii) via dlog differences: B^i/B^j repeats iff two rows agree on
  // dlog(b_i) - dlog(b_j) mod (q-1)
  const std::int64_t m = f.q() - 1;
  for (std::size_t i = 0; i + 1 < k && rep.ratios; ++i)
    for (std::size_t j = i + 1; j < k && rep.ratios; ++j) {
      std::set<std::int64_t> seen;
      for (std::size_t h = 0; h < B.rows.size(); ++h) {
        std::int64_t d =
            (f.dlog(B.rows[h][i]) - f.dlog(B.rows[h][j]) + m) % m;
        if (!seen.insert(d).second) {
          rep.ratios = false;
          note({h, h, i, j, B.rows[h][i],
                "ratio B^" + std::to_string(i) + "/B^" + std::to_string(j) +
                    " repeats at row " + std::to_string(h + 1)});
          break;
        }
      }
    }
  return rep;
}

// partial sums of one row, s_i = b_0 + ... + b_i
inline row_t partial_sums(const field_ctx& f, const row_t& row) {
  row_t s(row.size());
  elem acc = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    acc = f.add(acc, f.reduce(row[i]));
    s[i] = acc;
  }
  return s;
}

inline bool row_simple(const field_ctx& f, const row_t& row) {
  row_t s = partial_sums(f, row);
  std::set<elem> seen(s.begin(), s.end());
  return seen.size() == s.size();
}

inline bool verify_simple(const heffter_difference_matrix& B) {
  for (const row_t& row : B.rows)
    if (!row_simple(B.field(), row)) return false;
  return true;
}

// divide each row by its first entry; column 0 becomes all-one
inline heffter_difference_matrix normalize(
    const heffter_difference_matrix& B) {
  const field_ctx& f = B.field();
  heffter_difference_matrix out{B.halfset, B.rows};
  for (std::size_t h = 0; h < out.rows.size(); ++h) {
    if (out.rows[h][0] % f.q() == 0) throw zero_entry(h, 0);
    elem t = f.inv(f.reduce(out.rows[h][0]));
    for (elem& x : out.rows[h]) x = f.mul(f.reduce(x), t);
  }
  return out;
}

}  // namespace heffter
