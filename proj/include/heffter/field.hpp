#pragma once

// Prime-field arithmetic with a fixed primitive root, a full discrete-log
// table and cyclotomic-class indexing of order 2k.  Everything downstream
// (half-sets, difference matrices, searches) works through this context.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "heffter/errors.hpp"

namespace heffter {

using elem = std::int64_t;  // canonical residue in [0, q-1]

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// q is admissible for block size k iff q is prime and q == 2k+1 (mod 4k);
// this forces (q-1)/2k odd, hence -1 in C^{2k}_k.
inline bool admissible(std::int64_t q, std::int64_t k) {
  return is_prime(q) && q % (4 * k) == 2 * k + 1;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp,
                            std::int64_t mod) {
  std::int64_t acc = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return acc;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline bool is_primitive_root(std::int64_t g, std::int64_t q) {
  if (g % q == 0) return false;
  for (std::int64_t p : prime_factors(q - 1))
    if (pow_mod(g, (q - 1) / p, q) == 1) return false;
  return true;
}

inline std::int64_t smallest_primitive_root(std::int64_t q) {
  for (std::int64_t g = 2; g < q; ++g)
    if (is_primitive_root(g, q)) return g;
  return 1;  // q == 2 or 3
}

class field_ctx {
 public:
  field_ctx(std::int64_t q, std::int64_t k,
            std::optional<std::int64_t> g = std::nullopt)
      : q_(q), k_(k) {
    if (!is_prime(q)) throw not_prime(q);
    if (g) {
      if (!is_primitive_root(*g, q)) throw not_primitive(*g, q);
      g_ = *g;
    } else {
      g_ = smallest_primitive_root(q);
    }
    pow_.resize(q_ - 1);
    dlog_.assign(q_, -1);
    elem x = 1;
    for (std::int64_t i = 0; i < q_ - 1; ++i) {
      pow_[i] = x;
      dlog_[x] = i;
      x = x * g_ % q_;
    }
  }

  std::int64_t q() const { return q_; }
  std::int64_t k() const { return k_; }
  std::int64_t g() const { return g_; }
  std::int64_t class_order() const { return 2 * k_; }
  // size of each cyclotomic class of order 2k (requires 2k | q-1)
  std::int64_t class_size() const { return (q_ - 1) / (2 * k_); }

  elem add(elem a, elem b) const { return (a + b) % q_; }
  elem sub(elem a, elem b) const { return (a - b + q_) % q_; }
  elem neg(elem a) const { return a == 0 ? 0 : q_ - a; }
  elem mul(elem a, elem b) const { return a * b % q_; }
  elem reduce(std::int64_t a) const { return ((a % q_) + q_) % q_; }

  // g^e for any integer exponent
  elem power(std::int64_t e) const {
    e %= q_ - 1;
    if (e < 0) e += q_ - 1;
    return pow_[e];
  }

  std::int64_t dlog(elem x) const {
    if (x % q_ == 0) throw zero_element();
    return dlog_[reduce(x)];
  }

  elem inv(elem x) const {
    if (x % q_ == 0) throw zero_element();
    return power(q_ - 1 - dlog_[reduce(x)]);
  }

  elem div(elem a, elem b) const { return mul(a, inv(b)); }

  // index i of the cyclotomic class C^{2k}_i containing x
  std::int64_t class_index(elem x) const { return dlog(x) % (2 * k_); }

  // elements of C^{2k}_c in increasing dlog order
  std::vector<elem> class_elements(std::int64_t c) const {
    std::vector<elem> out;
    out.reserve(class_size());
    for (std::int64_t d = c % (2 * k_); d < q_ - 1; d += 2 * k_)
      out.push_back(pow_[d]);
    return out;
  }

 private:
  std::int64_t q_, k_, g_;
  std::vector<elem> pow_;          // pow_[i] = g^i
  std::vector<std::int64_t> dlog_; // dlog_[x], -1 at x = 0
};

using field_ptr = std::shared_ptr<const field_ctx>;

inline field_ptr make_field(std::int64_t q, std::int64_t k,
                            std::optional<std::int64_t> g = std::nullopt) {
  return std::make_shared<const field_ctx>(q, k, g);
}

}  // namespace heffter
