#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace heffter {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_prime : error {
  explicit not_prime(std::int64_t q)
      : error("not a prime: " + std::to_string(q)), q(q) {}
  std::int64_t q;
};

struct not_primitive : error {
  not_primitive(std::int64_t g, std::int64_t q)
      : error(std::to_string(g) + " is not a primitive root of " +
              std::to_string(q)),
        g(g), q(q) {}
  std::int64_t g, q;
};

struct zero_element : error {
  zero_element() : error("zero has no discrete logarithm") {}
};

struct not_admissible : error {
  not_admissible(std::int64_t q, std::int64_t k)
      : error("q=" + std::to_string(q) + " is not admissible for k=" +
              std::to_string(k) + " (need q prime, q == 2k+1 mod 4k)"),
        q(q), k(k) {}
  std::int64_t q, k;
};

struct nonzero_first_sign : error {
  nonzero_first_sign() : error("sign vector must have alpha_0 = 0") {}
};

struct zero_entry : error {
  zero_entry(std::size_t row, std::size_t col)
      : error("zero entry at row " + std::to_string(row + 1) + ", column " +
              std::to_string(col)),
        row(row), col(col) {}
  std::size_t row, col;
};

struct invalid_hdm : error {
  explicit invalid_hdm(const std::string& what) : error(what) {}
};

struct not_in_subgroup : error {
  explicit not_in_subgroup(std::int64_t x)
      : error("multiplier " + std::to_string(x) +
              " is not in the index-2k subgroup"),
        x(x) {}
  std::int64_t x;
};

struct ambiguous_cell : error {
  ambiguous_cell(std::size_t i, std::size_t j)
      : error("blocks " + std::to_string(i) + " and " + std::to_string(j) +
              " share more than one element"),
        i(i), j(j) {}
  std::size_t i, j;
};

struct no_simple_ordering : error {
  no_simple_ordering() : error("block admits no simple ordering") {}
};

struct not_simple : error {
  explicit not_simple(std::size_t block)
      : error("block " + std::to_string(block) +
              " has repeated partial sums"),
        block(block) {}
  std::size_t block;
};

}  // namespace heffter
