#pragma once

// Cyclotomic half-sets of order 2k: a sign vector alpha in {0,1}^k with
// alpha_0 = 0 selects V = V_0 u ... u V_{k-1} where V_i = (-1)^{alpha_i}
// C^{2k}_i.  Since -1 lies in C^{2k}_k, the signed class -C^{2k}_i equals
// C^{2k}_{i+k}, so membership reduces to class-index arithmetic.

#include <cstdint>
#include <optional>
#include <vector>

#include "heffter/errors.hpp"
#include "heffter/field.hpp"

namespace heffter {

class half_set {
 public:
  half_set(field_ptr field, std::vector<int> signs)
      : field_(std::move(field)), signs_(std::move(signs)) {
    if (!admissible(field_->q(), field_->k()))
      throw not_admissible(field_->q(), field_->k());
    if (static_cast<std::int64_t>(signs_.size()) != field_->k() ||
        signs_.empty() || signs_[0] != 0)
      throw nonzero_first_sign();
  }

  const field_ctx& field() const { return *field_; }
  field_ptr field_ptr_ref() const { return field_; }
  const std::vector<int>& signs() const { return signs_; }
  std::int64_t k() const { return field_->k(); }
  bool standard() const {
    for (int s : signs_)
      if (s != 0) return false;
    return true;
  }

  // class index of V_i inside the 2k cyclotomic classes
  std::int64_t class_of_part(std::int64_t i) const {
    return signs_[i] == 0 ? i : i + field_->k();
  }

  // position i with x in V_i, or nullopt if x = 0 or x not in V
  std::optional<std::int64_t> locate(elem x) const {
    if (x % field_->q() == 0) return std::nullopt;
    std::int64_t c = field_->class_index(x);
    std::int64_t k = field_->k();
    if (c < k) {
      if (signs_[c] == 0) return c;
    } else {
      if (signs_[c - k] == 1) return c - k;
    }
    return std::nullopt;
  }

  bool contains(elem x) const { return locate(x).has_value(); }

  // elements of V_i in increasing dlog order
  std::vector<elem> part(std::int64_t i) const {
    return field_->class_elements(class_of_part(i));
  }

  // all of V, parts concatenated
  std::vector<elem> elements() const {
    std::vector<elem> out;
    out.reserve((field_->q() - 1) / 2);
    for (std::int64_t i = 0; i < field_->k(); ++i)
      for (elem x : part(i)) out.push_back(x);
    return out;
  }

 private:
  field_ptr field_;
  std::vector<int> signs_;
};

inline half_set build_halfset(field_ptr field, std::vector<int> signs) {
  return half_set(std::move(field), std::move(signs));
}

inline half_set standard_halfset(field_ptr field) {
  std::vector<int> signs(field->k(), 0);
  return half_set(std::move(field), std::move(signs));
}

}  // namespace heffter
