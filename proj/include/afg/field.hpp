#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "afg/common.hpp"

namespace afg {

// Canonical integer encoding of an element of GF(p^e): the coefficient
// vector c_0 + c_1 x + ... read as base-p digits, c_0 least significant.
using Elem = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^e) with p^e <= 2^16. The modulus is the least monic irreducible
/// polynomial of degree e under the base-p encoding of its coefficients, so
/// two constructions with equal (p, e) always agree.
///
/// Addition works digit-wise on the encoding; multiplication goes through
/// log/antilog tables built from the least primitive element.
class Field {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 16;

  // Instances are interned: make(p, e) returns the same pointer for equal
  // arguments, which is what makes the mixed-field check a pointer compare.
  static FieldPtr make(unsigned p, unsigned e);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t size() const { return size_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }
  Elem primitive() const { return primitive_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    if (!add_table_.empty()) return add_table_[a * size_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  // a^(p^k)
  Elem frobenius(Elem a, unsigned k) const;
  // Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }
  // Image of the integer n under Z -> GF(p).
  Elem from_int(long long n) const;

  bool is_square(Elem a) const;
  std::string name() const;

 private:
  Field(unsigned p, unsigned e);
  Elem add_digits(Elem a, Elem b) const;

  unsigned p_;
  unsigned e_;
  std::uint32_t size_;
  std::vector<unsigned> modulus_;  // length e + 1, monic
  Elem primitive_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;
};

FieldPtr make_field(unsigned p, unsigned e);
// GF(q) for a prime power q.
FieldPtr field_of_order(std::uint32_t q);
bool is_prime(std::uint64_t n);
// (p, e) with p^e == q, or nullopt-like {0, 0}.
std::pair<unsigned, unsigned> prime_power(std::uint64_t q);

// Value type carrying its field, for callers that want checked arithmetic.
// Bulk code (matrices, enumeration) works on raw Elem with a shared FieldPtr.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  bool operator==(const FieldElement& o) const {
    return field_ == o.field_ && value_ == o.value_;
  }

 private:
  void same_field(const FieldElement& o) const;

  FieldPtr field_;
  Elem value_;
};

FieldElement frobenius(const FieldElement& a, unsigned k);

}  // namespace afg
