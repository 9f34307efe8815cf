#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afg/forms.hpp"

namespace afg {

/// A finite 2-group given by its multiplication table on 0..a-1, with 0 the
/// identity.
class TwoGroup {
 public:
  // Table checked for associativity, identity, inverses and 2-power orders.
  TwoGroup(std::vector<std::vector<std::uint32_t>> table, std::string tag);

  // Direct product of cyclic groups of the given orders. Element index is
  // mixed radix over the factors, first factor least significant.
  static TwoGroup cyclic_product(const std::vector<std::uint32_t>& factors);
  // "C2", "C4", "C2xC2", "C2xC4", ...
  static TwoGroup parse(const std::string& text);

  std::uint32_t order() const { return static_cast<std::uint32_t>(table_.size()); }
  std::uint32_t mul(std::uint32_t u, std::uint32_t v) const { return table_[u][v]; }
  std::uint32_t inverse(std::uint32_t u) const { return inverse_[u]; }
  std::uint32_t element_order(std::uint32_t u) const { return orders_[u]; }
  const std::string& tag() const { return tag_; }
  // Indices of elements of the given order, increasing.
  std::vector<std::uint32_t> elements_of_order(std::uint32_t s) const;
  // First commuting pair u < v of distinct involutions, if any.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> first_klein_pair() const;

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> orders_;
  std::string tag_;
};

struct Decomposition {
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t k = 0;
  std::size_t s = 0;
};

// The unique n = k a + s with k even, k >= 2 and 2 <= s < 2a + 2.
// Raises rank-too-small when n < 2a + 2.
Decomposition almost_free_decompose(std::size_t n, std::size_t a);

// Left-regular permutation matrices over the given field, indexed by element.
std::vector<Matrix> regular_representation(const TwoGroup& g, const FieldPtr& field);

struct EmbeddingCheck {
  bool homomorphism = false;
  bool injective = false;
  bool preserves_form = false;
  bool in_group = false;
  std::size_t fixed_space_dim = 0;
  bool fixed_space_ok = false;
  // For involutions in characteristic 2: every rank(x - I) equals k a / 2.
  bool involution_rank_ok = true;
  bool all() const {
    return homomorphism && injective && preserves_form && in_group && fixed_space_ok && involution_rank_ok;
  }
};

/// A 2-group embedded almost-freely: V restricted to the group is k/2 copies
/// of R + R (R the regular module, the two copies paired hyperbolically)
/// plus an s-dimensional trivial summand carrying a standard form of the
/// target's kind. Images are in the standard coordinates of the target.
struct Embedding {
  TwoGroup group;
  GroupSpec target;
  FormedSpace form;
  Decomposition decomposition;
  std::vector<Matrix> images;

  const Matrix& image(std::uint32_t u) const { return images.at(u); }
  EmbeddingCheck check() const;
};

Embedding embed_almost_free(const TwoGroup& g, const GroupSpec& target);

struct KleinPair {
  std::uint32_t u, v;  // element indices
  Matrix y1, y2;
};

KleinPair klein_subgroup(const Embedding& e);

}  // namespace afg
