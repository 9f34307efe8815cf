#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "afg/atlas.hpp"

namespace afg {

/// A matrix group materialized as a permutation group on nonzero vectors.
struct PermGroup {
  VectorAction action;
  StabilizerChain chain;

  PermGroup(const std::vector<Matrix>& gens, std::optional<Integer> bound = std::nullopt);
  explicit PermGroup(const GroupAtlas& atlas);
  const Integer& order() const { return order_; }

 private:
  Integer order_;
};

// |{g : |g| = s}| by enumerating every element. Raises cap-exceeded above
// caps.group_elements.
Integer count_order_elements(const PermGroup& g, std::uint64_t s, const Caps& caps = default_caps());
Integer count_order_elements(const std::vector<Matrix>& gens, std::uint64_t s, const Caps& caps = default_caps());

// All involutions of the group, as permutations.
std::vector<Perm> involutions(const PermGroup& g, const Caps& caps = default_caps());

struct KleinCount {
  Integer subgroups;        // unordered commuting pairs / 3
  Integer commuting_pairs;  // unordered pairs {x, y} of distinct commuting involutions
  Integer distinct_triples; // independently collected sets {x, y, xy}
};

KleinCount count_klein_subgroups(const PermGroup& g, const Caps& caps = default_caps());
KleinCount count_klein_subgroups(const std::vector<Matrix>& gens, const Caps& caps = default_caps());

// Klein four-subgroups of S_n by the centralizer decomposition over cycle
// types of involutions.
Integer sn_klein_count(unsigned n);
// Elements of S_t of order dividing 4, summed over cycle types in {1,2,4}.
Integer sn_order4_count(unsigned t);
// Literal enumeration of S_n (n <= 10).
Integer sn_klein_oracle(unsigned n);
Integer sn_order4_oracle(unsigned t);

// Q_i(j) = prod_{k<i} (q^j - q^k)
Integer q_product(unsigned i, unsigned j, std::uint64_t q);
// Number of b x c matrices of rank r over GF(q).
Integer rank_count(unsigned b, unsigned c, unsigned r, std::uint64_t q);
// Number of pairs (A, B), A in M_{b,c}, B in M_{c,d}, with AB = 0.
Integer psi(unsigned b, unsigned c, unsigned d, std::uint64_t q);
Integer psi_oracle(unsigned b, unsigned c, unsigned d, std::uint32_t q, const Caps& caps = default_caps());

// Number of totally singular m-subspaces, by closed formula.
Integer totally_singular_count(const FormedSpace& space, std::size_t m);
// Gaussian binomial [n choose m]_q.
Integer gaussian_binomial(unsigned n, unsigned m, const Integer& q);

struct JordanType {
  std::array<unsigned, 4> l{};  // l[i-1] blocks of size i
  unsigned dimension() const { return l[0] + 2 * l[1] + 3 * l[2] + 4 * l[3]; }
};

// J_{s,i}: the i x i block matrix with I_s on the diagonal and subdiagonal,
// conjugate to s copies of the Jordan block J_i.
Matrix block_jordan(unsigned s, unsigned i, const FieldPtr& field);
// The unipotent element sum_i J_{l_i, i}.
Matrix unipotent_element(const JordanType& t, const FieldPtr& field);

struct CentralizerReport {
  Integer order;     // |C_{GL_m(q)}(u)|
  unsigned exponent; // sum i l_i^2 + 2 sum_{i<j} i l_i l_j
  bool in_window;    // q^(exponent - m) <= order <= q^exponent
};

// Exact value by enumerating the centralizer algebra {X : Xu = uX}.
CentralizerReport unipotent_centralizer_order(const JordanType& t, std::uint32_t q, const Caps& caps = default_caps());
// Literal enumeration of GL_m(q) (q^(m^2) matrices).
Integer unipotent_centralizer_oracle(const JordanType& t, std::uint32_t q, const Caps& caps = default_caps());
// q^{2 sum_{i<j} i l_i l_j + sum (i-1) l_i^2} prod |GL_{l_i}(q)|
Integer unipotent_centralizer_formula(const JordanType& t, std::uint64_t q);

// Block matrices [[a, b, c], [0, d, e], [0, 0, a]] with a in M_l, d in
// M_{m-2l}, lambda^2 = 0, rank a = l1, rank d = l2.
Integer nilpotent_block_count(unsigned l1, unsigned l2, unsigned l, unsigned m, std::uint32_t q,
                              const Caps& caps = default_caps());
// Filter of all m x m matrices by shape, square-zero and both ranks.
Integer nilpotent_block_oracle(unsigned l1, unsigned l2, unsigned l, unsigned m, std::uint32_t q,
                               const Caps& caps = default_caps());
// 4 l1 (l-l1) + 2 l2 (m-2l-l2) + 2 (l-l1)(m-2l-l2) + 2 l1 l2
long nilpotent_bound_exponent(unsigned l1, unsigned l2, unsigned l, unsigned m);

struct CountReport {
  std::string group;
  std::string statistic;
  Integer value;
  // log_q(value) / log_q(|G|), rounded to a rational with denominator 10^6
  std::optional<Rational> exponent;
  std::string window;
};

CountReport make_report(const std::string& group, const std::string& statistic, const Integer& value,
                        const Integer& group_order, const std::string& window);

}  // namespace afg
