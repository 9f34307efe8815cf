#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afg/matrix.hpp"

namespace afg {

enum class FormKind { Zero, Symplectic, Quadratic, Unitary };
enum class Sign { Plus, Minus, Circle };

enum class Family { GL, SL, Sp, GU, SU, O, SO, Omega };

struct GroupSpec {
  Family family = Family::GL;
  Sign sign = Sign::Circle;  // meaningful for O, SO, Omega only
  std::size_t n = 0;
  std::uint32_t q = 0;

  bool operator==(const GroupSpec&) const = default;
};

const char* to_string(Family f);
std::string to_string(const GroupSpec& spec);
// "FAMILY[EPS]_N_Q", e.g. Sp_6_2, O+_8_2, SU_4_2, Omega-_6_3, O_5_3.
GroupSpec parse_group_spec(const std::string& text);
void validate(const GroupSpec& spec);

bool is_orthogonal(Family f);
bool is_unitary(Family f);
FormKind form_kind(Family f);

/// A space GF(q^delta)^n with the form its classical group preserves.
///
/// Standard coordinates: hyperbolic vectors e_1..e_h, then their partners
/// f_1..f_h, then the anisotropic remainder (dimension 0, 1 or 2).
/// Quadratic forms carry an upper-triangular quad matrix Q with
/// Q(v) = v^T Q v and gram = Q + Q^T in every characteristic.
class FormedSpace {
 public:
  FormedSpace(FormKind kind, Sign sign, std::size_t n, std::uint32_t q);
  FormedSpace(FormKind kind, Sign sign, std::uint32_t q, Matrix gram, std::optional<Matrix> quad);

  FormKind kind() const { return kind_; }
  Sign sign() const { return sign_; }
  std::size_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  unsigned delta() const { return kind_ == FormKind::Unitary ? 2 : 1; }
  const FieldPtr& field() const { return field_; }
  const Matrix& gram() const { return gram_; }
  const std::optional<Matrix>& quad() const { return quad_; }
  // Number of hyperbolic pairs in the standard basis (the Witt index).
  std::size_t witt_index() const { return witt_; }

  // The field automorphism applied to the second argument of the form:
  // x -> x^q for unitary spaces, identity otherwise.
  Elem sigma(Elem a) const;
  Elem bilinear(std::span<const Elem> u, std::span<const Elem> v) const;
  Elem quadratic(std::span<const Elem> v) const;
  // Q(v) == 0 for quadratic spaces, B(v, v) == 0 for unitary, always true
  // for the zero and symplectic kinds.
  bool singular(std::span<const Elem> v) const;
  bool totally_singular(const Matrix& rows) const;

 private:
  void check_invariants() const;

  FormKind kind_;
  Sign sign_;
  std::size_t n_;
  std::uint32_t q_;
  FieldPtr field_;
  Matrix gram_;
  std::optional<Matrix> quad_;
  std::size_t witt_ = 0;
};

FormedSpace standard_form(const GroupSpec& spec);
// Standard form of a given kind; sign is ignored unless kind is Quadratic.
FormedSpace standard_space(FormKind kind, Sign sign, std::size_t n, std::uint32_t q);

// Upper-triangular fold: M_ij + M_ji above the diagonal, M_ii on it.
Matrix upper_fold(const Matrix& m);

bool preserves_form(const Matrix& g, const FormedSpace& f);
// Form preservation plus the family's determinant condition.
// Omega membership is approximated by SO membership (spinor norm and
// Dickson invariant are not tested).
bool in_group(const Matrix& g, const GroupSpec& spec, const FormedSpace& f);

Integer group_order(const GroupSpec& spec);
// |Z(G) ∩ scalars|, used to pass between matrix and projective orders.
Integer scalar_subgroup_order(const GroupSpec& spec);

}  // namespace afg
