#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "afg/atlas.hpp"

namespace afg {

// Subspaces are m x n matrices in reduced row echelon form; rows span U.

// Visits every totally singular m-subspace once, ordered by pivot set and
// then by the entries of each row. Stops early when f returns false.
void for_each_totally_singular(const FormedSpace& space, std::size_t m,
                               const std::function<bool(const Matrix&)>& f);
// Materialized list; raises cap-exceeded above caps.subspaces.
std::vector<Matrix> enumerate_totally_singular(const FormedSpace& space, std::size_t m,
                                               const Caps& caps = default_caps());

// g U = U for the column action of g; U in echelon form.
bool stabilizes(const Matrix& g, const Matrix& U);
// Echelon form of g U.
Matrix image_subspace(const Matrix& g, const Matrix& U);
// <e_1, .., e_m>, the first m hyperbolic basis vectors.
Matrix standard_subspace(const FormedSpace& space, std::size_t m);

// Totally singular m-spaces invariant under every listed element.
Integer fix_count(const std::vector<Matrix>& elements, const FormedSpace& space, std::size_t m,
                  const Caps& caps = default_caps());

/// The conjugacy class x^G, materialized by breadth-first conjugation under
/// the generators of G.
struct ClassData {
  Matrix representative;
  std::vector<Matrix> members;
  std::unordered_map<std::string, std::size_t> index;  // Matrix::key() -> member

  Integer size() const { return Integer(members.size()); }
  bool contains(const Matrix& g) const { return index.count(g.key()) != 0; }
};

ClassData class_size(const Matrix& x, const std::vector<Matrix>& gens, const Caps& caps = default_caps());
ClassData class_size(const Matrix& x, const GroupAtlas& atlas, const Caps& caps = default_caps());
Integer class_intersection(const ClassData& cd, const std::function<bool(const Matrix&)>& member);

/// Conjugates of a Klein four-subgroup <y1, y2>, keyed by the sorted keys of
/// its three involutions.
struct KleinClass {
  std::vector<std::array<Matrix, 2>> members;
  Integer size() const { return Integer(members.size()); }
};

KleinClass klein_class(const Matrix& y1, const Matrix& y2, const std::vector<Matrix>& gens,
                       const Caps& caps = default_caps());

/// The G-orbit Omega of the standard m-space, with a membership index.
struct SubspaceOrbit {
  std::vector<Matrix> points;
  std::unordered_map<std::string, std::size_t> index;
};

SubspaceOrbit subspace_orbit(const Matrix& U, const std::vector<Matrix>& gens, const Caps& caps = default_caps());

struct FprReport {
  std::size_t m = 0;
  Integer omega_size;     // |Omega|
  Integer fix;            // fixed points of x (or of every element of S)
  Integer class_size;     // |x^G| or |S^G|
  Integer intersection;   // |x^G ∩ Stab(w0)| or |{S^t <= Stab(w0)}|
  Integer lhs, rhs;       // fix * class_size and |Omega| * intersection
  bool holds = false;
  bool transitive = false;  // Omega equals the set of all totally singular m-spaces
  Rational fpr;           // fix / |Omega|
};

FprReport fpr_check(const Matrix& x, const GroupAtlas& atlas, std::size_t m, const Caps& caps = default_caps());
FprReport fpr_check(const Matrix& y1, const Matrix& y2, const GroupAtlas& atlas, std::size_t m,
                    const Caps& caps = default_caps());

struct ExponentTarget {
  std::string source;  // which bound the exponent belongs to
  Rational f;
};

struct ParabolicReport {
  std::size_t m = 0;
  bool klein = false;
  FprReport x;
  FprReport y;  // y alone, or the Klein subgroup
  Rational product;  // fpr(x) * fix(y) (or fix(K))
  // exact identity: the criterion term |G:M| |x^G ∩ M|/|x^G| |y^G ∩ M|/|y^G|
  // computed independently equals the product
  bool product_identity_holds = false;
  std::vector<ExponentTarget> targets;
  double measured_fpr_exponent = 0;   // log_q fpr(x)
  double measured_fix_exponent = 0;   // log_q fix(y or K)
  double measured_product_exponent = 0;
};

// Exponent tables of the parabolic fixed-point bounds, emitted verbatim.
std::vector<ExponentTarget> parabolic_targets(const GroupSpec& spec, std::size_t m, bool klein);

ParabolicReport parabolic_bound_report(const Matrix& x, const Matrix& y, const GroupAtlas& atlas, std::size_t m,
                                       const Caps& caps = default_caps());
ParabolicReport parabolic_bound_report(const Matrix& x, const Matrix& y1, const Matrix& y2, const GroupAtlas& atlas,
                                       std::size_t m, const Caps& caps = default_caps());

}  // namespace afg
