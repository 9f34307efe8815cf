#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "afg/forms.hpp"
#include "afg/schreier_sims.hpp"

namespace afg {

/// Permutation action of GL_n(F) on the nonzero vectors of F^n.
///
/// A vector v is encoded as sum v_i Q^i (Q = |F|) and its point number is
/// that code minus one, so e_j is point Q^j - 1.
class VectorAction {
 public:
  VectorAction(FieldPtr field, std::size_t n, std::uint64_t degree_cap = default_caps().action_degree);

  std::size_t degree() const { return degree_; }
  std::size_t dimension() const { return n_; }
  const FieldPtr& field() const { return field_; }

  Perm permutation(const Matrix& g) const;
  // Inverse of permutation() on the image of GL_n.
  Matrix matrix(const Perm& p) const;
  std::uint32_t point(std::span<const Elem> v) const;
  std::vector<Elem> vector(std::uint32_t point) const;
  // Points of the standard basis vectors, in index order.
  std::vector<std::uint32_t> basis_points() const;

 private:
  std::uint64_t add_codes(std::uint64_t a, std::uint64_t b) const;

  FieldPtr field_;
  std::size_t n_;
  std::size_t degree_;
};

// Exact order of <gens> via Schreier-Sims on nonzero vectors. The bound,
// when given, must be a multiple of the true order (used to stop early).
Integer bsgs_order(const std::vector<Matrix>& gens, std::optional<Integer> bound = std::nullopt);

StabilizerChain matrix_chain(const VectorAction& action, const std::vector<Matrix>& gens,
                             std::optional<Integer> bound = std::nullopt);

/// Generators of the matrix group named by spec, in the coordinates of
/// standard_form(spec). Over the F_p-basis 1, w, .., w^(e-1) of GF(q)
/// (w primitive) they are:
///   SL: elementary x_{i,i+1}(t), x_{i+1,i}(t); GL adds diag(w, 1, ..).
///   Sp: Levi elementary pairs plus the transvections f_h -> f_h + t e_h and
///       e_h -> e_h + t f_h.
///   SU/GU: Levi pairs with conjugate-transposed partner, trace-zero root
///       elements on the last hyperbolic pair, and for odd n the elements
///       of the (e_h, w, f_h) root group; GU adds a determinant generator.
///   Omega: Siegel transformations for adjacent hyperbolic pairs and for the
///       last pair against the anisotropic part; O and SO add reflections.
std::vector<Matrix> standard_generators(const GroupSpec& spec);

/// A classical group with its standard form, generators and (lazily) a
/// stabilizer chain. Thread-safe after construction.
class GroupAtlas {
 public:
  explicit GroupAtlas(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const FormedSpace& form() const { return form_; }
  const std::vector<Matrix>& generators() const { return gens_; }
  const VectorAction& action() const;
  // Closed-formula order.
  const Integer& order() const { return order_; }
  // Stabilizer chain of the generators, built on first use.
  const StabilizerChain& chain() const;
  Integer bsgs_order() const { return chain().order(); }
  bool contains(const Matrix& g) const { return in_group(g, spec_, form_); }

  // Product replacement from a fixed burned-in state, walk_length further
  // steps driven by rng.
  Matrix random_element(std::mt19937_64& rng, unsigned walk_length = 50) const;

 private:
  GroupSpec spec_;
  FormedSpace form_;
  std::vector<Matrix> gens_;
  Integer order_;

  mutable std::once_flag action_once_;
  mutable std::unique_ptr<VectorAction> action_;
  mutable std::once_flag chain_once_;
  mutable std::unique_ptr<StabilizerChain> chain_;
  std::vector<Matrix> pr_state_;  // last slot is the accumulator
};

// Independent per-trial seeds derived from one master seed.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace afg
