#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "afg/common.hpp"
#include "afg/perm.hpp"

namespace afg {

struct SchreierSimsOptions {
  // Preferred base points, tried in order before any other moved point.
  std::vector<std::uint32_t> base_candidates;
  // An upper bound for the group order known to the caller (for example
  // |G| when the generators lie in G). Reaching it certifies completeness.
  std::optional<Integer> order_bound;
  bool randomized = true;
  std::uint64_t seed = 0x5eed;
  // Consecutive successful random sifts before the deterministic pass.
  unsigned random_sift_streak = 24;
};

/// Base and strong generating set of a permutation group.
///
/// Built by a randomized Schreier-Sims phase followed by a deterministic
/// pass over all Schreier generators, unless the order bound is reached
/// first. Transversals are stored explicitly (as inverses), so memory is
/// roughly sum(|orbit_i|) * degree words.
class StabilizerChain {
 public:
  StabilizerChain(std::vector<Perm> gens, std::size_t degree, const SchreierSimsOptions& options = {});

  std::size_t degree() const { return degree_; }
  Integer order() const;
  std::vector<std::uint32_t> base() const;
  std::vector<std::size_t> orbit_lengths() const;
  bool contains(const Perm& g) const;
  const std::vector<Perm>& generators() const { return input_gens_; }

  // Visits every group element exactly once. Stops early if f returns false.
  void for_each_element(const std::function<bool(const Perm&)>& f) const;

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> where;  // point -> index in orbit, or -1
    std::vector<Perm> inverse_transversal;
    std::vector<std::vector<char>> checked;  // [local gen][orbit index]
  };

  struct Sifted {
    Perm residue;
    std::size_t level;
  };

  Sifted strip(Perm g, std::size_t from) const;
  void add_strong_generator(Perm h, std::size_t first_level, std::size_t last_level);
  void add_to_level(std::size_t level, std::size_t strong_index);
  void new_level(std::size_t strong_index);
  std::uint32_t pick_base_point(const Perm& h) const;
  void randomized_phase(const SchreierSimsOptions& options);
  void deterministic_phase();
  bool bound_reached() const;

  std::size_t degree_;
  std::vector<Perm> input_gens_;
  std::vector<Perm> strong_;
  std::vector<Perm> strong_inv_;
  std::vector<Level> levels_;
  std::vector<std::uint32_t> base_candidates_;
  std::optional<Integer> bound_;
};

}  // namespace afg
