#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afg/atlas.hpp"
#include "afg/embed.hpp"
#include "afg/flagfix.hpp"

namespace afg {

/// One row of a maximal-subgroup catalog. Intersection counts are per
/// class representative M; class_count multiplies the contribution.
struct SubgroupCatalogEntry {
  std::string label;
  Integer index;
  Integer class_count = 1;
  std::optional<Integer> intersect_x, intersect_y, intersect_K;
  std::string generators_file;  // resolved against the catalog's directory
  std::string provenance;
};

using Catalog = std::vector<SubgroupCatalogEntry>;

// CSV with header label,index,class_count,intersect_x,intersect_y,intersect_K,
// generators_file,provenance. Empty cells are absent values; fields may be
// double-quoted.
Catalog read_catalog(const std::string& path);
Catalog parse_catalog(const std::string& text, const std::string& base_dir = ".");
std::string write_catalog(const Catalog& catalog);

// True iff the listed elements generate a group of order |G|.
bool generates(const std::vector<Matrix>& elements, const GroupAtlas& atlas);
bool generates(const Matrix& x, const Matrix& y, const GroupAtlas& atlas);

struct TrialResult {
  bool generated = false;
  Integer order_found;
};

struct GenerationExperiment {
  GroupSpec atlas;
  std::string A, B;
  bool klein = false;  // y replaced by a Klein four-subgroup of B
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialResult> per_trial;

  std::uint64_t successes() const;
  std::optional<double> frequency() const;
};

// Samples (x^g, y^h) (or (x^g, y1^h, y2^h)) with g, h from random_element,
// trial i driven by split_seed(seed, i).
std::vector<TrialResult> sample_generation(const GroupAtlas& atlas, const Matrix& x, const std::vector<Matrix>& y,
                                           std::uint64_t trials, std::uint64_t seed);

// x = image of the first involution of A. B of exponent >= 4 gives y = image
// of its first element of order 4; an elementary abelian B gives the Klein
// subgroup from first_klein_pair.
GenerationExperiment run_generation_experiment(const GroupAtlas& atlas, const TwoGroup& A, const TwoGroup& B,
                                               std::uint64_t trials, std::uint64_t seed);

enum class CriterionMode { Order4, Klein };

// sum over entries of class_count * index * (ix / |x^G|) * (iy / |y^G|), with
// iy = intersect_K and y_class = |K^G| in Klein mode.
Rational criterion_sum(const Catalog& catalog, const Integer& x_class, const Integer& y_class, CriterionMode mode);

// Parabolic rows P_1 .. P_top for x and y (or K = <y1, y2>), filled from the
// flagfix double-counting data. Their criterion sum is sum_m fpr(x) fix(y).
Catalog parabolic_catalog(const GroupAtlas& atlas, const Matrix& x, const std::vector<Matrix>& y,
                          const Caps& caps = default_caps());

double zeta(const Catalog& catalog, double s);

struct I2RatioReport {
  std::string label;
  Integer i2_M, i2_G, index;
  Rational ratio;
  double exponent = 0;  // log(ratio) / log(1/index)
  bool ratio_ok = false;  // ratio <= 1
};

I2RatioReport i2_ratio_report(const std::string& label, const Integer& i2_M, const Integer& i2_G,
                              const Integer& index);
// Counts involutions of M (from the entry's generators file) and of G.
I2RatioReport i2_ratio_report(const SubgroupCatalogEntry& entry, const GroupAtlas& atlas,
                              const Caps& caps = default_caps());

}  // namespace afg
