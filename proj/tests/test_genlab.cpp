#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "afg/census.hpp"
#include "afg/genlab.hpp"

using namespace afg;

namespace {

const std::string data_dir = AFG_DATA_DIR;

Matrix sp4_x() { return parse_matrix("4 4 2; 1 0 0 0 0 1 0 1 0 0 1 0 0 0 0 1"); }
Matrix sp4_y() { return parse_matrix("4 4 2; 1 0 0 0 1 1 0 0 0 1 1 1 0 1 0 1"); }

}  // namespace

TEST_CASE("generation test") {
  const GroupAtlas sl22(parse_group_spec("SL_2_2"));
  auto f2 = sl22.form().field();
  const Matrix a(f2, 2, 2, {1, 1, 0, 1}), b(f2, 2, 2, {1, 0, 1, 1});
  CHECK(generates(a, b, sl22));
  CHECK_FALSE(generates(a, a, sl22));
  CHECK_FALSE(generates(Matrix::identity(f2, 2), a, sl22));
  CHECK_FALSE(generates(std::vector<Matrix>{}, sl22));

  const GroupAtlas sp4(parse_group_spec("Sp_4_2"));
  std::mt19937_64 rng(3);
  const auto& g = sp4.generators();
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = g[rng() % g.size()].pow(1 + rng() % 3);
    const Matrix y = sp4.random_element(rng);
    const Matrix c = sp4.random_element(rng);
    CHECK(generates(x, y, sp4) == generates(conjugate(x, c), conjugate(y, c), sp4));
  }
}

TEST_CASE("experiment contract") {
  const GroupAtlas sp6(parse_group_spec("Sp_6_2"));
  try {
    run_generation_experiment(sp6, TwoGroup::parse("C2"), TwoGroup::parse("C4"), 5, 7);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::RankTooSmall);
  }
  CHECK_THROWS_AS(run_generation_experiment(sp6, TwoGroup::parse("C2"), TwoGroup::parse("C2"), 5, 7), DomainError);

  const GroupAtlas sp10(parse_group_spec("Sp_10_2"));
  const auto empty = run_generation_experiment(sp10, TwoGroup::parse("C2"), TwoGroup::parse("C4"), 0, 7);
  CHECK(empty.per_trial.empty());
  CHECK_FALSE(empty.frequency());
  CHECK(empty.successes() == 0);
  CHECK_FALSE(empty.klein);
}

TEST_CASE("sampling is deterministic and samples conjugates") {
  const GroupAtlas sl3(parse_group_spec("SL_3_2"));
  auto f2 = sl3.form().field();
  const Matrix x(f2, 3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1});
  const Matrix y = unipotent_element(JordanType{{0, 0, 1, 0}}, f2);
  const auto r1 = sample_generation(sl3, x, {y}, 20, 42);
  const auto r2 = sample_generation(sl3, x, {y}, 20, 42);
  REQUIRE(r1.size() == 20);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].generated == r2[i].generated);
    CHECK(r1[i].order_found == r2[i].order_found);
    CHECK(168 % r1[i].order_found == 0);
    hits += r1[i].generated;
  }
  CHECK(hits >= 1);
}

TEST_CASE("criterion sums") {
  CHECK(criterion_sum({}, 3, 3, CriterionMode::Order4) == 0);
  SubgroupCatalogEntry e;
  e.label = "P";
  e.index = 15;
  e.intersect_x = 1;
  e.intersect_y = 1;
  CHECK(criterion_sum({e}, 3, 3, CriterionMode::Order4) == Rational(5, 3));
  CHECK_THROWS_AS(criterion_sum({e}, 3, 3, CriterionMode::Klein), DomainError);
  e.class_count = 2;
  CHECK(criterion_sum({e}, 3, 3, CriterionMode::Order4) == Rational(10, 3));
}

TEST_CASE("parabolic catalog of Sp_4(2) matches the flagfix products") {
  const GroupAtlas sp4(parse_group_spec("Sp_4_2"));
  const Matrix x = sp4_x(), y = sp4_y();
  REQUIRE(sp4.contains(x));
  REQUIRE(sp4.contains(y));
  REQUIRE(x.order() == 2);
  REQUIRE(y.order() == 4);
  const auto cat = parabolic_catalog(sp4, x, {y});
  REQUIRE(cat.size() == 2);
  Rational direct = 0;
  for (std::size_t m = 1; m <= 2; ++m) {
    const auto r = parabolic_bound_report(x, y, sp4, m);
    CHECK(r.product_identity_holds);
    direct += r.product;
  }
  const Integer xc = class_size(x, sp4).size(), yc = class_size(y, sp4).size();
  CHECK(criterion_sum(cat, xc, yc, CriterionMode::Order4) == direct);

  const auto stored = read_catalog(data_dir + "/catalogs/sp4_2_parabolic.csv");
  REQUIRE(stored.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(stored[i].index == cat[i].index);
    CHECK(stored[i].intersect_x == cat[i].intersect_x);
    CHECK(stored[i].intersect_y == cat[i].intersect_y);
  }
}

TEST_CASE("complete SL_3(2) catalog") {
  const GroupAtlas sl3(parse_group_spec("SL_3_2"));
  auto f2 = sl3.form().field();
  const Matrix x(f2, 3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1});
  const Matrix y = unipotent_element(JordanType{{0, 0, 1, 0}}, f2);
  const auto cat = read_catalog(data_dir + "/catalogs/sl3_2_maximal.csv");
  REQUIRE(cat.size() == 3);
  const auto derived = parabolic_catalog(sl3, x, {y});
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(cat[i].index == derived[i].index);
    CHECK(cat[i].intersect_x == derived[i].intersect_x);
    CHECK(cat[i].intersect_y == derived[i].intersect_y);
  }
  // the 7:3 row: its generators give a group of order 168/8 with no involutions
  const auto i2 = i2_ratio_report(cat[2], sl3);
  CHECK(i2.i2_M == 0);
  std::ifstream in(cat[2].generators_file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(bsgs_order(parse_matrix_list(ss.str())) == 21);
  const auto xc = class_size(x, sl3).size(), yc = class_size(y, sl3).size();
  CHECK(xc == 21);
  CHECK(yc == 42);
  const Rational s = criterion_sum(cat, xc, yc, CriterionMode::Order4);
  CHECK(s < 1);
  std::size_t hits = 0;
  for (const auto& t : sample_generation(sl3, x, {y}, 50, 1)) hits += t.generated;
  CHECK(hits >= 1);
}

TEST_CASE("zeta") {
  CHECK(zeta({}, 1.0) == 0.0);
  SubgroupCatalogEntry a, b;
  a.index = 2;
  b.index = 3;
  CHECK(zeta({a, b}, 1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  const auto cat = read_catalog(data_dir + "/catalogs/sl3_2_maximal.csv");
  double prev = zeta(cat, 0.25);
  for (double s = 0.5; s <= 4.0; s += 0.25) {
    const double z = zeta(cat, s);
    CHECK(z <= prev);
    prev = z;
  }
  CHECK_THROWS_AS(zeta(cat, 0.0), DomainError);
}

TEST_CASE("involution ratio") {
  const auto same = i2_ratio_report("G", 21, 21, 1);
  CHECK(same.ratio == 1);
  CHECK(same.exponent == 0.0);
  const GroupAtlas sl3(parse_group_spec("SL_3_2"));
  const auto cat = read_catalog(data_dir + "/catalogs/sl3_2_subgroups.csv");
  const auto r = i2_ratio_report(cat[0], sl3);
  CHECK(r.i2_M == count_order_elements(
                      parse_matrix_list("3 3 2; 1 1 0 0 1 0 0 0 1\n3 3 2; 1 0 0 1 1 0 0 0 1\n"), 2));
  CHECK(r.i2_G == count_order_elements(PermGroup(sl3), 2));
  CHECK(r.ratio == Rational(r.i2_M, r.i2_G));
  CHECK(r.ratio_ok);
  try {
    i2_ratio_report(cat[1], sl3);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::MissingData);
  }
}

TEST_CASE("catalog parsing") {
  const auto cat = parse_catalog(
      "label,index,class_count,intersect_x,intersect_y,intersect_K,generators_file,provenance\n"
      "\"C2, imprimitive\",10,2,1,,3,,\"quoted \"\"note\"\"\"\n");
  REQUIRE(cat.size() == 1);
  CHECK(cat[0].label == "C2, imprimitive");
  CHECK(cat[0].class_count == 2);
  CHECK_FALSE(cat[0].intersect_y);
  CHECK(*cat[0].intersect_K == 3);
  CHECK(cat[0].provenance == "quoted \"note\"");
  CHECK(parse_catalog(write_catalog(cat))[0].provenance == cat[0].provenance);
  CHECK_THROWS_AS(parse_catalog("label,index\nP,3\n"), DomainError);
  CHECK_THROWS_AS(parse_catalog("label,index,class_count,intersect_x,intersect_y,intersect_K,generators_file,"
                                "provenance\nP,1,1,,,,,x\n"),
                  DomainError);
  try {
    read_catalog(data_dir + "/catalogs/missing.csv");
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::MissingData);
  }
}
