#include "doctest.h"

#include <set>

#include "afg/atlas.hpp"

using namespace afg;

TEST_CASE("standard forms") {
  auto sp = standard_form(parse_group_spec("Sp_2_2"));
  CHECK(sp.gram() == Matrix(make_field(2, 1), 2, 2, {0, 1, 1, 0}));
  CHECK(standard_form(parse_group_spec("SL_3_2")).kind() == FormKind::Zero);
  auto op = standard_form(parse_group_spec("O+_2_2"));
  CHECK(*op.quad() == Matrix(make_field(2, 1), 2, 2, {0, 1, 0, 0}));
  int singular = 0;
  for (Elem x = 0; x < 2; ++x)
    for (Elem y = 0; y < 2; ++y)
      if ((x || y) && op.quadratic(std::vector<Elem>{x, y}) == 0) ++singular;
  CHECK(singular == 2);
}

TEST_CASE("form preservation examples") {
  auto f2 = make_field(2, 1);
  auto sp = standard_form(parse_group_spec("Sp_2_2"));
  CHECK(preserves_form(Matrix::identity(f2, 2), sp));
  CHECK(preserves_form(Matrix(f2, 2, 2, {0, 1, 1, 0}), sp));
  auto op = standard_form(parse_group_spec("O+_2_2"));
  CHECK_FALSE(preserves_form(Matrix(f2, 2, 2, {1, 1, 0, 1}), op));
  CHECK_THROWS_AS(preserves_form(Matrix::identity(f2, 3), sp), DomainError);
}

TEST_CASE("closed order formulas") {
  CHECK(group_order(parse_group_spec("Sp_4_2")) == 720);
  CHECK(group_order(parse_group_spec("SL_2_2")) == 6);
  CHECK(group_order(parse_group_spec("SL_2_3")) == 24);
  CHECK(group_order(parse_group_spec("GU_3_2")) == 648);
  CHECK(group_order(parse_group_spec("SU_3_2")) == 216);
  CHECK(group_order(parse_group_spec("O+_4_2")) == 72);
  CHECK(group_order(parse_group_spec("O-_4_2")) == 120);
  CHECK(group_order(parse_group_spec("Sp_6_2")) == 1451520);
  CHECK_THROWS_AS(parse_group_spec("Sp_3_2"), DomainError);
  CHECK_THROWS_AS(parse_group_spec("O_4_3"), DomainError);
}

TEST_CASE("bsgs order equals formula") {
  for (const char* name : {"SL_2_2", "SL_2_3", "SL_3_2", "GL_3_2", "GL_2_3", "SL_2_4", "SL_3_3", "SL_4_2",
                           "Sp_2_2", "Sp_4_2", "Sp_6_2", "Sp_4_3", "GU_2_2", "SU_2_2", "GU_3_2", "SU_3_2",
                           "SU_4_2", "GU_3_3", "O+_4_2", "O-_4_2", "O+_6_2", "O-_6_2", "Omega+_6_2",
                           "O_3_3", "SO_3_3", "Omega_3_3", "O+_4_3", "SO-_4_3", "Omega+_4_3", "O_5_3",
                           "Omega_5_3", "O-_4_3", "Omega-_4_2", "O+_4_4", "Sp_2_4", "Sp_4_4"}) {
    CAPTURE(name);
    const auto spec = parse_group_spec(name);
    const auto gens = standard_generators(spec);
    const auto form = standard_form(spec);
    for (const auto& g : gens) CHECK(in_group(g, spec, form));
    // an unbounded run exercises the deterministic pass
    CHECK(bsgs_order(gens) == group_order(spec));
  }
  CHECK(bsgs_order({}) == 1);
}

TEST_CASE("GL_n(2) by exhaustive enumeration") {
  auto f = make_field(2, 1);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::uint64_t count = 0;
    for (std::uint32_t bits = 0; bits < (1u << (n * n)); ++bits) {
      Matrix m(f, n, n);
      for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = (bits >> k) & 1u;
      if (m.rank() == n) ++count;
    }
    CHECK(Integer(count) == group_order(GroupSpec{Family::GL, Sign::Circle, n, 2}));
  }
}

TEST_CASE("SL_2(2) closure and faithful action") {
  const GroupAtlas atlas(parse_group_spec("SL_2_2"));
  std::set<std::string> seen;
  const auto& act = atlas.action();
  atlas.chain().for_each_element([&](const Perm& p) {
    seen.insert(act.matrix(p).key());
    CHECK(act.permutation(act.matrix(p)) == p);
    return true;
  });
  CHECK(seen.size() == 6);
}

TEST_CASE("random elements") {
  const GroupAtlas atlas(parse_group_spec("SL_2_2"));
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const Matrix g = atlas.random_element(rng);
    CHECK(atlas.contains(g));
    seen.insert(g.key());
  }
  CHECK(seen.size() == 6);
  std::mt19937_64 a(5), b(5);
  CHECK(atlas.random_element(a) == atlas.random_element(b));
}

TEST_CASE("random words preserve the form") {
  for (const char* name : {"Sp_6_2", "SU_3_2", "O-_6_2", "O_5_3"}) {
    const GroupAtlas atlas(parse_group_spec(name));
    std::mt19937_64 rng(11);
    const auto& gens = atlas.generators();
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int w = 0; w < 1000; ++w) {
      Matrix g = Matrix::identity(atlas.form().field(), atlas.spec().n);
      for (int k = 0; k < 8; ++k) g = g * gens[pick(rng)];
      CHECK(atlas.contains(g));
    }
  }
}
