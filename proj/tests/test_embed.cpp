#include "doctest.h"

#include "afg/embed.hpp"

using namespace afg;

TEST_CASE("two-group parsing and tables") {
  const auto c2c4 = TwoGroup::parse("C2xC4");
  CHECK(c2c4.order() == 8);
  CHECK(c2c4.elements_of_order(2) == std::vector<std::uint32_t>{1, 4, 5});
  CHECK(c2c4.elements_of_order(4).size() == 4);
  CHECK(TwoGroup::parse("C2^3").order() == 8);
  CHECK_THROWS_AS(TwoGroup::parse("C3"), DomainError);
  CHECK_THROWS_AS(TwoGroup::parse("C1"), DomainError);
  CHECK_THROWS_AS(TwoGroup::parse("D8"), DomainError);
  // quaternion group from an explicit table: 1,i,j,k,-1,-i,-j,-k
  std::vector<std::vector<std::uint32_t>> q8(8, std::vector<std::uint32_t>(8));
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
  for (std::uint32_t u = 0; u < 8; ++u)
    for (std::uint32_t v = 0; v < 8; ++v) {
      const int base = unit[u % 4][v % 4];
      const bool neg = (u >= 4) != (v >= 4);
      q8[u][v] = static_cast<std::uint32_t>(neg ? (base + 4) % 8 : base);
    }
  const TwoGroup Q8(q8, "Q8");
  CHECK(Q8.elements_of_order(2).size() == 1);
  CHECK_FALSE(Q8.first_klein_pair());
  auto bad = q8;
  std::swap(bad[1][2], bad[1][3]);
  CHECK_THROWS_AS(TwoGroup(bad, "bad"), DomainError);
}

TEST_CASE("regular representation") {
  auto f2 = make_field(2, 1);
  const auto c2 = regular_representation(TwoGroup::parse("C2"), f2);
  CHECK(c2[1] == Matrix(f2, 2, 2, {0, 1, 1, 0}));
  const auto c4 = regular_representation(TwoGroup::parse("C4"), f2);
  CHECK(c4[1].order() == 4);
  const auto v4 = regular_representation(TwoGroup::parse("C2xC2"), f2);
  CHECK(v4[1] * v4[2] == v4[2] * v4[1]);
  CHECK(v4[1] * v4[2] == v4[3]);
  CHECK((v4[1] * v4[1]).is_identity());
  for (std::size_t j = 0; j < 4; ++j) CHECK(v4[1](j, j) == 0);
}

TEST_CASE("almost-free decomposition") {
  auto d = almost_free_decompose(6, 2);
  CHECK(d.k == 2);
  CHECK(d.s == 2);
  d = almost_free_decompose(13, 2);
  CHECK(d.k == 4);
  CHECK(d.s == 5);
  try {
    almost_free_decompose(5, 2);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::RankTooSmall);
  }
  // uniqueness by exhaustive search
  for (std::size_t a : {2u, 4u, 8u})
    for (std::size_t n = 2 * a + 2; n < 60; ++n) {
      int solutions = 0;
      for (std::size_t k = 2; k * a <= n; k += 2) {
        const std::size_t s = n - k * a;
        if (s >= 2 && s < 2 * a + 2) ++solutions;
      }
      CHECK(solutions == 1);
      const auto dd = almost_free_decompose(n, a);
      CHECK(dd.k * a + dd.s == n);
    }
}

TEST_CASE("embedding examples") {
  const auto e = embed_almost_free(TwoGroup::parse("C2"), parse_group_spec("Sp_6_2"));
  const Matrix id = Matrix::identity(e.form.field(), 6);
  CHECK((e.image(1) - id).rank() == 2);
  CHECK(preserves_form(e.image(1), e.form));
  CHECK(e.check().all());

  const auto c4 = embed_almost_free(TwoGroup::parse("C4"), parse_group_spec("Sp_10_2"));
  CHECK(c4.image(1).order() == 4);
  CHECK(c4.check().fixed_space_dim == 4);

  CHECK_THROWS_AS(embed_almost_free(TwoGroup::parse("C4"), parse_group_spec("Sp_6_2")), DomainError);

  const auto v4 = embed_almost_free(TwoGroup::parse("C2xC2"), parse_group_spec("SL_10_2"));
  const auto k = klein_subgroup(v4);
  CHECK(k.u == 1);
  CHECK(k.v == 2);
  CHECK(k.y1 * k.y2 == k.y2 * k.y1);
  CHECK_FALSE((k.y1 * k.y2).is_identity());

  const auto c2c4 = embed_almost_free(TwoGroup::parse("C2xC4"), parse_group_spec("Sp_18_2"));
  const auto kk = klein_subgroup(c2c4);
  CHECK(kk.u == 1);        // the C2 generator
  CHECK(kk.v == 4);        // square of the C4 generator
  CHECK_THROWS_AS(klein_subgroup(embed_almost_free(TwoGroup::parse("C4"), parse_group_spec("SL_10_2"))),
                  DomainError);
}

TEST_CASE("embedding contract over families and fields") {
  for (const char* grp : {"C2", "C4", "C2xC2"})
    for (const char* fam : {"SL", "Sp", "O+", "O-", "SU", "GU", "O"})
      for (unsigned q : {2u, 3u}) {
        const auto g = TwoGroup::parse(grp);
        for (std::size_t n = 2 * g.order() + 2; n <= 2 * g.order() + 6; ++n) {
          GroupSpec spec;
          try {
            spec = parse_group_spec(std::string(fam) + "_" + std::to_string(n) + "_" + std::to_string(q));
          } catch (const DomainError&) {
            continue;
          }
          CAPTURE(to_string(spec));
          CAPTURE(grp);
          CHECK(embed_almost_free(g, spec).check().all());
        }
      }
}
