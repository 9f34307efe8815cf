#include "doctest.h"

#include "afg/field.hpp"
#include "afg/matrix.hpp"

using namespace afg;

TEST_CASE("small prime fields") {
  auto f2 = make_field(2, 1);
  CHECK(f2->size() == 2);
  CHECK(f2->add(1, 1) == 0);
  auto f3 = make_field(3, 1);
  CHECK(f3->mul(2, 2) == 1);
  CHECK(f3->div(2, 2) == 1);
  CHECK_THROWS_AS(make_field(4, 1), DomainError);
  CHECK_THROWS_AS(make_field(2, 17), DomainError);
}

TEST_CASE("GF(4) by hand") {
  auto f = make_field(2, 2);
  // x^2 + x + 1 as coefficient list low -> high
  CHECK(f->modulus() == std::vector<unsigned>{1, 1, 1});
  const Elem w = 2, w1 = 3;
  CHECK(f->mul(w, w1) == 1);
  CHECK(f->add(w, w) == 0);
  CHECK(f->frobenius(w, 1) == w1);
  CHECK(f->frobenius(0, 3) == 0);
  CHECK(make_field(2, 1)->frobenius(1, 5) == 1);
}

TEST_CASE("interned fields and checked elements") {
  CHECK(make_field(3, 2) == make_field(3, 2));
  CHECK(make_field(3, 2)->modulus() == make_field(3, 2)->modulus());
  FieldElement a(make_field(2, 2), 2), b(make_field(2, 3), 2);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK_THROWS_AS(a / FieldElement(make_field(2, 2), 0), DomainError);
  CHECK((a * a).value() == 3);
}

// Polynomial arithmetic straight from the encoding, independent of the
// log tables the field uses for multiplication.
static Elem slow_mul(const Field& f, Elem a, Elem b) {
  const unsigned p = f.p(), e = f.e();
  std::vector<unsigned> x(e), y(e), r(2 * e, 0);
  for (unsigned i = 0; i < e; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
  const auto& m = f.modulus();
  for (unsigned d = 2 * e - 1; d >= e; --d) {
    const unsigned c = r[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= e; ++i) r[d - e + i] = (r[d - e + i] + (p - c) * m[i]) % p;
  }
  Elem v = 0;
  for (unsigned i = e; i-- > 0;) v = static_cast<Elem>(v * p + r[i]);
  return v;
}

TEST_CASE("field axioms exhaustively on small fields") {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}, {2, 4}, {2, 6}, {3, 3}}) {
    auto f = make_field(p, e);
    const std::uint32_t q = f->size();
    for (std::uint32_t a = 0; a < q; ++a) {
      if (a) CHECK(f->pow(static_cast<Elem>(a), q - 1) == 1);
      if (a) CHECK(f->mul(static_cast<Elem>(a), f->inv(static_cast<Elem>(a))) == 1);
      if (q > 64) continue;
      for (std::uint32_t b = 0; b < q; ++b) {
        const Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b);
        CHECK(f->mul(x, y) == slow_mul(*f, x, y));
        CHECK(f->frobenius(f->add(x, y), 1) == f->add(f->frobenius(x, 1), f->frobenius(y, 1)));
        CHECK(f->add(f->sub(x, y), y) == x);
      }
    }
  }
}

TEST_CASE("matrix basics") {
  auto f = make_field(3, 1);
  Matrix a(f, 2, 2, {1, 2, 0, 1});
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.det() == 1);
  CHECK(a.order() == 3);
  CHECK(parse_matrix(format_matrix(a)) == a);
  Matrix s(f, 2, 2, {1, 1, 1, 1});
  CHECK(s.rank() == 1);
  CHECK(s.nullspace().rows() == 1);
  CHECK_THROWS_AS(s.inverse(), DomainError);
}
