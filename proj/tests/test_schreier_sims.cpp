#include "doctest.h"

#include <deque>
#include <random>
#include <set>

#include "afg/atlas.hpp"

using namespace afg;

namespace {

Perm cycle_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % n);
  return p;
}

std::uint64_t closure_size(const std::vector<Matrix>& gens, const Matrix& id) {
  std::set<std::string> seen{id.key()};
  std::deque<Matrix> todo{id};
  while (!todo.empty()) {
    Matrix g = todo.front();
    todo.pop_front();
    for (const auto& s : gens) {
      Matrix h = g * s;
      if (seen.insert(h.key()).second) todo.push_back(std::move(h));
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("symmetric and alternating groups") {
  for (std::size_t n = 2; n <= 9; ++n) {
    Perm t = identity_perm(n);
    std::swap(t[0], t[1]);
    StabilizerChain sn({t, cycle_perm(n)}, n);
    Integer fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    CHECK(sn.order() == fact);
    if (n >= 3) {
      std::vector<Perm> three;
      for (std::size_t k = 2; k < n; ++k) {
        Perm c = identity_perm(n);
        c[0] = 1;
        c[1] = static_cast<std::uint32_t>(k);
        c[k] = 0;
        three.push_back(c);
      }
      StabilizerChain an(three, n);
      CHECK(an.order() == fact / 2);
      CHECK_FALSE(an.contains(t));
      CHECK(sn.contains(t));
    }
  }
}

TEST_CASE("deterministic pass without randomization") {
  Perm t = identity_perm(7);
  std::swap(t[0], t[1]);
  SchreierSimsOptions opts;
  opts.randomized = false;
  StabilizerChain s7({t, cycle_perm(7)}, 7, opts);
  CHECK(s7.order() == 5040);
  std::uint64_t count = 0;
  std::set<Perm> distinct;
  s7.for_each_element([&](const Perm& p) {
    ++count;
    distinct.insert(p);
    return true;
  });
  CHECK(count == 5040);
  CHECK(distinct.size() == 5040);
}

TEST_CASE("random matrix subgroups agree with brute-force closure") {
  std::mt19937_64 rng(3);
  for (const char* name : {"Sp_4_2", "GL_3_2", "SL_2_5", "SU_3_2"}) {
    const GroupAtlas atlas(parse_group_spec(name));
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<Matrix> gens;
      const int k = 1 + trial % 3;
      for (int i = 0; i < k; ++i) gens.push_back(atlas.random_element(rng, 7 + trial));
      const Integer expect(closure_size(gens, Matrix::identity(atlas.form().field(), atlas.spec().n)));
      CHECK(bsgs_order(gens) == expect);
      CHECK(bsgs_order(gens, atlas.order()) == expect);
    }
  }
}
