// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 100).

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "afg/census.hpp"
#include "afg/embed.hpp"
#include "afg/flagfix.hpp"
#include "afg/genlab.hpp"

using namespace afg;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
  std::vector<std::string> notes;  // printed indented, never counted
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string str(const Integer& v) { return to_string(v); }

Outcome psi_equivalence() {
  Outcome o;
  std::size_t cases = 0, agree = 0;
  for (unsigned q : {2u, 3u})
    for (unsigned b = 0; b <= 3; ++b)
      for (unsigned c = 0; c <= 3; ++c)
        for (unsigned d = 0; d <= 3; ++d) {
          ++cases;
          if (psi(b, c, d, q) == psi_oracle(b, c, d, q)) ++agree;
          else o.notes.push_back("mismatch at (" + std::to_string(b) + "," + std::to_string(c) + "," +
                                 std::to_string(d) + ";" + std::to_string(q) + ")");
        }
  const Integer s1 = psi(1, 1, 1, 2), s2 = psi(2, 2, 2, 2);
  o.ok = cases == 128 && agree == cases && s1 == 3 && s2 == 58;
  o.detail = std::to_string(agree) + "/" + std::to_string(cases) + " cases equal; psi(1,1,1;2)=" + str(s1) +
             " psi(2,2,2;2)=" + str(s2);
  return o;
}

Outcome rank_completeness() {
  Outcome o;
  std::size_t cases = 0, agree = 0;
  for (unsigned q : {2u, 3u})
    for (unsigned b = 0; b <= 4; ++b)
      for (unsigned c = 0; c <= 4; ++c) {
        Integer sum = 0;
        for (unsigned r = 0; r <= std::min(b, c); ++r) sum += rank_count(b, c, r, q);
        ++cases;
        agree += sum == ipow(Integer(q), b * c);
      }
  o.ok = agree == cases;
  o.detail = std::to_string(agree) + "/" + std::to_string(cases) + " (b,c,q) with sum_r phi_r = q^(bc)";
  return o;
}

Outcome singular_counts() {
  Outcome o;
  struct K {
    FormKind kind;
    Sign sign;
    const char* name;
  };
  const K kinds[] = {{FormKind::Zero, Sign::Circle, "zero"},
                     {FormKind::Symplectic, Sign::Circle, "symplectic"},
                     {FormKind::Quadratic, Sign::Plus, "quadratic+"},
                     {FormKind::Quadratic, Sign::Minus, "quadratic-"},
                     {FormKind::Quadratic, Sign::Circle, "quadratic-odd"},
                     {FormKind::Unitary, Sign::Circle, "unitary"}};
  std::size_t cases = 0, agree = 0;
  for (const auto& k : kinds)
    for (std::size_t n = 1; n <= 6; ++n)
      for (std::uint32_t q : {2u, 3u}) {
        const bool odd = n % 2 == 1;
        if (k.kind == FormKind::Symplectic && odd) continue;
        if (k.kind == FormKind::Quadratic && (k.sign == Sign::Circle) != odd) continue;
        if (k.kind == FormKind::Quadratic && odd && q % 2 == 0) continue;
        const auto space = standard_space(k.kind, k.sign, n, q);
        const std::size_t top = k.kind == FormKind::Zero ? n : n / 2;
        for (std::size_t m = 0; m <= top; ++m) {
          std::uint64_t streamed = 0;
          for_each_totally_singular(space, m, [&](const Matrix&) {
            ++streamed;
            return true;
          });
          ++cases;
          if (Integer(streamed) == totally_singular_count(space, m)) ++agree;
          else o.notes.push_back(std::string(k.name) + " n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                 " m=" + std::to_string(m) + " mismatch");
        }
      }
  o.ok = agree == cases;
  o.detail = std::to_string(agree) + "/" + std::to_string(cases) + " (kind, n<=6, q, m) enumerations equal the closed form";
  return o;
}

std::vector<Matrix> elements_of(const GroupAtlas& atlas) {
  PermGroup G(atlas);
  std::vector<Matrix> out;
  G.chain.for_each_element([&](const Perm& p) {
    out.push_back(G.action.matrix(p));
    return true;
  });
  return out;
}

// One representative per conjugacy class among elements of the given order.
std::vector<Matrix> class_representatives(const GroupAtlas& atlas, std::uint64_t order) {
  std::vector<Matrix> reps;
  std::vector<ClassData> seen;
  for (const auto& g : elements_of(atlas)) {
    if (g.order() != order) continue;
    bool known = false;
    for (const auto& cd : seen) known = known || cd.contains(g);
    if (known) continue;
    seen.push_back(class_size(g, atlas));
    reps.push_back(g);
  }
  return reps;
}

Outcome double_counting() {
  Outcome o;
  std::size_t instances = 0, holds = 0;
  std::set<std::string> kinds;
  const auto record = [&](const std::string& group, const std::string& what, std::size_t m, const FprReport& r) {
    ++instances;
    holds += r.holds;
    kinds.insert(what.substr(0, what.find(' ')));
    std::ostringstream line;
    line << group << " " << what << " m=" << m << ": " << str(r.fix) << "*" << str(r.class_size) << " = "
         << str(r.omega_size) << "*" << str(r.intersection) << (r.holds ? "" : "  VIOLATED");
    o.notes.push_back(line.str());
  };

  for (const char* name : {"SL_3_2", "SL_4_2", "Sp_4_2"}) {
    const GroupAtlas atlas(parse_group_spec(name));
    const auto& form = atlas.form();
    const std::size_t n = form.n();
    const std::size_t top = form.kind() == FormKind::Zero ? n - 1 : form.witt_index();
    const auto f = form.field();
    Matrix t = Matrix::identity(f, n);
    // symplectic transvection v -> v + B(v, e_1) e_1 sends f_1 to f_1 + e_1
    if (form.kind() == FormKind::Symplectic) t(0, form.witt_index()) = 1;
    else t(0, 1) = 1;
    for (std::size_t m = 1; m <= top; ++m) record(name, "transvection", m, fpr_check(t, atlas, m));
    std::size_t idx = 0;
    for (const auto& x : class_representatives(atlas, 2)) {
      const std::string what = "involution class " + std::to_string(++idx) + " rank " +
                               std::to_string((x - Matrix::identity(f, n)).rank());
      for (std::size_t m = 1; m <= top; ++m) record(name, what, m, fpr_check(x, atlas, m));
    }
    const auto threes = class_representatives(atlas, 3);
    if (!threes.empty())
      for (std::size_t m = 1; m <= top; ++m) record(name, "order-3 element", m, fpr_check(threes[0], atlas, m));
  }

  // Klein subgroup <(12)(34), (13)(24)> of SL_4(2) as permutation matrices
  {
    const GroupAtlas sl4(parse_group_spec("SL_4_2"));
    const auto f = sl4.form().field();
    const std::size_t p1[] = {1, 0, 3, 2}, p2[] = {2, 3, 0, 1};
    const Matrix a = Matrix::permutation(f, p1), b = Matrix::permutation(f, p2);
    for (std::size_t m = 1; m <= 3; ++m) record("SL_4_2", "klein <(12)(34),(13)(24)>", m, fpr_check(a, b, sl4, m));
  }
  // embedded involution of C2 in Sp_6(2), the smallest rank admitting it
  {
    const GroupAtlas sp6(parse_group_spec("Sp_6_2"));
    const auto e = embed_almost_free(TwoGroup::parse("C2"), sp6.spec());
    for (std::size_t m = 1; m <= 3; ++m) record("Sp_6_2", "embedded-involution C2", m, fpr_check(e.image(1), sp6, m));
  }

  o.ok = instances >= 20 && holds == instances && kinds.count("transvection") && kinds.count("klein") &&
         kinds.count("involution") && kinds.count("embedded-involution");
  o.detail = std::to_string(holds) + "/" + std::to_string(instances) +
             " instances exact (SL_3(2), SL_4(2), Sp_4(2); transvections, involution classes, order 3, "
             "one Klein subgroup; embedded involutions in Sp_6(2))";
  return o;
}

Outcome embedding_contract() {
  Outcome o;
  std::size_t cases = 0, good = 0;
  for (const char* grp : {"C2", "C4", "C2xC2", "C2xC4", "C8"}) {
    const auto g = TwoGroup::parse(grp);
    for (const char* fam : {"SL", "Sp", "O+", "O-", "SU"})
      for (unsigned q : {2u, 3u})
        for (std::size_t n = 2 * g.order() + 2; n <= 2 * g.order() + 6; ++n) {
          GroupSpec spec;
          try {
            spec = parse_group_spec(std::string(fam) + "_" + std::to_string(n) + "_" + std::to_string(q));
          } catch (const DomainError&) {
            continue;  // Sp and O+- need even n
          }
          ++cases;
          const auto c = embed_almost_free(g, spec).check();
          if (c.all()) ++good;
          else o.notes.push_back(std::string(grp) + " -> " + to_string(spec) + " failed");
        }
  }
  o.ok = cases > 0 && good == cases;
  o.detail = std::to_string(good) + "/" + std::to_string(cases) +
             " (2-group, target) pairs: homomorphism, injective, form, fixed space k+s, involution rank ka/2";
  return o;
}

Outcome order_engine() {
  Outcome o;
  std::size_t good = 0, total = 0;
  std::string list;
  for (const char* name : {"SL_2_2", "SL_2_3", "SL_3_2", "Sp_2_2", "Sp_4_2", "Sp_6_2", "GU_3_2", "O+_4_2", "O-_4_2"}) {
    const GroupAtlas atlas(parse_group_spec(name));
    const Integer b = bsgs_order(atlas.generators());
    ++total;
    good += b == atlas.order();
    list += std::string(list.empty() ? "" : ", ") + name + "=" + str(b);
    if (b != atlas.order()) o.notes.push_back(std::string(name) + ": bsgs " + str(b) + " vs formula " + str(atlas.order()));
  }
  o.ok = good == total;
  o.detail = std::to_string(good) + "/" + std::to_string(total) + " orders equal (" + list + ")";
  return o;
}

Outcome symmetric_counts() {
  Outcome o;
  std::size_t good = 0, total = 0;
  for (unsigned n = 1; n <= 8; ++n) {
    total += 2;
    good += sn_klein_count(n) == sn_klein_oracle(n);
    good += sn_order4_count(n) == sn_order4_oracle(n);
  }
  const bool spots = sn_klein_count(4) == 4 && sn_klein_count(5) == 20 && sn_order4_count(4) == 16;
  o.ok = good == total && spots;
  o.detail = std::to_string(good) + "/" + std::to_string(total) + " counts equal brute force for n<=8; i2x2(S4)=" +
             str(sn_klein_count(4)) + " i2x2(S5)=" + str(sn_klein_count(5)) + " j4(S4)=" + str(sn_order4_count(4));
  return o;
}

Outcome lambda_oracle() {
  Outcome o;
  std::size_t good = 0, total = 0;
  for (unsigned m = 1; m <= 4; ++m)
    for (unsigned l = 0; 2 * l <= m; ++l)
      for (unsigned l1 = 0; 2 * l1 <= l; ++l1)
        for (unsigned l2 = 0; 2 * l2 <= m - 2 * l; ++l2) {
          ++total;
          const Integer a = nilpotent_block_count(l1, l2, l, m, 2), b = nilpotent_block_oracle(l1, l2, l, m, 2);
          good += a == b;
          if (a != b)
            o.notes.push_back("m=" + std::to_string(m) + " l=" + std::to_string(l) + " l1=" + std::to_string(l1) +
                              " l2=" + std::to_string(l2) + ": " + str(a) + " vs " + str(b));
        }
  o.ok = total > 0 && good == total;
  o.detail = std::to_string(good) + "/" + std::to_string(total) + " (l1, l2, l, m<=4; q=2) structured counts equal the filter";
  return o;
}

// dim((x-1)V + (y-1)V): below n means <x, y> has a proper invariant subspace.
std::size_t commutator_span(const std::vector<Matrix>& elems) {
  const auto& f = elems.front().field();
  const std::size_t n = elems.front().rows();
  Matrix stacked = Matrix::zero(f, 0, n);
  for (const auto& g : elems) stacked = stacked.vstack((g - Matrix::identity(f, n)).transpose());
  return stacked.rank();
}

Outcome generation_sp10() {
  Outcome o;
  const GroupAtlas sp10(parse_group_spec("Sp_10_2"));
  const auto ex = run_generation_experiment(sp10, TwoGroup::parse("C2"), TwoGroup::parse("C4"), 50, 7);
  o.ok = ex.successes() >= 1;
  o.detail = "Sp_10(2) on " + std::to_string(sp10.action().degree()) + " points, A=C2, B=C4, 50 trials, seed 7: " +
             std::to_string(ex.successes()) + " generating pairs (need >= 1)";
  // classify the failures: a proper invariant subspace, or else a common
  // invariant quadratic form (|<x,y>| divides |O^+-_10(2)|)
  const auto ea = embed_almost_free(TwoGroup::parse("C2"), sp10.spec());
  const auto eb = embed_almost_free(TwoGroup::parse("C4"), sp10.spec());
  const Matrix x = ea.image(1), y = eb.image(TwoGroup::parse("C4").elements_of_order(4).front());
  const auto id = Matrix::identity(x.field(), 10);
  o.notes.push_back("rank(x-1) = " + std::to_string((x - id).rank()) + ", rank(y-1) = " +
                    std::to_string((y - id).rank()) + ", n = 10");
  const Integer oplus = group_order(parse_group_spec("O+_10_2")), ominus = group_order(parse_group_spec("O-_10_2"));
  std::size_t reducible = 0, orthogonal = 0, other = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    std::mt19937_64 rng(split_seed(7, i));
    const Matrix g = sp10.random_element(rng), h = sp10.random_element(rng);
    const Matrix a = conjugate(x, g), b = conjugate(y, h);
    const Integer found = ex.per_trial[i].order_found;
    if (commutator_span({a, b}) < 10) ++reducible;
    else if (oplus % found == 0 || ominus % found == 0) ++orthogonal;
    else ++other;
  }
  o.notes.push_back("trials with (x-1)V + (y-1)V proper: " + std::to_string(reducible) +
                    "; spanning V with order dividing |O+-_10(2)|: " + std::to_string(orthogonal) +
                    "; other: " + std::to_string(other));
  return o;
}

Outcome generation_sl6() {
  Outcome o;
  const GroupAtlas sl6(parse_group_spec("SL_6_2"));
  try {
    const auto ex = run_generation_experiment(sl6, TwoGroup::parse("C2"), TwoGroup::parse("C2xC2"), 50, 7);
    o.ok = ex.successes() >= 1;
    o.detail = "SL_6(2), A=C2, B=C2xC2 (Klein path), 50 trials, seed 7: " + std::to_string(ex.successes()) +
               " generating pairs (need >= 1)";
  } catch (const DomainError& e) {
    o.ok = false;
    o.detail = std::string("SL_6(2), A=C2, B=C2xC2: ") + to_string(e.kind()) + " (" + e.what() + ")";
  }
  // diagnostic only: the smallest rank where the Klein path is defined
  const GroupAtlas sl10(parse_group_spec("SL_10_2"));
  const auto ex = run_generation_experiment(sl10, TwoGroup::parse("C2"), TwoGroup::parse("C2xC2"), 50, 7);
  o.notes.push_back("not counted: SL_10(2), A=C2, B=C2xC2, 50 trials, seed 7: " + std::to_string(ex.successes()) +
                    " generating triples (x, y1, y2)");
  return o;
}

Outcome exponent_diagnostics() {
  Outcome o;
  bool ok = true;
  for (const char* name : {"SL_3_2", "SL_4_2", "Sp_4_2", "Sp_6_2"}) {
    const GroupAtlas atlas(parse_group_spec(name));
    const PermGroup G(atlas);
    const Integer i4 = count_order_elements(G, 4);
    const auto k = count_klein_subgroups(G);
    const auto r4 = make_report(name, "i4", i4, atlas.order(), "3/4");
    const auto rk = make_report(name, "i2x2", k.subgroups, atlas.order(), "3/4");
    const bool here = i4 >= 0 && i4 < atlas.order() && k.subgroups * 3 == k.commuting_pairs;
    ok = ok && here;
    const auto e = [](const CountReport& r) { return r.exponent ? to_string(*r.exponent) : std::string("none"); };
    o.notes.push_back(std::string(name) + ": |G|=" + str(atlas.order()) + " i4=" + str(i4) + " (exponent " + e(r4) +
                      ", window 3/4) i2x2=" + str(k.subgroups) + " (exponent " + e(rk) + ", window 3/4) pairs=" +
                      str(k.commuting_pairs) + (here ? "" : "  CHECK FAILED"));
  }
  o.ok = ok;
  o.detail = "0 <= i4 < |G| and i2x2 = pairs/3 for SL_3(2), SL_4(2), Sp_4(2), Sp_6(2)";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "psi oracle equivalence", 60, psi_equivalence},
      {2, "rank-count completeness", 1, rank_completeness},
      {3, "totally singular counts", 300, singular_counts},
      {4, "double-counting identity", 600, double_counting},
      {5, "embedding contract", 300, embedding_contract},
      {6, "order engine", 120, order_engine},
      {7, "symmetric-group counts", 120, symmetric_counts},
      {8, "nilpotent block oracle", 300, lambda_oracle},
      {9, "generation experiment Sp_10(2), C2, C4", 900, generation_sp10},
      {9, "generation experiment SL_6(2), C2, C2xC2", 900, generation_sl6},
      {10, "exponent diagnostics", 600, exponent_diagnostics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs < c.limit_seconds;
    failed += !pass;
    std::printf("[%s] criterion %d %s: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.limit_seconds);
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria lines, %d failed\n", criteria.size(), failed);
  return failed > 100 ? 100 : failed;
}
