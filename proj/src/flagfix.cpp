#include "afg/flagfix.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "afg/census.hpp"

namespace afg {

namespace {

std::vector<std::size_t> pivots_of(const Matrix& U) {
  std::vector<std::size_t> p;
  for (std::size_t i = 0; i < U.rows(); ++i) {
    std::size_t c = 0;
    while (c < U.cols() && U(i, c) == 0) ++c;
    if (c == U.cols()) fail(ErrorKind::InvalidArgument, "subspace basis has a zero row");
    p.push_back(c);
  }
  return p;
}

}  // namespace

void for_each_totally_singular(const FormedSpace& space, std::size_t m,
                               const std::function<bool(const Matrix&)>& f) {
  const std::size_t n = space.n();
  if (m > n) fail(ErrorKind::InvalidArgument, "subspace dimension exceeds n");
  if (space.kind() != FormKind::Zero && 2 * m > n)
    fail(ErrorKind::InvalidArgument, "totally singular subspaces have dimension at most n/2");
  const FieldPtr& field = space.field();
  const std::uint32_t Q = field->size();
  if (m == 0) {
    f(Matrix(field, 0, n));
    return;
  }
  const bool check = space.kind() != FormKind::Zero;
  std::vector<std::size_t> piv(m);
  for (std::size_t i = 0; i < m; ++i) piv[i] = i;
  std::vector<std::vector<Elem>> rows(m, std::vector<Elem>(n));
  bool stop = false;

  while (!stop) {
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<std::size_t>> free(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = piv[i] + 1; c < n; ++c)
        if (!is_piv[c]) free[i].push_back(c);

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (stop) return;
      if (i == m) {
        Matrix U(field, m, n);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < n; ++c) U(r, c) = rows[r][c];
        if (!f(U)) stop = true;
        return;
      }
      std::uint64_t count = 1;
      for (std::size_t k = 0; k < free[i].size(); ++k) count *= Q;
      auto& row = rows[i];
      for (std::uint64_t code = 0; code < count && !stop; ++code) {
        std::fill(row.begin(), row.end(), 0);
        row[piv[i]] = 1;
        std::uint64_t y = code;
        for (std::size_t k = 0; k < free[i].size(); ++k, y /= Q) row[free[i][k]] = static_cast<Elem>(y % Q);
        if (check) {
          if (!space.singular(row)) continue;
          bool orth = true;
          for (std::size_t j = 0; j < i && orth; ++j) orth = space.bilinear(rows[j], row) == 0;
          if (!orth) continue;
        }
        dfs(i + 1);
      }
    };
    dfs(0);

    // next pivot set in lexicographic order
    std::size_t i = m;
    while (i > 0 && piv[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < m; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Matrix> enumerate_totally_singular(const FormedSpace& space, std::size_t m, const Caps& caps) {
  std::vector<Matrix> out;
  for_each_totally_singular(space, m, [&](const Matrix& U) {
    if (out.size() >= caps.subspaces)
      fail(ErrorKind::CapExceeded, "more than " + std::to_string(caps.subspaces) + " totally singular subspaces");
    out.push_back(U);
    return true;
  });
  return out;
}

bool stabilizes(const Matrix& g, const Matrix& U) {
  const auto piv = pivots_of(U);
  const Field& f = *U.field();
  for (std::size_t i = 0; i < U.rows(); ++i) {
    auto w = g.apply(U.row(i));
    for (std::size_t r = 0; r < U.rows(); ++r) {
      const Elem c = w[piv[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, U(r, j)));
    }
    for (Elem e : w)
      if (e != 0) return false;
  }
  return true;
}

Matrix image_subspace(const Matrix& g, const Matrix& U) {
  Matrix W(U.field(), U.rows(), U.cols());
  for (std::size_t i = 0; i < U.rows(); ++i) {
    const auto w = g.apply(U.row(i));
    for (std::size_t j = 0; j < w.size(); ++j) W(i, j) = w[j];
  }
  return W.rref();
}

Matrix standard_subspace(const FormedSpace& space, std::size_t m) {
  if (m > space.witt_index()) fail(ErrorKind::InvalidArgument, "m exceeds the Witt index");
  Matrix U(space.field(), m, space.n());
  for (std::size_t i = 0; i < m; ++i) U(i, i) = 1;
  return U;
}

Integer fix_count(const std::vector<Matrix>& elements, const FormedSpace& space, std::size_t m, const Caps& caps) {
  std::uint64_t count = 0, seen = 0;
  for_each_totally_singular(space, m, [&](const Matrix& U) {
    if (++seen > caps.subspaces)
      fail(ErrorKind::CapExceeded, "more than " + std::to_string(caps.subspaces) + " totally singular subspaces");
    if (std::all_of(elements.begin(), elements.end(), [&](const Matrix& g) { return stabilizes(g, U); })) ++count;
    return true;
  });
  return Integer(count);
}

ClassData class_size(const Matrix& x, const std::vector<Matrix>& gens, const Caps& caps) {
  ClassData cd{x, {}, {}};
  std::vector<Matrix> inv;
  for (const auto& g : gens) inv.push_back(g.inverse());
  cd.members.push_back(x);
  cd.index.emplace(x.key(), 0);
  for (std::size_t head = 0; head < cd.members.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Matrix y = inv[k] * cd.members[head] * gens[k];
      auto key = y.key();
      if (cd.index.count(key)) continue;
      if (cd.members.size() >= caps.orbit)
        fail(ErrorKind::CapExceeded, "conjugacy class exceeds the orbit cap of " + std::to_string(caps.orbit));
      cd.index.emplace(std::move(key), cd.members.size());
      cd.members.push_back(std::move(y));
    }
  }
  return cd;
}

ClassData class_size(const Matrix& x, const GroupAtlas& atlas, const Caps& caps) {
  if (!atlas.contains(x)) fail(ErrorKind::InvalidArgument, "element is not in " + to_string(atlas.spec()));
  return class_size(x, atlas.generators(), caps);
}

Integer class_intersection(const ClassData& cd, const std::function<bool(const Matrix&)>& member) {
  std::uint64_t c = 0;
  for (const auto& y : cd.members)
    if (member(y)) ++c;
  return Integer(c);
}

KleinClass klein_class(const Matrix& y1, const Matrix& y2, const std::vector<Matrix>& gens, const Caps& caps) {
  const auto canon = [](const Matrix& a, const Matrix& b) {
    std::array<std::string, 3> k{a.key(), b.key(), (a * b).key()};
    std::sort(k.begin(), k.end());
    return k[0] + k[1] + k[2];
  };
  KleinClass kc;
  std::set<std::string> seen{canon(y1, y2)};
  kc.members.push_back({y1, y2});
  std::vector<Matrix> inv;
  for (const auto& g : gens) inv.push_back(g.inverse());
  for (std::size_t head = 0; head < kc.members.size(); ++head)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Matrix a = inv[k] * kc.members[head][0] * gens[k];
      Matrix b = inv[k] * kc.members[head][1] * gens[k];
      if (!seen.insert(canon(a, b)).second) continue;
      if (kc.members.size() >= caps.orbit) fail(ErrorKind::CapExceeded, "Klein subgroup class exceeds the orbit cap");
      kc.members.push_back({std::move(a), std::move(b)});
    }
  return kc;
}

SubspaceOrbit subspace_orbit(const Matrix& U, const std::vector<Matrix>& gens, const Caps& caps) {
  SubspaceOrbit o;
  const Matrix start = U.rref();
  o.points.push_back(start);
  o.index.emplace(start.key(), 0);
  for (std::size_t head = 0; head < o.points.size(); ++head)
    for (const auto& g : gens) {
      Matrix W = image_subspace(g, o.points[head]);
      auto key = W.key();
      if (o.index.count(key)) continue;
      if (o.points.size() >= caps.subspaces) fail(ErrorKind::CapExceeded, "subspace orbit exceeds the cap");
      o.index.emplace(std::move(key), o.points.size());
      o.points.push_back(std::move(W));
    }
  return o;
}

namespace {

FprReport finish(FprReport r) {
  r.lhs = r.fix * r.class_size;
  r.rhs = r.omega_size * r.intersection;
  r.holds = r.lhs == r.rhs;
  r.fpr = Rational(r.fix, r.omega_size);
  return r;
}

struct Omega {
  Matrix w0;
  SubspaceOrbit orbit;
  bool transitive;
};

Omega build_omega(const GroupAtlas& atlas, std::size_t m, const Caps& caps) {
  const Matrix w0 = standard_subspace(atlas.form(), m);
  auto orbit = subspace_orbit(w0, atlas.generators(), caps);
  const bool transitive = Integer(orbit.points.size()) == totally_singular_count(atlas.form(), m);
  return Omega{w0, std::move(orbit), transitive};
}

FprReport element_report(const Matrix& x, const GroupAtlas& atlas, const Omega& om, std::size_t m,
                         const Caps& caps) {
  FprReport r;
  r.m = m;
  r.transitive = om.transitive;
  r.omega_size = Integer(om.orbit.points.size());
  std::uint64_t fix = 0;
  for (const auto& w : om.orbit.points)
    if (stabilizes(x, w)) ++fix;
  r.fix = fix;
  const auto cd = class_size(x, atlas, caps);
  r.class_size = cd.size();
  r.intersection = class_intersection(cd, [&](const Matrix& y) { return stabilizes(y, om.w0); });
  return finish(r);
}

FprReport klein_report(const Matrix& y1, const Matrix& y2, const GroupAtlas& atlas, const Omega& om, std::size_t m,
                       const Caps& caps) {
  if (!atlas.contains(y1) || !atlas.contains(y2))
    fail(ErrorKind::InvalidArgument, "Klein generators are not in " + to_string(atlas.spec()));
  if (y1 * y2 != y2 * y1 || !(y1 * y1).is_identity() || !(y2 * y2).is_identity() || y1 == y2 || y1.is_identity() ||
      y2.is_identity())
    fail(ErrorKind::InvalidArgument, "y1, y2 do not generate a Klein four-group");
  FprReport r;
  r.m = m;
  r.transitive = om.transitive;
  r.omega_size = Integer(om.orbit.points.size());
  std::uint64_t fix = 0;
  for (const auto& w : om.orbit.points)
    if (stabilizes(y1, w) && stabilizes(y2, w)) ++fix;
  r.fix = fix;
  const auto kc = klein_class(y1, y2, atlas.generators(), caps);
  r.class_size = kc.size();
  std::uint64_t inside = 0;
  for (const auto& pair : kc.members)
    if (stabilizes(pair[0], om.w0) && stabilizes(pair[1], om.w0)) ++inside;
  r.intersection = inside;
  return finish(r);
}

double log_q(const Rational& x, std::uint32_t q) {
  if (x <= 0) return -INFINITY;
  const double num = std::log(numerator(x).convert_to<double>());
  const double den = std::log(denominator(x).convert_to<double>());
  return (num - den) / std::log(static_cast<double>(q));
}

}  // namespace

FprReport fpr_check(const Matrix& x, const GroupAtlas& atlas, std::size_t m, const Caps& caps) {
  return element_report(x, atlas, build_omega(atlas, m, caps), m, caps);
}

FprReport fpr_check(const Matrix& y1, const Matrix& y2, const GroupAtlas& atlas, std::size_t m, const Caps& caps) {
  return klein_report(y1, y2, atlas, build_omega(atlas, m, caps), m, caps);
}

std::vector<ExponentTarget> parabolic_targets(const GroupSpec& spec, std::size_t m, bool klein) {
  const Integer M(m), N(spec.n);
  enum { Linear, SymplecticOrthogonal, Unitary } type;
  if (form_kind(spec.family) == FormKind::Zero)
    type = Linear;
  else if (is_unitary(spec.family))
    type = Unitary;
  else
    type = SymplecticOrthogonal;
  const auto pick = [&](Rational lin, Rational spo, Rational uni) {
    return type == Linear ? lin : type == Unitary ? uni : spo;
  };
  const Rational mnm = Rational(M * (N - M));
  const Rational m23 = Rational(M * (2 * N - 3 * M));
  std::vector<ExponentTarget> t;
  t.push_back({"fpr(x) < q^(-f+cm)", pick(mnm / 2, m23 / 4, m23 / 2)});
  if (!klein) {
    t.push_back({"fix(y) < q^(f+cm)", pick(mnm / 4, m23 / 8, m23 / 4)});
    t.push_back({"order-4 parabolic sum < q^(-f+cm)", pick(mnm / 4, m23 / 8, m23 / 4)});
  } else {
    const Rational k12 = Rational(M * (11 * N - 12 * M));
    const Rational k21 = Rational(M * (11 * N - 21 * M));
    t.push_back({"fix(K) < q^(f+cm)", pick(mnm / 4, k12 / 44, k12 / 22)});
    t.push_back({"Klein parabolic sum < q^(-f+cm)", pick(mnm / 4, k21 / 44, k21 / 22)});
  }
  const unsigned delta = is_unitary(spec.family) ? 2 : 1;
  t.push_back({"delta n/4 (product exponent compared against -delta n/4)", Rational(Integer(delta) * N, 4)});
  return t;
}

namespace {

ParabolicReport assemble(FprReport x, FprReport y, bool klein, const GroupAtlas& atlas, std::size_t m) {
  ParabolicReport p;
  p.m = m;
  p.klein = klein;
  p.product = x.fpr * Rational(y.fix);
  const Rational term = Rational(x.omega_size) * Rational(x.intersection, x.class_size) *
                        Rational(y.intersection, y.class_size);
  p.product_identity_holds = term == p.product && x.holds && y.holds;
  p.targets = parabolic_targets(atlas.spec(), m, klein);
  const std::uint32_t q = atlas.spec().q;
  p.measured_fpr_exponent = log_q(x.fpr, q);
  p.measured_fix_exponent = log_q(Rational(y.fix), q);
  p.measured_product_exponent = log_q(p.product, q);
  p.x = std::move(x);
  p.y = std::move(y);
  return p;
}

}  // namespace

ParabolicReport parabolic_bound_report(const Matrix& x, const Matrix& y, const GroupAtlas& atlas, std::size_t m,
                                       const Caps& caps) {
  const Omega om = build_omega(atlas, m, caps);
  return assemble(element_report(x, atlas, om, m, caps), element_report(y, atlas, om, m, caps), false, atlas, m);
}

ParabolicReport parabolic_bound_report(const Matrix& x, const Matrix& y1, const Matrix& y2, const GroupAtlas& atlas,
                                       std::size_t m, const Caps& caps) {
  const Omega om = build_omega(atlas, m, caps);
  return assemble(element_report(x, atlas, om, m, caps), klein_report(y1, y2, atlas, om, m, caps), true, atlas, m);
}

}  // namespace afg
