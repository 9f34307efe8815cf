#include "afg/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace afg {

namespace {

VectorAction action_for(const std::vector<Matrix>& gens) {
  if (gens.empty()) fail(ErrorKind::InvalidArgument, "a permutation group needs at least one generator");
  return VectorAction(gens.front().field(), gens.front().rows());
}

void check_enumerable(const Integer& order, const Caps& caps) {
  if (order > caps.group_elements)
    fail(ErrorKind::CapExceeded, "group order " + to_string(order) + " exceeds the enumeration cap of " +
                                     std::to_string(caps.group_elements) + " elements");
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : p) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

PermGroup::PermGroup(const std::vector<Matrix>& gens, std::optional<Integer> bound)
    : action(action_for(gens)), chain(matrix_chain(action, gens, std::move(bound))), order_(chain.order()) {}

PermGroup::PermGroup(const GroupAtlas& atlas)
    : action(atlas.form().field(), atlas.spec().n),
      chain(matrix_chain(action, atlas.generators(), atlas.order())),
      order_(chain.order()) {}

Integer count_order_elements(const PermGroup& g, std::uint64_t s, const Caps& caps) {
  check_enumerable(g.order(), caps);
  std::uint64_t count = 0;
  g.chain.for_each_element([&](const Perm& p) {
    if (perm_order(p) == s) ++count;
    return true;
  });
  return count;
}

Integer count_order_elements(const std::vector<Matrix>& gens, std::uint64_t s, const Caps& caps) {
  if (gens.empty()) return s == 1 ? 1 : 0;
  return count_order_elements(PermGroup(gens), s, caps);
}

std::vector<Perm> involutions(const PermGroup& g, const Caps& caps) {
  check_enumerable(g.order(), caps);
  std::vector<Perm> out;
  g.chain.for_each_element([&](const Perm& p) {
    if (!is_identity(p)) {
      bool inv = true;
      for (std::size_t x = 0; x < p.size() && inv; ++x) inv = p[p[x]] == x;
      if (inv) out.push_back(p);
    }
    return true;
  });
  return out;
}

KleinCount count_klein_subgroups(const PermGroup& g, const Caps& caps) {
  const auto inv = involutions(g, caps);
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < inv.size(); ++i) index.emplace(inv[i], i);
  std::uint64_t pairs = 0;
  std::set<std::array<std::uint32_t, 3>> triples;
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      const Perm& x = inv[i];
      const Perm& y = inv[j];
      bool commute = true;
      for (std::size_t t = 0; t < x.size() && commute; ++t) commute = x[y[t]] == y[x[t]];
      if (!commute) continue;
      ++pairs;
      const auto k = index.at(compose(x, y));
      std::array<std::uint32_t, 3> tri{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), k};
      std::sort(tri.begin(), tri.end());
      triples.insert(tri);
    }
  if (pairs % 3 != 0) fail(ErrorKind::IdentityViolated, "commuting involution pairs not divisible by 3");
  return KleinCount{Integer(pairs / 3), Integer(pairs), Integer(triples.size())};
}

KleinCount count_klein_subgroups(const std::vector<Matrix>& gens, const Caps& caps) {
  if (gens.empty()) return {};
  return count_klein_subgroups(PermGroup(gens), caps);
}

namespace {

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// t(k): elements of S_k squaring to 1
Integer square_one_sym(unsigned k) {
  Integer a = 1, b = 1;  // t(0), t(1)
  if (k == 0) return 1;
  for (unsigned i = 2; i <= k; ++i) {
    Integer c = b + Integer(i - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

// w(m): elements of C_2 wr S_m squaring to 1
Integer square_one_wreath(unsigned m) {
  if (m == 0) return 1;
  Integer a = 1, b = 2;
  for (unsigned i = 2; i <= m; ++i) {
    Integer c = 2 * b + Integer(2 * (i - 1)) * a;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace

Integer sn_klein_count(unsigned n) {
  if (n > 30) fail(ErrorKind::InvalidArgument, "sn_klein_count supports n <= 30");
  Integer ordered = 0;
  for (unsigned m = 1; 2 * m <= n; ++m) {
    const Integer cls = factorial(n) / (factorial(n - 2 * m) * ipow(Integer(2), m) * factorial(m));
    const Integer others = square_one_sym(n - 2 * m) * square_one_wreath(m) - 2;
    ordered += cls * others;
  }
  return ordered / 6;
}

Integer sn_order4_count(unsigned t) {
  if (t > 40) fail(ErrorKind::InvalidArgument, "sn_order4_count supports t <= 40");
  Integer total = 0;
  const Integer tf = factorial(t);
  for (unsigned c = 0; 4 * c <= t; ++c)
    for (unsigned b = 0; 4 * c + 2 * b <= t; ++b) {
      const unsigned a = t - 4 * c - 2 * b;
      total += tf / (factorial(a) * ipow(Integer(2), b) * factorial(b) * ipow(Integer(4), c) * factorial(c));
    }
  return total;
}

namespace {

template <class F>
void for_each_perm(unsigned n, F f) {
  if (n > 10) fail(ErrorKind::CapExceeded, "symmetric group oracle supports n <= 10");
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do f(p);
  while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

Integer sn_klein_oracle(unsigned n) {
  std::vector<std::vector<unsigned>> inv;
  for_each_perm(n, [&](const std::vector<unsigned>& p) {
    bool id = true, square_one = true;
    for (unsigned i = 0; i < n; ++i) {
      id = id && p[i] == i;
      square_one = square_one && p[p[i]] == i;
    }
    if (square_one && !id) inv.push_back(p);
  });
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      bool commute = true;
      for (unsigned k = 0; k < n && commute; ++k) commute = inv[i][inv[j][k]] == inv[j][inv[i][k]];
      if (commute) ++pairs;
    }
  return Integer(pairs / 3);
}

Integer sn_order4_oracle(unsigned t) {
  std::uint64_t count = 0;
  for_each_perm(t, [&](const std::vector<unsigned>& p) {
    bool ok = true;
    for (unsigned i = 0; i < t && ok; ++i) ok = p[p[p[p[i]]]] == i;
    if (ok) ++count;
  });
  return Integer(count);
}

Integer q_product(unsigned i, unsigned j, std::uint64_t q) {
  Integer r = 1;
  const Integer qj = ipow(Integer(q), j);
  for (unsigned k = 0; k < i; ++k) r *= qj - ipow(Integer(q), k);
  return r;
}

Integer rank_count(unsigned b, unsigned c, unsigned r, std::uint64_t q) {
  if (r > std::min(b, c)) fail(ErrorKind::InvalidArgument, "rank exceeds min(b, c)");
  return q_product(r, b, q) * q_product(r, c, q) / q_product(r, r, q);
}

Integer psi(unsigned b, unsigned c, unsigned d, std::uint64_t q) {
  Integer total = 0;
  for (unsigned r = 0; r <= std::min(b, c); ++r)
    total += rank_count(b, c, r, q) * ipow(Integer(q), d * (c - r));
  return total;
}

Integer psi_oracle(unsigned b, unsigned c, unsigned d, std::uint32_t q, const Caps& caps) {
  const Integer pairs = ipow(Integer(q), b * c + c * d);
  if (pairs > caps.matrix_tuples)
    fail(ErrorKind::CapExceeded, "psi oracle needs " + to_string(pairs) + " pairs, above the cap of " +
                                     std::to_string(caps.matrix_tuples));
  const FieldPtr f = field_of_order(q);
  const std::uint64_t nvec = ipow_u64(q, c);  // columns of B, as codes
  const std::uint64_t nA = ipow_u64(q, b * c);
  std::vector<char> zero_image(nvec);
  std::vector<Elem> v(c);
  std::uint64_t count = 0;
  for (std::uint64_t acode = 0; acode < nA; ++acode) {
    Matrix A(f, b, c);
    std::uint64_t x = acode;
    for (unsigned t = 0; t < b * c; ++t, x /= q) A(t / c, t % c) = static_cast<Elem>(x % q);
    // which columns B e_j satisfy A (B e_j) = 0
    for (std::uint64_t vc = 0; vc < nvec; ++vc) {
      std::uint64_t y = vc;
      for (unsigned t = 0; t < c; ++t, y /= q) v[t] = static_cast<Elem>(y % q);
      const auto img = A.apply(v);
      zero_image[vc] = std::all_of(img.begin(), img.end(), [](Elem e) { return e == 0; });
    }
    // every B, column by column
    std::vector<std::uint64_t> cols(d, 0);
    while (true) {
      bool ok = true;
      for (unsigned j = 0; j < d && ok; ++j) ok = zero_image[cols[j]];
      if (ok) ++count;
      unsigned j = 0;
      while (j < d && ++cols[j] == nvec) cols[j++] = 0;
      if (j == d) break;
    }
  }
  return Integer(count);
}

Integer gaussian_binomial(unsigned n, unsigned m, const Integer& q) {
  if (m > n) return 0;
  Integer num = 1, den = 1;
  for (unsigned i = 0; i < m; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

Integer totally_singular_count(const FormedSpace& space, std::size_t m) {
  const std::size_t n = space.n();
  const Integer q(space.q());
  if (space.kind() == FormKind::Zero) {
    if (m > n) fail(ErrorKind::InvalidArgument, "subspace dimension exceeds n");
    return gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(m), q);
  }
  if (2 * m > n) fail(ErrorKind::InvalidArgument, "totally singular subspaces have dimension at most n/2");
  // Polar space of rank h; p_m = [h, m]_Q prod_{i<m} (Q^(h-i-1) * t + 1) with
  // t = q^e for the kind-dependent e below, written with integer powers.
  std::size_t h = 0;
  Integer Q = q;
  std::function<Integer(std::size_t)> factor;
  switch (space.kind()) {
    case FormKind::Symplectic:
      h = n / 2;
      factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(h - i)) + 1; };
      break;
    case FormKind::Quadratic:
      if (space.sign() == Sign::Plus) {
        h = n / 2;
        factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(h - i - 1)) + 1; };
      } else if (space.sign() == Sign::Minus) {
        h = n / 2 - 1;
        factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(h - i + 1)) + 1; };
      } else {
        h = (n - 1) / 2;
        factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(h - i)) + 1; };
      }
      break;
    case FormKind::Unitary:
      h = n / 2;
      Q = q * q;
      if (n % 2 == 0)
        factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(2 * (h - i) - 1)) + 1; };
      else
        factor = [&](std::size_t i) { return ipow(q, static_cast<unsigned>(2 * (h - i) + 1)) + 1; };
      break;
    case FormKind::Zero:
      break;
  }
  if (m > h) return 0;
  Integer r = gaussian_binomial(static_cast<unsigned>(h), static_cast<unsigned>(m), Q);
  for (std::size_t i = 0; i < m; ++i) r *= factor(i);
  return r;
}

Matrix block_jordan(unsigned s, unsigned i, const FieldPtr& field) {
  Matrix m = Matrix::identity(field, s * i);
  for (unsigned b = 1; b < i; ++b)
    for (unsigned t = 0; t < s; ++t) m(b * s + t, (b - 1) * s + t) = 1;
  return m;
}

Matrix unipotent_element(const JordanType& t, const FieldPtr& field) {
  std::vector<Matrix> blocks;
  for (unsigned i = 1; i <= 4; ++i)
    if (t.l[i - 1]) blocks.push_back(block_jordan(t.l[i - 1], i, field));
  if (blocks.empty()) return Matrix::identity(field, 0);
  return direct_sum(blocks);
}

namespace {

unsigned centralizer_exponent(const JordanType& t) {
  unsigned e = 0;
  for (unsigned i = 1; i <= 4; ++i) {
    e += i * t.l[i - 1] * t.l[i - 1];
    for (unsigned j = i + 1; j <= 4; ++j) e += 2 * i * t.l[i - 1] * t.l[j - 1];
  }
  return e;
}

}  // namespace

CentralizerReport unipotent_centralizer_order(const JordanType& t, std::uint32_t q, const Caps& caps) {
  const FieldPtr f = field_of_order(q);
  const unsigned m = t.dimension();
  const Matrix u = unipotent_element(t, f);
  // linear map X -> Xu - uX on vec(X), X row-major
  const unsigned mm = m * m;
  Matrix L(f, mm, mm);
  const Field& F = *f;
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) {
      const unsigned col = a * m + b;  // X = E_ab
      // (E_ab u)_{a,j} = u_{b,j};  (u E_ab)_{i,b} = u_{i,a}
      for (unsigned j = 0; j < m; ++j) L(a * m + j, col) = F.add(L(a * m + j, col), u(b, j));
      for (unsigned i = 0; i < m; ++i) L(i * m + b, col) = F.sub(L(i * m + b, col), u(i, a));
    }
  const Matrix basis = L.nullspace();
  const std::size_t d = basis.rows();
  const Integer total = ipow(Integer(q), static_cast<unsigned>(d));
  if (total > caps.matrix_tuples)
    fail(ErrorKind::CapExceeded, "centralizer algebra has " + to_string(total) + " elements, above the cap");
  std::uint64_t count = 0;
  std::vector<Elem> coef(d, 0);
  Matrix X(f, m, m);
  const std::uint64_t n_total = static_cast<std::uint64_t>(total);
  for (std::uint64_t code = 0; code < n_total; ++code) {
    std::uint64_t y = code;
    for (std::size_t k = 0; k < d; ++k, y /= q) coef[k] = static_cast<Elem>(y % q);
    for (unsigned e = 0; e < mm; ++e) {
      Elem acc = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (coef[k]) acc = F.add(acc, F.mul(coef[k], basis(k, e)));
      X(e / m, e % m) = acc;
    }
    if (m == 0 || X.det() != 0) ++count;
  }
  CentralizerReport rep;
  rep.order = count;
  rep.exponent = centralizer_exponent(t);
  rep.in_window = rep.order <= ipow(Integer(q), rep.exponent) &&
                  rep.order * ipow(Integer(q), m) >= ipow(Integer(q), rep.exponent);
  return rep;
}

Integer unipotent_centralizer_oracle(const JordanType& t, std::uint32_t q, const Caps& caps) {
  const FieldPtr f = field_of_order(q);
  const unsigned m = t.dimension();
  const Integer total = ipow(Integer(q), m * m);
  if (total > caps.matrix_tuples) fail(ErrorKind::CapExceeded, "GL_m(q) enumeration exceeds the cap");
  const Matrix u = unipotent_element(t, f);
  std::uint64_t count = 0;
  Matrix X(f, m, m);
  const std::uint64_t n_total = static_cast<std::uint64_t>(total);
  for (std::uint64_t code = 0; code < n_total; ++code) {
    std::uint64_t y = code;
    for (unsigned e = 0; e < m * m; ++e, y /= q) X(e / m, e % m) = static_cast<Elem>(y % q);
    if (X.det() != 0 && X * u == u * X) ++count;
  }
  return Integer(count);
}

Integer unipotent_centralizer_formula(const JordanType& t, std::uint64_t q) {
  unsigned e = 0;
  for (unsigned i = 1; i <= 4; ++i) {
    e += (i - 1) * t.l[i - 1] * t.l[i - 1];
    for (unsigned j = i + 1; j <= 4; ++j) e += 2 * i * t.l[i - 1] * t.l[j - 1];
  }
  Integer r = ipow(Integer(q), e);
  for (unsigned i = 0; i < 4; ++i) r *= q_product(t.l[i], t.l[i], q);
  return r;
}

namespace {

// All k x k matrices over f with square zero and the given rank.
std::vector<Matrix> square_zero_of_rank(const FieldPtr& f, unsigned k, unsigned rank, const Caps& caps) {
  const std::uint32_t q = f->size();
  const Integer total = ipow(Integer(q), k * k);
  if (total > caps.matrix_tuples) fail(ErrorKind::CapExceeded, "diagonal block enumeration exceeds the cap");
  std::vector<Matrix> out;
  Matrix X(f, k, k);
  for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
    std::uint64_t y = code;
    for (unsigned e = 0; e < k * k; ++e, y /= q) X(e / k, e % k) = static_cast<Elem>(y % q);
    if (X.rank() == rank && X * X == Matrix::zero(f, k, k))
      out.push_back(X);
  }
  return out;
}

// Matrix of mu -> A mu + mu B on row-major vec(mu), mu in M_{r,c}.
Matrix sylvester(const Matrix& A, const Matrix& B, const FieldPtr& f) {
  const std::size_t r = A.rows(), c = B.rows();
  const Field& F = *f;
  Matrix L(f, r * c, r * c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      const std::size_t col = a * c + b;  // mu = E_ab
      for (std::size_t i = 0; i < r; ++i) L(i * c + b, col) = F.add(L(i * c + b, col), A(i, a));
      for (std::size_t j = 0; j < c; ++j) L(a * c + j, col) = F.add(L(a * c + j, col), B(b, j));
    }
  return L;
}

// Solutions of L x = rhs: 0 or q^(dim ker L).
Integer affine_solutions(const Matrix& L, const std::vector<Elem>& rhs, std::uint32_t q) {
  const std::size_t n = L.cols();
  Matrix aug(L.field(), L.rows(), n + 1);
  for (std::size_t i = 0; i < L.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = L(i, j);
    aug(i, n) = rhs[i];
  }
  const std::size_t rl = L.rank();
  if (aug.rank() != rl) return 0;
  return ipow(Integer(q), static_cast<unsigned>(n - rl));
}

std::vector<std::vector<Elem>> span_elements(const Matrix& basis, std::uint32_t q, const Caps& caps) {
  const std::size_t d = basis.rows(), len = basis.cols();
  const Integer total = ipow(Integer(q), static_cast<unsigned>(d));
  if (total > caps.matrix_tuples) fail(ErrorKind::CapExceeded, "kernel enumeration exceeds the cap");
  const Field& F = *basis.field();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> v(len);
  for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
    std::fill(v.begin(), v.end(), 0);
    std::uint64_t y = code;
    for (std::size_t k = 0; k < d; ++k, y /= q) {
      const Elem c = static_cast<Elem>(y % q);
      if (c)
        for (std::size_t e = 0; e < len; ++e) v[e] = F.add(v[e], F.mul(c, basis(k, e)));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Integer nilpotent_block_count(unsigned l1, unsigned l2, unsigned l, unsigned m, std::uint32_t q, const Caps& caps) {
  if (2 * l > m || 2 * l1 > l || 2 * l2 > m - 2 * l)
    fail(ErrorKind::InvalidArgument, "need 2l <= m, 2 l1 <= l and 2 l2 <= m - 2l");
  const FieldPtr f = field_of_order(q);
  const Field& F = *f;
  const unsigned k = m - 2 * l;
  const auto A_list = square_zero_of_rank(f, l, l1, caps);
  const auto D_list = square_zero_of_rank(f, k, l2, caps);
  Integer total = 0;
  for (const Matrix& A : A_list) {
    // lambda_13 condition: A X + X A = -(lambda_12 lambda_23)
    const Matrix L13 = sylvester(A, A, f);
    for (const Matrix& D : D_list) {
      // (ii) A b + b D = 0 with b in M_{l,k};  (iii) D e + e A = 0 with e in M_{k,l}
      const auto Bs = span_elements(sylvester(A, D, f).nullspace(), q, caps);
      const auto Es = span_elements(sylvester(D, A, f).nullspace(), q, caps);
      if (l == 0 || k == 0) {
        // lambda_12 lambda_23 = 0, each choice contributes q^(dim ker L13)
        total += Integer(Bs.size()) * Integer(Es.size()) * affine_solutions(L13, std::vector<Elem>(l * l, 0), q);
        continue;
      }
      for (const auto& b : Bs)
        for (const auto& e : Es) {
          std::vector<Elem> rhs(l * l, 0);
          for (unsigned i = 0; i < l; ++i)
            for (unsigned j = 0; j < l; ++j) {
              Elem acc = 0;
              for (unsigned t = 0; t < k; ++t) acc = F.add(acc, F.mul(b[i * k + t], e[t * l + j]));
              rhs[i * l + j] = F.neg(acc);
            }
          total += affine_solutions(L13, rhs, q);
        }
    }
  }
  return total;
}

Integer nilpotent_block_oracle(unsigned l1, unsigned l2, unsigned l, unsigned m, std::uint32_t q, const Caps& caps) {
  if (2 * l > m) fail(ErrorKind::InvalidArgument, "need 2l <= m");
  const Integer total = ipow(Integer(q), m * m);
  if (total > caps.matrix_tuples) fail(ErrorKind::CapExceeded, "unstructured enumeration exceeds the cap");
  const FieldPtr f = field_of_order(q);
  const unsigned k = m - 2 * l;
  const Matrix zero = Matrix::zero(f, m, m);
  Matrix X(f, m, m);
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
    std::uint64_t y = code;
    for (unsigned e = 0; e < m * m; ++e, y /= q) X(e / m, e % m) = static_cast<Elem>(y % q);
    bool shape = true;
    // block rows: [0,l), [l,l+k), [l+k,m)
    for (unsigned i = l; i < m && shape; ++i)
      for (unsigned j = 0; j < l && shape; ++j) shape = X(i, j) == 0;
    for (unsigned i = l + k; i < m && shape; ++i)
      for (unsigned j = l; j < l + k && shape; ++j) shape = X(i, j) == 0;
    for (unsigned i = 0; i < l && shape; ++i)
      for (unsigned j = 0; j < l && shape; ++j) shape = X(i, j) == X(l + k + i, l + k + j);
    if (!shape || X * X != zero) continue;
    if (X.block(0, 0, l, l).rank() != l1 || X.block(l, l, k, k).rank() != l2) continue;
    ++count;
  }
  return Integer(count);
}

long nilpotent_bound_exponent(unsigned l1, unsigned l2, unsigned l, unsigned m) {
  const long L1 = l1, L2 = l2, L = l, M = m;
  return 4 * L1 * (L - L1) + 2 * L2 * (M - 2 * L - L2) + 2 * (L - L1) * (M - 2 * L - L2) + 2 * L1 * L2;
}

CountReport make_report(const std::string& group, const std::string& statistic, const Integer& value,
                        const Integer& group_order, const std::string& window) {
  CountReport r{group, statistic, value, std::nullopt, window};
  if (value >= 1 && group_order > 1) {
    const double x = log_ratio(value, group_order);
    const long long num = std::llround(x * 1e6);
    r.exponent = Rational(num, 1000000);
  }
  return r;
}

}  // namespace afg
