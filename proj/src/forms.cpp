#include "afg/forms.hpp"

#include <numeric>

namespace afg {

const char* to_string(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::Sp: return "Sp";
    case Family::GU: return "GU";
    case Family::SU: return "SU";
    case Family::O: return "O";
    case Family::SO: return "SO";
    case Family::Omega: return "Omega";
  }
  return "?";
}

bool is_orthogonal(Family f) { return f == Family::O || f == Family::SO || f == Family::Omega; }
bool is_unitary(Family f) { return f == Family::GU || f == Family::SU; }

FormKind form_kind(Family f) {
  switch (f) {
    case Family::GL:
    case Family::SL: return FormKind::Zero;
    case Family::Sp: return FormKind::Symplectic;
    case Family::GU:
    case Family::SU: return FormKind::Unitary;
    default: return FormKind::Quadratic;
  }
}

std::string to_string(const GroupSpec& spec) {
  std::string s = to_string(spec.family);
  if (is_orthogonal(spec.family)) {
    if (spec.sign == Sign::Plus) s += "+";
    if (spec.sign == Sign::Minus) s += "-";
  }
  return s + "_" + std::to_string(spec.n) + "_" + std::to_string(spec.q);
}

GroupSpec parse_group_spec(const std::string& text) {
  const auto u1 = text.find('_');
  const auto u2 = u1 == std::string::npos ? std::string::npos : text.find('_', u1 + 1);
  if (u2 == std::string::npos) fail(ErrorKind::InvalidArgument, "group must look like FAMILY[EPS]_N_Q: " + text);
  std::string fam = text.substr(0, u1);
  GroupSpec spec;
  if (!fam.empty() && (fam.back() == '+' || fam.back() == '-')) {
    spec.sign = fam.back() == '+' ? Sign::Plus : Sign::Minus;
    fam.pop_back();
  }
  static const std::pair<const char*, Family> names[] = {
      {"GL", Family::GL}, {"SL", Family::SL}, {"Sp", Family::Sp}, {"GU", Family::GU},
      {"SU", Family::SU}, {"O", Family::O},   {"SO", Family::SO}, {"Omega", Family::Omega}};
  bool found = false;
  for (const auto& [name, f] : names) {
    if (fam == name) {
      spec.family = f;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::InvalidArgument, "unknown group family '" + fam + "'");
  if (!is_orthogonal(spec.family) && spec.sign != Sign::Circle)
    fail(ErrorKind::InvalidArgument, "sign only applies to orthogonal families");
  try {
    spec.n = std::stoul(text.substr(u1 + 1, u2 - u1 - 1));
    spec.q = static_cast<std::uint32_t>(std::stoul(text.substr(u2 + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, "malformed dimension or field size in " + text);
  }
  validate(spec);
  return spec;
}

void validate(const GroupSpec& spec) {
  if (prime_power(spec.q).first == 0) fail(ErrorKind::InvalidArgument, "q must be a prime power");
  if (spec.n < 1) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  if (spec.family == Family::Sp && spec.n % 2 != 0)
    fail(ErrorKind::InvalidArgument, "symplectic groups need even dimension");
  if (is_orthogonal(spec.family)) {
    if (spec.sign == Sign::Circle && spec.n % 2 == 0)
      fail(ErrorKind::InvalidArgument, "orthogonal groups of even dimension need a sign");
    if (spec.sign != Sign::Circle && spec.n % 2 != 0)
      fail(ErrorKind::InvalidArgument, "orthogonal groups of odd dimension take no sign");
    if (spec.sign == Sign::Circle && spec.q % 2 == 0)
      fail(ErrorKind::Unsupported, "odd-dimensional orthogonal groups in characteristic 2");
  }
  if (is_unitary(spec.family) && static_cast<std::uint64_t>(spec.q) * spec.q > Field::kMaxSize)
    fail(ErrorKind::CapExceeded, "GF(q^2) exceeds the field budget");
}

namespace {

// Least nu with t^2 + t + nu irreducible over GF(q).
Elem anisotropic_constant(const Field& f) {
  for (std::uint32_t nu = 1; nu < f.size(); ++nu) {
    bool has_root = false;
    for (std::uint32_t t = 0; t < f.size() && !has_root; ++t) {
      const Elem tt = static_cast<Elem>(t);
      if (f.add(f.add(f.mul(tt, tt), tt), static_cast<Elem>(nu)) == 0) has_root = true;
    }
    if (!has_root) return static_cast<Elem>(nu);
  }
  fail(ErrorKind::Unsupported, "no anisotropic binary form found");
}

}  // namespace

FormedSpace::FormedSpace(FormKind kind, Sign sign, std::size_t n, std::uint32_t q)
    : kind_(kind), sign_(kind == FormKind::Quadratic ? sign : Sign::Circle), n_(n), q_(q) {
  field_ = field_of_order(kind == FormKind::Unitary ? q * q : q);
  const Field& f = *field_;
  gram_ = Matrix::zero(field_, n, n);
  switch (kind) {
    case FormKind::Zero:
      witt_ = n;
      break;
    case FormKind::Symplectic: {
      if (n % 2) fail(ErrorKind::InvalidArgument, "symplectic space needs even dimension");
      witt_ = n / 2;
      for (std::size_t i = 0; i < witt_; ++i) {
        gram_(i, witt_ + i) = 1;
        gram_(witt_ + i, i) = f.neg(1);
      }
      break;
    }
    case FormKind::Unitary: {
      witt_ = n / 2;
      for (std::size_t i = 0; i < witt_; ++i) {
        gram_(i, witt_ + i) = 1;
        gram_(witt_ + i, i) = 1;
      }
      if (n % 2) gram_(n - 1, n - 1) = 1;
      break;
    }
    case FormKind::Quadratic: {
      Matrix quad = Matrix::zero(field_, n, n);
      if (sign_ == Sign::Plus) {
        if (n % 2) fail(ErrorKind::InvalidArgument, "plus-type quadratic space needs even dimension");
        witt_ = n / 2;
      } else if (sign_ == Sign::Minus) {
        if (n % 2 || n < 2) fail(ErrorKind::InvalidArgument, "minus-type quadratic space needs even dimension");
        witt_ = n / 2 - 1;
        quad(n - 2, n - 2) = 1;
        quad(n - 2, n - 1) = 1;
        quad(n - 1, n - 1) = anisotropic_constant(f);
      } else {
        if (n % 2 == 0) fail(ErrorKind::InvalidArgument, "parabolic quadratic space needs odd dimension");
        if (f.p() == 2) fail(ErrorKind::Unsupported, "odd-dimensional quadratic space in characteristic 2");
        witt_ = (n - 1) / 2;
        quad(n - 1, n - 1) = 1;
      }
      for (std::size_t i = 0; i < witt_; ++i) quad(i, witt_ + i) = 1;
      gram_ = quad + quad.transpose();
      quad_ = std::move(quad);
      break;
    }
  }
  check_invariants();
}

FormedSpace::FormedSpace(FormKind kind, Sign sign, std::uint32_t q, Matrix gram, std::optional<Matrix> quad)
    : kind_(kind),
      sign_(kind == FormKind::Quadratic ? sign : Sign::Circle),
      n_(gram.rows()),
      q_(q),
      field_(gram.field()),
      gram_(std::move(gram)),
      quad_(std::move(quad)) {
  const std::uint32_t expect = kind == FormKind::Unitary ? q * q : q;
  if (field_->size() != expect) fail(ErrorKind::InvalidArgument, "gram matrix over the wrong field");
  check_invariants();
  // Witt index only matters for standard spaces; estimate as n/2.
  witt_ = kind == FormKind::Zero ? n_ : n_ / 2;
}

void FormedSpace::check_invariants() const {
  if (!gram_.square() || gram_.rows() != n_) fail(ErrorKind::InvalidArgument, "gram matrix must be n x n");
  switch (kind_) {
    case FormKind::Zero:
      break;
    case FormKind::Symplectic: {
      if (n_ % 2) fail(ErrorKind::InvalidArgument, "symplectic space needs even dimension");
      for (std::size_t i = 0; i < n_; ++i) {
        if (gram_(i, i) != 0) fail(ErrorKind::InvalidArgument, "symplectic gram must be alternating");
        for (std::size_t j = 0; j < n_; ++j)
          if (gram_(i, j) != field_->neg(gram_(j, i)))
            fail(ErrorKind::InvalidArgument, "symplectic gram must be alternating");
      }
      if (gram_.rank() != n_) fail(ErrorKind::InvalidArgument, "symplectic gram must be nonsingular");
      break;
    }
    case FormKind::Unitary: {
      const unsigned half = field_->e() / 2;
      if (gram_.transpose().frobenius(half) != gram_)
        fail(ErrorKind::InvalidArgument, "unitary gram must be hermitian");
      if (gram_.rank() != n_) fail(ErrorKind::InvalidArgument, "unitary gram must be nonsingular");
      break;
    }
    case FormKind::Quadratic: {
      if (!quad_) fail(ErrorKind::InvalidArgument, "quadratic space needs its quad part");
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j)
          if ((*quad_)(i, j) != 0) fail(ErrorKind::InvalidArgument, "quad part must be upper triangular");
      if (*quad_ + quad_->transpose() != gram_) fail(ErrorKind::InvalidArgument, "gram must equal Q + Q^T");
      if (field_->p() != 2 && gram_.rank() != n_)
        fail(ErrorKind::InvalidArgument, "quadratic gram must be nonsingular in odd characteristic");
      break;
    }
  }
}

Elem FormedSpace::sigma(Elem a) const {
  return kind_ == FormKind::Unitary ? field_->frobenius(a, field_->e() / 2) : a;
}

Elem FormedSpace::bilinear(std::span<const Elem> u, std::span<const Elem> v) const {
  const Field& f = *field_;
  Elem acc = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (u[i] == 0) continue;
    Elem row = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      const Elem g = gram_(i, j);
      if (g != 0 && v[j] != 0) row = f.add(row, f.mul(g, sigma(v[j])));
    }
    acc = f.add(acc, f.mul(u[i], row));
  }
  return acc;
}

Elem FormedSpace::quadratic(std::span<const Elem> v) const {
  if (!quad_) fail(ErrorKind::InvalidArgument, "space carries no quadratic form");
  const Field& f = *field_;
  const Matrix& q = *quad_;
  Elem acc = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i] == 0) continue;
    Elem row = 0;
    for (std::size_t j = i; j < n_; ++j)
      if (q(i, j) != 0 && v[j] != 0) row = f.add(row, f.mul(q(i, j), v[j]));
    acc = f.add(acc, f.mul(v[i], row));
  }
  return acc;
}

bool FormedSpace::singular(std::span<const Elem> v) const {
  switch (kind_) {
    case FormKind::Quadratic: return quadratic(v) == 0;
    case FormKind::Unitary: return bilinear(v, v) == 0;
    default: return true;
  }
}

bool FormedSpace::totally_singular(const Matrix& rows) const {
  if (kind_ == FormKind::Zero) return true;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    if (!singular(rows.row(i))) return false;
    for (std::size_t j = i + 1; j < rows.rows(); ++j)
      if (bilinear(rows.row(i), rows.row(j)) != 0) return false;
  }
  return true;
}

FormedSpace standard_space(FormKind kind, Sign sign, std::size_t n, std::uint32_t q) {
  return FormedSpace(kind, sign, n, q);
}

FormedSpace standard_form(const GroupSpec& spec) {
  validate(spec);
  return FormedSpace(form_kind(spec.family), spec.sign, spec.n, spec.q);
}

Matrix upper_fold(const Matrix& m) {
  Matrix r = Matrix::zero(m.field(), m.rows(), m.cols());
  const Field& f = *m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    r(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) r(i, j) = f.add(m(i, j), m(j, i));
  }
  return r;
}

bool preserves_form(const Matrix& g, const FormedSpace& f) {
  if (!g.square() || g.rows() != f.n()) fail(ErrorKind::InvalidArgument, "matrix and space dimensions differ");
  if (g.field() != f.field()) fail(ErrorKind::InvalidArgument, "matrix and space over different fields");
  switch (f.kind()) {
    case FormKind::Zero:
      return true;
    case FormKind::Symplectic:
      return g.transpose() * f.gram() * g == f.gram();
    case FormKind::Unitary:
      return g.transpose() * f.gram() * g.frobenius(f.field()->e() / 2) == f.gram();
    case FormKind::Quadratic:
      return upper_fold(g.transpose() * *f.quad() * g) == *f.quad();
  }
  return false;
}

bool in_group(const Matrix& g, const GroupSpec& spec, const FormedSpace& f) {
  if (!preserves_form(g, f)) return false;
  const Elem d = g.det();
  if (d == 0) return false;
  switch (spec.family) {
    case Family::SL:
    case Family::SU:
    case Family::SO:
    case Family::Omega:
      return d == 1;
    default:
      return true;
  }
}

namespace {

Integer q_power(std::uint32_t q, unsigned k) { return ipow(Integer(q), k); }

Integer gcd_int(std::uint64_t a, std::uint64_t b) { return Integer(std::gcd(a, b)); }

Integer orthogonal_full_order(const GroupSpec& spec) {
  const std::uint32_t q = spec.q;
  if (spec.sign == Sign::Circle) {
    const unsigned m = static_cast<unsigned>((spec.n - 1) / 2);
    Integer r = 2 * q_power(q, m * m);
    for (unsigned i = 1; i <= m; ++i) r *= q_power(q, 2 * i) - 1;
    return r;
  }
  const unsigned m = static_cast<unsigned>(spec.n / 2);
  Integer r = 2 * q_power(q, m * (m - 1));
  r *= spec.sign == Sign::Plus ? q_power(q, m) - 1 : q_power(q, m) + 1;
  for (unsigned i = 1; i < m; ++i) r *= q_power(q, 2 * i) - 1;
  return r;
}

}  // namespace

Integer group_order(const GroupSpec& spec) {
  validate(spec);
  const std::uint32_t q = spec.q;
  const unsigned n = static_cast<unsigned>(spec.n);
  switch (spec.family) {
    case Family::GL:
    case Family::SL: {
      Integer r = q_power(q, n * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) r *= q_power(q, i) - 1;
      return spec.family == Family::GL ? r : r / (q - 1);
    }
    case Family::Sp: {
      const unsigned m = n / 2;
      Integer r = q_power(q, m * m);
      for (unsigned i = 1; i <= m; ++i) r *= q_power(q, 2 * i) - 1;
      return r;
    }
    case Family::GU:
    case Family::SU: {
      Integer r = q_power(q, n * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) r *= i % 2 ? q_power(q, i) + 1 : q_power(q, i) - 1;
      return spec.family == Family::GU ? r : r / (q + 1);
    }
    case Family::O:
      return orthogonal_full_order(spec);
    case Family::SO:
      return q % 2 ? orthogonal_full_order(spec) / 2 : orthogonal_full_order(spec);
    case Family::Omega:
      return q % 2 ? orthogonal_full_order(spec) / 4 : orthogonal_full_order(spec) / 2;
  }
  return 0;
}

Integer scalar_subgroup_order(const GroupSpec& spec) {
  const std::uint64_t q = spec.q;
  const std::uint64_t n = spec.n;
  switch (spec.family) {
    case Family::GL: return Integer(q - 1);
    case Family::SL: return gcd_int(n, q - 1);
    case Family::Sp: return gcd_int(2, q - 1);
    case Family::GU: return Integer(q + 1);
    case Family::SU: return gcd_int(n, q + 1);
    case Family::O: return gcd_int(2, q - 1);
    case Family::SO: return (q % 2 && n % 2 == 0) ? Integer(2) : Integer(1);
    case Family::Omega: {
      if (q % 2 == 0 || n % 2) return 1;
      // -I lies in Omega^eps_{2m}(q) iff q^m = eps (mod 4)
      std::uint64_t qm = 1;
      for (std::uint64_t i = 0; i < n / 2; ++i) qm = (qm * q) % 4;
      const std::uint64_t eps = spec.sign == Sign::Plus ? 1 : 3;
      return qm == eps ? Integer(2) : Integer(1);
    }
  }
  return 1;
}

}  // namespace afg
