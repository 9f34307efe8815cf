#include "afg/field.hpp"

#include <map>
#include <mutex>

namespace afg {

namespace {

using Poly = std::vector<unsigned>;  // coefficients low -> high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

Poly decode(std::uint32_t v, unsigned p, unsigned len) {
  Poly r(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    r[i] = v % p;
    v /= p;
  }
  return r;
}

std::uint32_t encode(const Poly& a, unsigned p) {
  std::uint32_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint32_t count = static_cast<std::uint32_t>(ipow_u64(p, d));
    for (std::uint32_t low = 0; low < count; ++low) {
      Poly g = decode(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<unsigned, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<unsigned>(p), e};
}

Field::Field(unsigned p, unsigned e) : p_(p), e_(e) {
  size_ = static_cast<std::uint32_t>(ipow_u64(p, e));

  // Least monic irreducible of degree e in the base-p encoding.
  const std::uint32_t lows = static_cast<std::uint32_t>(ipow_u64(p, e));
  for (std::uint32_t low = 0; low < lows; ++low) {
    Poly f = decode(low, p, e);
    f.push_back(1);
    if (e == 1 || (f[0] != 0 && irreducible(f, p))) {
      modulus_ = f;
      break;
    }
  }

  neg_.resize(size_);
  for (std::uint32_t a = 0; a < size_; ++a) {
    Poly d = decode(a, p, e);
    for (auto& c : d) c = (p - c) % p;
    neg_[a] = static_cast<Elem>(encode(d, p));
  }

  // Least primitive element: the first candidate whose powers cover GF(q)^*.
  exp_.assign(size_ - 1 == 0 ? 1 : size_ - 1, 1);
  log_.assign(size_, 0);
  for (std::uint32_t g = (size_ == 2 ? 1 : 2); g < size_; ++g) {
    const Poly gp = decode(g, p, e);
    Poly cur{1};
    bool ok = true;
    for (std::uint32_t k = 0; k + 1 < size_; ++k) {
      const std::uint32_t v = encode(cur, p);
      if (k > 0 && v == 1) {
        ok = false;
        break;
      }
      exp_[k] = static_cast<Elem>(v);
      cur = poly_mod(poly_mul(cur, gp, p), modulus_, p);
    }
    if (ok) {
      primitive_ = static_cast<Elem>(g);
      break;
    }
  }
  for (std::uint32_t k = 0; k + 1 < size_; ++k) log_[exp_[k]] = k;

  if (p != 2 && size_ <= 256) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (std::uint32_t a = 0; a < size_; ++a)
      for (std::uint32_t b = 0; b < size_; ++b)
        add_table_[a * size_ + b] = add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
  }
}

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t x = a, y = b, r = 0, place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    r += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return static_cast<Elem>(r);
}

Elem Field::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::InvalidArgument, "division by zero in " + name());
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (size_ - 1))) % (size_ - 1)];
}

Elem Field::frobenius(Elem a, unsigned k) const {
  std::uint64_t power = 1;
  for (unsigned i = 0; i < k % e_; ++i) power *= p_;
  return pow(a, power);
}

Elem Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

bool Field::is_square(Elem a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

std::string Field::name() const {
  return "GF(" + std::to_string(size_) + ")";
}

FieldPtr Field::make(unsigned p, unsigned e) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) fail(ErrorKind::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < e; ++i) {
    size *= p;
    if (size > kMaxSize) fail(ErrorKind::CapExceeded, "field size exceeds 2^16");
  }
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> interned;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = interned[{p, e}];
  if (!slot) slot = FieldPtr(new Field(p, e));
  return slot;
}

FieldPtr make_field(unsigned p, unsigned e) { return Field::make(p, e); }

FieldPtr field_of_order(std::uint32_t q) {
  const auto [p, e] = prime_power(q);
  if (p == 0) fail(ErrorKind::InvalidArgument, std::to_string(q) + " is not a prime power");
  return Field::make(p, e);
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_->size()) fail(ErrorKind::InvalidArgument, "element out of range for " + field_->name());
}

void FieldElement::same_field(const FieldElement& o) const {
  if (field_ != o.field_)
    fail(ErrorKind::InvalidArgument, "mixed fields: " + field_->name() + " and " + o.field_->name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  same_field(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  same_field(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  same_field(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  same_field(o);
  return {field_, field_->div(value_, o.value_)};
}

FieldElement frobenius(const FieldElement& a, unsigned k) {
  return {a.field(), a.field()->frobenius(a.value(), k)};
}

}  // namespace afg
