#include "afg/atlas.hpp"

namespace afg {

VectorAction::VectorAction(FieldPtr field, std::size_t n, std::uint64_t degree_cap)
    : field_(std::move(field)), n_(n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= field_->size();
    if (total - 1 > degree_cap)
      fail(ErrorKind::CapExceeded, "action on " + std::to_string(n) + "-dimensional vectors over " +
                                       field_->name() + " exceeds the degree cap");
  }
  degree_ = static_cast<std::size_t>(total - 1);
}

std::uint64_t VectorAction::add_codes(std::uint64_t a, std::uint64_t b) const {
  if (field_->p() == 2) return a ^ b;
  const std::uint64_t Q = field_->size();
  std::uint64_t r = 0, scale = 1;
  while (a || b) {
    r += scale * field_->add(static_cast<Elem>(a % Q), static_cast<Elem>(b % Q));
    a /= Q;
    b /= Q;
    scale *= Q;
  }
  return r;
}

std::uint32_t VectorAction::point(std::span<const Elem> v) const {
  std::uint64_t code = 0;
  for (std::size_t i = n_; i-- > 0;) code = code * field_->size() + v[i];
  if (code == 0) fail(ErrorKind::InvalidArgument, "the zero vector is not a point");
  return static_cast<std::uint32_t>(code - 1);
}

std::vector<Elem> VectorAction::vector(std::uint32_t point) const {
  std::vector<Elem> v(n_);
  std::uint64_t code = std::uint64_t{point} + 1;
  for (std::size_t i = 0; i < n_; ++i) {
    v[i] = static_cast<Elem>(code % field_->size());
    code /= field_->size();
  }
  return v;
}

std::vector<std::uint32_t> VectorAction::basis_points() const {
  std::vector<std::uint32_t> b;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n_; ++i, c *= field_->size()) b.push_back(static_cast<std::uint32_t>(c - 1));
  return b;
}

Perm VectorAction::permutation(const Matrix& g) const {
  if (g.rows() != n_ || g.cols() != n_ || g.field() != field_)
    fail(ErrorKind::InvalidArgument, "matrix does not act on this space");
  const Field& f = *field_;
  const std::uint64_t Q = f.size();
  // multiples[j * Q + d] = code of d * (column j)
  std::vector<std::uint64_t> multiples(n_ * Q);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::uint64_t d = 0; d < Q; ++d) {
      std::uint64_t code = 0;
      for (std::size_t i = n_; i-- > 0;) code = code * Q + f.mul(static_cast<Elem>(d), g(i, j));
      multiples[j * Q + d] = code;
    }
  std::vector<std::uint64_t> img(degree_ + 1);
  img[0] = 0;
  std::size_t j = 0;
  std::uint64_t qj = 1;
  for (std::uint64_t c = 1; c <= degree_; ++c) {
    if (c == qj * Q) {
      ++j;
      qj *= Q;
    }
    const std::uint64_t d = c / qj;
    const std::uint64_t rest = c - d * qj;
    img[c] = add_codes(img[rest], multiples[j * Q + d]);
  }
  Perm p(degree_);
  for (std::uint64_t c = 1; c <= degree_; ++c) {
    if (img[c] == 0) fail(ErrorKind::InvalidArgument, "singular matrix has no permutation action");
    p[c - 1] = static_cast<std::uint32_t>(img[c] - 1);
  }
  return p;
}

Matrix VectorAction::matrix(const Perm& p) const {
  Matrix m(field_, n_, n_);
  const auto pts = basis_points();
  for (std::size_t j = 0; j < n_; ++j) {
    const auto col = vector(p[pts[j]]);
    for (std::size_t i = 0; i < n_; ++i) m(i, j) = col[i];
  }
  return m;
}

StabilizerChain matrix_chain(const VectorAction& action, const std::vector<Matrix>& gens,
                             std::optional<Integer> bound) {
  std::vector<Perm> perms;
  perms.reserve(gens.size());
  for (const auto& g : gens) perms.push_back(action.permutation(g));
  SchreierSimsOptions opts;
  opts.base_candidates = action.basis_points();
  opts.order_bound = std::move(bound);
  return StabilizerChain(std::move(perms), action.degree(), opts);
}

Integer bsgs_order(const std::vector<Matrix>& gens, std::optional<Integer> bound) {
  if (gens.empty()) return 1;
  const auto& f = gens.front().field();
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens)
    if (g.field() != f || !g.square() || g.rows() != n)
      fail(ErrorKind::InvalidArgument, "generators must be square matrices of one size over one field");
  VectorAction action(f, n);
  return matrix_chain(action, gens, std::move(bound)).order();
}

namespace {

// F_p-basis 1, w, .., w^(k-1) of the subfield of order p^k, w a generator
// of that subfield's multiplicative group.
std::vector<Elem> subfield_basis(const Field& f, unsigned k) {
  const std::uint64_t sub = ipow_u64(f.p(), k);
  const Elem w = f.exp((f.size() - 1) / (sub - 1));
  std::vector<Elem> b;
  Elem x = 1;
  for (unsigned i = 0; i < k; ++i) {
    b.push_back(x);
    x = f.mul(x, w);
  }
  return b;
}

struct Builder {
  FieldPtr field;
  std::size_t n;
  std::vector<Matrix> out;

  Matrix unit() const { return Matrix::identity(field, n); }
  void push(Matrix m) {
    if (!m.is_identity()) out.push_back(std::move(m));
  }
};

void linear_generators(const GroupSpec& spec, Builder& b) {
  const Field& f = *b.field;
  const auto basis = subfield_basis(f, f.e());
  for (std::size_t i = 0; i + 1 < spec.n; ++i)
    for (Elem t : basis) {
      Matrix up = b.unit(), down = b.unit();
      up(i, i + 1) = t;
      down(i + 1, i) = t;
      b.push(std::move(up));
      b.push(std::move(down));
    }
  if (spec.family == Family::GL) {
    Matrix d = b.unit();
    d(0, 0) = f.primitive();
    b.push(std::move(d));
  }
}

void symplectic_generators(const GroupSpec& spec, Builder& b) {
  const Field& f = *b.field;
  const std::size_t h = spec.n / 2;
  const auto basis = subfield_basis(f, f.e());
  for (std::size_t i = 0; i + 1 < h; ++i)
    for (Elem t : basis) {
      Matrix up = b.unit(), down = b.unit();
      up(i, i + 1) = t;
      up(h + i + 1, h + i) = f.neg(t);
      down(i + 1, i) = t;
      down(h + i, h + i + 1) = f.neg(t);
      b.push(std::move(up));
      b.push(std::move(down));
    }
  for (Elem t : basis) {
    Matrix y = b.unit(), z = b.unit();
    y(h - 1, 2 * h - 1) = t;
    z(2 * h - 1, h - 1) = t;
    b.push(std::move(y));
    b.push(std::move(z));
  }
}

void unitary_generators(const GroupSpec& spec, Builder& b) {
  const Field& f = *b.field;  // GF(q^2)
  const unsigned half = f.e() / 2;
  const auto bar = [&](Elem a) { return f.frobenius(a, half); };
  const std::size_t n = spec.n;
  const std::size_t h = n / 2;
  const auto full = subfield_basis(f, f.e());
  // trace-zero elements t0 * GF(q)
  Elem t0 = 0;
  for (std::uint32_t t = 1; t < f.size() && t0 == 0; ++t)
    if (f.add(static_cast<Elem>(t), bar(static_cast<Elem>(t))) == 0) t0 = static_cast<Elem>(t);
  std::vector<Elem> trace_zero;
  for (Elem s : subfield_basis(f, half)) trace_zero.push_back(f.mul(t0, s));

  for (std::size_t i = 0; i + 1 < h; ++i)
    for (Elem t : full) {
      Matrix up = b.unit(), down = b.unit();
      up(i, i + 1) = t;
      up(h + i + 1, h + i) = f.neg(bar(t));
      down(i + 1, i) = t;
      down(h + i, h + i + 1) = f.neg(bar(t));
      b.push(std::move(up));
      b.push(std::move(down));
    }
  if (h >= 1) {
    const std::size_t e = h - 1, fh = 2 * h - 1;
    for (Elem t : trace_zero) {
      Matrix y = b.unit(), z = b.unit();
      y(e, fh) = t;
      z(fh, e) = t;
      b.push(std::move(y));
      b.push(std::move(z));
    }
    if (n % 2) {
      const std::size_t w = n - 1;
      for (Elem a : full) {
        // b + bar(b) = -a bar(a)
        const Elem target = f.neg(f.mul(a, bar(a)));
        Elem c = 0;
        bool found = false;
        for (std::uint32_t x = 0; x < f.size() && !found; ++x)
          if (f.add(static_cast<Elem>(x), bar(static_cast<Elem>(x))) == target) {
            c = static_cast<Elem>(x);
            found = true;
          }
        if (!found) fail(ErrorKind::Unsupported, "no unitary root element found");
        Matrix up = b.unit(), down = b.unit();
        up(w, fh) = a;
        up(e, fh) = c;
        up(e, w) = f.neg(bar(a));
        down(w, e) = a;
        down(fh, e) = c;
        down(fh, w) = f.neg(bar(a));
        b.push(std::move(up));
        b.push(std::move(down));
      }
    }
  }
  if (spec.family == Family::GU) {
    const std::uint32_t q = spec.q;
    Matrix d = b.unit();
    if (n % 2) {
      d(n - 1, n - 1) = f.exp(q - 1);
    } else {
      d(0, 0) = f.primitive();
      d(h, h) = f.inv(f.exp(q));
    }
    b.push(std::move(d));
  }
}

// x -> x + B(x,u) w - B(x,w) u - Q(w) B(x,u) u, for singular u and w ⊥ u.
Matrix siegel(const FormedSpace& sp, const std::vector<Elem>& u, const std::vector<Elem>& w) {
  const Field& f = *sp.field();
  const std::size_t n = sp.n();
  const Elem qw = sp.quadratic(w);
  Matrix m(sp.field(), n, n);
  std::vector<Elem> x(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    const Elem bu = sp.bilinear(x, u);
    const Elem bw = sp.bilinear(x, w);
    const Elem cu = f.sub(f.neg(bw), f.mul(qw, bu));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = f.add(x[i], f.add(f.mul(bu, w[i]), f.mul(cu, u[i])));
  }
  return m;
}

// x -> x - B(x,v)/Q(v) v
Matrix reflection(const FormedSpace& sp, const std::vector<Elem>& v) {
  const Field& f = *sp.field();
  const std::size_t n = sp.n();
  const Elem qv = sp.quadratic(v);
  Matrix m(sp.field(), n, n);
  std::vector<Elem> x(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    const Elem c = f.neg(f.div(sp.bilinear(x, v), qv));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = f.add(x[i], f.mul(c, v[i]));
  }
  return m;
}

void orthogonal_generators(const GroupSpec& spec, const FormedSpace& sp, Builder& b) {
  const Field& f = *b.field;
  const std::size_t n = spec.n;
  const std::size_t h = sp.witt_index();
  if ((spec.sign != Sign::Circle && n < 4) || (spec.sign == Sign::Circle && n < 3))
    fail(ErrorKind::Unsupported, "orthogonal generators need dimension at least 4 (3 when odd)");
  const auto basis = subfield_basis(f, f.e());
  const auto unitvec = [&](std::size_t i, Elem t) {
    std::vector<Elem> v(n, 0);
    v[i] = t;
    return v;
  };
  for (std::size_t i = 0; i + 1 < h; ++i)
    for (std::size_t u : {i, h + i})
      for (std::size_t wv : {i + 1, h + i + 1})
        for (Elem t : basis) b.push(siegel(sp, unitvec(u, 1), unitvec(wv, t)));
  for (std::size_t a = 2 * h; a < n; ++a)
    for (std::size_t u : {h - 1, 2 * h - 1})
      for (Elem t : basis) b.push(siegel(sp, unitvec(u, 1), unitvec(a, t)));

  if (spec.family == Family::Omega) return;
  std::vector<Elem> v1(n, 0);
  v1[0] = 1;
  v1[h] = 1;
  if (f.p() == 2) {
    if (spec.family == Family::O) b.push(reflection(sp, v1));
    return;
  }
  Elem nonsquare = 0;
  for (std::uint32_t x = 1; x < f.size() && nonsquare == 0; ++x)
    if (!f.is_square(static_cast<Elem>(x))) nonsquare = static_cast<Elem>(x);
  std::vector<Elem> v2(n, 0);
  v2[0] = 1;
  v2[h] = nonsquare;
  const Matrix r1 = reflection(sp, v1), r2 = reflection(sp, v2);
  if (spec.family == Family::O) {
    b.push(r1);
    b.push(r2);
  } else {
    b.push(r1 * r2);
  }
}

}  // namespace

std::vector<Matrix> standard_generators(const GroupSpec& spec) {
  const FormedSpace sp = standard_form(spec);
  Builder b{sp.field(), spec.n, {}};
  switch (form_kind(spec.family)) {
    case FormKind::Zero: linear_generators(spec, b); break;
    case FormKind::Symplectic: symplectic_generators(spec, b); break;
    case FormKind::Unitary: unitary_generators(spec, b); break;
    case FormKind::Quadratic: orthogonal_generators(spec, sp, b); break;
  }
  for (const auto& g : b.out)
    if (!in_group(g, spec, sp)) fail(ErrorKind::IdentityViolated, "standard generator outside " + to_string(spec));
  return b.out;
}

namespace {

void pr_step(std::vector<Matrix>& state, std::mt19937_64& rng) {
  const std::size_t slots = state.size() - 1;
  std::uniform_int_distribution<std::size_t> pick(0, slots - 1);
  const std::size_t i = pick(rng);
  std::size_t j = pick(rng);
  while (slots > 1 && j == i) j = pick(rng);
  const bool left = rng() & 1u;
  const bool inv = rng() & 1u;
  const Matrix other = inv ? state[j].inverse() : state[j];
  state[i] = left ? other * state[i] : state[i] * other;
  state[slots] = state[slots] * state[i];
}

}  // namespace

GroupAtlas::GroupAtlas(const GroupSpec& spec)
    : spec_(spec), form_(standard_form(spec)), gens_(standard_generators(spec)), order_(group_order(spec)) {
  if (gens_.empty()) return;
  const std::size_t slots = std::max<std::size_t>(10, gens_.size());
  for (std::size_t i = 0; i < slots; ++i) pr_state_.push_back(gens_[i % gens_.size()]);
  pr_state_.push_back(Matrix::identity(form_.field(), spec.n));
  std::mt19937_64 burn(0xa11a5);
  for (int k = 0; k < 100; ++k) pr_step(pr_state_, burn);
}

const VectorAction& GroupAtlas::action() const {
  std::call_once(action_once_, [&] { action_ = std::make_unique<VectorAction>(form_.field(), spec_.n); });
  return *action_;
}

const StabilizerChain& GroupAtlas::chain() const {
  std::call_once(chain_once_, [&] {
    chain_ = std::make_unique<StabilizerChain>(matrix_chain(action(), gens_, order_));
  });
  return *chain_;
}

Matrix GroupAtlas::random_element(std::mt19937_64& rng, unsigned walk_length) const {
  if (pr_state_.empty()) return Matrix::identity(form_.field(), spec_.n);
  auto state = pr_state_;
  for (unsigned k = 0; k < walk_length; ++k) pr_step(state, rng);
  return state.back();
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace afg
