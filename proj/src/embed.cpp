#include "afg/embed.hpp"

#include <set>
#include <sstream>

namespace afg {

TwoGroup::TwoGroup(std::vector<std::vector<std::uint32_t>> table, std::string tag)
    : table_(std::move(table)), tag_(std::move(tag)) {
  const std::size_t a = table_.size();
  if (a == 0) fail(ErrorKind::InvalidArgument, "empty group table");
  if (a & (a - 1)) fail(ErrorKind::InvalidArgument, "group order must be a power of 2");
  for (const auto& row : table_) {
    if (row.size() != a) fail(ErrorKind::InvalidArgument, "multiplication table must be square");
    for (auto v : row)
      if (v >= a) fail(ErrorKind::InvalidArgument, "table entry out of range");
  }
  for (std::uint32_t u = 0; u < a; ++u)
    if (table_[0][u] != u || table_[u][0] != u) fail(ErrorKind::InvalidArgument, "element 0 must be the identity");
  for (std::uint32_t u = 0; u < a; ++u)
    for (std::uint32_t v = 0; v < a; ++v)
      for (std::uint32_t w = 0; w < a; ++w)
        if (table_[table_[u][v]][w] != table_[u][table_[v][w]])
          fail(ErrorKind::InvalidArgument, "multiplication table is not associative");
  inverse_.assign(a, a);
  for (std::uint32_t u = 0; u < a; ++u)
    for (std::uint32_t v = 0; v < a; ++v)
      if (table_[u][v] == 0 && table_[v][u] == 0) inverse_[u] = v;
  for (std::uint32_t u = 0; u < a; ++u)
    if (inverse_[u] == a) fail(ErrorKind::InvalidArgument, "element without inverse");
  orders_.assign(a, 0);
  for (std::uint32_t u = 0; u < a; ++u) {
    std::uint32_t x = u, k = 1;
    while (x != 0) {
      x = table_[x][u];
      ++k;
    }
    orders_[u] = u == 0 ? 1 : k;
    if (orders_[u] & (orders_[u] - 1)) fail(ErrorKind::InvalidArgument, "element order is not a power of 2");
  }
}

TwoGroup TwoGroup::cyclic_product(const std::vector<std::uint32_t>& factors) {
  if (factors.empty()) fail(ErrorKind::InvalidArgument, "no factors given");
  std::uint64_t a = 1;
  std::string tag;
  for (auto m : factors) {
    if (m < 2 || (m & (m - 1))) fail(ErrorKind::InvalidArgument, "cyclic factors must have order 2^j >= 2");
    a *= m;
    if (a > 4096) fail(ErrorKind::CapExceeded, "2-group too large for a multiplication table");
    tag += (tag.empty() ? "C" : "xC") + std::to_string(m);
  }
  const auto digits = [&](std::uint32_t x) {
    std::vector<std::uint32_t> d;
    for (auto m : factors) {
      d.push_back(x % m);
      x /= m;
    }
    return d;
  };
  std::vector<std::vector<std::uint32_t>> table(a, std::vector<std::uint32_t>(a));
  for (std::uint32_t u = 0; u < a; ++u) {
    const auto du = digits(u);
    for (std::uint32_t v = 0; v < a; ++v) {
      const auto dv = digits(v);
      std::uint32_t r = 0, scale = 1;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        r += scale * ((du[i] + dv[i]) % factors[i]);
        scale *= factors[i];
      }
      table[u][v] = r;
    }
  }
  return TwoGroup(std::move(table), tag);
}

TwoGroup TwoGroup::parse(const std::string& text) {
  std::vector<std::uint32_t> factors;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::uint32_t m = 0, reps = 1;
    const auto caret = part.find('^');
    try {
      if (part.size() < 2 || part[0] != 'C') throw std::invalid_argument("");
      std::size_t used = 0;
      const std::string base = part.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
      m = static_cast<std::uint32_t>(std::stoul(base, &used));
      if (used != base.size()) throw std::invalid_argument("");
      if (caret != std::string::npos) reps = static_cast<std::uint32_t>(std::stoul(part.substr(caret + 1)));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "cannot parse 2-group factor '" + part + "' in " + text);
    }
    for (std::uint32_t i = 0; i < reps; ++i) factors.push_back(m);
  }
  if (factors.size() == 1 && factors[0] == 1) fail(ErrorKind::InvalidArgument, "the trivial group cannot be embedded");
  return cyclic_product(factors);
}

std::vector<std::uint32_t> TwoGroup::elements_of_order(std::uint32_t s) const {
  std::vector<std::uint32_t> r;
  for (std::uint32_t u = 0; u < order(); ++u)
    if (orders_[u] == s) r.push_back(u);
  return r;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> TwoGroup::first_klein_pair() const {
  const auto inv = elements_of_order(2);
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j)
      if (mul(inv[i], inv[j]) == mul(inv[j], inv[i])) return std::make_pair(inv[i], inv[j]);
  return std::nullopt;
}

Decomposition almost_free_decompose(std::size_t n, std::size_t a) {
  if (a < 2) fail(ErrorKind::InvalidArgument, "the group must be nontrivial");
  if (n < 2 * a + 2)
    fail(ErrorKind::RankTooSmall, "dimension " + std::to_string(n) + " is below 2a+2 = " + std::to_string(2 * a + 2));
  Decomposition d;
  d.n = n;
  d.a = a;
  d.s = (n - 2) % (2 * a) + 2;
  d.k = (n - d.s) / a;
  return d;
}

std::vector<Matrix> regular_representation(const TwoGroup& g, const FieldPtr& field) {
  std::vector<Matrix> out;
  const std::uint32_t a = g.order();
  std::vector<std::size_t> perm(a);
  for (std::uint32_t u = 0; u < a; ++u) {
    for (std::uint32_t v = 0; v < a; ++v) perm[v] = g.mul(u, v);
    out.push_back(Matrix::permutation(field, perm));
  }
  return out;
}

Embedding embed_almost_free(const TwoGroup& g, const GroupSpec& target) {
  if (g.order() < 2) fail(ErrorKind::InvalidArgument, "the trivial group cannot be embedded");
  FormedSpace form = standard_form(target);
  const Decomposition dec = almost_free_decompose(target.n, g.order());
  const auto rho = regular_representation(g, form.field());
  const std::size_t a = g.order(), n = target.n;
  const std::size_t h = form.witt_index();
  std::vector<Matrix> images;
  for (const Matrix& r : rho) {
    Matrix img = Matrix::identity(form.field(), n);
    if (form.kind() == FormKind::Zero) {
      for (std::size_t c = 0; c < dec.k; ++c) img.set_block(c * a, c * a, r);
    } else {
      // partner block on the f-coordinates: sigma(rho)^-T keeps the pairing
      Matrix partner = r.inverse().transpose();
      if (form.kind() == FormKind::Unitary) partner = partner.frobenius(form.field()->e() / 2);
      for (std::size_t c = 0; c < dec.k / 2; ++c) {
        img.set_block(c * a, c * a, r);
        img.set_block(h + c * a, h + c * a, partner);
      }
    }
    images.push_back(std::move(img));
  }
  return Embedding{g, target, std::move(form), dec, std::move(images)};
}

EmbeddingCheck Embedding::check() const {
  EmbeddingCheck c;
  const std::uint32_t a = group.order();
  c.homomorphism = true;
  for (std::uint32_t u = 0; u < a && c.homomorphism; ++u)
    for (std::uint32_t v = 0; v < a; ++v)
      if (images[u] * images[v] != images[group.mul(u, v)]) {
        c.homomorphism = false;
        break;
      }
  std::set<std::string> keys;
  for (const auto& m : images) keys.insert(m.key());
  c.injective = keys.size() == a;
  c.preserves_form = true;
  c.in_group = true;
  for (const auto& m : images) {
    c.preserves_form = c.preserves_form && afg::preserves_form(m, form);
    c.in_group = c.in_group && afg::in_group(m, target, form);
  }
  const std::size_t n = target.n;
  const Matrix id = Matrix::identity(form.field(), n);
  Matrix stacked = Matrix::zero(form.field(), 0, n);
  for (const auto& m : images) stacked = stacked.vstack(m - id);
  c.fixed_space_dim = n - stacked.rank();
  c.fixed_space_ok = c.fixed_space_dim == decomposition.k + decomposition.s;
  if (form.field()->p() == 2)
    for (auto u : group.elements_of_order(2))
      if ((images[u] - id).rank() != decomposition.k * decomposition.a / 2) c.involution_rank_ok = false;
  return c;
}

KleinPair klein_subgroup(const Embedding& e) {
  const auto pair = e.group.first_klein_pair();
  if (!pair) fail(ErrorKind::InvalidArgument, e.group.tag() + " contains no Klein four-subgroup");
  return KleinPair{pair->first, pair->second, e.image(pair->first), e.image(pair->second)};
}

}  // namespace afg
