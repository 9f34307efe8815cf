#include "afg/schreier_sims.hpp"

#include <random>

namespace afg {

StabilizerChain::StabilizerChain(std::vector<Perm> gens, std::size_t degree, const SchreierSimsOptions& options)
    : degree_(degree), base_candidates_(options.base_candidates), bound_(options.order_bound) {
  for (auto& g : gens) {
    if (g.size() != degree) fail(ErrorKind::InvalidArgument, "generator degree mismatch");
    if (!is_identity(g)) input_gens_.push_back(std::move(g));
  }
  for (const auto& g : input_gens_) {
    if (levels_.empty()) {
      strong_.push_back(g);
      strong_inv_.push_back(invert(g));
      new_level(strong_.size() - 1);
    } else {
      strong_.push_back(g);
      strong_inv_.push_back(invert(g));
      add_to_level(0, strong_.size() - 1);
    }
  }
  if (input_gens_.empty() || bound_reached()) return;
  if (options.randomized) randomized_phase(options);
  if (!bound_reached()) deterministic_phase();
}

Integer StabilizerChain::order() const {
  Integer r = 1;
  for (const auto& l : levels_) r *= l.orbit.size();
  return r;
}

std::vector<std::uint32_t> StabilizerChain::base() const {
  std::vector<std::uint32_t> b;
  for (const auto& l : levels_) b.push_back(l.point);
  return b;
}

std::vector<std::size_t> StabilizerChain::orbit_lengths() const {
  std::vector<std::size_t> r;
  for (const auto& l : levels_) r.push_back(l.orbit.size());
  return r;
}

bool StabilizerChain::bound_reached() const { return bound_ && order() >= *bound_; }

bool StabilizerChain::contains(const Perm& g) const {
  if (g.size() != degree_) return false;
  const auto s = strip(g, 0);
  return s.level == levels_.size() && is_identity(s.residue);
}

StabilizerChain::Sifted StabilizerChain::strip(Perm g, std::size_t from) const {
  Perm tmp(degree_);
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::uint32_t b = g[lv.point];
    const std::int32_t idx = lv.where[b];
    if (idx < 0) return {std::move(g), l};
    const Perm& inv = lv.inverse_transversal[static_cast<std::size_t>(idx)];
    if (b == lv.point) continue;  // transversal element is the identity
    for (std::size_t x = 0; x < degree_; ++x) tmp[x] = inv[g[x]];
    g.swap(tmp);
  }
  return {std::move(g), levels_.size()};
}

std::uint32_t StabilizerChain::pick_base_point(const Perm& h) const {
  for (auto c : base_candidates_)
    if (c < degree_ && h[c] != c) return c;
  for (std::uint32_t x = 0; x < degree_; ++x)
    if (h[x] != x) return x;
  fail(ErrorKind::InvalidArgument, "identity has no moved point");
}

void StabilizerChain::new_level(std::size_t strong_index) {
  Level lv;
  lv.point = pick_base_point(strong_[strong_index]);
  lv.where.assign(degree_, -1);
  lv.where[lv.point] = 0;
  lv.orbit.push_back(lv.point);
  lv.inverse_transversal.push_back(identity_perm(degree_));
  levels_.push_back(std::move(lv));
  add_to_level(levels_.size() - 1, strong_index);
}

void StabilizerChain::add_to_level(std::size_t level, std::size_t strong_index) {
  Level& lv = levels_[level];
  lv.gens.push_back(strong_index);
  lv.checked.emplace_back();

  const auto extend = [&](std::size_t from_idx, std::size_t gen) {
    const Perm& s = strong_[gen];
    const Perm& sinv = strong_inv_[gen];
    const std::uint32_t beta = lv.orbit[from_idx];
    const std::uint32_t gamma = s[beta];
    if (lv.where[gamma] >= 0) return;
    const std::uint64_t words = static_cast<std::uint64_t>(lv.orbit.size() + 1) * degree_;
    if (words > (std::uint64_t{1} << 29))
      fail(ErrorKind::CapExceeded, "stabilizer chain transversal exceeds memory budget");
    lv.where[gamma] = static_cast<std::int32_t>(lv.orbit.size());
    lv.orbit.push_back(gamma);
    const Perm& ib = lv.inverse_transversal[from_idx];
    Perm ig(degree_);
    // u_gamma = u_beta * s, so u_gamma^-1 = s^-1 * u_beta^-1
    for (std::size_t x = 0; x < degree_; ++x) ig[x] = ib[sinv[x]];
    lv.inverse_transversal.push_back(std::move(ig));
  };

  const std::size_t old = lv.orbit.size();
  for (std::size_t k = 0; k < old; ++k) extend(k, strong_index);
  for (std::size_t k = old; k < lv.orbit.size(); ++k)
    for (std::size_t gi : lv.gens) extend(k, gi);
}

void StabilizerChain::add_strong_generator(Perm h, std::size_t first_level, std::size_t last_level) {
  strong_inv_.push_back(invert(h));
  strong_.push_back(std::move(h));
  const std::size_t idx = strong_.size() - 1;
  for (std::size_t l = first_level; l <= last_level && l < levels_.size(); ++l) add_to_level(l, idx);
  if (last_level >= levels_.size()) new_level(idx);
}

void StabilizerChain::randomized_phase(const SchreierSimsOptions& options) {
  std::mt19937_64 rng(options.seed);
  const std::size_t slots = std::max<std::size_t>(10, input_gens_.size());
  std::vector<Perm> state;
  for (std::size_t i = 0; i < slots; ++i) state.push_back(input_gens_[i % input_gens_.size()]);
  Perm acc = identity_perm(degree_);
  const auto step = [&]() {
    std::uniform_int_distribution<std::size_t> pick(0, slots - 1);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (slots > 1 && j == i) j = pick(rng);
    if (rng() & 1u)
      state[i] = compose(state[i], state[j]);
    else
      state[i] = compose(state[j], state[i]);
    acc = compose(acc, state[i]);
  };
  for (int k = 0; k < 40; ++k) step();

  unsigned streak = 0;
  while (streak < options.random_sift_streak) {
    step();
    auto s = strip(acc, 0);
    if (s.level == levels_.size() && is_identity(s.residue)) {
      ++streak;
      continue;
    }
    streak = 0;
    add_strong_generator(std::move(s.residue), 0, s.level);
    if (bound_reached()) return;
  }
}

void StabilizerChain::deterministic_phase() {
  std::size_t i = levels_.size();
  Perm u(degree_), g(degree_);
  while (i-- > 0) {
    bool restarted = false;
    for (std::size_t gl = 0; gl < levels_[i].gens.size() && !restarted; ++gl) {
      for (std::size_t k = 0; k < levels_[i].orbit.size(); ++k) {
        Level& lv = levels_[i];
        auto& done = lv.checked[gl];
        if (done.size() < lv.orbit.size()) done.resize(lv.orbit.size(), 0);
        if (done[k]) continue;
        const Perm& s = strong_[lv.gens[gl]];
        const std::uint32_t beta = lv.orbit[k];
        const std::uint32_t img = s[beta];
        const Perm& inv_beta = lv.inverse_transversal[k];
        const Perm& inv_img = lv.inverse_transversal[static_cast<std::size_t>(lv.where[img])];
        for (std::size_t x = 0; x < degree_; ++x) u[inv_beta[x]] = static_cast<std::uint32_t>(x);
        // Schreier generator u_beta * s * u_{beta^s}^-1
        for (std::size_t x = 0; x < degree_; ++x) g[x] = inv_img[s[u[x]]];
        auto sifted = strip(g, i + 1);
        if (sifted.level == levels_.size() && is_identity(sifted.residue)) {
          levels_[i].checked[gl][k] = 1;
          continue;
        }
        const std::size_t j = sifted.level;
        add_strong_generator(std::move(sifted.residue), i + 1, j);
        if (bound_reached()) return;
        i = std::min(j, levels_.size() - 1) + 1;  // resume at the deepest touched level
        restarted = true;
        break;
      }
    }
  }
}

void StabilizerChain::for_each_element(const std::function<bool(const Perm&)>& f) const {
  std::vector<std::vector<Perm>> forward(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l)
    for (const auto& inv : levels_[l].inverse_transversal) forward[l].push_back(invert(inv));

  // g = u_{L-1} * ... * u_0
  std::vector<Perm> partial(levels_.size() + 1, identity_perm(degree_));
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == 0) {
      if (!f(partial[0])) stop = true;
      return;
    }
    const std::size_t l = depth - 1;
    for (const auto& u : forward[l]) {
      Perm& out = partial[l];
      const Perm& in = partial[depth];
      out.resize(degree_);
      for (std::size_t x = 0; x < degree_; ++x) out[x] = u[in[x]];
      rec(l);
      if (stop) return;
    }
  };
  rec(levels_.size());
}

}  // namespace afg
