#pragma once

#include <cstdint>
#include <vector>

namespace afg {

// Permutations act on the right: x^p = p[x], and (a * b)[x] = b[a[x]].
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t degree);
Perm compose(const Perm& a, const Perm& b);
Perm invert(const Perm& a);
bool is_identity(const Perm& a);
std::uint64_t perm_order(const Perm& a);

}  // namespace afg
