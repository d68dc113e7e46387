#pragma once

// Brute-force reference computations used to cross-check the library.  None
// of these call the structured algorithms they are compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "picgrp/group_table.hpp"
#include "picgrp/pgroup.hpp"

namespace oracle {

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Hillar-Rhea: with exponents sorted e_1 <= ... <= e_n, d_k = max{l : e_l = e_k}
// and c_k = min{l : e_l = e_k},
//   |Aut| = prod (p^{d_k} - p^{k-1}) * prod p^{e_j (n - d_j)} * prod p^{(e_i - 1)(n - c_i + 1)}.
inline unsigned __int128 aut_order_formula(std::int64_t p, std::vector<int> e) {
  std::sort(e.begin(), e.end());
  const int n = static_cast<int>(e.size());
  unsigned __int128 r = 1;
  for (int k = 1; k <= n; ++k) {
    int d = k, c = k;
    while (d < n && e[d] == e[k - 1]) ++d;
    while (c > 1 && e[c - 2] == e[k - 1]) --c;
    r *= static_cast<unsigned __int128>(ipow(p, d) - ipow(p, k - 1));
    for (int t = 0; t < e[k - 1] * (n - d); ++t) r *= static_cast<unsigned>(p);
    for (int t = 0; t < (e[k - 1] - 1) * (n - c + 1); ++t) r *= static_cast<unsigned>(p);
  }
  return r;
}

// Every abelian p-group of order at most `bound`, as non-increasing exponent lists.
inline std::vector<std::vector<int>> abelian_shapes(std::int64_t p, std::int64_t bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int max_part, std::int64_t order) -> void {
    out.push_back(cur);
    for (int a = 1; a <= max_part; ++a) {
      const std::int64_t next = order * ipow(p, a);
      if (next > bound) break;
      cur.push_back(a);
      self(self, a, next);
      cur.pop_back();
    }
  };
  rec(rec, 64, 1);
  return out;
}

// All automorphisms as row-major matrices, found by trying every matrix with
// entries mod p^{e_i}, keeping those that kill the relations p^{e_j} g_j and
// map the whole group injectively.
inline std::set<std::vector<std::int64_t>> brute_force_aut(const picgrp::AbelianPGroup& P) {
  const std::size_t r = P.rank();
  std::vector<std::int64_t> mod(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) mod[i * r + j] = P.modulus(i);
  const auto elems = P.elements();
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> m(r * r, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < r && ok; ++j)
      for (std::size_t i = 0; i < r && ok; ++i)
        ok = (m[i * r + j] * P.modulus(j)) % P.modulus(i) == 0;
    if (ok) {
      std::set<std::vector<std::int64_t>> images;
      for (const auto& x : elems) {
        std::vector<std::int64_t> y(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
          std::int64_t s = 0;
          for (std::size_t j = 0; j < r; ++j) s += m[i * r + j] * x.coords[j];
          y[i] = ((s % P.modulus(i)) + P.modulus(i)) % P.modulus(i);
        }
        images.insert(y);
      }
      if (static_cast<std::int64_t>(images.size()) == P.order()) out.insert(m);
    }
    std::size_t k = 0;
    while (k < m.size() && ++m[k] == mod[k]) m[k++] = 0;
    if (k == m.size()) break;
  }
  return out;
}

inline std::vector<picgrp::Index> normalizer_by_definition(const picgrp::FiniteGroupTable& G,
                                                           const std::vector<picgrp::Index>& H) {
  std::set<picgrp::Index> h(H.begin(), H.end());
  std::vector<picgrp::Index> out;
  for (picgrp::Index g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto x : H) ok = ok && h.count(G.mul(G.mul(g, x), G.inv(g)));
    if (ok) out.push_back(g);
  }
  return out;
}

inline std::vector<picgrp::Index> centralizer_by_definition(const picgrp::FiniteGroupTable& G,
                                                            const std::vector<picgrp::Index>& H) {
  std::vector<picgrp::Index> out;
  for (picgrp::Index g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto x : H) ok = ok && G.mul(g, x) == G.mul(x, g);
    if (ok) out.push_back(g);
  }
  return out;
}

// Left cosets gN as sorted sets, in order of their least element.
inline std::vector<std::vector<picgrp::Index>> cosets(const picgrp::FiniteGroupTable& G,
                                                      const std::vector<picgrp::Index>& N) {
  std::set<std::vector<picgrp::Index>> all;
  for (picgrp::Index g = 0; g < G.order(); ++g) {
    std::vector<picgrp::Index> c;
    for (auto n : N) c.push_back(G.mul(g, n));
    std::sort(c.begin(), c.end());
    all.insert(c);
  }
  return {all.begin(), all.end()};
}

// Subgroup generated by a set, by closure under multiplication.
inline std::vector<picgrp::Index> closure(const picgrp::FiniteGroupTable& G, const std::vector<picgrp::Index>& gens) {
  std::set<picgrp::Index> s{0};
  std::vector<picgrp::Index> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto g : gens) {
      const auto y = G.mul(queue[k], g);
      if (s.insert(y).second) queue.push_back(y);
    }
  return {s.begin(), s.end()};
}

// Element-order statistics of P/S by coset enumeration; for abelian p-groups
// these determine the isomorphism type.
inline std::map<std::int64_t, std::int64_t> quotient_order_counts(const picgrp::AbelianPGroup& P,
                                                                  const picgrp::SubgroupTable& S) {
  std::set<std::int64_t> sub(S.indices().begin(), S.indices().end());
  std::set<std::vector<std::int64_t>> seen;
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& x : P.elements()) {
    std::vector<std::int64_t> coset;
    for (const auto& s : S.elements()) coset.push_back(P.index_of(P.add(x, s)));
    std::sort(coset.begin(), coset.end());
    if (!seen.insert(coset).second) continue;
    std::int64_t k = 1;
    auto y = x;
    while (!sub.count(P.index_of(y))) {
      y = P.add(y, x);
      ++k;
    }
    ++counts[k];
  }
  return counts;
}

}  // namespace oracle
