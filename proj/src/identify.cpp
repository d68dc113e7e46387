#include "picgrp/identify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "picgrp/error.hpp"

namespace picgrp {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t fast_order(const FiniteGroupTable& G, Index x, const std::vector<std::int64_t>& primes) {
  std::int64_t o = static_cast<std::int64_t>(G.order());
  for (std::int64_t q : primes)
    while (o % q == 0 && G.pow(x, o / q) == 0) o /= q;
  return o;
}

std::vector<std::int64_t> element_orders(const FiniteGroupTable& G) {
  const auto primes = prime_factors(static_cast<std::int64_t>(G.order()));
  std::vector<std::int64_t> out(G.order());
  for (Index x = 0; x < G.order(); ++x) out[x] = fast_order(G, x, primes);
  return out;
}

template <class T, class Mul>
FiniteGroupTable table_from_elements(const std::vector<T>& elems, Mul mul) {
  std::map<T, Index> where;
  for (Index i = 0; i < elems.size(); ++i) where.emplace(elems[i], i);
  std::vector<std::vector<Index>> t(elems.size(), std::vector<Index>(elems.size()));
  for (Index a = 0; a < elems.size(); ++a)
    for (Index b = 0; b < elems.size(); ++b) t[a][b] = where.at(mul(elems[a], elems[b]));
  return FiniteGroupTable::from_cayley(std::move(t));
}

using Perm = std::vector<int>;

Perm perm_after(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

bool is_even(const Perm& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 == 0;
}

FiniteGroupTable permutation_table(std::size_t n, bool even_only) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> elems;
  do {
    if (!even_only || is_even(p)) elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return table_from_elements(elems, perm_after);
}

FiniteGroupTable matrices_mod3(bool special) {
  using M = std::array<int, 4>;
  std::vector<M> elems{{1, 0, 0, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          M m{a, b, c, d};
          const int det = (a * d - b * c + 9) % 3;
          if ((special ? det == 1 : det != 0) && m != elems[0]) elems.push_back(m);
        }
  auto mul = [](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3, (x[2] * y[0] + x[3] * y[2]) % 3,
             (x[2] * y[1] + x[3] * y[3]) % 3};
  };
  return table_from_elements(elems, mul);
}

FiniteGroupTable metacyclic(std::size_t m, std::size_t k, std::int64_t r) {
  std::vector<std::vector<Index>> action(k, std::vector<Index>(m));
  std::int64_t rh = 1;
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t a = 0; a < m; ++a) action[h][a] = static_cast<Index>((rh * static_cast<std::int64_t>(a)) % m);
    rh = rh * r % static_cast<std::int64_t>(m);
  }
  return semidirect_product(FiniteGroupTable::cyclic(m), FiniteGroupTable::cyclic(k), std::move(action)).group;
}

// All invariant-factor lists (largest first) of abelian groups of order n.
std::vector<std::vector<std::int64_t>> abelian_types(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (std::int64_t q : prime_factors(n)) {
    int a = 0;
    for (std::int64_t t = n; t % q == 0; t /= q) ++a;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int maxp) -> void {
      if (left == 0) {
        parts.push_back(cur);
        return;
      }
      for (int x = std::min(left, maxp); x >= 1; --x) {
        cur.push_back(x);
        self(self, left - x, x);
        cur.pop_back();
      }
    };
    rec(rec, a, a);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& base : out)
      for (const auto& part : parts) {
        auto f = base;
        f.resize(std::max(f.size(), part.size()), 1);
        for (std::size_t i = 0; i < part.size(); ++i)
          for (int e = 0; e < part[i]; ++e) f[i] *= q;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

std::string abelian_name(const std::vector<std::int64_t>& f) {
  std::string s;
  for (auto d : f) s += (s.empty() ? "C" : " x C") + std::to_string(d);
  return s;
}

// A generating set of at most two elements when one exists.
std::vector<Index> small_generators(const FiniteGroupTable& G) {
  const std::size_t n = G.order();
  for (Index a = 1; a < n; ++a) {
    Index g[1] = {a};
    if (generated_subgroup(G, g).size() == n) return {a};
  }
  for (Index a = 1; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      Index g[2] = {a, b};
      if (generated_subgroup(G, g).size() == n) return {a, b};
    }
  return G.generators();
}

struct CatalogEntry {
  std::string name;
  std::string qualifier;  // appended when two entries share a name
  FiniteGroupTable group;
  std::string fingerprint;
  std::vector<Index> gens;
};

std::optional<std::vector<Index>> isomorphism_from_gens(const FiniteGroupTable& A, const std::vector<Index>& gens,
                                                        const FiniteGroupTable& B) {
  const std::size_t n = A.order();
  if (B.order() != n) return std::nullopt;
  const auto oa = element_orders(A), ob = element_orders(B);
  {
    auto sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::vector<Index>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Index b = 0; b < n; ++b)
      if (ob[b] == oa[gens[i]]) cands[i].push_back(b);
  constexpr Index unset = ~Index{0};
  std::vector<std::size_t> pick(gens.size(), 0);
  std::vector<Index> phi(n);
  std::vector<char> used(n);
  auto attempt = [&]() {
    std::fill(phi.begin(), phi.end(), unset);
    std::fill(used.begin(), used.end(), 0);
    phi[0] = 0;
    used[0] = 1;
    std::vector<Index> queue{0};
    for (std::size_t at = 0; at < queue.size(); ++at) {
      const Index x = queue[at];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Index y = A.mul(x, gens[i]);
        const Index img = B.mul(phi[x], cands[i][pick[i]]);
        if (phi[y] == unset) {
          if (used[img]) return false;
          phi[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (phi[y] != img) {
          return false;
        }
      }
    }
    return queue.size() == n;
  };
  if (gens.empty()) return n == 1 ? std::optional(std::vector<Index>{0}) : std::nullopt;
  for (const auto& c : cands)
    if (c.empty()) return std::nullopt;
  while (true) {
    if (attempt()) return phi;
    std::size_t i = 0;
    while (i < gens.size() && ++pick[i] == cands[i].size()) pick[i++] = 0;
    if (i == gens.size()) return std::nullopt;
  }
}

const std::vector<CatalogEntry>& catalog(std::size_t n) {
  static std::map<std::size_t, std::vector<CatalogEntry>> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<CatalogEntry> out;
  auto offer = [&](std::string name, FiniteGroupTable G, std::string qualifier = {}) {
    if (G.is_abelian()) return;
    const auto fp = order_fingerprint(G);
    for (const auto& e : out)
      if (e.fingerprint == fp && isomorphism_from_gens(e.group, e.gens, G)) return;
    auto gens = small_generators(G);
    out.push_back(CatalogEntry{std::move(name), std::move(qualifier), std::move(G), fp, std::move(gens)});
  };
  if (n % 2 == 0 && n >= 6) offer(n == 6 ? "S3" : "D" + std::to_string(n / 2), dihedral(n / 2));
  if (n % 4 == 0 && n >= 8) {
    const std::size_t m = n / 4;
    offer((m & (m - 1)) == 0 ? "Q" + std::to_string(n) : "Dic" + std::to_string(m), dicyclic(m));
  }
  if (n == 12) offer("A4", alternating(4));
  if (n == 24) offer("S4", symmetric(4));
  if (n == 24) offer("SL(2,3)", matrices_mod3(true));
  if (n == 48) offer("GL(2,3)", matrices_mod3(false));
  if (n == 60) offer("A5", alternating(5));
  for (std::size_t d = 6; d < n; ++d) {
    if (n % d != 0) continue;
    for (const auto& base : catalog(d))
      for (const auto& f : abelian_types(static_cast<std::int64_t>(n / d)))
        offer(base.name + " x " + abelian_name(f), direct_product(base.group, abelian_group(f)).group);
  }
  for (std::size_t m = 3; m < n; ++m) {
    if (n % m != 0) continue;
    const std::size_t k = n / m;
    for (std::int64_t r = 2; r < static_cast<std::int64_t>(m); ++r) {
      if (std::gcd(r, static_cast<std::int64_t>(m)) != 1) continue;
      std::int64_t t = 1;
      std::size_t ord = 0;
      do {
        t = t * r % static_cast<std::int64_t>(m);
        ++ord;
      } while (t != 1);
      if (k % ord != 0) continue;
      offer("C" + std::to_string(m) + ":C" + std::to_string(k), metacyclic(m, k, r), "[r=" + std::to_string(r) + "]");
    }
  }
  std::map<std::string, int> uses;
  for (const auto& e : out) ++uses[e.name];
  for (auto& e : out)
    if (uses[e.name] > 1) e.name += e.qualifier;
  return cache.emplace(n, std::move(out)).first->second;
}

bool verify_certificate(const FiniteGroupTable& A, const FiniteGroupTable& B, const std::vector<Index>& phi) {
  if (phi.size() != A.order() || B.order() != A.order()) return false;
  std::vector<char> hit(B.order(), 0);
  for (Index y : phi) {
    if (y >= B.order() || hit[y]) return false;
    hit[y] = 1;
  }
  for (Index a = 0; a < A.order(); ++a)
    for (Index b = 0; b < A.order(); ++b)
      if (phi[A.mul(a, b)] != B.mul(phi[a], phi[b])) return false;
  return true;
}

}  // namespace

std::string order_fingerprint(const FiniteGroupTable& G) {
  std::map<std::int64_t, std::size_t> counts;
  for (auto o : element_orders(G)) ++counts[o];
  std::string s;
  for (auto [o, c] : counts) s += (s.empty() ? "" : " ") + std::to_string(o) + "^" + std::to_string(c);
  return s;
}

std::vector<std::int64_t> abelian_invariants(const FiniteGroupTable& G) {
  const auto orders = element_orders(G);
  std::vector<std::int64_t> f;
  for (std::int64_t q : prime_factors(static_cast<std::int64_t>(G.order()))) {
    // count_k = #{x : q^k x = 0} = q^{sum_i min(k, a_i)}
    std::vector<int> log_counts{0};
    for (std::int64_t qk = q;; qk *= q) {
      std::size_t c = 0;
      for (auto o : orders)
        if (qk % o == 0) ++c;
      int lg = 0;
      for (std::size_t t = c; t > 1; t /= static_cast<std::size_t>(q)) ++lg;
      log_counts.push_back(lg);
      if (lg == log_counts[log_counts.size() - 2]) break;
    }
    // number of cyclic q-factors of exponent >= k is log_counts[k] - log_counts[k-1]
    std::vector<int> parts;
    for (std::size_t k = log_counts.size() - 1; k >= 1; --k) {
      const int at_least_k = log_counts[k] - log_counts[k - 1];
      const int at_least_k1 = k + 1 < log_counts.size() ? log_counts[k + 1] - log_counts[k] : 0;
      for (int t = 0; t < at_least_k - at_least_k1; ++t) parts.push_back(static_cast<int>(k));
    }
    f.resize(std::max(f.size(), parts.size()), 1);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int e = 0; e < parts[i]; ++e) f[i] *= q;
  }
  return f;
}

std::string AbstractGroupId::describe() const {
  switch (kind) {
    case Kind::cyclic:
      return "cyclic(" + std::to_string(order) + ")";
    case Kind::abelian: {
      std::string s = "abelian(";
      for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? "," : "") + std::to_string(invariants[i]);
      return s + ")";
    }
    case Kind::named:
      return name;
    case Kind::opaque:
      return "opaque(order " + std::to_string(order) + ")";
  }
  return {};
}

AbstractGroupId identify(const FiniteGroupTable& G, std::size_t bound) {
  AbstractGroupId id;
  id.order = G.order();
  if (G.is_abelian()) {
    id.invariants = G.order() == 1 ? std::vector<std::int64_t>{} : abelian_invariants(G);
    id.kind = id.invariants.size() <= 1 ? AbstractGroupId::Kind::cyclic : AbstractGroupId::Kind::abelian;
    return id;
  }
  if (G.order() <= bound) {
    const auto fp = order_fingerprint(G);
    for (const auto& e : catalog(G.order())) {
      if (e.fingerprint != fp) continue;
      auto phi = isomorphism_from_gens(e.group, e.gens, G);
      if (phi && verify_certificate(e.group, G, *phi)) {
        id.kind = AbstractGroupId::Kind::named;
        id.name = e.name;
        id.certificate = std::move(*phi);
        return id;
      }
    }
  }
  id.kind = AbstractGroupId::Kind::opaque;
  if (G.order() <= (std::size_t{1} << 16)) id.fingerprint = order_fingerprint(G);
  if (G.order() <= 128) {
    id.table.assign(G.order(), std::vector<Index>(G.order()));
    for (Index a = 0; a < G.order(); ++a)
      for (Index b = 0; b < G.order(); ++b) id.table[a][b] = G.mul(a, b);
  }
  return id;
}

bool same_type(const AbstractGroupId& a, const AbstractGroupId& b) {
  if (a.kind != b.kind || a.order != b.order) return false;
  switch (a.kind) {
    case AbstractGroupId::Kind::cyclic:
    case AbstractGroupId::Kind::abelian:
      return a.invariants == b.invariants;
    case AbstractGroupId::Kind::named:
      return a.name == b.name;
    case AbstractGroupId::Kind::opaque:
      return a.fingerprint == b.fingerprint;
  }
  return false;
}

std::optional<std::vector<Index>> find_isomorphism(const FiniteGroupTable& A, const FiniteGroupTable& B) {
  if (A.order() != B.order()) return std::nullopt;
  auto gens = A.order() <= 128 ? small_generators(A) : A.generators();
  auto phi = isomorphism_from_gens(A, gens, B);
  if (phi && A.order() <= 4096 && !verify_certificate(A, B, *phi)) return std::nullopt;
  return phi;
}

std::optional<FiniteGroupTable> catalog_group(const std::string& name) {
  for (std::size_t n = 6; n <= kIdentifyBound; ++n)
    for (const auto& e : catalog(n))
      if (e.name == name) return e.group;
  return std::nullopt;
}

std::vector<std::string> catalog_names(std::size_t n) {
  std::vector<std::string> out;
  for (const auto& e : catalog(n)) out.push_back(e.name);
  return out;
}

FiniteGroupTable dihedral(std::size_t m) {
  std::vector<std::vector<Index>> action(2, std::vector<Index>(m));
  for (std::size_t a = 0; a < m; ++a) {
    action[0][a] = static_cast<Index>(a);
    action[1][a] = static_cast<Index>((m - a) % m);
  }
  return semidirect_product(FiniteGroupTable::cyclic(m), FiniteGroupTable::cyclic(2), std::move(action)).group;
}

FiniteGroupTable dicyclic(std::size_t m) {
  const std::size_t n2 = 2 * m, n = 4 * m;
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t k = 0; k < n2; ++k) {
          std::size_t e = j ? i + n2 - k : i + k;
          if (j && l) e += m;
          t[j * n2 + i][l * n2 + k] = static_cast<Index>((j ^ l) * n2 + e % n2);
        }
  return FiniteGroupTable::from_cayley(std::move(t));
}

FiniteGroupTable symmetric(std::size_t n) { return permutation_table(n, false); }
FiniteGroupTable alternating(std::size_t n) { return permutation_table(n, true); }

FiniteGroupTable abelian_group(const std::vector<std::int64_t>& factors) {
  FiniteGroupTable G;
  for (auto f : factors) G = direct_product(G, FiniteGroupTable::cyclic(static_cast<std::size_t>(f))).group;
  return G;
}

}  // namespace picgrp
