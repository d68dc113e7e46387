#include "picgrp/autgroup.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "picgrp/error.hpp"
#include "picgrp/modarith.hpp"

namespace picgrp {

namespace {

using Matrix = std::array<std::int64_t, detail::kMaxRank * detail::kMaxRank>;

std::string images_label(const AbelianPGroup& P, std::span<const std::int64_t> m) {
  const std::size_t r = P.rank();
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < r; ++j) {
    os << (j ? ",[" : "[");
    for (std::size_t i = 0; i < r; ++i) os << (i ? "," : "") << m[i * r + j];
    os << ']';
  }
  os << ']';
  return os.str();
}

// Elements are matrix keys: index 0 holds the identity, indices 1.. hold the
// remaining keys in increasing order.
class AutTableBackend final : public GroupBackend {
 public:
  AutTableBackend(const AbelianPGroup& P, std::vector<std::uint64_t> keys)
      : P_(P), codec_(P), keys_(std::move(keys)) {
    Matrix id{};
    const std::size_t r = P.rank();
    for (std::size_t i = 0; i < r; ++i) id[i * r + i] = 1;
    id_key_ = codec_.encode(std::span(id.data(), r * r));
    std::sort(keys_.begin(), keys_.end());
    auto it = std::lower_bound(keys_.begin(), keys_.end(), id_key_);
    if (it == keys_.end() || *it != id_key_) throw std::logic_error("automorphism table without identity");
    std::rotate(keys_.begin(), it, it + 1);
    if (keys_.size() > 4096 && codec_.end_size() <= (std::uint64_t{1} << 28)) {
      words_.assign(codec_.end_size() / 64 + 1, 0);
      for (std::size_t k = 1; k < keys_.size(); ++k) words_[keys_[k] >> 6] |= std::uint64_t{1} << (keys_[k] & 63);
      prefix_.resize(words_.size());
      std::uint32_t acc = 0;
      for (std::size_t w = 0; w < words_.size(); ++w) {
        prefix_[w] = acc;
        acc += static_cast<std::uint32_t>(std::popcount(words_[w]));
      }
    }
  }

  std::size_t order() const override { return keys_.size(); }

  Index mul(Index a, Index b) const override {
    const std::size_t n = P_.rank() * P_.rank();
    Matrix x, y, z;
    codec_.decode(keys_[a], std::span(x.data(), n));
    codec_.decode(keys_[b], std::span(y.data(), n));
    detail::mat_mul(P_, std::span(x.data(), n), std::span(y.data(), n), std::span(z.data(), n));
    return locate(codec_.encode(std::span(z.data(), n)));
  }

  Index inv(Index a) const override {
    const std::size_t n = P_.rank() * P_.rank();
    Matrix x, z;
    codec_.decode(keys_[a], std::span(x.data(), n));
    detail::mat_inverse(P_, std::span(x.data(), n), std::span(z.data(), n));
    return locate(codec_.encode(std::span(z.data(), n)));
  }

  std::string label(Index a) const override {
    const std::size_t n = P_.rank() * P_.rank();
    Matrix x;
    codec_.decode(keys_[a], std::span(x.data(), n));
    return images_label(P_, std::span(x.data(), n));
  }

  const AbelianPGroup* acting_on() const override { return &P_; }

  Automorphism automorphism(Index a) const override {
    std::vector<std::int64_t> m(P_.rank() * P_.rank());
    codec_.decode(keys_[a], m);
    return Automorphism::from_matrix_unchecked(P_, std::move(m));
  }

  void raw_matrix(Index a, std::span<std::int64_t> out) const override { codec_.decode(keys_[a], out); }

  std::optional<Index> find(const Automorphism& phi) const override {
    if (!(phi.group() == P_)) return std::nullopt;
    return lookup(codec_.encode(phi.matrix()));
  }

 private:
  std::optional<Index> lookup(std::uint64_t key) const {
    if (key == id_key_) return Index{0};
    if (!words_.empty()) {
      if (key >= codec_.end_size()) return std::nullopt;
      const std::uint64_t w = words_[key >> 6], bit = std::uint64_t{1} << (key & 63);
      if (!(w & bit)) return std::nullopt;
      return static_cast<Index>(prefix_[key >> 6] + std::popcount(w & (bit - 1)) + 1);
    }
    auto it = std::lower_bound(keys_.begin() + 1, keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<Index>(it - keys_.begin());
  }

  Index locate(std::uint64_t key) const {
    auto k = lookup(key);
    if (!k) throw std::logic_error("automorphism table is not closed");
    return *k;
  }

  AbelianPGroup P_;
  detail::AutCodec codec_;
  std::vector<std::uint64_t> keys_;
  std::uint64_t id_key_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> prefix_;
};

// The socle of P as F_p-vectors: coordinate i of a socle element is
// x_i / p^{e_i - 1}.  Socle element s has index sum_i digit_i * p^{r-1-i}.
struct Socle {
  std::int64_t p;
  std::size_t r;
  std::size_t size;

  explicit Socle(const AbelianPGroup& P)
      : p(P.prime()), r(P.rank()), size(static_cast<std::size_t>(ipow(P.prime(), static_cast<int>(P.rank())))) {}

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t out = 0, w = 1;
    for (std::size_t i = 0; i < r; ++i) {
      out += ((a % p + b % p) % p) * w;
      a /= p;
      b /= p;
      w *= p;
    }
    return out;
  }
};

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }

Bits join(const Socle& S, const Bits& W, std::size_t z) {
  Bits out = W;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < S.size; ++i)
    if (test_bit(W, i)) members.push_back(i);
  std::size_t kz = z;
  for (std::int64_t k = 1; k < S.p; ++k) {
    for (std::size_t w : members) {
      const std::size_t v = S.add(w, kz);
      out[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    kz = S.add(kz, z);
  }
  return out;
}

// Admissible images of generator j: coordinates respecting divisibility.
struct Candidate {
  std::vector<std::int64_t> y;
  std::size_t z;  // socle index of p^{e_j-1} y
};

std::vector<Candidate> column_candidates(const AbelianPGroup& P, std::size_t j) {
  const std::size_t r = P.rank();
  const auto& e = P.exponents();
  std::vector<std::int64_t> step(r), count(r);
  for (std::size_t i = 0; i < r; ++i) {
    step[i] = ipow(P.prime(), std::max(e[i] - e[j], 0));
    count[i] = ipow(P.prime(), std::min(e[i], e[j]));
  }
  std::vector<Candidate> out;
  std::vector<std::int64_t> digit(r, 0);
  while (true) {
    Candidate c;
    c.y.resize(r);
    c.z = 0;
    for (std::size_t i = 0; i < r; ++i) {
      c.y[i] = digit[i] * step[i];
      const std::int64_t zi = mod(c.y[i] * ipow(P.prime(), e[j] - 1), P.modulus(i));
      c.z = c.z * P.prime() + static_cast<std::size_t>(zi / ipow(P.prime(), e[i] - 1));
    }
    out.push_back(std::move(c));
    std::size_t i = r;
    while (i > 0 && ++digit[i - 1] == count[i - 1]) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

constexpr std::size_t kMemoLimit = std::size_t{1} << 20;

class AutCounter {
 public:
  explicit AutCounter(const AbelianPGroup& P) : P_(P), S_(P) {
    for (std::size_t j = 0; j < P.rank(); ++j) {
      std::map<std::size_t, std::uint64_t> m;
      for (const auto& c : column_candidates(P, j)) ++m[c.z];
      by_z_.emplace_back(m.begin(), m.end());
    }
  }

  unsigned __int128 count(std::size_t j, const Bits& W) {
    if (j == P_.rank()) return 1;
    auto key = std::make_pair(j, W);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= kMemoLimit)
      throw input_error("OrderBoundExceeded", "automorphism count of " + P_.name() + " is beyond the search bound");
    unsigned __int128 total = 0;
    for (auto [z, mult] : by_z_[j]) {
      if (test_bit(W, z)) continue;
      total += mult * count(j + 1, join(S_, W, z));
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  Bits empty_span() const {
    Bits b(S_.size / 64 + 1, 0);
    b[0] = 1;
    return b;
  }
  const Socle& socle() const { return S_; }

 private:
  AbelianPGroup P_;
  Socle S_;
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> by_z_;
  std::map<std::pair<std::size_t, Bits>, unsigned __int128> memo_;
};

class AutEnumerator {
 public:
  explicit AutEnumerator(const AbelianPGroup& P) : P_(P), codec_(P), S_(P) {
    const std::size_t r = P.rank();
    for (std::size_t j = 0; j < r; ++j) {
      cands_.push_back(column_candidates(P, j));
      std::vector<std::uint64_t> ck;
      std::vector<std::int64_t> m(r * r, 0);
      for (const auto& c : cands_.back()) {
        for (std::size_t i = 0; i < r; ++i) m[i * r + j] = c.y[i];
        ck.push_back(codec_.encode(m));
      }
      colkey_.push_back(std::move(ck));
    }
  }

  std::vector<std::uint64_t> run(std::uint64_t expected) {
    out_.reserve(expected);
    Bits W(S_.size / 64 + 1, 0);
    W[0] = 1;
    walk(0, W, 0);
    return std::move(out_);
  }

 private:
  void walk(std::size_t j, const Bits& W, std::uint64_t key) {
    const auto& cs = cands_[j];
    const bool last = j + 1 == P_.rank();
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (test_bit(W, cs[c].z)) continue;
      if (last)
        out_.push_back(key + colkey_[j][c]);
      else
        walk(j + 1, join(S_, W, cs[c].z), key + colkey_[j][c]);
    }
  }

  AbelianPGroup P_;
  detail::AutCodec codec_;
  Socle S_;
  std::vector<std::vector<Candidate>> cands_;
  std::vector<std::vector<std::uint64_t>> colkey_;
  std::vector<std::uint64_t> out_;
};

std::vector<std::uint64_t> oracle_keys(const AbelianPGroup& P) {
  const std::size_t r = P.rank();
  double bits = 0;
  for (std::size_t i = 0; i < r; ++i) bits += static_cast<double>(r) * std::log2(static_cast<double>(P.modulus(i)));
  if (bits > 24.0) throw input_error("OrderBoundExceeded", "too many integer matrices to filter for " + P.name());
  detail::AutCodec codec(P);
  std::vector<std::int64_t> m(r * r, 0);
  std::vector<std::uint64_t> keys;
  while (true) {
    if (detail::respects_divisibility(P, m) && detail::is_bijective(P, m)) keys.push_back(codec.encode(m));
    std::size_t k = r * r;
    while (k > 0 && ++m[k - 1] == P.modulus((k - 1) / r)) m[--k] = 0;
    if (k == 0) break;
  }
  return keys;
}

using Perm = std::vector<std::uint32_t>;

Perm perm_inverse(const Perm& a) {
  Perm b(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) b[a[i]] = i;
  return b;
}

// a after b
Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

bool perm_is_identity(const Perm& a) {
  for (std::uint32_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

std::uint64_t schreier_sims(std::size_t degree, std::vector<Perm> strong) {
  std::erase_if(strong, perm_is_identity);
  std::vector<std::uint32_t> base;
  while (true) {
    for (const auto& s : strong) {
      bool moves = false;
      for (auto b : base) moves = moves || s[b] != b;
      if (!moves)
        for (std::uint32_t x = 0; x < degree; ++x)
          if (s[x] != x) {
            base.push_back(x);
            break;
          }
    }
    const std::size_t L = base.size();
    std::vector<std::vector<const Perm*>> lgens(L);
    std::vector<std::vector<std::uint32_t>> orbit(L);
    std::vector<std::vector<int>> pos(L, std::vector<int>(degree, -1));
    std::vector<std::vector<Perm>> trans(L), tinv(L);
    for (std::size_t k = 0; k < L; ++k) {
      for (const auto& s : strong) {
        bool fixes = true;
        for (std::size_t t = 0; t < k; ++t) fixes = fixes && s[base[t]] == base[t];
        if (fixes) lgens[k].push_back(&s);
      }
      Perm id(degree);
      for (std::uint32_t x = 0; x < degree; ++x) id[x] = x;
      orbit[k].push_back(base[k]);
      pos[k][base[k]] = 0;
      trans[k].push_back(id);
      for (std::size_t at = 0; at < orbit[k].size(); ++at)
        for (const Perm* s : lgens[k]) {
          const std::uint32_t q = (*s)[orbit[k][at]];
          if (pos[k][q] >= 0) continue;
          pos[k][q] = static_cast<int>(orbit[k].size());
          orbit[k].push_back(q);
          trans[k].push_back(perm_mul(*s, trans[k][at]));
        }
      for (const auto& t : trans[k]) tinv[k].push_back(perm_inverse(t));
    }
    auto sift = [&](Perm h, std::size_t from) {
      for (std::size_t k = from; k < L; ++k) {
        const int at = pos[k][h[base[k]]];
        if (at < 0) return h;
        h = perm_mul(tinv[k][at], h);
      }
      return h;
    };
    bool grew = false;
    for (std::size_t k = L; k-- > 0 && !grew;)
      for (std::size_t at = 0; at < orbit[k].size() && !grew; ++at)
        for (const Perm* s : lgens[k]) {
          const int to = pos[k][(*s)[orbit[k][at]]];
          Perm sg = perm_mul(tinv[k][to], perm_mul(*s, trans[k][at]));
          Perm res = sift(std::move(sg), k + 1);
          if (!perm_is_identity(res)) {
            strong.push_back(std::move(res));
            grew = true;
            break;
          }
        }
    if (!grew) {
      std::uint64_t order = 1;
      for (const auto& o : orbit) order *= o.size();
      return order;
    }
  }
}

constexpr std::int64_t kSimsDegreeLimit = 4096;
constexpr std::uint64_t kClosureCountLimit = std::uint64_t{1} << 18;

std::uint64_t order_by_closure(const GroupBackend& G, std::span<const Index> gens) {
  std::vector<char> seen(G.order(), 0);
  std::vector<Index> queue{0};
  seen[0] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (Index s : gens) {
      const Index y = G.mul(queue[at], s);
      if (!seen[y]) seen[y] = 1, queue.push_back(y);
    }
  return queue.size();
}

std::uint64_t order_of(const GroupBackend& G, std::span<const Index> gens) {
  const auto& P = *G.acting_on();
  if (G.order() <= kClosureCountLimit || P.order() > kSimsDegreeLimit) return order_by_closure(G, gens);
  std::vector<Automorphism> auts;
  for (Index g : gens) auts.push_back(G.automorphism(g));
  return generated_order(P, auts);
}

std::vector<Index> pick_generators(const GroupBackend& G) {
  std::vector<Index> gens;
  if (G.order() == 1) return gens;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uint64_t cur = 1;
  for (int attempt = 0; attempt < 256 && cur < G.order(); ++attempt) {
    const Index k = static_cast<Index>(1 + rng() % (G.order() - 1));
    auto trial = gens;
    trial.push_back(k);
    const std::uint64_t o = order_of(G, trial);
    if (o > cur) gens = std::move(trial), cur = o;
  }
  if (cur != G.order()) throw std::logic_error("failed to find generators of Aut(P)");
  return gens;
}

FiniteGroupTable aut_table(const AbelianPGroup& P, std::vector<std::uint64_t> keys) {
  auto backend = std::make_shared<AutTableBackend>(P, std::move(keys));
  auto gens = pick_generators(*backend);
  return FiniteGroupTable(backend, std::move(gens));
}

}  // namespace

std::uint64_t aut_order(const AbelianPGroup& P) {
  if (P.is_trivial()) return 1;
  AutCounter counter(P);
  const unsigned __int128 n = counter.count(0, counter.empty_span());
  if (n > static_cast<unsigned __int128>(UINT64_MAX))
    throw input_error("OrderBoundExceeded", "|Aut(" + P.name() + ")| does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

FiniteGroupTable enumerate_aut(const AbelianPGroup& P, AutMode mode, std::uint64_t limit) {
  if (!detail::AutCodec::fits(P))
    throw input_error("OrderBoundExceeded", "rank of " + P.name() + " too large for enumeration");
  if (P.is_trivial()) return aut_table(P, {0});
  if (mode == AutMode::oracle) return aut_table(P, oracle_keys(P));
  const std::uint64_t n = aut_order(P);
  if (n > limit)
    throw input_error("OrderBoundExceeded",
                      "|Aut(" + P.name() + ")| = " + std::to_string(n) + " exceeds the materialization bound");
  auto keys = AutEnumerator(P).run(n);
  if (keys.size() != n) throw std::logic_error("automorphism enumeration disagrees with its count");
  return aut_table(P, std::move(keys));
}

FiniteGroupTable closure(const AbelianPGroup& P, std::span<const Automorphism> gens) {
  for (const auto& g : gens)
    if (!(g.group() == P)) throw input_error("ParentMismatch", "generator is not an automorphism of " + P.name());
  if (!detail::AutCodec::fits(P)) throw input_error("OrderBoundExceeded", "rank of " + P.name() + " too large");
  detail::AutCodec codec(P);
  const std::size_t n = P.rank() * P.rank();
  const std::uint64_t id = codec.encode(Automorphism::identity(P).matrix());
  std::vector<std::uint64_t> order{id};
  std::unordered_set<std::uint64_t> seen{id};
  Matrix x, z;
  for (std::size_t at = 0; at < order.size(); ++at) {
    codec.decode(order[at], std::span(x.data(), n));
    for (const auto& g : gens) {
      detail::mat_mul(P, std::span(x.data(), n), g.matrix(), std::span(z.data(), n));
      const std::uint64_t k = codec.encode(std::span(z.data(), n));
      if (seen.insert(k).second) {
        order.push_back(k);
        if (order.size() > kAutMaterializeLimit)
          throw input_error("OrderBoundExceeded", "generated subgroup exceeds the materialization bound");
      }
    }
  }
  auto backend = std::make_shared<AutTableBackend>(P, std::move(order));
  std::vector<Index> gidx;
  for (const auto& g : gens) gidx.push_back(*backend->find(g));
  return FiniteGroupTable(backend, std::move(gidx));
}

std::uint64_t generated_order(const AbelianPGroup& P, std::span<const Automorphism> gens) {
  if (P.order() > kSimsDegreeLimit) throw input_error("OrderBoundExceeded", "permutation degree too large");
  const std::size_t degree = static_cast<std::size_t>(P.order() - 1);
  std::vector<Perm> perms;
  for (const auto& g : gens) {
    Perm s(degree);
    for (std::int64_t x = 1; x < P.order(); ++x)
      s[x - 1] = static_cast<std::uint32_t>(P.index_of(g.apply(P.element_at(x))) - 1);
    perms.push_back(std::move(s));
  }
  if (degree == 0) return 1;
  return schreier_sims(degree, std::move(perms));
}

std::vector<Automorphism> automorphisms_of(const FiniteGroupTable& G, const Subgroup& H) {
  std::vector<Automorphism> out;
  for (Index g : H.elements) out.push_back(G.automorphism(g));
  return out;
}

}  // namespace picgrp
