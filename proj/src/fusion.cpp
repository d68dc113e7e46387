#include "picgrp/fusion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "picgrp/error.hpp"
#include "picgrp/modarith.hpp"

namespace picgrp {

namespace {

using Matrix = std::array<std::int64_t, detail::kMaxRank * detail::kMaxRank>;

// Raw-matrix tests run over every element of Aut(P) in the survey.
class MatrixTests {
 public:
  explicit MatrixTests(const AbelianPGroup& P) : P_(P), r_(P.rank()), p_(P.prime()) {
    for (std::size_t i = 0; i < r_; ++i) socle_.push_back(ipow(p_, P.exponents()[i] - 1));
    binary_ = p_ == 2 && P.exponent() == 2;
  }

  bool test(std::span<const std::int64_t> m, std::int64_t k) const {
    if (!binary_) return fixed_point_free(m) && power_is_identity(m, k);
    // GF(2) matrices as column bitmasks.
    std::array<std::uint32_t, detail::kMaxRank> cols{}, shifted{};
    for (std::size_t j = 0; j < r_; ++j) {
      for (std::size_t i = 0; i < r_; ++i) cols[j] |= static_cast<std::uint32_t>(m[i * r_ + j]) << i;
      shifted[j] = cols[j] ^ (std::uint32_t{1} << j);
    }
    if (gf2_rank(shifted) != r_) return false;
    auto mul = [&](const auto& a, const auto& b) {
      std::array<std::uint32_t, detail::kMaxRank> c{};
      for (std::size_t j = 0; j < r_; ++j)
        for (std::uint32_t bits = b[j]; bits; bits &= bits - 1) c[j] ^= a[std::countr_zero(bits)];
      return c;
    };
    std::array<std::uint32_t, detail::kMaxRank> acc{};
    for (std::size_t j = 0; j < r_; ++j) acc[j] = std::uint32_t{1} << j;
    auto base = cols;
    for (; k > 0; k >>= 1) {
      if (k & 1) acc = mul(acc, base);
      if (k > 1) base = mul(base, base);
    }
    for (std::size_t j = 0; j < r_; ++j)
      if (acc[j] != (std::uint32_t{1} << j)) return false;
    return true;
  }

  // Fixes no nonzero element: phi - 1 is invertible on the socle, with basis
  // p^{e_i - 1} g_i.
  bool fixed_point_free(std::span<const std::int64_t> m) const {
    Matrix a;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < r_; ++k) {
        const std::int64_t y = mod((m[k * r_ + i] - (k == i ? 1 : 0)) * socle_[i], P_.modulus(k));
        a[k * r_ + i] = (y / socle_[k]) % p_;
      }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < r_ && rank < r_; ++c) {
      std::size_t piv = rank;
      while (piv < r_ && a[piv * r_ + c] == 0) ++piv;
      if (piv == r_) continue;
      for (std::size_t col = 0; col < r_; ++col) std::swap(a[piv * r_ + col], a[rank * r_ + col]);
      const std::int64_t inv = inverse_mod(a[rank * r_ + c], p_);
      for (std::size_t row = 0; row < r_; ++row) {
        if (row == rank || a[row * r_ + c] == 0) continue;
        const std::int64_t f = a[row * r_ + c] * inv % p_;
        for (std::size_t col = 0; col < r_; ++col)
          a[row * r_ + col] = mod(a[row * r_ + col] - f * a[rank * r_ + col], p_);
      }
      ++rank;
    }
    return rank == r_;
  }

  // M^k == I, by repeated squaring.
  bool power_is_identity(std::span<const std::int64_t> m, std::int64_t k) const {
    const std::size_t n = r_ * r_;
    Matrix acc{}, base, tmp;
    std::copy(m.begin(), m.end(), base.begin());
    for (std::size_t i = 0; i < r_; ++i) acc[i * r_ + i] = 1;
    while (k > 0) {
      if (k & 1) {
        detail::mat_mul(P_, std::span(acc.data(), n), std::span(base.data(), n), std::span(tmp.data(), n));
        acc = tmp;
      }
      k >>= 1;
      if (k) {
        detail::mat_mul(P_, std::span(base.data(), n), std::span(base.data(), n), std::span(tmp.data(), n));
        base = tmp;
      }
    }
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j)
        if (acc[i * r_ + j] != (i == j ? 1 : 0)) return false;
    return true;
  }

 private:
  std::size_t gf2_rank(std::array<std::uint32_t, detail::kMaxRank> v) const {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < r_; ++i) {
      if (!v[i]) continue;
      ++rank;
      const std::uint32_t low = v[i] & (~v[i] + 1);
      for (std::size_t j = i + 1; j < r_; ++j)
        if (v[j] & low) v[j] ^= v[i];
    }
    return rank;
  }

  const AbelianPGroup& P_;
  std::size_t r_;
  std::int64_t p_;
  std::vector<std::int64_t> socle_;
  bool binary_ = false;
};

std::vector<Index> positions_in(const Subgroup& big, std::span<const Index> xs) {
  std::vector<Index> out;
  for (Index x : xs) {
    auto it = std::lower_bound(big.elements.begin(), big.elements.end(), x);
    out.push_back(static_cast<Index>(it - big.elements.begin()));
  }
  return out;
}

bool has_element_of_order(const FiniteGroupTable& G, std::size_t n) {
  for (Index x = 0; x < G.order(); ++x)
    if (G.element_order(x) == n) return true;
  return false;
}

using Members = std::vector<Index>;

class Conjugator {
 public:
  explicit Conjugator(const FiniteGroupTable& G) : G_(G) {
    for (Index s : G.generators()) inv_.push_back(G.inv(s));
  }
  std::size_t count() const { return inv_.size(); }
  Members apply(std::size_t k, const Members& xs) const {
    const Index s = G_.generators()[k];
    Members out;
    out.reserve(xs.size());
    for (Index x : xs) out.push_back(G_.mul(G_.mul(s, x), inv_[k]));
    return out;
  }

 private:
  const FiniteGroupTable& G_;
  std::vector<Index> inv_;
};

Members sorted(Members v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool is_fixed_point_free(const Automorphism& phi) {
  return MatrixTests(phi.group()).fixed_point_free(phi.matrix());
}

bool acts_freely(const AbelianPGroup& P, std::span<const Automorphism> elements) {
  const auto all = P.elements();
  for (const auto& phi : elements) {
    if (phi.is_identity()) continue;
    for (std::size_t x = 1; x < all.size(); ++x)
      if (phi.apply(all[x]) == all[x]) return false;
  }
  return true;
}

SubgroupTable focal_subgroup(const AbelianPGroup& P, std::span<const Automorphism> gens) {
  std::vector<GroupElement> comm;
  for (const auto& phi : gens)
    for (std::size_t i = 0; i < P.rank(); ++i) {
      const auto g = P.generator(i);
      comm.push_back(P.add(phi.apply(g), P.neg(g)));
    }
  return subgroup_generated(P, comm);
}

std::vector<Automorphism> InertialPair::e_generators() const {
  std::vector<Automorphism> out;
  for (Index g : E.generators) out.push_back(aut.automorphism(g));
  return out;
}

InertialPair build_inertial_pair(const AbelianPGroup& P, const FiniteGroupTable& aut, const Subgroup& E) {
  if (!aut.is_automorphism_group() || !(aut.acting_on() == P))
    throw input_error("ParentMismatch", "table is not Aut(" + P.name() + ")");
  InertialPair pair{P, aut, E, as_group(aut, E), {}, {}, {}, {}, SubgroupTable(P, {0})};
  pair.normalizer = normalizer(aut, E);
  pair.normalizer_group = as_group(aut, pair.normalizer);
  pair.e_in_normalizer.elements = positions_in(pair.normalizer, E.elements);
  pair.e_in_normalizer.generators = positions_in(pair.normalizer, E.generators);
  pair.out_pf = quotient_group(pair.normalizer_group, pair.e_in_normalizer);

  auto gens = pair.e_generators();
  if (gens.empty() && E.size() > 1) gens = pair.e_elements();
  pair.foc = focal_subgroup(P, gens);
  pair.is_p_prime = std::gcd(static_cast<std::int64_t>(E.size()), P.prime()) == 1;
  pair.is_cyclic = pair.e_group.is_abelian() && has_element_of_order(pair.e_group, E.size());
  pair.acts_freely = acts_freely(P, pair.e_elements());
  pair.is_frobenius = E.size() > 1 && pair.is_cyclic && pair.is_p_prime && pair.acts_freely;
  return pair;
}

InertialPair build_inertial_pair(const AbelianPGroup& P, std::span<const Automorphism> gens) {
  for (const auto& g : gens)
    if (!(g.group() == P)) throw input_error("ParentMismatch", "generator is not an automorphism of " + P.name());
  const auto aut = enumerate_aut(P);
  std::vector<Index> idx;
  for (const auto& g : gens) idx.push_back(*aut.find(g));
  return build_inertial_pair(P, aut, generated_subgroup(aut, idx));
}

FiniteGroupTable out_PF(const InertialPair& pair) { return pair.out_pf.group; }

std::vector<InertialPair> frobenius_complement_survey(const AbelianPGroup& P) {
  return frobenius_complement_survey(P, enumerate_aut(P));
}

std::vector<InertialPair> frobenius_complement_survey(const AbelianPGroup& P, const FiniteGroupTable& aut) {
  const std::size_t n = aut.order();
  const std::int64_t target = P.order() - 1;
  std::vector<char> cand(n, 0);
  const MatrixTests tests(P);
  const std::size_t rr = P.rank() * P.rank();
  Matrix m;
  for (Index k = 1; k < n; ++k) {
    aut.raw_matrix(k, std::span(m.data(), rr));
    const std::span<const std::int64_t> view(m.data(), rr);
    cand[k] = tests.test(view, target);
  }

  const Conjugator conj(aut);
  std::set<Members> known;  // every conjugate of every subgroup found, sorted
  std::vector<Subgroup> reps{trivial_subgroup()};
  std::vector<char> marked(n, 0);

  // Cyclic subgroups.  Conjugation preserves the power ordering
  // [1, x, x^2, ...], so generators of each conjugate sit at the exponents
  // coprime to the order.
  for (Index k = 1; k < n; ++k) {
    if (!cand[k] || marked[k]) continue;
    Members powers{0};
    for (Index x = k; x != 0; x = aut.mul(x, k)) powers.push_back(x);
    bool valid = true;
    for (std::size_t t = 1; t < powers.size(); ++t) valid = valid && cand[powers[t]];
    if (!valid) {
      marked[k] = 1;
      continue;
    }
    const std::size_t m = powers.size();
    std::map<Members, Members> orbit{{sorted(powers), powers}};
    std::vector<Members> queue{powers};
    for (std::size_t at = 0; at < queue.size(); ++at)
      for (std::size_t s = 0; s < conj.count(); ++s) {
        Members y = conj.apply(s, queue[at]);
        if (orbit.emplace(sorted(y), y).second) queue.push_back(std::move(y));
      }
    for (const auto& [key, pw] : orbit) {
      for (std::size_t t = 1; t < m; ++t)
        if (std::gcd(t, m) == 1) marked[pw[t]] = 1;
      known.insert(key);
    }
    const auto& [canon, pw] = *orbit.begin();
    reps.push_back(Subgroup{canon, {pw[1]}});
  }

  // Noncyclic ones, by adjoining one element at a time.
  for (std::size_t q = 1; q < reps.size(); ++q) {
    const Subgroup H = reps[q];
    const auto h = static_cast<std::int64_t>(H.size());
    bool room = false;
    for (std::int64_t mult = 2 * h; mult <= target; mult += h) room = room || target % mult == 0;
    if (!room) continue;
    for (Index g = 1; g < n; ++g) {
      if (!cand[g] || H.contains(g)) continue;
      auto gens = H.generators;
      gens.push_back(g);
      Members elems{0};
      std::set<Index> seen{0};
      bool ok = true;
      for (std::size_t at = 0; at < elems.size() && ok; ++at)
        for (Index s : gens) {
          const Index y = aut.mul(elems[at], s);
          if (!seen.insert(y).second) continue;
          if (!cand[y] || static_cast<std::int64_t>(seen.size()) > target) {
            ok = false;
            break;
          }
          elems.push_back(y);
        }
      if (!ok || target % static_cast<std::int64_t>(elems.size()) != 0) continue;
      Members key(seen.begin(), seen.end());
      if (known.count(key)) continue;
      std::set<Members> orbit{key};
      std::vector<Members> queue{key};
      for (std::size_t at = 0; at < queue.size(); ++at)
        for (std::size_t s = 0; s < conj.count(); ++s) {
          Members y = sorted(conj.apply(s, queue[at]));
          if (orbit.insert(y).second) queue.push_back(std::move(y));
        }
      known.insert(orbit.begin(), orbit.end());
      // generators of the canonical conjugate: regenerate greedily
      Subgroup rep{*orbit.begin(), {}};
      Subgroup cur = trivial_subgroup();
      for (Index x : rep.elements) {
        if (cur.contains(x)) continue;
        rep.generators.push_back(x);
        cur = generated_subgroup(aut, rep.generators);
      }
      reps.push_back(std::move(rep));
    }
  }

  std::sort(reps.begin() + 1, reps.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  std::vector<InertialPair> out;
  for (const auto& E : reps) out.push_back(build_inertial_pair(P, aut, E));
  return out;
}

}  // namespace picgrp
