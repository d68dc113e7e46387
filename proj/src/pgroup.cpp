#include "picgrp/pgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "picgrp/error.hpp"
#include "picgrp/modarith.hpp"

namespace picgrp {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

AbelianPGroup AbelianPGroup::make(std::int64_t p, std::vector<int> exponents, std::int64_t bound) {
  if (!is_prime(p)) throw input_error("NonPrime", std::to_string(p) + " is not prime");
  for (int e : exponents)
    if (e < 1) throw input_error("EmptyOrNonPositiveExponent", "exponents must be >= 1");
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
  AbelianPGroup G;
  G.p_ = p;
  G.exps_ = std::move(exponents);
  G.order_ = 1;
  for (int e : G.exps_) {
    std::int64_t m = 1;
    for (int k = 0; k < e; ++k) {
      m *= p;
      if (m > bound) break;
    }
    G.mods_.push_back(m);
    if (m > bound || G.order_ > bound / m)
      throw input_error("OrderBoundExceeded",
                        "group order exceeds the enumeration bound " + std::to_string(bound));
    G.order_ *= m;
  }
  return G;
}

AbelianPGroup make_group(std::int64_t p, std::vector<int> exponents, std::int64_t bound) {
  return AbelianPGroup::make(p, std::move(exponents), bound);
}

std::string AbelianPGroup::name() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < mods_.size(); ++i) os << (i ? " x C" : "C") << mods_[i];
  return os.str();
}

GroupElement AbelianPGroup::zero() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

GroupElement AbelianPGroup::generator(std::size_t i) const {
  GroupElement g = zero();
  g.coords.at(i) = 1;
  return g;
}

bool AbelianPGroup::contains(const GroupElement& x) const {
  if (x.coords.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (x.coords[i] < 0 || x.coords[i] >= mods_[i]) return false;
  return true;
}

void AbelianPGroup::check(const GroupElement& x) const {
  if (!contains(x)) throw input_error("ParentMismatch", "element does not belong to " + name());
}

GroupElement AbelianPGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement c = a;
  for (std::size_t i = 0; i < rank(); ++i) c.coords[i] = (a.coords[i] + b.coords[i]) % mods_[i];
  return c;
}

GroupElement AbelianPGroup::neg(const GroupElement& a) const {
  check(a);
  GroupElement c = a;
  for (std::size_t i = 0; i < rank(); ++i) c.coords[i] = (mods_[i] - a.coords[i]) % mods_[i];
  return c;
}

GroupElement AbelianPGroup::scale(const GroupElement& a, std::int64_t k) const {
  check(a);
  GroupElement c = a;
  for (std::size_t i = 0; i < rank(); ++i) c.coords[i] = mod(a.coords[i] * mod(k, mods_[i]), mods_[i]);
  return c;
}

std::int64_t AbelianPGroup::element_order(const GroupElement& a) const {
  check(a);
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a.coords[i] == 0) continue;
    std::int64_t o = mods_[i] / std::gcd(a.coords[i], mods_[i]);
    ord = std::max(ord, o);
  }
  return ord;
}

std::int64_t AbelianPGroup::index_of(const GroupElement& x) const {
  check(x);
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * mods_[i] + x.coords[i];
  return idx;
}

GroupElement AbelianPGroup::element_at(std::int64_t index) const {
  if (index < 0 || index >= order_) throw input_error("ParentMismatch", "element index out of range");
  GroupElement x = zero();
  for (std::size_t i = rank(); i-- > 0;) {
    x.coords[i] = index % mods_[i];
    index /= mods_[i];
  }
  return x;
}

std::vector<GroupElement> AbelianPGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (std::int64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

GroupElement add(const AbelianPGroup& P, const GroupElement& a, const GroupElement& b) { return P.add(a, b); }
GroupElement neg(const AbelianPGroup& P, const GroupElement& a) { return P.neg(a); }
std::int64_t element_order(const AbelianPGroup& P, const GroupElement& a) { return P.element_order(a); }

SubgroupTable::SubgroupTable(AbelianPGroup parent, std::vector<std::int64_t> sorted_indices)
    : parent_(std::move(parent)), indices_(std::move(sorted_indices)) {}

std::vector<GroupElement> SubgroupTable::elements() const {
  std::vector<GroupElement> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(parent_.element_at(i));
  return out;
}

bool SubgroupTable::contains(const GroupElement& x) const {
  if (!parent_.contains(x)) return false;
  return std::binary_search(indices_.begin(), indices_.end(), parent_.index_of(x));
}

namespace {

// S + <g> for a subgroup S given by membership flags and its element list.
void join_cyclic(const AbelianPGroup& P, std::vector<char>& member, std::vector<std::int64_t>& elems,
                 const GroupElement& g) {
  if (member[static_cast<std::size_t>(P.index_of(g))]) return;
  std::int64_t ord = P.element_order(g);
  std::vector<std::int64_t> base = elems;
  GroupElement mult = g;
  for (std::int64_t k = 1; k < ord; ++k) {
    for (auto s : base) {
      auto idx = P.index_of(P.add(P.element_at(s), mult));
      if (!member[static_cast<std::size_t>(idx)]) {
        member[static_cast<std::size_t>(idx)] = 1;
        elems.push_back(idx);
      }
    }
    mult = P.add(mult, g);
  }
}

SubgroupTable finish(const AbelianPGroup& P, std::vector<std::int64_t> elems) {
  std::sort(elems.begin(), elems.end());
  return SubgroupTable(P, std::move(elems));
}

}  // namespace

SubgroupTable subgroup_generated(const AbelianPGroup& P, std::span<const GroupElement> gens) {
  std::vector<char> member(static_cast<std::size_t>(P.order()), 0);
  std::vector<std::int64_t> elems{0};
  member[0] = 1;
  for (const auto& g : gens) {
    if (!P.contains(g)) throw input_error("ParentMismatch", "generator does not belong to " + P.name());
    join_cyclic(P, member, elems, g);
  }
  return finish(P, std::move(elems));
}

std::vector<SubgroupTable> enumerate_subgroups(const AbelianPGroup& P) {
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> todo{{0}};
  seen.insert({0});
  for (std::size_t at = 0; at < todo.size(); ++at) {
    const auto cur = todo[at];
    std::vector<char> member(static_cast<std::size_t>(P.order()), 0);
    for (auto i : cur) member[static_cast<std::size_t>(i)] = 1;
    for (std::int64_t x = 0; x < P.order(); ++x) {
      if (member[static_cast<std::size_t>(x)]) continue;
      auto m = member;
      auto elems = cur;
      join_cyclic(P, m, elems, P.element_at(x));
      std::sort(elems.begin(), elems.end());
      if (seen.insert(elems).second) todo.push_back(std::move(elems));
    }
  }
  std::vector<SubgroupTable> out;
  out.reserve(seen.size());
  for (const auto& s : seen) out.emplace_back(P, s);
  std::stable_sort(out.begin(), out.end(),
                   [](const SubgroupTable& a, const SubgroupTable& b) { return a.size() < b.size(); });
  return out;
}

GroupElement QuotientMap::project(const GroupElement& x) const {
  GroupElement y = quotient.zero();
  for (std::size_t k = 0; k < quotient.rank(); ++k) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
      s = mod(s + x.coords[i] * proj[i][k], quotient.modulus(k));
    y.coords[k] = s;
  }
  return y;
}

namespace {

// A small generating set of S: add elements not yet in the running closure.
std::vector<GroupElement> generators_of(const SubgroupTable& S) {
  const auto& P = S.parent();
  std::vector<char> member(static_cast<std::size_t>(P.order()), 0);
  std::vector<std::int64_t> elems{0};
  member[0] = 1;
  std::vector<GroupElement> gens;
  for (auto idx : S.indices()) {
    if (member[static_cast<std::size_t>(idx)]) continue;
    auto g = P.element_at(idx);
    gens.push_back(g);
    join_cyclic(P, member, elems, g);
  }
  return gens;
}

}  // namespace

QuotientMap quotient_map(const AbelianPGroup& P, const SubgroupTable& S) {
  if (!(S.parent() == P)) throw input_error("NotASubgroup", "subgroup table belongs to another group");
  const std::size_t r = P.rank();
  const std::int64_t p = P.prime();
  const int N = P.is_trivial() ? 0 : P.exponents()[0];
  const std::int64_t q = P.exponent();

  // Relations, as rows over Z/p^N: p^{e_i} eps_i and the generators of S.
  std::vector<std::vector<std::int64_t>> A;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::int64_t> row(r, 0);
    row[i] = P.modulus(i) % q;
    A.push_back(row);
  }
  for (const auto& g : generators_of(S)) A.push_back(g.coords);

  // Column operations are tracked in V and V^{-1}; the quotient map is x -> x V.
  std::vector<std::vector<std::int64_t>> V(r, std::vector<std::int64_t>(r, 0)), Vinv = V;
  for (std::size_t i = 0; i < r; ++i) V[i][i] = Vinv[i][i] = 1 % std::max<std::int64_t>(q, 1);

  std::vector<int> val(r, N);
  const std::size_t rows = A.size();
  for (std::size_t t = 0; t < r; ++t) {
    int best = N;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < r; ++j)
        if (A[i][j] != 0) {
          int v = valuation(A[i][j], p);
          if (v < best) best = v, br = i, bc = j;
        }
    if (best == N) break;
    std::swap(A[t], A[br]);
    if (bc != t) {
      for (auto& row : A) std::swap(row[t], row[bc]);
      for (auto& row : V) std::swap(row[t], row[bc]);
      std::swap(Vinv[t], Vinv[bc]);
    }
    const std::int64_t pv = ipow(p, best);
    const std::int64_t unit_inv = inverse_mod(A[t][t] / pv, q);
    for (auto& x : A[t]) x = mod(x * unit_inv, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == t || A[i][t] == 0) continue;
      const std::int64_t f = A[i][t] / pv;
      for (std::size_t j = t; j < r; ++j) A[i][j] = mod(A[i][j] - f * A[t][j], q);
    }
    for (std::size_t c = t + 1; c < r; ++c) {
      if (A[t][c] == 0) continue;
      const std::int64_t f = A[t][c] / pv;
      for (std::size_t i = 0; i < rows; ++i) A[i][c] = mod(A[i][c] - f * A[i][t], q);
      for (std::size_t i = 0; i < r; ++i) V[i][c] = mod(V[i][c] - f * V[i][t], q);
      for (std::size_t j = 0; j < r; ++j) Vinv[t][j] = mod(Vinv[t][j] + f * Vinv[c][j], q);
    }
    val[t] = best;
  }

  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < r; ++k)
    if (val[k] >= 1) keep.push_back(k);
  std::stable_sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });

  QuotientMap Q;
  std::vector<int> qexps;
  for (auto k : keep) qexps.push_back(val[k]);
  Q.quotient = AbelianPGroup::make(p, qexps, std::max<std::int64_t>(P.order(), 1));
  Q.proj.assign(r, std::vector<std::int64_t>(keep.size(), 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) Q.proj[i][k] = mod(V[i][keep[k]], Q.quotient.modulus(k));
  for (auto k : keep) {
    GroupElement lift = P.zero();
    for (std::size_t i = 0; i < r; ++i) lift.coords[i] = mod(Vinv[k][i], P.modulus(i));
    Q.lifts.push_back(std::move(lift));
  }
  return Q;
}

AbelianPGroup quotient_invariants(const AbelianPGroup& P, const SubgroupTable& S) {
  return quotient_map(P, S).quotient;
}

}  // namespace picgrp
