#include "picgrp/group_table.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "picgrp/error.hpp"

namespace picgrp {

Automorphism GroupBackend::automorphism(Index) const {
  throw input_error("NotAnAutomorphismGroup", "group elements are abstract labels");
}

std::optional<Index> GroupBackend::find(const Automorphism&) const { return std::nullopt; }

void GroupBackend::raw_matrix(Index a, std::span<std::int64_t> out) const {
  const auto& m = automorphism(a).matrix();
  std::copy(m.begin(), m.end(), out.begin());
}

namespace {

class CayleyBackend final : public GroupBackend {
 public:
  CayleyBackend(std::vector<Index> flat, std::size_t n, std::vector<std::string> labels)
      : flat_(std::move(flat)), n_(n), labels_(std::move(labels)) {
    inv_.resize(n_);
    for (Index a = 0; a < n_; ++a)
      for (Index b = 0; b < n_; ++b)
        if (flat_[a * n_ + b] == 0) inv_[a] = b;
  }
  std::size_t order() const override { return n_; }
  Index mul(Index a, Index b) const override { return flat_[static_cast<std::size_t>(a) * n_ + b]; }
  Index inv(Index a) const override { return inv_[a]; }
  std::string label(Index a) const override { return labels_.empty() ? std::to_string(a) : labels_[a]; }

 private:
  std::vector<Index> flat_;
  std::size_t n_;
  std::vector<std::string> labels_;
  std::vector<Index> inv_;
};

std::vector<Index> closure_elements(const FiniteGroupTable& G, std::span<const Index> gens) {
  std::vector<Index> elems{0};
  std::unordered_set<Index> seen{0};
  for (std::size_t at = 0; at < elems.size(); ++at)
    for (Index s : gens) {
      Index y = G.mul(elems[at], s);
      if (seen.insert(y).second) elems.push_back(y);
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Deterministic generating set: scan elements in index order.
std::vector<Index> greedy_generators(const FiniteGroupTable& G) {
  std::vector<Index> gens;
  Subgroup cur = trivial_subgroup();
  for (Index g = 1; g < G.order() && cur.size() < G.order(); ++g) {
    if (cur.contains(g)) continue;
    gens.push_back(g);
    cur.elements = closure_elements(G, gens);
  }
  return gens;
}

class SubgroupBackend final : public GroupBackend {
 public:
  SubgroupBackend(FiniteGroupTable parent, std::vector<Index> elems)
      : parent_(std::move(parent)), elems_(std::move(elems)) {}
  std::size_t order() const override { return elems_.size(); }
  Index mul(Index a, Index b) const override { return local(parent_.mul(elems_[a], elems_[b])); }
  Index inv(Index a) const override { return local(parent_.inv(elems_[a])); }
  std::string label(Index a) const override { return parent_.label(elems_[a]); }
  const AbelianPGroup* acting_on() const override {
    return parent_.is_automorphism_group() ? &parent_.acting_on() : nullptr;
  }
  Automorphism automorphism(Index a) const override { return parent_.automorphism(elems_[a]); }
  void raw_matrix(Index a, std::span<std::int64_t> out) const override { parent_.raw_matrix(elems_[a], out); }
  std::optional<Index> find(const Automorphism& phi) const override {
    auto g = parent_.find(phi);
    if (!g) return std::nullopt;
    auto it = std::lower_bound(elems_.begin(), elems_.end(), *g);
    if (it == elems_.end() || *it != *g) return std::nullopt;
    return static_cast<Index>(it - elems_.begin());
  }

 private:
  Index local(Index g) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), g);
    if (it == elems_.end() || *it != g) throw input_error("NotASubgroup", "product left the subgroup");
    return static_cast<Index>(it - elems_.begin());
  }
  FiniteGroupTable parent_;
  std::vector<Index> elems_;
};

class QuotientBackend final : public GroupBackend {
 public:
  QuotientBackend(FiniteGroupTable parent, std::vector<Index> coset_of, std::vector<Index> reps)
      : parent_(std::move(parent)), coset_of_(std::move(coset_of)), reps_(std::move(reps)) {}
  std::size_t order() const override { return reps_.size(); }
  Index mul(Index a, Index b) const override { return coset_of_[parent_.mul(reps_[a], reps_[b])]; }
  Index inv(Index a) const override { return coset_of_[parent_.inv(reps_[a])]; }
  std::string label(Index a) const override { return "[" + parent_.label(reps_[a]) + "]"; }

 private:
  FiniteGroupTable parent_;
  std::vector<Index> coset_of_;
  std::vector<Index> reps_;
};

class SemidirectBackend final : public GroupBackend {
 public:
  SemidirectBackend(FiniteGroupTable A, FiniteGroupTable H, std::vector<Index> action)
      : A_(std::move(A)), H_(std::move(H)), act_(std::move(action)), na_(A_.order()), nh_(H_.order()) {}
  std::size_t order() const override { return na_ * nh_; }
  Index mul(Index x, Index y) const override {
    const Index a = x / nh_, h = x % nh_, b = y / nh_, k = y % nh_;
    return static_cast<Index>(A_.mul(a, act_[h * na_ + b]) * nh_ + H_.mul(h, k));
  }
  Index inv(Index x) const override {
    const Index a = x / nh_, h = x % nh_;
    const Index hi = H_.inv(h);
    return static_cast<Index>(act_[hi * na_ + A_.inv(a)] * nh_ + hi);
  }
  std::string label(Index x) const override {
    return "(" + A_.label(x / nh_) + "," + H_.label(x % nh_) + ")";
  }

 private:
  FiniteGroupTable A_, H_;
  std::vector<Index> act_;
  std::size_t na_, nh_;
};

class TrivialBackend final : public GroupBackend {
 public:
  std::size_t order() const override { return 1; }
  Index mul(Index, Index) const override { return 0; }
  Index inv(Index) const override { return 0; }
};

}  // namespace

FiniteGroupTable::FiniteGroupTable() : FiniteGroupTable(std::make_shared<TrivialBackend>(), {}) {}

FiniteGroupTable::FiniteGroupTable(std::shared_ptr<const GroupBackend> backend, std::vector<Index> generators)
    : backend_(std::move(backend)), order_(backend_->order()), generators_(std::move(generators)) {
  if (order_ <= kCayleyCacheLimit) {
    cayley_.resize(order_ * order_);
    inverse_.resize(order_);
    for (Index a = 0; a < order_; ++a) {
      for (Index b = 0; b < order_; ++b) cayley_[a * order_ + b] = backend_->mul(a, b);
      inverse_[a] = backend_->inv(a);
    }
  } else if (order_ <= (std::size_t{1} << 16) && !backend_->acting_on()) {
    inverse_.resize(order_);
    for (Index a = 0; a < order_; ++a) inverse_[a] = backend_->inv(a);
  }
  std::erase(generators_, Index{0});
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  if (generators_.empty() && order_ > 1) {
    if (order_ > (std::size_t{1} << 16)) throw std::logic_error("large group table needs explicit generators");
    generators_ = greedy_generators(*this);
  }
}

FiniteGroupTable FiniteGroupTable::from_cayley(std::vector<std::vector<Index>> table, std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw input_error("NotAGroup", "empty table");
  std::vector<Index> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw input_error("NotAGroup", "table is not square");
    std::vector<char> seen(n, 0);
    for (Index x : row) {
      if (x >= n || seen[x]) throw input_error("NotAGroup", "row is not a permutation");
      seen[x] = 1;
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  for (Index a = 0; a < n; ++a)
    if (flat[a] != a || flat[a * n] != a) throw input_error("NotAGroup", "index 0 is not the identity");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]])
          throw input_error("NotAGroup", "multiplication is not associative");
  return FiniteGroupTable(std::make_shared<CayleyBackend>(std::move(flat), n, std::move(labels)), {});
}

FiniteGroupTable FiniteGroupTable::cyclic(std::size_t n) {
  std::vector<Index> flat(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) flat[a * n + b] = static_cast<Index>((a + b) % n);
  std::vector<Index> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroupTable(std::make_shared<CayleyBackend>(std::move(flat), n, std::vector<std::string>{}), gens);
}

Index FiniteGroupTable::pow(Index a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Index r = 0;
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::size_t FiniteGroupTable::element_order(Index a) const {
  std::size_t n = 1;
  for (Index x = a; x != 0; x = mul(x, a)) ++n;
  return n;
}

bool FiniteGroupTable::is_abelian() const {
  for (Index s : generators_)
    for (Index t : generators_)
      if (mul(s, t) != mul(t, s)) return false;
  return true;
}

const AbelianPGroup& FiniteGroupTable::acting_on() const {
  const auto* P = backend_->acting_on();
  if (!P) throw input_error("NotAnAutomorphismGroup", "group elements are abstract labels");
  return *P;
}

bool Subgroup::contains(Index g) const { return std::binary_search(elements.begin(), elements.end(), g); }

Subgroup generated_subgroup(const FiniteGroupTable& G, std::span<const Index> gens) {
  Subgroup H;
  for (Index g : gens) {
    if (g >= G.order()) throw input_error("ParentMismatch", "generator index out of range");
    if (g != 0) H.generators.push_back(g);
  }
  H.elements = closure_elements(G, H.generators);
  return H;
}

Subgroup whole_group(const FiniteGroupTable& G) {
  Subgroup H;
  H.elements.resize(G.order());
  for (Index i = 0; i < G.order(); ++i) H.elements[i] = i;
  H.generators = G.generators();
  return H;
}

Subgroup trivial_subgroup() { return Subgroup{{0}, {}}; }

bool is_subgroup(const FiniteGroupTable& G, const Subgroup& H) {
  if (H.elements.empty() || H.elements[0] != 0) return false;
  if (!std::is_sorted(H.elements.begin(), H.elements.end())) return false;
  if (H.elements.back() >= G.order()) return false;
  for (Index a : H.elements)
    for (Index b : H.elements)
      if (!H.contains(G.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroupTable& G, const Subgroup& N) {
  auto ngens = N.generators;
  if (ngens.empty() && N.size() > 1) ngens = N.elements;
  for (Index s : G.generators()) {
    const Index si = G.inv(s);
    for (Index n : ngens)
      if (!N.contains(G.mul(G.mul(s, n), si))) return false;
  }
  return true;
}

FiniteGroupTable as_group(const FiniteGroupTable& G, const Subgroup& H) {
  std::vector<Index> gens;
  for (Index g : H.generators) {
    auto it = std::lower_bound(H.elements.begin(), H.elements.end(), g);
    gens.push_back(static_cast<Index>(it - H.elements.begin()));
  }
  return FiniteGroupTable(std::make_shared<SubgroupBackend>(G, H.elements), std::move(gens));
}

Subgroup embed(const FiniteGroupTable& G, const FiniteGroupTable& H) {
  Subgroup S;
  S.elements.reserve(H.order());
  for (Index k = 0; k < H.order(); ++k) {
    auto g = G.find(H.automorphism(k));
    if (!g) throw input_error("NotASubgroup", "automorphism not found in the ambient group");
    S.elements.push_back(*g);
  }
  for (Index k : H.generators()) S.generators.push_back(*G.find(H.automorphism(k)));
  std::sort(S.elements.begin(), S.elements.end());
  return S;
}

namespace {

using Point = std::vector<Index>;

// Orbit of a tuple of elements under simultaneous conjugation by G's
// generators, with a transversal: conj(trans[i]) maps the start to pts[i].
struct ConjugationOrbit {
  std::map<Point, std::size_t> where;
  std::vector<const Point*> pts;
  std::vector<Index> trans;
};

ConjugationOrbit conjugation_orbit(const FiniteGroupTable& G, const Point& start) {
  const auto& gens = G.generators();
  std::vector<Index> ginv;
  for (Index s : gens) ginv.push_back(G.inv(s));
  ConjugationOrbit o;
  o.pts.push_back(&o.where.emplace(start, 0).first->first);
  o.trans.push_back(0);
  Point q;
  for (std::size_t i = 0; i < o.pts.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      q.clear();
      for (Index x : *o.pts[i]) q.push_back(G.mul(G.mul(gens[k], x), ginv[k]));
      auto [it, fresh] = o.where.emplace(q, o.pts.size());
      if (fresh) {
        o.pts.push_back(&it->first);
        o.trans.push_back(G.mul(gens[k], o.trans[i]));
      }
    }
  return o;
}

// Adds generators to S until it reaches the target order.
void grow_to(const FiniteGroupTable& G, Subgroup& S, std::size_t target, Index g) {
  if (S.size() >= target || S.contains(g)) return;
  auto gens = S.generators;
  gens.push_back(g);
  S = generated_subgroup(G, gens);
}

// The centralizer of a tuple, from Schreier generators of its orbit.
Subgroup tuple_stabilizer(const FiniteGroupTable& G, const ConjugationOrbit& o) {
  const auto& gens = G.generators();
  const std::size_t target = G.order() / o.pts.size();
  if (target == G.order()) return whole_group(G);
  std::vector<Index> ginv;
  for (Index s : gens) ginv.push_back(G.inv(s));
  Subgroup S = trivial_subgroup();
  Point q;
  for (std::size_t i = 0; i < o.pts.size() && S.size() < target; ++i)
    for (std::size_t k = 0; k < gens.size() && S.size() < target; ++k) {
      q.clear();
      for (Index x : *o.pts[i]) q.push_back(G.mul(G.mul(gens[k], x), ginv[k]));
      const std::size_t j = o.where.at(q);
      grow_to(G, S, target, G.mul(G.inv(o.trans[j]), G.mul(gens[k], o.trans[i])));
    }
  return S;
}

Point generating_tuple(const Subgroup& E) {
  Point gens = E.generators;
  if (gens.empty() && E.size() > 1) gens = E.elements;
  return gens;
}

}  // namespace

// x normalizes E exactly when conjugation by x carries E's generating tuple
// into E, so N is the union of the centralizer cosets t C over the orbit
// points t lying in E.
Subgroup normalizer(const FiniteGroupTable& G, const Subgroup& E) {
  const Point tuple = generating_tuple(E);
  if (tuple.empty() || E.size() == G.order()) return whole_group(G);
  const auto orbit = conjugation_orbit(G, tuple);
  Subgroup N = tuple_stabilizer(G, orbit);
  std::size_t good = 0;
  for (const Point* pt : orbit.pts)
    good += std::all_of(pt->begin(), pt->end(), [&](Index x) { return E.contains(x); });
  const std::size_t target = N.size() * good;
  for (std::size_t i = 0; i < orbit.pts.size() && N.size() < target; ++i)
    if (std::all_of(orbit.pts[i]->begin(), orbit.pts[i]->end(), [&](Index x) { return E.contains(x); }))
      grow_to(G, N, target, orbit.trans[i]);
  return N;
}

Subgroup centralizer(const FiniteGroupTable& G, const Subgroup& E) {
  const Point tuple = generating_tuple(E);
  if (tuple.empty()) return whole_group(G);
  return tuple_stabilizer(G, conjugation_orbit(G, tuple));
}

Subgroup HomomorphismData::kernel() const {
  Subgroup K;
  for (Index x = 0; x < map.size(); ++x)
    if (map[x] == 0) K.elements.push_back(x);
  return K;
}

Subgroup HomomorphismData::image() const {
  Subgroup I;
  I.elements = map;
  std::sort(I.elements.begin(), I.elements.end());
  I.elements.erase(std::unique(I.elements.begin(), I.elements.end()), I.elements.end());
  return I;
}

bool is_homomorphism(const FiniteGroupTable& source, const FiniteGroupTable& target, std::span<const Index> map) {
  if (map.size() != source.order()) return false;
  for (Index y : map)
    if (y >= target.order()) return false;
  if (map[0] != 0) return false;
  for (Index s : source.generators())
    for (Index x = 0; x < source.order(); ++x)
      if (map[source.mul(x, s)] != target.mul(map[x], map[s])) return false;
  return true;
}

HomomorphismData make_homomorphism(FiniteGroupTable source, FiniteGroupTable target, std::vector<Index> map) {
  if (!is_homomorphism(source, target, map))
    throw input_error("NotHomomorphism", "map is not a group homomorphism");
  return HomomorphismData{std::move(source), std::move(target), std::move(map)};
}

HomomorphismData trivial_into(const FiniteGroupTable& target) {
  return HomomorphismData{FiniteGroupTable(), target, {0}};
}

HomomorphismData trivial_from(const FiniteGroupTable& source) {
  return HomomorphismData{source, FiniteGroupTable(), std::vector<Index>(source.order(), 0)};
}

HomomorphismData identity_map(const FiniteGroupTable& G) {
  std::vector<Index> m(G.order());
  for (Index i = 0; i < G.order(); ++i) m[i] = i;
  return HomomorphismData{G, G, std::move(m)};
}

HomomorphismData compose(const HomomorphismData& second, const HomomorphismData& first) {
  if (!first.target.same_as(second.source))
    throw input_error("NotComposable", "target of the first map is not the source of the second");
  std::vector<Index> m(first.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = second.map[first.map[i]];
  return HomomorphismData{first.source, second.target, std::move(m)};
}

QuotientGroup quotient_group(const FiniteGroupTable& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw input_error("NotNormal", "subgroup is not normal");
  constexpr Index unset = ~Index{0};
  std::vector<Index> coset_of(G.order(), unset);
  std::vector<Index> reps;
  if (N.size() == 1) {
    reps.resize(G.order());
    for (Index g = 0; g < G.order(); ++g) coset_of[g] = reps[g] = g;
  } else {
    for (Index g = 0; g < G.order(); ++g) {
      if (coset_of[g] != unset) continue;
      const auto id = static_cast<Index>(reps.size());
      reps.push_back(g);
      for (Index n : N.elements) coset_of[G.mul(g, n)] = id;
    }
  }
  std::vector<Index> gens;
  for (Index s : G.generators()) gens.push_back(coset_of[s]);
  FiniteGroupTable Q(std::make_shared<QuotientBackend>(G, coset_of, reps), gens);
  HomomorphismData proj{G, Q, std::move(coset_of)};
  return QuotientGroup{Q, std::move(proj), std::move(reps)};
}

SemidirectProduct semidirect_product(const FiniteGroupTable& A, const FiniteGroupTable& H,
                                     std::vector<std::vector<Index>> action) {
  const std::size_t na = A.order(), nh = H.order();
  if (action.size() != nh) throw input_error("ActionNotHomomorphism", "one permutation per element of H required");
  for (const auto& perm : action)
    if (!is_homomorphism(A, A, perm) || perm.size() != na)
      throw input_error("ActionNotHomomorphism", "an acting element is not an automorphism of A");
  for (Index a = 0; a < na; ++a)
    if (action[0][a] != a) throw input_error("ActionNotHomomorphism", "identity acts nontrivially");
  for (Index s : H.generators())
    for (Index h = 0; h < nh; ++h) {
      const auto& lhs = action[H.mul(s, h)];
      for (Index a = 0; a < na; ++a)
        if (lhs[a] != action[s][action[h][a]])
          throw input_error("ActionNotHomomorphism", "action is not compatible with multiplication in H");
    }
  std::vector<Index> flat;
  flat.reserve(na * nh);
  for (const auto& perm : action) flat.insert(flat.end(), perm.begin(), perm.end());
  std::vector<Index> gens;
  for (Index a : A.generators()) gens.push_back(static_cast<Index>(a * nh));
  for (Index h : H.generators()) gens.push_back(h);
  FiniteGroupTable G(std::make_shared<SemidirectBackend>(A, H, std::move(flat)), gens);

  std::vector<Index> ea(na), eh(nh), pr(na * nh);
  for (Index a = 0; a < na; ++a) ea[a] = static_cast<Index>(a * nh);
  for (Index h = 0; h < nh; ++h) eh[h] = h;
  for (Index x = 0; x < na * nh; ++x) pr[x] = static_cast<Index>(x % nh);
  return SemidirectProduct{G, HomomorphismData{A, G, std::move(ea)}, HomomorphismData{H, G, std::move(eh)},
                           HomomorphismData{G, H, std::move(pr)}};
}

SemidirectProduct direct_product(const FiniteGroupTable& A, const FiniteGroupTable& H) {
  std::vector<Index> id(A.order());
  for (Index a = 0; a < A.order(); ++a) id[a] = a;
  return semidirect_product(A, H, std::vector<std::vector<Index>>(H.order(), id));
}

}  // namespace picgrp
