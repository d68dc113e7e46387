#include "picgrp/dade.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "picgrp/error.hpp"
#include "picgrp/fusion.hpp"
#include "picgrp/identify.hpp"
#include "picgrp/modarith.hpp"

namespace picgrp {

namespace {

using Flat = std::vector<std::int64_t>;  // row-major, entry (i,j) = coord i of image of gen j

Flat flatten(const PresentedAbelian& D, const Images& images, const std::string& what) {
  const std::size_t r = D.rank();
  if (images.size() != r) throw input_error("BadMatrix", what + ": expected " + std::to_string(r) + " generator images");
  Flat m(r * r);
  for (std::size_t j = 0; j < r; ++j) {
    if (images[j].size() != r) throw input_error("BadMatrix", what + ": image of generator " + std::to_string(j) + " has wrong length");
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t x = images[j][i];
      if (auto d = D.modulus(i)) x = mod(x, d);
      m[i * r + j] = x;
    }
  }
  // A torsion generator of order d must go to an element killed by d.
  for (std::size_t j = static_cast<std::size_t>(D.free_rank); j < r; ++j) {
    const std::int64_t d = D.modulus(j);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t x = m[i * r + j];
      const bool ok = D.modulus(i) == 0 ? x == 0 : static_cast<__int128>(x) * d % D.modulus(i) == 0;
      if (!ok)
        throw input_error("ActionNotWellDefined", what + ": generator " + std::to_string(j) + " of order " +
                                                      std::to_string(d) + " has an image of larger order");
    }
  }
  return m;
}

Images unflatten(std::size_t r, const Flat& m) {
  Images out(r, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out[j][i] = m[i * r + j];
  return out;
}

Flat flat_mul(const PresentedAbelian& D, const Flat& a, const Flat& b) {
  const std::size_t r = D.rank();
  Flat c(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t d = D.modulus(i);
    for (std::size_t j = 0; j < r; ++j) {
      __int128 s = 0;
      for (std::size_t k = 0; k < r; ++k) s += static_cast<__int128>(a[i * r + k]) * b[k * r + j];
      if (d) s %= d;
      std::int64_t x = static_cast<std::int64_t>(s);
      c[i * r + j] = d ? mod(x, d) : x;
    }
  }
  return c;
}

Flat flat_identity(std::size_t r) {
  Flat m(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) m[i * r + i] = 1;
  return m;
}

// Two matrices act identically on D when their columns agree in D.
bool same_action(const PresentedAbelian& D, const Flat& a, const Flat& b) {
  const std::size_t r = D.rank();
  for (std::size_t k = 0; k < r * r; ++k) {
    const std::int64_t d = D.modulus(k / r);
    if (d ? mod(a[k] - b[k], d) != 0 : a[k] != b[k]) return false;
  }
  return true;
}

}  // namespace

std::int64_t PresentedAbelian::modulus(std::size_t i) const {
  return i < static_cast<std::size_t>(free_rank) ? 0 : torsion[i - static_cast<std::size_t>(free_rank)];
}

std::vector<std::int64_t> PresentedAbelian::reduce(std::vector<std::int64_t> v) const {
  if (v.size() != rank()) throw input_error("BadVector", "expected " + std::to_string(rank()) + " coordinates");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (auto d = modulus(i)) v[i] = mod(v[i], d);
  return v;
}

std::string PresentedAbelian::name() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (auto d : torsion) parts.push_back("Z/" + std::to_string(d));
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

CoefficientProfile CoefficientProfile::of(int m) {
  if (m < 0) throw input_error("BadCoefficients", "m must be nonnegative");
  return CoefficientProfile{m};
}

std::string CoefficientProfile::describe() const { return m ? "m=" + std::to_string(*m) : "m=inf"; }

CharacterGroup CharacterGroup::make(const AbelianPGroup& A, CoefficientProfile profile) {
  if (profile.m && *profile.m < 0) throw input_error("BadCoefficients", "m must be nonnegative");
  CharacterGroup c;
  c.source = A;
  const int top = A.is_trivial() ? 0 : A.exponents()[0];
  // Z/p^M with M >= exp(A) gives the same character group.
  c.m_exp = profile.m ? std::min(*profile.m, top) : top;
  if (c.m_exp > 0)
    for (int a : A.exponents()) c.t.push_back(std::min(a, c.m_exp));
  return c;
}

PresentedAbelian CharacterGroup::presented() const {
  PresentedAbelian D;
  for (int e : t) D.torsion.push_back(ipow(source.prime(), e));
  return D;
}

std::int64_t CharacterGroup::order() const {
  std::int64_t n = 1;
  for (int e : t) n *= ipow(source.prime(), e);
  return n;
}

std::vector<std::int64_t> CharacterGroup::act(const Automorphism& alpha_inv, const std::vector<std::int64_t>& chi) const {
  const std::size_t r = t.size();
  const std::int64_t p = source.prime();
  const std::int64_t pm = ipow(p, m_exp);
  std::vector<std::int64_t> out(r);
  for (std::size_t j = 0; j < r; ++j) {
    __int128 value = 0;
    for (std::size_t i = 0; i < r; ++i)
      value = (value + static_cast<__int128>(alpha_inv.entry(i, j)) % pm * (chi[i] * ipow(p, m_exp - t[i]) % pm)) % pm;
    const std::int64_t v = static_cast<std::int64_t>(value);
    const std::int64_t scale = ipow(p, m_exp - t[j]);
    if (v % scale != 0) throw std::logic_error("character value outside the expected subgroup");
    out[j] = mod(v / scale, ipow(p, t[j]));
  }
  return out;
}

Images CharacterGroup::action_images(const Automorphism& alpha_inv) const {
  const std::size_t r = t.size();
  Images out;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::int64_t> e(r, 0);
    e[i] = 1;
    out.push_back(act(alpha_inv, e));
  }
  return out;
}

std::shared_ptr<const DadeContext> DadeContext::make(std::string label, PresentedAbelian D, FiniteGroupTable out,
                                                     std::vector<Images> action,
                                                     std::optional<CharacterSummand> summand) {
  for (auto d : D.torsion)
    if (d < 2) throw input_error("BadPresentation", "torsion orders must be at least 2");
  if (D.free_rank < 0) throw input_error("BadPresentation", "free rank must be nonnegative");
  if (action.size() != out.order())
    throw input_error("BadAction", "expected one matrix per element of a group of order " + std::to_string(out.order()));
  const std::size_t r = D.rank();
  std::vector<Flat> flat;
  flat.reserve(action.size());
  for (std::size_t g = 0; g < action.size(); ++g) flat.push_back(flatten(D, action[g], "element " + std::to_string(g)));

  if (!same_action(D, flat[0], flat_identity(r)))
    throw input_error("ActionNotHomomorphism", "the identity of Out does not act trivially");
  // rho(g x) = rho(g) rho(x) for generators g and all x implies the
  // homomorphism property on all pairs.
  for (Index g : out.generators())
    for (Index x = 0; x < out.order(); ++x)
      if (!same_action(D, flat[out.mul(g, x)], flat_mul(D, flat[g], flat[x])))
        throw input_error("ActionNotHomomorphism", "matrices of " + std::to_string(g) + " and " + std::to_string(x) +
                                                       " do not multiply to the matrix of their product");

  if (summand) {
    const auto S = summand->characters.presented();
    bool ok = summand->offset >= static_cast<std::size_t>(D.free_rank) && summand->offset + S.rank() <= r;
    for (std::size_t k = 0; ok && k < S.rank(); ++k) ok = D.modulus(summand->offset + k) == S.torsion[k];
    if (!ok)
      throw input_error("BadSummand", "declared character summand does not match the torsion of D");
  }

  auto ctx = std::shared_ptr<DadeContext>(new DadeContext());
  ctx->label_ = std::move(label);
  ctx->D_ = std::move(D);
  ctx->out_ = std::move(out);
  for (auto& m : flat) ctx->action_.push_back(unflatten(r, m));
  ctx->summand_ = std::move(summand);
  return ctx;
}

std::shared_ptr<const DadeContext> DadeContext::generated(std::string label, PresentedAbelian D,
                                                          const std::vector<Images>& generators,
                                                          std::optional<CharacterSummand> summand, std::size_t bound) {
  const std::size_t r = D.rank();
  std::vector<Flat> gens;
  for (std::size_t k = 0; k < generators.size(); ++k)
    gens.push_back(flatten(D, generators[k], "generator " + std::to_string(k)));

  std::vector<Flat> elems{flat_identity(r)};
  std::map<Flat, Index> where{{elems[0], 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : gens) {
      Flat y = flat_mul(D, elems[k], g);
      if (where.count(y)) continue;
      if (elems.size() >= bound)
        throw input_error("ActionNotFinite", "the action matrices generate more than " + std::to_string(bound) + " elements");
      where.emplace(y, static_cast<Index>(elems.size()));
      elems.push_back(std::move(y));
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = where.at(flat_mul(D, elems[a], elems[b]));
  auto out = FiniteGroupTable::from_cayley(std::move(table));
  std::vector<Images> action;
  for (const auto& m : elems) action.push_back(unflatten(r, m));
  return make(std::move(label), std::move(D), std::move(out), std::move(action), std::move(summand));
}

std::vector<std::int64_t> DadeContext::act(Index g, const std::vector<std::int64_t>& v) const {
  const std::size_t r = D_.rank();
  if (v.size() != r) throw input_error("BadVector", "expected " + std::to_string(r) + " coordinates");
  std::vector<std::int64_t> w(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t d = D_.modulus(i);
    __int128 s = 0;
    for (std::size_t j = 0; j < r; ++j) {
      s += static_cast<__int128>(action_[g][j][i]) * v[j];
      if (d) s %= d;
    }
    w[i] = d ? mod(static_cast<std::int64_t>(s), d) : static_cast<std::int64_t>(s);
  }
  return w;
}

std::vector<std::int64_t> DadeContext::add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
  std::vector<std::int64_t> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return D_.reduce(std::move(c));
}

std::vector<std::int64_t> DadeContext::neg(const std::vector<std::int64_t>& a) const {
  std::vector<std::int64_t> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return D_.reduce(std::move(c));
}

std::size_t DadeContext::d_order() const {
  if (!D_.is_finite()) throw input_error("InfiniteGroup", "D has a free part");
  std::size_t n = 1;
  for (auto d : D_.torsion) n *= static_cast<std::size_t>(d);
  return n;
}

std::size_t DadeContext::index_of(const std::vector<std::int64_t>& v) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < D_.torsion.size(); ++i)
    idx = idx * static_cast<std::size_t>(D_.torsion[i]) + static_cast<std::size_t>(v[i]);
  return idx;
}

std::vector<std::int64_t> DadeContext::element_at(std::size_t idx) const {
  std::vector<std::int64_t> v(D_.torsion.size());
  for (std::size_t i = v.size(); i-- > 0;) {
    const auto d = static_cast<std::size_t>(D_.torsion[i]);
    v[i] = static_cast<std::int64_t>(idx % d);
    idx /= d;
  }
  return v;
}

DadePair make_pair(const DadeContextPtr& ctx, std::vector<std::int64_t> v, Index phi) {
  if (phi >= ctx->out_group().order())
    throw input_error("BadElement", "Out has no element " + std::to_string(phi));
  return DadePair{ctx, ctx->D().reduce(std::move(v)), phi};
}

DadePair identity_pair(const DadeContextPtr& ctx) { return DadePair{ctx, ctx->zero(), 0}; }

DadePair compose(const DadePair& a, const DadePair& b) {
  if (a.context != b.context) throw input_error("ContextMismatch", "pairs live in different contexts");
  const auto& ctx = *a.context;
  return DadePair{a.context, ctx.add(a.v, ctx.act(a.phi, b.v)), ctx.out_group().mul(a.phi, b.phi)};
}

// (v,phi)^{-1} = (-phi^{-1}.v, phi^{-1})
DadePair inverse(const DadePair& a) {
  const auto& ctx = *a.context;
  const Index pinv = ctx.out_group().inv(a.phi);
  return DadePair{a.context, ctx.neg(ctx.act(pinv, a.v)), pinv};
}

DadePair commutator(const DadePair& a, const DadePair& b) {
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

std::optional<std::int64_t> pair_order(const DadePair& a, std::int64_t bound) {
  const auto one = identity_pair(a.context);
  DadePair x = a;
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (x == one) return n;
    x = compose(x, a);
  }
  return std::nullopt;
}

DadePair twist_by_character(const DadePair& a, const LinearCharacter& zeta) {
  const auto& ctx = *a.context;
  const auto& summand = ctx.summand();
  if (!summand)
    throw input_error("NoCharacterSummandDeclared", "context '" + ctx.label() + "' has no character summand");
  const auto& chars = summand->characters;
  if (!(zeta.source == chars.source) || zeta.m_exp != chars.m_exp || zeta.values.size() != chars.t.size())
    throw input_error("CharacterMismatch", "character does not belong to the declared summand");
  auto w = ctx.zero();
  for (std::size_t k = 0; k < zeta.values.size(); ++k) w[summand->offset + k] = zeta.values[k];
  return DadePair{a.context, ctx.add(w, a.v), a.phi};
}

bool commutator_identity_check(const DadeContextPtr& ctx, const std::vector<std::int64_t>& v, Index phi) {
  const auto lhs = commutator(make_pair(ctx, v, 0), make_pair(ctx, ctx->zero(), phi));
  const auto rhs = make_pair(ctx, ctx->add(v, ctx->neg(ctx->act(phi, ctx->D().reduce(v)))), 0);
  return lhs == rhs;
}

DadeContextPtr torsion_subgroup(const DadeContextPtr& ctx) {
  const auto& D = ctx->D();
  const std::size_t f = static_cast<std::size_t>(D.free_rank);
  const std::size_t r = D.rank();
  PresentedAbelian T{0, D.torsion};
  std::vector<Images> action;
  for (Index g = 0; g < ctx->out_group().order(); ++g) {
    Images im;
    for (std::size_t j = f; j < r; ++j) {
      std::vector<std::int64_t> col(ctx->images(g)[j].begin() + static_cast<std::ptrdiff_t>(f), ctx->images(g)[j].end());
      im.push_back(std::move(col));
    }
    action.push_back(std::move(im));
  }
  auto summand = ctx->summand();
  if (summand) summand->offset -= f;
  return DadeContext::make(ctx->label() + " (torsion)", std::move(T), ctx->out_group(), std::move(action),
                           std::move(summand));
}

SemidirectProduct dade_group(const DadeContextPtr& ctx) {
  const std::size_t n = ctx->d_order();
  auto A = abelian_group(ctx->D().torsion);
  const auto& out = ctx->out_group();
  std::vector<std::vector<Index>> action(out.order(), std::vector<Index>(n));
  for (Index g = 0; g < out.order(); ++g)
    for (std::size_t a = 0; a < n; ++a)
      action[g][a] = static_cast<Index>(ctx->index_of(ctx->act(g, ctx->element_at(a))));
  return semidirect_product(A, out, std::move(action));
}

namespace contexts {

DadeContextPtr trivial() {
  static const auto ctx = DadeContext::make("trivial", PresentedAbelian{}, FiniteGroupTable(), {Images{}});
  return ctx;
}

DadeContextPtr z3_by_c2() {
  static const auto ctx = DadeContext::make("Z/3 x| C2", PresentedAbelian{0, {3}}, FiniteGroupTable::cyclic(2),
                                            {Images{{1}}, Images{{2}}});
  return ctx;
}

DadeContextPtr free_rank_one() {
  static const auto ctx = DadeContext::make("Z x| C2", PresentedAbelian{1, {}}, FiniteGroupTable::cyclic(2),
                                            {Images{{1}}, Images{{-1}}});
  return ctx;
}

DadeContextPtr characters(const InertialPair& pair, CoefficientProfile profile) {
  const auto qmap = quotient_map(pair.P, pair.foc);
  const auto chars = CharacterGroup::make(qmap.quotient, profile);
  const auto& out = pair.out_pf.group;
  std::vector<Images> action;
  for (Index q = 0; q < out.order(); ++q) {
    const auto alpha_inv = pair.normalizer_group.automorphism(pair.out_pf.representatives[q]).inverse();
    Images induced;
    for (const auto& lift : qmap.lifts) induced.push_back(qmap.project(alpha_inv.apply(lift)).coords);
    const auto bar = Automorphism::from_images(qmap.quotient, induced);
    action.push_back(chars.action_images(bar));
  }
  std::ostringstream label;
  label << "Hom(" << qmap.quotient.name() << ", Z/" << pair.P.prime() << "^" << chars.m_exp << ")";
  return DadeContext::make(label.str(), chars.presented(), out, std::move(action), CharacterSummand{0, chars});
}

}  // namespace contexts

}  // namespace picgrp
