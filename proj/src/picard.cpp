#include "picgrp/picard.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "picgrp/error.hpp"

namespace picgrp {

namespace {

using Values = std::vector<std::int64_t>;  // chi(e) for every element e of E, in Z/ex

std::int64_t group_exponent(const FiniteGroupTable& G) {
  std::int64_t ex = 1;
  for (Index g = 0; g < G.order(); ++g) ex = std::lcm(ex, static_cast<std::int64_t>(G.element_order(g)));
  return ex;
}

// Every homomorphism E -> Z/ex of order dividing d, found by choosing
// values on the generators and propagating along a spanning tree.
std::vector<Values> linear_characters(const FiniteGroupTable& E, std::int64_t ex, std::int64_t d) {
  const auto& gens = E.generators();
  std::vector<std::int64_t> choice(gens.size(), 0);
  std::vector<Values> out;
  for (;;) {
    Values f(E.order(), -1);
    f[0] = 0;
    std::vector<Index> queue{0};
    bool ok = true;
    for (std::size_t k = 0; k < queue.size() && ok; ++k) {
      const Index x = queue[k];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Index y = E.mul(x, gens[j]);
        const std::int64_t v = (f[x] + choice[j]) % ex;
        if (f[y] < 0) {
          f[y] = v;
          queue.push_back(y);
        } else if (f[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      bool killed = true;
      for (auto v : f) killed = killed && (v * d) % ex == 0;
      if (killed) out.push_back(std::move(f));
    }
    std::size_t j = 0;
    while (j < choice.size() && ++choice[j] == ex) choice[j++] = 0;
    if (j == choice.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Index position_of(const std::vector<Index>& sorted, Index x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  if (it == sorted.end() || *it != x) throw std::logic_error("element missing from subgroup");
  return static_cast<Index>(it - sorted.begin());
}

std::string pair_echo(const InertialPair& pair) {
  std::ostringstream s;
  s << "P=" << pair.P.name() << " |E|=" << pair.e_order() << " E=" << identify(pair.e_group).describe();
  return s.str();
}

Constituent constituent(std::string role, const FiniteGroupTable& G) {
  return Constituent{std::move(role), G, identify(G)};
}

const char* kCharZero = "char(O) = 0 assumed";
const char* kLargeK = "k assumed large enough; Hom(E,k^x) uses exact p'-roots of unity";
const char* kConvention = "N/E acts on Hom(E,k^x) by n.chi = chi o (conjugation by n)^-1";

void check_local_hypotheses(const InertialPair& pair) {
  if (!pair.is_p_prime)
    throw hypothesis_error("EnotPPrime", "|E| = " + std::to_string(pair.e_order()) + " is divisible by p");
  if (!pair.e_group.is_abelian()) throw hypothesis_error("EnotAbelian", "E is not abelian");
  if (!pair.foc.is_whole())
    throw hypothesis_error("FocalNotWhole", "[P,E] has order " + std::to_string(pair.foc.size()) + ", not |P| = " +
                                                std::to_string(pair.P.order()));
}

}  // namespace

CharacterExtension character_extension(const InertialPair& pair, std::size_t d) {
  if (!pair.is_p_prime)
    throw hypothesis_error("EnotPPrime", "|E| = " + std::to_string(pair.e_order()) + " is divisible by p");
  if (!pair.e_group.is_abelian()) throw hypothesis_error("EnotAbelian", "E is not abelian");
  const auto& E = pair.e_group;
  const std::int64_t ex = group_exponent(E);
  const auto chars = linear_characters(E, ex, static_cast<std::int64_t>(d));
  const std::size_t c = chars.size();

  std::map<Values, Index> where;
  for (std::size_t k = 0; k < c; ++k) where.emplace(chars[k], static_cast<Index>(k));
  std::vector<std::vector<Index>> table(c, std::vector<Index>(c));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      Values s(E.order());
      for (std::size_t e = 0; e < s.size(); ++e) s[e] = (chars[a][e] + chars[b][e]) % ex;
      table[a][b] = where.at(s);
    }
  std::vector<std::string> labels;
  for (const auto& f : chars) {
    std::string l = "[";
    for (Index g : E.generators()) l += (l.size() > 1 ? "," : "") + std::to_string(f[g]) + "/" + std::to_string(ex);
    labels.push_back(l + "]");
  }
  auto Chars = FiniteGroupTable::from_cayley(std::move(table), std::move(labels));

  // e_group index k <-> normalizer_group index e_in_normalizer.elements[k]
  const auto& N = pair.normalizer_group;
  const auto& inE = pair.e_in_normalizer.elements;
  const auto& Q = pair.out_pf.group;
  std::vector<std::vector<Index>> action(Q.order(), std::vector<Index>(c));
  for (Index q = 0; q < Q.order(); ++q) {
    const Index r = pair.out_pf.representatives[q];
    const Index rinv = N.inv(r);
    // (q.chi)(e) = chi(r^-1 e r)
    std::vector<Index> conj(E.order());
    for (Index e = 0; e < E.order(); ++e) conj[e] = position_of(inE, N.mul(N.mul(rinv, inE[e]), r));
    for (std::size_t k = 0; k < c; ++k) {
      Values f(E.order());
      for (Index e = 0; e < E.order(); ++e) f[e] = chars[k][conj[e]];
      action[q][k] = where.at(f);
    }
  }
  auto product = semidirect_product(Chars, Q, std::move(action));
  std::vector<HomomorphismData> seq{trivial_into(Chars), product.embed_normal, product.projection, trivial_from(Q)};
  return CharacterExtension{std::move(Chars), std::move(product), std::move(seq)};
}

PicardReport pic_local(const InertialPair& pair, CoefficientProfile profile) {
  check_local_hypotheses(pair);
  auto ext = character_extension(pair, pair.e_order());
  PicardReport r;
  r.input = pair_echo(pair) + " " + profile.describe();
  r.statement = "Pic(O(P x| E)) = T = Out_P x| N_Aut(P)(E)/E with Out_P = Hom(E,k^x)";
  r.group = ext.product.group;
  r.id = identify(r.group);
  r.constituents = {constituent("Hom(E,k^x)", ext.characters), constituent("Out(P,F)", pair.out_pf.group),
                    constituent("Out_P(A)", ext.characters)};
  r.notes = {kCharZero, kLargeK, kConvention};
  return r;
}

FrobeniusBound pic_frobenius_bound(const InertialPair& pair) {
  if (!pair.is_frobenius) {
    std::string why = pair.e_order() == 1 ? "E is trivial"
                      : !pair.is_cyclic   ? "E is not cyclic"
                      : !pair.is_p_prime  ? "|E| is divisible by p"
                                          : "E does not act freely on P \\ {0}";
    throw hypothesis_error("NotFrobenius", why);
  }
  auto ext = character_extension(pair, pair.e_order());
  FrobeniusBound b;
  auto& r = b.report;
  r.input = pair_echo(pair);
  r.statement = "Pic(B) = E(B) embeds in Hom(E,k^x) x| N_E, N_E = N_Aut(P)(E)/E";
  r.group = ext.product.group;
  r.id = identify(r.group);
  r.constituents = {constituent("Hom(E,k^x)", ext.characters), constituent("N_E", pair.out_pf.group)};
  r.notes = {kCharZero, kLargeK, kConvention, "the image of Pic(B) is not determined in general"};
  r.upper_bound = true;
  b.sequence = std::move(ext.sequence);
  return b;
}

PicardReport pic_cyclic(const InertialPair& pair, std::size_t d) {
  if (!pair.P.is_cyclic() || pair.P.order() < 3)
    throw hypothesis_error("NotCyclicDefect", pair.P.name() + " is not a cyclic group of order at least 3");
  if (pair.e_order() == 1) throw hypothesis_error("TrivialInertialQuotient", "E is trivial");
  if (d == 0) d = pair.e_order();
  if (pair.e_order() % d != 0)
    throw input_error("BadDivisor", std::to_string(d) + " does not divide |E| = " + std::to_string(pair.e_order()));
  const auto C = FiniteGroupTable::cyclic(d);
  auto product = direct_product(C, pair.out_pf.group);
  PicardReport r;
  r.input = pair_echo(pair) + " d=" + std::to_string(d);
  r.statement = "Pic(B) = T(B) = Out_P(A) x Aut(P)/E with Out_P(A) cyclic of order d";
  r.group = product.group;
  r.id = identify(r.group);
  r.constituents = {constituent("Out_P(A)", C), constituent("Aut(P)/E", pair.out_pf.group)};
  r.notes = {kCharZero, "Aut(P) is abelian, so the product is direct",
             "d = |Out_P(A)| depends on the block; d = |E| models the local block"};
  return r;
}

PicardReport pic_nilpotent(const AbelianPGroup& P, CoefficientProfile profile) {
  if (P.is_trivial()) throw input_error("TrivialGroup", "P must be nontrivial");
  const auto pair = build_inertial_pair(P, std::span<const Automorphism>{});
  const auto ctx = contexts::characters(pair, profile);
  auto product = dade_group(ctx);
  auto homs = abelian_group(ctx->D().torsion);
  PicardReport r;
  r.input = "P=" + P.name() + " " + profile.describe();
  r.statement = "Pic(OP) = L(OP) = Hom(P,O^x) x| Aut(P)";
  r.group = product.group;
  r.id = identify(r.group);
  r.constituents = {constituent("Hom(P,O^x)", homs), constituent("Aut(P)", pair.out_pf.group)};
  r.notes = {"Out(P) = Aut(P) since P is abelian", "Aut(P) acts by alpha.chi = chi o alpha^-1"};
  return r;
}

PicardReport pic_kleinfour(KleinFourCase which, CoefficientProfile profile) {
  const auto V = make_group(2, {1, 1});
  if (which == KleinFourCase::nilpotent) {
    auto r = pic_nilpotent(V, profile);
    r.input = "Klein four, nilpotent block, " + profile.describe();
    return r;
  }
  // E = C3, generated by the order-3 automorphism g0 -> g1 -> g0 + g1.
  const std::vector<Automorphism> gens{Automorphism::from_images(V, {{0, 1}, {1, 1}})};
  const auto pair = build_inertial_pair(V, gens);
  if (which == KleinFourCase::A4) {
    auto r = pic_local(pair, profile);
    r.input = "Klein four, block Morita equivalent to O A4";
    return r;
  }
  // Principal block of O A5: the fusion is that of A4 but Out_P(A) is
  // trivial, leaving Out(P,F) = S3/C3.
  auto ext = character_extension(pair, 1);
  PicardReport r;
  r.input = "Klein four, principal block of O A5";
  r.statement = "Pic(B) = T(B) = Out_P(A) x| Out(P,F) with Out_P(A) trivial";
  r.group = ext.product.group;
  r.id = identify(r.group);
  r.constituents = {constituent("Out_P(A)", ext.characters), constituent("Out(P,F)", pair.out_pf.group)};
  r.notes = {kCharZero, "Out_P(A) modeled as the characters of E of order dividing 1"};
  return r;
}

ExactnessReport verify_exact_sequence(const std::vector<HomomorphismData>& maps) {
  ExactnessReport rep;
  for (std::size_t i = 1; i < maps.size(); ++i)
    if (!maps[i - 1].target.same_as(maps[i].source))
      throw input_error("NotComposable", "map " + std::to_string(i - 1) + " does not land in the source of map " +
                                             std::to_string(i));
  for (std::size_t i = 1; i < maps.size(); ++i) {
    const auto im = maps[i - 1].image();
    const auto ker = maps[i].kernel();
    NodeDiagnostic nd;
    nd.node = i;
    nd.exact = im == ker;
    std::ostringstream s;
    s << "node " << i << " (order " << maps[i].source.order() << "): image of order " << im.size()
      << ", kernel of order " << ker.size();
    if (!nd.exact) s << (im.size() == ker.size() ? ", different subgroups" : "");
    nd.detail = s.str();
    rep.ok = rep.ok && nd.exact;
    rep.nodes.push_back(std::move(nd));
  }
  return rep;
}

namespace {

void expect_same(const FiniteGroupTable& a, const FiniteGroupTable& b, const std::string& where) {
  if (!a.same_as(b)) throw input_error("ShapeMismatch", where);
}

bool same_map(const HomomorphismData& a, const HomomorphismData& b) { return a.map == b.map; }

}  // namespace

DiagramReport verify_picard_diagram(const PicardDiagram& dg) {
  const std::pair<const PicardRow*, const char*> rows[] = {{&dg.t_row, "T"}, {&dg.l_row, "L"}, {&dg.e_row, "E"}};
  for (auto [row, name] : rows) {
    expect_same(row->head.source, dg.t_row.head.source, std::string("row ") + name + ": left term is not shared");
    expect_same(row->head.target, row->phi.source, std::string("row ") + name + ": maps do not compose");
  }
  expect_same(dg.t_to_l.source, dg.t_row.phi.source, "T -> L inclusion: source is not T(B)");
  expect_same(dg.t_to_l.target, dg.l_row.phi.source, "T -> L inclusion: target is not L(B)");
  expect_same(dg.l_to_e.source, dg.l_row.phi.source, "L -> E inclusion: source is not L(B)");
  expect_same(dg.l_to_e.target, dg.e_row.phi.source, "L -> E inclusion: target is not E(B)");
  expect_same(dg.right_t_to_l.source, dg.t_row.phi.target, "right T -> L inclusion: source mismatch");
  expect_same(dg.right_t_to_l.target, dg.l_row.phi.target, "right T -> L inclusion: target mismatch");
  expect_same(dg.right_l_to_e.source, dg.l_row.phi.target, "right L -> E inclusion: source mismatch");
  expect_same(dg.right_l_to_e.target, dg.e_row.phi.target, "right L -> E inclusion: target mismatch");

  DiagramReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };
  for (auto [row, name] : rows) {
    if (!row->head.is_injective()) fail(std::string("row ") + name + ": Out_P(A) -> middle term is not injective");
    if (!(row->head.image() == row->phi.kernel()))
      fail(std::string("row ") + name + ": image of Out_P(A) differs from the kernel of Phi");
  }
  const std::pair<const HomomorphismData*, const char*> incl[] = {{&dg.t_to_l, "T(B) -> L(B)"},
                                                                  {&dg.l_to_e, "L(B) -> E(B)"},
                                                                  {&dg.right_t_to_l, "Out(P,F) -> L-target"},
                                                                  {&dg.right_l_to_e, "L-target -> E-target"}};
  for (auto [h, name] : incl)
    if (!h->is_injective()) fail(std::string(name) + " is not injective");
  if (!same_map(compose(dg.t_to_l, dg.t_row.head), dg.l_row.head)) fail("left square T/L does not commute");
  if (!same_map(compose(dg.l_to_e, dg.l_row.head), dg.e_row.head)) fail("left square L/E does not commute");
  if (!same_map(compose(dg.right_t_to_l, dg.t_row.phi), compose(dg.l_row.phi, dg.t_to_l)))
    fail("right square T/L does not commute");
  if (!same_map(compose(dg.right_l_to_e, dg.l_row.phi), compose(dg.e_row.phi, dg.l_to_e)))
    fail("right square L/E does not commute");
  if (dg.e_row.phi.source.order() == 1 && dg.e_row.phi.target.order() == 1)
    rep.notes.push_back("all groups are trivial");
  return rep;
}

PicardDiagram local_block_diagram(const InertialPair& pair, CoefficientProfile profile) {
  check_local_hypotheses(pair);
  auto ext = character_extension(pair, pair.e_order());
  const auto& X = ext.product.group;
  PicardDiagram dg;
  dg.t_row = PicardRow{ext.product.embed_normal, ext.product.projection};

  const auto ctx = contexts::characters(pair, profile);
  const auto lt = dade_group(ctx);
  dg.right_t_to_l = lt.embed_complement;
  dg.l_row = PicardRow{ext.product.embed_normal, compose(lt.embed_complement, ext.product.projection)};

  const auto et = dade_group(ctx);
  std::vector<Index> same(lt.group.order());
  std::iota(same.begin(), same.end(), Index{0});
  dg.right_l_to_e = make_homomorphism(lt.group, et.group, std::move(same));
  dg.e_row = PicardRow{ext.product.embed_normal, compose(dg.right_l_to_e, dg.l_row.phi)};

  dg.t_to_l = identity_map(X);
  dg.l_to_e = identity_map(X);
  return dg;
}

}  // namespace picgrp
