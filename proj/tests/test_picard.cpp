#include <doctest.h>

#include "picgrp/picard.hpp"
#include "test_support.hpp"

using namespace picgrp;

namespace {

InertialPair pair_of(std::int64_t p, std::vector<int> e, std::vector<Images> gens) {
  const auto P = make_group(p, std::move(e));
  std::vector<Automorphism> autos;
  for (const auto& g : gens) autos.push_back(make_automorphism(P, g));
  return build_inertial_pair(P, autos);
}

}  // namespace

TEST_CASE("Klein four cases") {
  const auto a4 = pic_kleinfour(KleinFourCase::A4);
  CHECK(a4.id.name == "S3");
  CHECK(!a4.upper_bound);
  CHECK(pic_kleinfour(KleinFourCase::A5_principal).id.describe() == "cyclic(2)");
  const auto nil = pic_kleinfour(KleinFourCase::nilpotent, CoefficientProfile::of(1));
  CHECK(nil.group.order() == 24);
  CHECK(nil.id.name == "S4");
  CHECK(!a4.constituents.empty());
  CHECK(!a4.notes.empty());
}

TEST_CASE("local case for A4") {
  const auto pair = pair_of(2, {1, 1}, {{{0, 1}, {1, 1}}});
  const auto rep = pic_local(pair);
  CHECK(rep.group.order() == 6);
  CHECK(rep.id.name == "S3");
}

TEST_CASE("cyclic defect groups") {
  const auto inv = pair_of(3, {2}, {{{8}}});
  CHECK(pic_local(inv).id.describe() == "cyclic(6)");
  CHECK(pic_cyclic(inv, 2).id.describe() == "cyclic(6)");
  CHECK(pic_cyclic(inv).id.describe() == "cyclic(6)");
  CHECK(pic_cyclic(inv, 1).id.describe() == "cyclic(3)");
  CHECK_KIND(pic_cyclic(inv, 3), "BadDivisor");
  const auto c5 = pair_of(5, {1}, {{{4}}});
  CHECK(pic_cyclic(c5, 2).id.describe() == "abelian(2,2)");
  CHECK(pic_local(pair_of(3, {1}, {{{2}}})).id.describe() == "cyclic(2)");
  CHECK_KIND(pic_cyclic(pair_of(2, {1, 1}, {{{0, 1}, {1, 1}}})), "NotCyclicDefect");
  CHECK_KIND(pic_cyclic(pair_of(3, {2}, {})), "TrivialInertialQuotient");
}

TEST_CASE("Frobenius bound") {
  const auto fb = pic_frobenius_bound(pair_of(5, {1}, {{{2}}}));
  CHECK(fb.report.id.describe() == "cyclic(4)");
  CHECK(fb.report.upper_bound);
  CHECK(verify_exact_sequence(fb.sequence).ok);
  CHECK_KIND(pic_frobenius_bound(pair_of(2, {1, 1}, {})), "NotFrobenius");
  CHECK_KIND(pic_frobenius_bound(pair_of(3, {1, 1}, {{{1, 0}, {0, 2}}})), "NotFrobenius");
}

TEST_CASE("hypotheses of the local case") {
  CHECK_KIND(pic_local(pair_of(3, {2}, {{{4}}})), "EnotPPrime");
  CHECK_KIND(pic_local(pair_of(3, {1, 1}, {{{1, 0}, {0, 2}}})), "FocalNotWhole");
  // Q8 acting freely on C3 x C3
  CHECK_KIND(pic_local(pair_of(3, {1, 1}, {{{0, 1}, {2, 0}}, {{1, 1}, {1, 2}}})), "EnotAbelian");
}

TEST_CASE("nilpotent blocks") {
  CHECK(pic_nilpotent(make_group(2, {1}), CoefficientProfile::of(1)).id.describe() == "cyclic(2)");
  CHECK(pic_nilpotent(make_group(2, {2}), CoefficientProfile::of(1)).id.describe() == "abelian(2,2)");
  CHECK(pic_nilpotent(make_group(3, {1}), CoefficientProfile::large()).id.name == "S3");
  CHECK_KIND(pic_nilpotent(make_group(2, {})), "TrivialGroup");
}

TEST_CASE("exactness checker") {
  const auto C4 = FiniteGroupTable::cyclic(4), C2 = FiniteGroupTable::cyclic(2);
  const std::vector<HomomorphismData> good{trivial_into(C2), make_homomorphism(C2, C4, {0, 2}),
                                           make_homomorphism(C4, C2, {0, 1, 0, 1}), trivial_from(C2)};
  CHECK(verify_exact_sequence(good).ok);
  const std::vector<HomomorphismData> bad{trivial_into(C2), make_homomorphism(C2, C4, {0, 2}),
                                          make_homomorphism(C4, C4, {0, 2, 0, 2}), trivial_from(C4)};
  const auto rep = verify_exact_sequence(bad);
  CHECK(!rep.ok);
  for (const auto& n : rep.nodes) CHECK(n.exact == (n.node != 3));
}

TEST_CASE("character extension") {
  const auto pair = pair_of(2, {1, 1}, {{{0, 1}, {1, 1}}});
  const auto full = character_extension(pair, 3);
  CHECK(full.characters.order() == 3);
  CHECK(full.product.group.order() == 6);
  CHECK(verify_exact_sequence(full.sequence).ok);
  CHECK(character_extension(pair, 1).characters.order() == 1);
}

TEST_CASE("Picard diagram of a local block") {
  const auto pair = pair_of(2, {1, 1}, {{{0, 1}, {1, 1}}});
  auto dg = local_block_diagram(pair);
  CHECK(verify_picard_diagram(dg).ok);
  dg.t_to_l = make_homomorphism(dg.t_to_l.source, dg.t_to_l.target, std::vector<Index>(dg.t_to_l.source.order(), 0));
  const auto rep = verify_picard_diagram(dg);
  CHECK(!rep.ok);
  CHECK(!rep.failures.empty());
  dg.t_to_l = identity_map(FiniteGroupTable::cyclic(5));
  CHECK_KIND(verify_picard_diagram(dg), "ShapeMismatch");
}
