#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <doctest.h>

#include "oracles.hpp"
#include "picgrp/identify.hpp"
#include "test_support.hpp"

using namespace picgrp;

namespace {

bool certificate_ok(const FiniteGroupTable& G, const AbstractGroupId& id) {
  const auto C = catalog_group(id.name);
  if (!C || id.certificate.size() != G.order()) return false;
  if (std::set<Index>(id.certificate.begin(), id.certificate.end()).size() != G.order()) return false;
  for (Index a = 0; a < C->order(); ++a)
    for (Index b = 0; b < C->order(); ++b)
      if (id.certificate[C->mul(a, b)] != G.mul(id.certificate[a], id.certificate[b])) return false;
  return true;
}

// The same group with its non-identity elements shuffled.
FiniteGroupTable relabel(const FiniteGroupTable& G, std::uint64_t seed) {
  const auto n = G.order();
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<Index> back(n);
  for (Index i = 0; i < n; ++i) back[perm[i]] = i;
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) t[a][b] = perm[G.mul(back[a], back[b])];
  return FiniteGroupTable::from_cayley(t);
}

}  // namespace

TEST_CASE("abelian groups by invariant factors") {
  const auto id = identify(abelian_group({4, 2, 3}));
  CHECK(id.kind == AbstractGroupId::Kind::abelian);
  CHECK(id.invariants == std::vector<std::int64_t>{12, 2});
  CHECK(identify(FiniteGroupTable::cyclic(6)).describe() == "cyclic(6)");
  CHECK(identify(abelian_group({2, 3})).kind == AbstractGroupId::Kind::cyclic);
  CHECK(identify(FiniteGroupTable()).describe() == "cyclic(1)");
}

TEST_CASE("named groups carry verified certificates, also after relabeling") {
  const std::vector<std::pair<std::string, FiniteGroupTable>> cases = {
      {"S3", symmetric(3)}, {"D4", dihedral(4)}, {"Q8", dicyclic(2)}, {"A4", alternating(4)},
      {"S4", symmetric(4)}, {"A5", alternating(5)}, {"D5", dihedral(5)}};
  for (const auto& [name, G] : cases) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto H = relabel(G, seed);
      const auto id = identify(H);
      CHECK(id.kind == AbstractGroupId::Kind::named);
      CHECK(id.name == name);
      CHECK(certificate_ok(H, id));
    }
  }
}

TEST_CASE("catalog names are distinct types") {
  for (std::size_t n : {8u, 12u, 16u, 18u, 20u, 24u}) {
    const auto names = catalog_names(n);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto G = catalog_group(names[i]);
      REQUIRE(G);
      CHECK(G->order() == n);
      CHECK(!G->is_abelian());
      for (std::size_t j = 0; j < i; ++j) CHECK(!find_isomorphism(*G, *catalog_group(names[j])));
    }
  }
  CHECK(catalog_names(8).size() == 2);
  CHECK(catalog_names(12).size() == 3);
}

TEST_CASE("unlisted groups fall back to an opaque descriptor") {
  // Heisenberg group mod 3: (C3 x C3) x| C3, exponent 3
  const auto A = abelian_group({3, 3});
  std::vector<std::vector<Index>> action(3, std::vector<Index>(9));
  for (Index h = 0; h < 3; ++h)
    for (Index a = 0; a < 9; ++a) {
      const Index x = a / 3, y = a % 3;
      action[h][a] = static_cast<Index>(((x + h * y) % 3) * 3 + y);
    }
  const auto G = semidirect_product(A, FiniteGroupTable::cyclic(3), action).group;
  const auto id = identify(G);
  CHECK(G.order() == 27);
  CHECK(id.kind == AbstractGroupId::Kind::opaque);
  CHECK(!id.fingerprint.empty());
  CHECK(!same_type(id, identify(catalog_group("C9:C3").value())));
}

TEST_CASE("quotients match coset enumeration") {
  const auto G = symmetric(4);
  for (Index g = 0; g < G.order(); ++g)
    for (Index h = g; h < G.order(); h += 5) {
      const std::vector<Index> gens{g, h};
      const auto N = generated_subgroup(G, gens);
      if (!is_normal(G, N)) continue;
      const auto Q = quotient_group(G, N);
      const auto cs = oracle::cosets(G, N.elements);
      CHECK(Q.group.order() == cs.size());
      CHECK(Q.projection.kernel() == N);
      for (std::size_t k = 0; k < Q.representatives.size(); ++k)
        CHECK(Q.projection.map[Q.representatives[k]] == k);
    }
  CHECK_KIND(quotient_group(G, generated_subgroup(G, std::vector<Index>{1})), "NotNormal");
}

TEST_CASE("semidirect and direct products") {
  const auto sd = semidirect_product(FiniteGroupTable::cyclic(3), FiniteGroupTable::cyclic(2), {{0, 1, 2}, {0, 2, 1}});
  CHECK(identify(sd.group).name == "S3");
  CHECK(sd.embed_normal.is_injective());
  CHECK(sd.projection.kernel() == sd.embed_normal.image());
  const auto dp = direct_product(FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(3));
  CHECK(identify(dp.group).describe() == "cyclic(6)");
  CHECK_KIND(semidirect_product(FiniteGroupTable::cyclic(3), FiniteGroupTable::cyclic(2), {{0, 1, 2}, {0, 0, 1}}),
             "ActionNotHomomorphism");
}

TEST_CASE("homomorphisms") {
  const auto C4 = FiniteGroupTable::cyclic(4), C2 = FiniteGroupTable::cyclic(2);
  const auto f = make_homomorphism(C4, C2, {0, 1, 0, 1});
  CHECK(f.kernel().size() == 2);
  CHECK(f.image().size() == 2);
  CHECK_KIND(make_homomorphism(C4, C2, {0, 1, 1, 0}), "NotHomomorphism");
  CHECK_KIND(compose(f, f), "NotComposable");
  const auto g = make_homomorphism(C2, C4, {0, 2});
  CHECK(compose(g, f).map == std::vector<Index>{0, 2, 0, 2});
}
