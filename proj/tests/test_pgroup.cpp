#include <set>

#include <doctest.h>

#include "oracles.hpp"
#include "picgrp/pgroup.hpp"
#include "test_support.hpp"

using namespace picgrp;

TEST_CASE("construction and errors") {
  const auto P = make_group(2, {1, 2});
  CHECK(P.exponents() == std::vector<int>{2, 1});
  CHECK(P.order() == 8);
  CHECK(P.exponent() == 4);
  CHECK_KIND(make_group(4, {1}), "NonPrime");
  CHECK_KIND(make_group(3, {0}), "EmptyOrNonPositiveExponent");
  CHECK_KIND(make_group(2, {30}, 1 << 20), "OrderBoundExceeded");
  CHECK(make_group(5, {}).is_trivial());
}

TEST_CASE("element arithmetic") {
  const auto P = make_group(3, {2, 1});
  const GroupElement x{{4, 2}}, y{{7, 2}};
  CHECK(add(P, x, y) == GroupElement{{2, 1}});
  CHECK(neg(P, x) == GroupElement{{5, 1}});
  CHECK(element_order(P, x) == 9);
  CHECK(element_order(P, GroupElement{{3, 1}}) == 3);
  CHECK(element_order(P, P.zero()) == 1);
  CHECK_KIND(P.add(x, GroupElement{{0, 3}}), "ParentMismatch");
}

TEST_CASE("index is mixed radix, coordinate 0 most significant") {
  const auto P = make_group(2, {2, 1});
  CHECK(P.index_of(GroupElement{{1, 0}}) == 2);
  CHECK(P.index_of(GroupElement{{0, 1}}) == 1);
  for (std::int64_t i = 0; i < P.order(); ++i) CHECK(P.index_of(P.element_at(i)) == i);
  const auto els = P.elements();
  CHECK(std::is_sorted(els.begin(), els.end()));
}

TEST_CASE("subgroup enumeration counts") {
  // C2 x C2 has 5 subgroups, C4 x C2 has 8, C2^3 has 16, C3 x C3 has 6
  CHECK(enumerate_subgroups(make_group(2, {1, 1})).size() == 5);
  CHECK(enumerate_subgroups(make_group(2, {2, 1})).size() == 8);
  CHECK(enumerate_subgroups(make_group(2, {1, 1, 1})).size() == 16);
  CHECK(enumerate_subgroups(make_group(3, {1, 1})).size() == 6);
}

TEST_CASE("quotients agree with coset enumeration") {
  for (std::int64_t p : {2, 3})
    for (const auto& e : oracle::abelian_shapes(p, 32)) {
      if (e.empty()) continue;
      const auto P = make_group(p, e);
      for (const auto& S : enumerate_subgroups(P)) {
        const auto Q = quotient_invariants(P, S);
        CHECK(Q.order() * static_cast<std::int64_t>(S.size()) == P.order());
        std::map<std::int64_t, std::int64_t> counts;
        for (const auto& x : Q.elements()) ++counts[Q.element_order(x)];
        CHECK(counts == oracle::quotient_order_counts(P, S));
        // the projection is a surjective homomorphism with kernel S
        const auto qm = quotient_map(P, S);
        std::set<std::int64_t> image;
        for (const auto& x : P.elements()) {
          const auto px = qm.project(x);
          image.insert(qm.quotient.index_of(px));
          CHECK((px == qm.quotient.zero()) == S.contains(x));
        }
        CHECK(static_cast<std::int64_t>(image.size()) == Q.order());
        for (std::size_t k = 0; k < qm.lifts.size(); ++k)
          CHECK(qm.project(qm.lifts[k]) == qm.quotient.generator(k));
      }
    }
}
