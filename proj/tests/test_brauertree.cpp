#include <doctest.h>

#include "picgrp/brauertree.hpp"
#include "test_support.hpp"

using namespace picgrp;

namespace {
const HookState U1{HookState::Kind::U, 1};
const HookState V1{HookState::Kind::V, 1};
}  // namespace

TEST_CASE("star with three edges") {
  const auto t = build_tree(star_spec(3));
  CHECK(t.edge_count() == 3);
  CHECK(t.rho(1) == 2);
  CHECK(t.sigma(1) == 1);
  CHECK(omega(U1, t).str() == "V2");
  CHECK(omega(V1, t).str() == "U1");
  CHECK(period(U1, t) == 6);
  CHECK(omega_power(U1, t, 6) == U1);
  CHECK(omega_power(omega(U1, t), t, -1) == U1);
  CHECK(walk(U1, t, 6).size() == 7);
  CHECK(cycle_string(t, t.rho_positions()) == "(1 2 3)");
  CHECK(cycle_string(t, t.sigma_positions()) == "()");
  CHECK(tree_automorphisms(t).size() == 3);
}

TEST_CASE("paths") {
  const auto p2 = build_tree(path_spec(2));
  CHECK(period(V1, p2) == 4);
  CHECK(tree_automorphisms(p2).size() == 2);
  const auto p1 = build_tree(path_spec(1));
  CHECK(period(U1, p1) == 2);
  CHECK(tree_automorphisms(p1).size() == 1);
  CHECK(tree_automorphisms(p1)[0].stabilized_vertices.size() == 2);
}

TEST_CASE("parity check on the star") {
  const auto t = build_tree(star_spec(3));
  const std::map<int, int> rot{{1, 2}, {2, 3}, {3, 1}};
  const auto yes = morita_parity_check(t, rot, 2);
  CHECK(yes.admissible);
  CHECK(yes.modulus == 6);
  CHECK(yes.residue == 2);
  CHECK(yes.kind == VertexKind::rho);
  CHECK(!morita_parity_check(t, rot, 3).admissible);
  CHECK(morita_parity_check(t, rot, 8).admissible);
  CHECK(morita_parity_check(t, rot, -4).admissible);
  CHECK_KIND(morita_parity_check(t, {{1, 2}, {2, 1}, {3, 3}}, 2), "NotATreeAutomorphism");
  CHECK_KIND(morita_parity_check(t, {{1, 2}, {2, 1}}, 2), "NotATreeAutomorphism");
}

TEST_CASE("explicit kinds are validated and inferred kinds alternate") {
  TreeSpec s = path_spec(3);
  const auto t = build_tree(s);
  for (std::size_t e = 0; e < t.edge_count(); ++e)
    CHECK(t.vertex_of(e, VertexKind::rho) != t.vertex_of(e, VertexKind::sigma));
  s.vertices[0].kind = VertexKind::rho;
  s.vertices[1].kind = VertexKind::rho;
  CHECK_KIND(build_tree(s), "BadCyclicOrder");
}

TEST_CASE("malformed trees") {
  CHECK_KIND(build_tree(TreeSpec{}), "NotATree");
  // two disjoint edges
  CHECK_KIND(build_tree(TreeSpec{{{{1}, {}}, {{1}, {}}, {{2}, {}}, {{2}, {}}}}), "NotATree");
  CHECK_KIND(build_tree(TreeSpec{{{{1, 1}, {}}, {{1}, {}}}}), "BadCyclicOrder");
  CHECK_KIND(build_tree(TreeSpec{{{{1}, {}}, {{1}, {}}, {{1}, {}}}}), "BadCyclicOrder");
  const auto t = build_tree(star_spec(2));
  CHECK_KIND(t.rho(9), "UnknownEdge");
}

TEST_CASE("rendering") {
  const auto t = build_tree(star_spec(3));
  const auto r = render(t);
  CHECK(r.find("rho") != std::string::npos);
  CHECK(render_walk(walk(U1, t, 2)) == "U1 -> V2 -> U2");
}
