#include "picgrp/brauertree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "picgrp/error.hpp"

namespace picgrp {

std::size_t BrauerTree::position(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw input_error("UnknownEdge", "no edge labelled " + std::to_string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

BrauerTree BrauerTree::build(const TreeSpec& spec) {
  BrauerTree t;
  const std::size_t nv = spec.vertices.size();
  if (nv == 0) throw input_error("NotATree", "no vertices");

  std::map<int, std::vector<std::size_t>> ends;  // label -> vertices containing it
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& es = spec.vertices[v].edges;
    if (es.empty()) throw input_error("NotATree", "vertex " + std::to_string(v) + " has no edges");
    std::set<int> seen(es.begin(), es.end());
    if (seen.size() != es.size())
      throw input_error("BadCyclicOrder", "vertex " + std::to_string(v) + " lists an edge twice");
    for (int e : es) ends[e].push_back(v);
  }
  for (auto& [label, vs] : ends) {
    if (vs.size() != 2)
      throw input_error("BadCyclicOrder", "edge " + std::to_string(label) + " has " + std::to_string(vs.size()) +
                                              " ends instead of 2");
    t.labels_.push_back(label);
  }
  const std::size_t n = t.labels_.size();
  if (n > kMaxEdges) throw input_error("OrderBoundExceeded", "more than " + std::to_string(kMaxEdges) + " edges");
  if (nv != n + 1)
    throw input_error("NotATree", std::to_string(nv) + " vertices and " + std::to_string(n) + " edges");

  // Connectivity and 2-colouring from vertex 0.
  std::vector<int> colour(nv, -1);
  colour[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::size_t v = queue[k];
    for (int e : spec.vertices[v].edges) {
      const auto& vs = ends[e];
      const std::size_t w = vs[0] == v ? vs[1] : vs[0];
      if (colour[w] < 0) {
        colour[w] = 1 - colour[v];
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != nv) throw input_error("NotATree", "the graph is not connected");

  // Declared kinds must be consistent with one of the two colourings.
  std::optional<int> rho_colour;
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& k = spec.vertices[v].kind;
    if (!k) continue;
    const int c = *k == VertexKind::rho ? colour[v] : 1 - colour[v];
    if (rho_colour && *rho_colour != c)
      throw input_error("BadCyclicOrder", "vertex kinds do not alternate along edges (vertex " + std::to_string(v) + ")");
    rho_colour = c;
  }
  const int rc = rho_colour.value_or(0);

  t.rho_.assign(n, 0);
  t.sigma_.assign(n, 0);
  t.rho_vertex_.assign(n, 0);
  t.sigma_vertex_.assign(n, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    TreeVertex tv;
    tv.kind = colour[v] == rc ? VertexKind::rho : VertexKind::sigma;
    for (int e : spec.vertices[v].edges) tv.edges.push_back(t.position(e));
    auto& perm = tv.kind == VertexKind::rho ? t.rho_ : t.sigma_;
    auto& home = tv.kind == VertexKind::rho ? t.rho_vertex_ : t.sigma_vertex_;
    for (std::size_t k = 0; k < tv.edges.size(); ++k) {
      perm[tv.edges[k]] = tv.edges[(k + 1) % tv.edges.size()];
      home[tv.edges[k]] = v;
    }
    t.vertices_.push_back(std::move(tv));
  }

  // rho o sigma must be a single cycle through every edge.
  std::size_t len = 0, e = 0;
  do {
    e = t.rho_[t.sigma_[e]];
    ++len;
  } while (e != 0);
  if (len != n) throw input_error("NotTransitive", "rho o sigma has a cycle of length " + std::to_string(len) + " < " +
                                                       std::to_string(n));
  return t;
}

BrauerTree build_tree(const TreeSpec& spec) { return BrauerTree::build(spec); }

std::string cycle_string(const BrauerTree& tree, const std::vector<std::size_t>& perm) {
  std::string out;
  std::vector<char> done(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (done[s] || perm[s] == s) continue;
    out += "(";
    for (std::size_t e = s; !done[e]; e = perm[e]) {
      done[e] = 1;
      out += (e == s ? "" : " ") + std::to_string(tree.labels()[e]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

HookState omega(const HookState& s, const BrauerTree& tree) {
  return s.kind == HookState::Kind::U ? HookState{HookState::Kind::V, tree.rho(s.edge)}
                                      : HookState{HookState::Kind::U, tree.sigma(s.edge)};
}

HookState omega_power(const HookState& s, const BrauerTree& tree, std::int64_t n) {
  const auto per = static_cast<std::int64_t>(2 * tree.edge_count());
  n %= per;
  if (n < 0) n += per;
  HookState x = s;
  for (std::int64_t k = 0; k < n; ++k) x = omega(x, tree);
  return x;
}

std::int64_t period(const HookState& s, const BrauerTree& tree) {
  tree.position(s.edge);
  HookState x = omega(s, tree);
  std::int64_t n = 1;
  while (!(x == s)) {
    x = omega(x, tree);
    ++n;
  }
  if (n != static_cast<std::int64_t>(2 * tree.edge_count()))
    throw std::logic_error("period " + std::to_string(n) + " differs from twice the number of edges");
  return n;
}

std::vector<HookState> walk(const HookState& s, const BrauerTree& tree, std::int64_t steps) {
  tree.position(s.edge);
  std::vector<HookState> out{s};
  for (std::int64_t k = 0; k < steps; ++k) out.push_back(omega(out.back(), tree));
  return out;
}

std::map<int, HookState> parity_classes(const BrauerTree& tree, std::int64_t n) {
  std::map<int, HookState> out;
  for (int e : tree.labels()) out[e] = omega_power(HookState{HookState::Kind::U, e}, tree, n);
  return out;
}

namespace {

std::vector<std::size_t> stabilized(const BrauerTree& tree, const std::vector<std::size_t>& pi) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < tree.vertices().size(); ++v) {
    const auto& tv = tree.vertices()[v];
    std::set<std::size_t> here(tv.edges.begin(), tv.edges.end());
    bool fixed = true;
    for (auto e : tv.edges) fixed = fixed && here.count(pi[e]);
    if (fixed) out.push_back(v);
  }
  return out;
}

bool commutes(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t e = 0; e < a.size(); ++e)
    if (a[b[e]] != b[a[e]]) return false;
  return true;
}

}  // namespace

std::vector<TreeAutomorphism> tree_automorphisms(const BrauerTree& tree) {
  const std::size_t n = tree.edge_count();
  const auto& rho = tree.rho_positions();
  const auto& sigma = tree.sigma_positions();
  std::vector<std::size_t> c(n), power(n);
  for (std::size_t e = 0; e < n; ++e) c[e] = rho[sigma[e]];
  std::iota(power.begin(), power.end(), std::size_t{0});
  std::vector<TreeAutomorphism> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (commutes(power, rho) && commutes(power, sigma)) {
      TreeAutomorphism a;
      for (std::size_t e = 0; e < n; ++e) a.perm[tree.labels()[e]] = tree.labels()[power[e]];
      a.stabilized_vertices = stabilized(tree, power);
      out.push_back(std::move(a));
    }
    for (auto& x : power) x = c[x];
  }
  return out;
}

ParityVerdict morita_parity_check(const BrauerTree& tree, const std::map<int, int>& pi, std::int64_t n) {
  const std::size_t ne = tree.edge_count();
  std::vector<std::size_t> perm(ne);
  if (pi.size() != ne) throw input_error("NotATreeAutomorphism", "permutation must move every edge label");
  for (auto [from, to] : pi) perm[tree.position(from)] = tree.position(to);
  if (!commutes(perm, tree.rho_positions()) || !commutes(perm, tree.sigma_positions()))
    throw input_error("NotATreeAutomorphism", "permutation does not preserve the cyclic orders");

  const auto fixed = stabilized(tree, perm);
  if (fixed.empty()) throw hypothesis_error("NoStabilizedVertex", "the automorphism stabilizes no vertex");

  ParityVerdict v;
  v.vertex = fixed[0];
  v.kind = tree.vertices()[v.vertex].kind;
  const std::size_t i = tree.vertices()[v.vertex].edges[0];
  const std::size_t target = perm[i];
  // Omega^2 sends U_i to U_{sigma rho(i)} and V_i to V_{rho sigma(i)}.
  const auto& first = v.kind == VertexKind::rho ? tree.rho_positions() : tree.sigma_positions();
  const auto& second = v.kind == VertexKind::rho ? tree.sigma_positions() : tree.rho_positions();
  std::size_t e = i;
  std::int64_t k = 0;
  while (e != target) {
    e = second[first[e]];
    ++k;
    if (k > static_cast<std::int64_t>(ne)) throw std::logic_error("image edge not reached by Omega^2");
  }
  v.edge = tree.labels()[i];
  v.image = tree.labels()[target];
  v.residue = 2 * k;
  v.modulus = static_cast<std::int64_t>(2 * ne);
  std::int64_t r = n % v.modulus;
  if (r < 0) r += v.modulus;
  v.admissible = r == v.residue;
  const char* st = v.kind == VertexKind::rho ? "U" : "V";
  v.note = std::string(st) + std::to_string(v.edge) + " -> " + st + std::to_string(v.image) + " under Omega^" +
           std::to_string(v.residue) + "; vertex stabilization is assumed, not proved";
  return v;
}

std::string render(const BrauerTree& tree) {
  std::ostringstream s;
  const auto& vs = tree.vertices();
  std::vector<char> seen(vs.size(), 0);
  auto name = [&](std::size_t v) {
    return "v" + std::to_string(v) + (vs[v].kind == VertexKind::rho ? " [rho]" : " [sigma]");
  };
  auto other = [&](std::size_t e, std::size_t v) {
    const auto a = tree.vertex_of(e, VertexKind::rho);
    return a == v ? tree.vertex_of(e, VertexKind::sigma) : a;
  };
  // Depth-first, children in the cyclic order of each vertex.
  auto rec = [&](auto&& self, std::size_t v, const std::string& indent) -> void {
    seen[v] = 1;
    std::vector<std::size_t> kids;
    for (auto e : vs[v].edges)
      if (!seen[other(e, v)]) kids.push_back(e);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool last = k + 1 == kids.size();
      const auto w = other(kids[k], v);
      s << indent << (last ? "`-" : "+-") << tree.labels()[kids[k]] << "- " << name(w) << "\n";
      self(self, w, indent + (last ? "   " : "|  "));
    }
  };
  s << name(0) << "\n";
  rec(rec, 0, "");
  s << "rho   = " << cycle_string(tree, tree.rho_positions()) << "\n";
  s << "sigma = " << cycle_string(tree, tree.sigma_positions()) << "\n";
  return s.str();
}

std::string render_walk(const std::vector<HookState>& states) {
  std::string s;
  for (std::size_t k = 0; k < states.size(); ++k) s += (k ? " -> " : "") + states[k].str();
  return s;
}

TreeSpec star_spec(int n) {
  TreeSpec t;
  VertexSpec centre{{}, VertexKind::rho};
  for (int e = 1; e <= n; ++e) centre.edges.push_back(e);
  t.vertices.push_back(centre);
  for (int e = 1; e <= n; ++e) t.vertices.push_back(VertexSpec{{e}, VertexKind::sigma});
  return t;
}

TreeSpec path_spec(int n) {
  TreeSpec t;
  t.vertices.push_back(VertexSpec{{1}, std::nullopt});
  for (int e = 1; e < n; ++e) t.vertices.push_back(VertexSpec{{e, e + 1}, std::nullopt});
  t.vertices.push_back(VertexSpec{{n}, std::nullopt});
  return t;
}

}  // namespace picgrp
