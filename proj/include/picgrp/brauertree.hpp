#pragma once

// Brauer trees as plane trees.  Every vertex lists its incident edges in
// cyclic order; vertices are of kind rho or sigma and every edge joins one of
// each.  rho (sigma) sends an edge to its successor around its rho (sigma)
// vertex.  Heller translation walks the hook states U_i, V_i by
// Omega(U_i) = V_{rho(i)}, Omega(V_i) = U_{sigma(i)}.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace picgrp {

enum class VertexKind { rho, sigma };

struct VertexSpec {
  std::vector<int> edges;           // cyclic order
  std::optional<VertexKind> kind;   // inferred by 2-colouring when absent

  friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

struct TreeSpec {
  std::vector<VertexSpec> vertices;

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

struct TreeVertex {
  VertexKind kind;
  std::vector<std::size_t> edges;  // internal edge positions, cyclic order
};

class BrauerTree {
 public:
  static constexpr std::size_t kMaxEdges = 4096;

  static BrauerTree build(const TreeSpec& spec);

  std::size_t edge_count() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }  // sorted
  std::size_t position(int label) const;                     // throws on unknown labels
  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  // Permutations on labels.
  int rho(int label) const { return labels_[rho_[position(label)]]; }
  int sigma(int label) const { return labels_[sigma_[position(label)]]; }
  const std::vector<std::size_t>& rho_positions() const { return rho_; }
  const std::vector<std::size_t>& sigma_positions() const { return sigma_; }
  // Vertex of the given kind containing edge position e.
  std::size_t vertex_of(std::size_t e, VertexKind kind) const {
    return kind == VertexKind::rho ? rho_vertex_[e] : sigma_vertex_[e];
  }

 private:
  std::vector<int> labels_;
  std::vector<TreeVertex> vertices_;
  std::vector<std::size_t> rho_, sigma_;
  std::vector<std::size_t> rho_vertex_, sigma_vertex_;
};

BrauerTree build_tree(const TreeSpec& spec);

// Cycle notation on labels, fixed points omitted: "(1 2 3)", "()" for id.
std::string cycle_string(const BrauerTree& tree, const std::vector<std::size_t>& perm);

struct HookState {
  enum class Kind { U, V };
  Kind kind = Kind::U;
  int edge = 0;

  std::string str() const { return (kind == Kind::U ? "U" : "V") + std::to_string(edge); }
  friend bool operator==(const HookState&, const HookState&) = default;
};

HookState omega(const HookState& s, const BrauerTree& tree);
// Omega^n for any integer n.
HookState omega_power(const HookState& s, const BrauerTree& tree, std::int64_t n);
// Least n >= 1 with Omega^n(s) = s; always 2 * edge_count().
std::int64_t period(const HookState& s, const BrauerTree& tree);
std::vector<HookState> walk(const HookState& s, const BrauerTree& tree, std::int64_t steps);

// U_i -> Omega^n(U_i) for every edge i.
std::map<int, HookState> parity_classes(const BrauerTree& tree, std::int64_t n);

struct TreeAutomorphism {
  std::map<int, int> perm;                      // edge label -> image
  std::vector<std::size_t> stabilized_vertices; // vertices mapped to themselves
};

// Edge permutations commuting with rho and sigma, i.e. graph automorphisms
// preserving vertex kinds and every cyclic order.  They are powers of
// rho o sigma, which is an edge_count()-cycle.
std::vector<TreeAutomorphism> tree_automorphisms(const BrauerTree& tree);

struct ParityVerdict {
  bool admissible = false;      // n satisfies the congruence
  std::int64_t residue = 0;     // admissible n are residue + k * modulus
  std::int64_t modulus = 0;     // 2 * edge_count()
  std::size_t vertex = 0;       // a stabilized vertex
  VertexKind kind = VertexKind::rho;
  int edge = 0;                 // i
  int image = 0;                // pi(i), in the same orbit
  std::string note;
};

// pi must be a tree automorphism; it must stabilize a vertex, which is taken
// as a hypothesis about the Morita equivalence and not proved here.
ParityVerdict morita_parity_check(const BrauerTree& tree, const std::map<int, int>& pi, std::int64_t n);

std::string render(const BrauerTree& tree);
std::string render_walk(const std::vector<HookState>& states);

// Test fixtures: star with edges 1..n around a rho centre, and a path
// 1 - 2 - ... - n.
TreeSpec star_spec(int n);
TreeSpec path_spec(int n);

}  // namespace picgrp
