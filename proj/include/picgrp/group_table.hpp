#pragma once

// Finite groups on the index set {0, ..., n-1}, identity at index 0.
//
// Multiplication comes from a backend: an explicit Cayley table, a list of
// automorphisms composed on demand, a coset table, a semidirect product, or a
// subgroup of another table.  Small groups cache their Cayley table, so large
// automorphism groups (millions of elements) and small abstract groups share
// one interface.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "picgrp/automorphism.hpp"

namespace picgrp {

using Index = std::uint32_t;

class GroupBackend {
 public:
  virtual ~GroupBackend() = default;
  virtual std::size_t order() const = 0;
  virtual Index mul(Index a, Index b) const = 0;
  virtual Index inv(Index a) const = 0;
  virtual std::string label(Index a) const { return std::to_string(a); }

  // Automorphism-valued groups only.
  virtual const AbelianPGroup* acting_on() const { return nullptr; }
  virtual Automorphism automorphism(Index a) const;
  virtual std::optional<Index> find(const Automorphism& phi) const;
  // Row-major matrix of element a, without building an Automorphism.
  virtual void raw_matrix(Index a, std::span<std::int64_t> out) const;
};

class FiniteGroupTable {
 public:
  static constexpr std::size_t kCayleyCacheLimit = 720;

  FiniteGroupTable();  // trivial group
  FiniteGroupTable(std::shared_ptr<const GroupBackend> backend, std::vector<Index> generators);

  // Verified table: rows are left multiplication, identity at 0.
  static FiniteGroupTable from_cayley(std::vector<std::vector<Index>> table, std::vector<std::string> labels = {});
  static FiniteGroupTable cyclic(std::size_t n);

  std::size_t order() const { return order_; }
  Index mul(Index a, Index b) const {
    return cayley_.empty() ? backend_->mul(a, b) : cayley_[static_cast<std::size_t>(a) * order_ + b];
  }
  Index inv(Index a) const { return inverse_.empty() ? backend_->inv(a) : inverse_[a]; }
  Index pow(Index a, std::int64_t k) const;
  std::size_t element_order(Index a) const;
  const std::vector<Index>& generators() const { return generators_; }
  bool is_abelian() const;
  std::string label(Index a) const { return backend_->label(a); }

  bool is_automorphism_group() const { return backend_->acting_on() != nullptr; }
  const AbelianPGroup& acting_on() const;
  Automorphism automorphism(Index a) const { return backend_->automorphism(a); }
  std::optional<Index> find(const Automorphism& phi) const { return backend_->find(phi); }
  void raw_matrix(Index a, std::span<std::int64_t> out) const { backend_->raw_matrix(a, out); }

  bool same_as(const FiniteGroupTable& other) const { return backend_ == other.backend_; }
  const std::shared_ptr<const GroupBackend>& backend() const { return backend_; }

 private:
  std::shared_ptr<const GroupBackend> backend_;
  std::size_t order_ = 1;
  std::vector<Index> generators_;
  std::vector<Index> cayley_;
  std::vector<Index> inverse_;
};

// A subgroup of a table, as the sorted list of its element indices.
struct Subgroup {
  std::vector<Index> elements;  // sorted, elements[0] == 0
  std::vector<Index> generators;

  std::size_t size() const { return elements.size(); }
  bool contains(Index g) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

Subgroup generated_subgroup(const FiniteGroupTable& G, std::span<const Index> gens);
Subgroup whole_group(const FiniteGroupTable& G);
Subgroup trivial_subgroup();
bool is_subgroup(const FiniteGroupTable& G, const Subgroup& H);
bool is_normal(const FiniteGroupTable& G, const Subgroup& N);

// The subgroup as a group in its own right; index k is H.elements[k].
FiniteGroupTable as_group(const FiniteGroupTable& G, const Subgroup& H);

// Elements of an automorphism-valued subgroup table located in G.
Subgroup embed(const FiniteGroupTable& G, const FiniteGroupTable& H);

Subgroup normalizer(const FiniteGroupTable& G, const Subgroup& E);
Subgroup centralizer(const FiniteGroupTable& G, const Subgroup& E);

struct HomomorphismData {
  FiniteGroupTable source;
  FiniteGroupTable target;
  std::vector<Index> map;  // image of each source element

  Subgroup kernel() const;
  Subgroup image() const;
  bool is_injective() const { return kernel().size() == 1; }
};

// Builds and verifies multiplicativity (every generator against every element).
HomomorphismData make_homomorphism(FiniteGroupTable source, FiniteGroupTable target, std::vector<Index> map);
bool is_homomorphism(const FiniteGroupTable& source, const FiniteGroupTable& target, std::span<const Index> map);
HomomorphismData trivial_into(const FiniteGroupTable& target);
HomomorphismData trivial_from(const FiniteGroupTable& source);
HomomorphismData identity_map(const FiniteGroupTable& G);
HomomorphismData compose(const HomomorphismData& second, const HomomorphismData& first);

struct QuotientGroup {
  FiniteGroupTable group;
  HomomorphismData projection;   // G -> G/N
  std::vector<Index> representatives;  // minimal element of each coset
};

QuotientGroup quotient_group(const FiniteGroupTable& G, const Subgroup& N);

struct SemidirectProduct {
  FiniteGroupTable group;
  HomomorphismData embed_normal;      // A -> A x| H
  HomomorphismData embed_complement;  // H -> A x| H
  HomomorphismData projection;        // A x| H -> H
};

// (a,h)(a',h') = (a + h.a', hh').  action[h] is the permutation of A's
// indices by which h acts; it must be an automorphism of A, and h -> action[h]
// a homomorphism.  Element (a,h) has index a * |H| + h.
SemidirectProduct semidirect_product(const FiniteGroupTable& A, const FiniteGroupTable& H,
                                     std::vector<std::vector<Index>> action);
SemidirectProduct direct_product(const FiniteGroupTable& A, const FiniteGroupTable& H);

}  // namespace picgrp
