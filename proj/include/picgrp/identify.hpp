#pragma once

// Isomorphism types of small finite groups.
//
// Abelian groups are recognised from element-order counts at any size.
// Nonabelian groups up to the identification bound are matched against a
// catalog by explicit isomorphism search; a match carries the bijection
// catalog index -> group index, checked multiplicative on every pair.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picgrp/group_table.hpp"

namespace picgrp {

inline constexpr std::size_t kIdentifyBound = 63;

struct AbstractGroupId {
  enum class Kind { cyclic, abelian, named, opaque };

  Kind kind = Kind::cyclic;
  std::size_t order = 1;
  std::vector<std::int64_t> invariants;  // abelian: invariant factors, largest first
  std::string name;                      // named: catalog name
  std::vector<Index> certificate;        // named: catalog element k -> group element
  std::string fingerprint;               // opaque: element-order statistics
  std::vector<std::vector<Index>> table; // opaque: multiplication table when small

  bool is_abelian() const { return kind == Kind::cyclic || kind == Kind::abelian; }
  std::string describe() const;
};

AbstractGroupId identify(const FiniteGroupTable& G, std::size_t bound = kIdentifyBound);

// True when both descriptors denote the same isomorphism type (opaque
// descriptors compare by fingerprint, which is only a necessary condition).
bool same_type(const AbstractGroupId& a, const AbstractGroupId& b);

// An isomorphism A -> B as the image of each element of A, if one exists.
std::optional<std::vector<Index>> find_isomorphism(const FiniteGroupTable& A, const FiniteGroupTable& B);

// Invariant factors of an abelian group, largest first.
std::vector<std::int64_t> abelian_invariants(const FiniteGroupTable& G);

// The catalog group with the given name, for tests and reports.
std::optional<FiniteGroupTable> catalog_group(const std::string& name);

// Names of the catalog groups of order n, in search order.
std::vector<std::string> catalog_names(std::size_t n);

// Element-order statistics, "order^count" pairs.
std::string order_fingerprint(const FiniteGroupTable& G);

// Cayley table helpers.
FiniteGroupTable dihedral(std::size_t m);   // order 2m
FiniteGroupTable dicyclic(std::size_t m);   // order 4m
FiniteGroupTable symmetric(std::size_t n);
FiniteGroupTable alternating(std::size_t n);
FiniteGroupTable abelian_group(const std::vector<std::int64_t>& factors);

}  // namespace picgrp
