#pragma once

// Finite abelian p-groups given by invariant factors.
//
// A group is the product of cyclic groups Z/p^{e_0} x ... x Z/p^{e_{r-1}} with
// e_0 >= e_1 >= ... >= 1, written additively.  Elements are coordinate
// vectors; every element also has a dense index in [0, |P|), the mixed-radix
// number with coords[0] most significant, so index order is lexicographic
// order on coordinates.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace picgrp {

inline constexpr std::int64_t kDefaultOrderBound = std::int64_t{1} << 20;

bool is_prime(std::int64_t n);

struct GroupElement {
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class AbelianPGroup {
 public:
  AbelianPGroup() = default;  // trivial 2-group

  static AbelianPGroup make(std::int64_t p, std::vector<int> exponents,
                            std::int64_t bound = kDefaultOrderBound);

  std::int64_t prime() const { return p_; }
  const std::vector<int>& exponents() const { return exps_; }
  std::size_t rank() const { return exps_.size(); }
  std::int64_t order() const { return order_; }
  std::int64_t modulus(std::size_t i) const { return mods_[i]; }
  const std::vector<std::int64_t>& moduli() const { return mods_; }
  // p^{e_0}; 1 for the trivial group.
  std::int64_t exponent() const { return exps_.empty() ? 1 : mods_[0]; }

  bool is_trivial() const { return exps_.empty(); }
  bool is_cyclic() const { return exps_.size() <= 1; }
  std::string name() const;

  GroupElement zero() const;
  GroupElement generator(std::size_t i) const;
  bool contains(const GroupElement& x) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, std::int64_t k) const;
  std::int64_t element_order(const GroupElement& a) const;

  std::int64_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::int64_t index) const;
  std::vector<GroupElement> elements() const;

  friend bool operator==(const AbelianPGroup& a, const AbelianPGroup& b) {
    return a.p_ == b.p_ && a.exps_ == b.exps_;
  }

 private:
  void check(const GroupElement& x) const;

  std::int64_t p_ = 2;
  std::vector<int> exps_;
  std::vector<std::int64_t> mods_;
  std::int64_t order_ = 1;
};

AbelianPGroup make_group(std::int64_t p, std::vector<int> exponents,
                         std::int64_t bound = kDefaultOrderBound);

GroupElement add(const AbelianPGroup& P, const GroupElement& a, const GroupElement& b);
GroupElement neg(const AbelianPGroup& P, const GroupElement& a);
std::int64_t element_order(const AbelianPGroup& P, const GroupElement& a);

// A subgroup stored as the sorted list of element indices of its parent.
class SubgroupTable {
 public:
  SubgroupTable(AbelianPGroup parent, std::vector<std::int64_t> sorted_indices);

  const AbelianPGroup& parent() const { return parent_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<std::int64_t>& indices() const { return indices_; }
  std::vector<GroupElement> elements() const;
  bool contains(const GroupElement& x) const;
  bool is_whole() const { return static_cast<std::int64_t>(size()) == parent_.order(); }
  bool is_trivial() const { return size() == 1; }

  friend bool operator==(const SubgroupTable& a, const SubgroupTable& b) {
    return a.parent_ == b.parent_ && a.indices_ == b.indices_;
  }

 private:
  AbelianPGroup parent_;
  std::vector<std::int64_t> indices_;
};

SubgroupTable subgroup_generated(const AbelianPGroup& P, std::span<const GroupElement> gens);

// Every subgroup of P, found by closing under single-element extensions.
// Intended for desk-scale groups (tests and surveys).
std::vector<SubgroupTable> enumerate_subgroups(const AbelianPGroup& P);

// Explicit identification of P/S with a product of cyclic groups.
struct QuotientMap {
  AbelianPGroup quotient;
  // project(x)_k = sum_i x_i * proj[i][k]  (mod quotient modulus k)
  std::vector<std::vector<std::int64_t>> proj;
  // lift of the k-th quotient generator, as an element of P
  std::vector<GroupElement> lifts;

  GroupElement project(const GroupElement& x) const;
};

QuotientMap quotient_map(const AbelianPGroup& P, const SubgroupTable& S);
AbelianPGroup quotient_invariants(const AbelianPGroup& P, const SubgroupTable& S);

}  // namespace picgrp
