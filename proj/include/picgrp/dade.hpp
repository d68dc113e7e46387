#pragma once

// Pairs (v, phi) in D x| Out, where D = Z^f + Z/d_1 + ... + Z/d_k is a
// presented abelian group carrying an action of a finite group Out by
// integer matrices.  The group law is (v,phi)(w,psi) = (v + phi.w, phi psi).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picgrp/automorphism.hpp"
#include "picgrp/group_table.hpp"

namespace picgrp {

struct InertialPair;

struct PresentedAbelian {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // each d_i >= 2

  std::size_t rank() const { return static_cast<std::size_t>(free_rank) + torsion.size(); }
  bool is_finite() const { return free_rank == 0; }
  std::int64_t modulus(std::size_t i) const;  // 0 on free coordinates
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
  std::string name() const;

  friend bool operator==(const PresentedAbelian&, const PresentedAbelian&) = default;
};

// m is the largest t such that O contains a primitive p^t-th root of unity;
// no value means "large enough", so Hom(A, O^x) is isomorphic to A.
struct CoefficientProfile {
  std::optional<int> m;

  static CoefficientProfile large() { return {}; }
  static CoefficientProfile of(int m);
  std::string describe() const;
};

// Hom(A, Z/p^M) for a finite abelian p-group A.  Coordinate k holds the value
// on A's k-th generator, scaled into Z/p^{t_k} with t_k = min(a_k, M).
struct CharacterGroup {
  AbelianPGroup source;
  int m_exp = 0;          // M, capped at exp(A)
  std::vector<int> t;     // t_k; empty when M = 0

  static CharacterGroup make(const AbelianPGroup& A, CoefficientProfile profile);
  PresentedAbelian presented() const;
  std::int64_t order() const;
  // (alpha . chi)(x) = chi(alpha^{-1} x); alpha_inv is the matrix of alpha^{-1}.
  std::vector<std::int64_t> act(const Automorphism& alpha_inv, const std::vector<std::int64_t>& chi) const;
  // Matrix (generator images) of chi -> alpha . chi.
  Images action_images(const Automorphism& alpha_inv) const;
};

struct LinearCharacter {
  AbelianPGroup source;  // P / foc
  int m_exp = 0;
  std::vector<std::int64_t> values;  // coordinates as in CharacterGroup
};

struct CharacterSummand {
  std::size_t offset = 0;  // first coordinate of D holding the summand
  CharacterGroup characters;
};

class DadeContext {
 public:
  // action[g] lists the images of D's generators under element g of out.
  static std::shared_ptr<const DadeContext> make(std::string label, PresentedAbelian D, FiniteGroupTable out,
                                                 std::vector<Images> action,
                                                 std::optional<CharacterSummand> summand = std::nullopt);
  // Out is the finite matrix group generated by the given matrices.
  static std::shared_ptr<const DadeContext> generated(std::string label, PresentedAbelian D,
                                                      const std::vector<Images>& generators,
                                                      std::optional<CharacterSummand> summand = std::nullopt,
                                                      std::size_t bound = 100000);

  const std::string& label() const { return label_; }
  const PresentedAbelian& D() const { return D_; }
  const FiniteGroupTable& out_group() const { return out_; }
  const std::optional<CharacterSummand>& summand() const { return summand_; }
  const Images& images(Index g) const { return action_[g]; }

  std::vector<std::int64_t> act(Index g, const std::vector<std::int64_t>& v) const;
  std::vector<std::int64_t> add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const;
  std::vector<std::int64_t> neg(const std::vector<std::int64_t>& a) const;
  std::vector<std::int64_t> zero() const { return std::vector<std::int64_t>(D_.rank(), 0); }

  // D must be finite; index is mixed radix with coordinate 0 most significant.
  std::size_t d_order() const;
  std::size_t index_of(const std::vector<std::int64_t>& v) const;
  std::vector<std::int64_t> element_at(std::size_t idx) const;

 private:
  DadeContext() = default;
  std::string label_;
  PresentedAbelian D_;
  FiniteGroupTable out_;
  std::vector<Images> action_;
  std::optional<CharacterSummand> summand_;
};

using DadeContextPtr = std::shared_ptr<const DadeContext>;

struct DadePair {
  DadeContextPtr context;
  std::vector<std::int64_t> v;
  Index phi = 0;

  friend bool operator==(const DadePair& a, const DadePair& b) {
    return a.context == b.context && a.v == b.v && a.phi == b.phi;
  }
};

DadePair make_pair(const DadeContextPtr& ctx, std::vector<std::int64_t> v, Index phi);
DadePair identity_pair(const DadeContextPtr& ctx);
DadePair compose(const DadePair& a, const DadePair& b);
DadePair inverse(const DadePair& a);
DadePair commutator(const DadePair& a, const DadePair& b);  // a b a^-1 b^-1
// Least n >= 1 with a^n = 1, searched up to the bound.
std::optional<std::int64_t> pair_order(const DadePair& a, std::int64_t bound = 1000000);

DadePair twist_by_character(const DadePair& a, const LinearCharacter& zeta);

// [(v,1),(0,phi)] == (v - phi.v, 1)
bool commutator_identity_check(const DadeContextPtr& ctx, const std::vector<std::int64_t>& v, Index phi);

// Drops the free part; the action restricts because matrices cannot move
// torsion into the free part.
DadeContextPtr torsion_subgroup(const DadeContextPtr& ctx);

// D x| Out as a group table (D finite).
SemidirectProduct dade_group(const DadeContextPtr& ctx);

namespace contexts {
DadeContextPtr trivial();
DadeContextPtr z3_by_c2();         // Z/3 with C2 acting by -1
DadeContextPtr free_rank_one();    // Z with C2 acting by -1
// Hom(P/foc, O^x) with the natural action of Out(P,F).
DadeContextPtr characters(const InertialPair& pair, CoefficientProfile profile);
}  // namespace contexts

}  // namespace picgrp
