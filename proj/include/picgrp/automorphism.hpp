#pragma once

// Automorphisms of a finite abelian p-group as integer matrices.
//
// Entry M[i][j] is the i-th coordinate of the image of generator g_j and is
// reduced mod p^{e_i}.  An integer matrix defines an endomorphism exactly when
// p^{max(e_i - e_j, 0)} divides M[i][j].  Matrices are written and read as the
// list of generator images (columns), so "[[0,1],[1,0]]" is g_0 -> g_1,
// g_1 -> g_0.

#include <cstdint>
#include <span>
#include <vector>

#include "picgrp/pgroup.hpp"

namespace picgrp {

using Images = std::vector<std::vector<std::int64_t>>;

class Automorphism {
 public:
  // Validates divisibility and bijectivity.
  static Automorphism from_images(const AbelianPGroup& P, const Images& images);
  static Automorphism identity(const AbelianPGroup& P);
  // Row-major matrix, already reduced and known to be an automorphism.
  static Automorphism from_matrix_unchecked(const AbelianPGroup& P, std::vector<std::int64_t> m);

  const AbelianPGroup& group() const { return group_; }
  std::int64_t entry(std::size_t i, std::size_t j) const { return m_[i * group_.rank() + j]; }
  const std::vector<std::int64_t>& matrix() const { return m_; }
  Images images() const;

  GroupElement apply(const GroupElement& x) const;
  // (*this) o rhs : apply rhs first.
  Automorphism compose(const Automorphism& rhs) const;
  Automorphism inverse() const;
  std::int64_t order() const;
  bool is_identity() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.group_ == b.group_ && a.m_ == b.m_;
  }

 private:
  Automorphism(AbelianPGroup P, std::vector<std::int64_t> m) : group_(std::move(P)), m_(std::move(m)) {}

  AbelianPGroup group_;
  std::vector<std::int64_t> m_;
};

Automorphism make_automorphism(const AbelianPGroup& P, const Images& images);
GroupElement apply(const Automorphism& phi, const GroupElement& x);

namespace detail {

// Raw row-major matrix helpers; all spans have rank*rank (or rank) entries.
void mat_mul(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<const std::int64_t> b,
             std::span<std::int64_t> out);
void mat_vec(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<const std::int64_t> x,
             std::span<std::int64_t> out);
void mat_inverse(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<std::int64_t> out);
bool respects_divisibility(const AbelianPGroup& P, std::span<const std::int64_t> a);
bool is_bijective(const AbelianPGroup& P, std::span<const std::int64_t> a);

inline constexpr std::size_t kMaxRank = 20;

// Packs an endomorphism matrix into one integer: entry (i,j) contributes the
// digit M[i][j] / p^{max(e_i-e_j,0)} in radix p^{min(e_i,e_j)}, row-major with
// the first entry most significant.  Key order is therefore lexicographic
// order of the row-major matrix.
class AutCodec {
 public:
  explicit AutCodec(const AbelianPGroup& P);
  static bool fits(const AbelianPGroup& P);

  std::uint64_t encode(std::span<const std::int64_t> m) const;
  void decode(std::uint64_t key, std::span<std::int64_t> m) const;
  std::uint64_t end_size() const { return end_size_; }
  const AbelianPGroup& group() const { return group_; }

 private:
  AbelianPGroup group_;
  std::vector<std::int64_t> step_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint64_t> weight_;
  std::vector<int> shift_;  // log2(radix) when p == 2, else -1
  std::uint64_t end_size_ = 1;
};

}  // namespace detail

}  // namespace picgrp
