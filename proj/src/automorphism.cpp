#include "picgrp/automorphism.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <bit>

#include "picgrp/error.hpp"
#include "picgrp/modarith.hpp"

namespace picgrp {

namespace detail {

void mat_mul(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<const std::int64_t> b,
             std::span<std::int64_t> out) {
  const std::size_t r = P.rank();
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t m = P.modulus(i);
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < r; ++k) s += a[i * r + k] * b[k * r + j];
      out[i * r + j] = s % m;
    }
  }
}

void mat_vec(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<const std::int64_t> x,
             std::span<std::int64_t> out) {
  const std::size_t r = P.rank();
  for (std::size_t i = 0; i < r; ++i) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < r; ++k) s += a[i * r + k] * x[k];
    out[i] = s % P.modulus(i);
  }
}

bool respects_divisibility(const AbelianPGroup& P, std::span<const std::int64_t> a) {
  const std::size_t r = P.rank();
  const auto& e = P.exponents();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const int d = std::max(e[i] - e[j], 0);
      if (a[i * r + j] % ipow(P.prime(), d) != 0) return false;
    }
  return true;
}

bool is_bijective(const AbelianPGroup& P, std::span<const std::int64_t> a) {
  const std::size_t r = P.rank();
  std::vector<GroupElement> cols;
  for (std::size_t j = 0; j < r; ++j) {
    GroupElement c = P.zero();
    for (std::size_t i = 0; i < r; ++i) c.coords[i] = a[i * r + j];
    cols.push_back(std::move(c));
  }
  return static_cast<std::int64_t>(subgroup_generated(P, cols).size()) == P.order();
}

void mat_inverse(const AbelianPGroup& P, std::span<const std::int64_t> a, std::span<std::int64_t> out) {
  const std::size_t r = P.rank();
  std::size_t found = 0;
  std::array<std::int64_t, kMaxRank> img{};
  for (std::int64_t idx = 0; idx < P.order() && found < r; ++idx) {
    const auto x = P.element_at(idx);
    mat_vec(P, a, x.coords, std::span(img.data(), r));
    std::size_t nz = r, count = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (img[i] != 0) nz = i, ++count;
    if (count == 1 && img[nz] == 1) {
      for (std::size_t i = 0; i < r; ++i) out[i * r + nz] = x.coords[i];
      ++found;
    }
  }
  if (found != r) throw input_error("NotBijective", "matrix has no inverse");
}

AutCodec::AutCodec(const AbelianPGroup& P) : group_(P) {
  if (!fits(P)) throw input_error("OrderBoundExceeded", "endomorphism ring of " + P.name() + " too large to index");
  const std::size_t r = P.rank();
  const auto& e = P.exponents();
  step_.resize(r * r);
  radix_.resize(r * r);
  weight_.resize(r * r);
  shift_.resize(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      step_[i * r + j] = ipow(P.prime(), std::max(e[i] - e[j], 0));
      radix_[i * r + j] = static_cast<std::uint64_t>(ipow(P.prime(), std::min(e[i], e[j])));
      shift_[i * r + j] = P.prime() == 2 ? std::countr_zero(radix_[i * r + j]) : -1;
    }
  std::uint64_t w = 1;
  for (std::size_t k = r * r; k-- > 0;) {
    weight_[k] = w;
    w *= radix_[k];
  }
  end_size_ = w;
}

bool AutCodec::fits(const AbelianPGroup& P) {
  const auto& e = P.exponents();
  double bits = 0;
  for (int a : e)
    for (int b : e) bits += std::min(a, b) * std::log2(static_cast<double>(P.prime()));
  return bits < 62.5;
}

std::uint64_t AutCodec::encode(std::span<const std::int64_t> m) const {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < radix_.size(); ++k)
    key += static_cast<std::uint64_t>(m[k] / step_[k]) * weight_[k];
  return key;
}

void AutCodec::decode(std::uint64_t key, std::span<std::int64_t> m) const {
  for (std::size_t k = radix_.size(); k-- > 0;) {
    std::uint64_t digit;
    if (shift_[k] >= 0) {
      digit = key & (radix_[k] - 1);
      key >>= shift_[k];
    } else {
      digit = key % radix_[k];
      key /= radix_[k];
    }
    m[k] = static_cast<std::int64_t>(digit) * step_[k];
  }
}

}  // namespace detail

Automorphism Automorphism::from_images(const AbelianPGroup& P, const Images& images) {
  const std::size_t r = P.rank();
  if (images.size() != r) throw input_error("ParentMismatch", "expected " + std::to_string(r) + " generator images");
  std::vector<std::int64_t> m(r * r);
  for (std::size_t j = 0; j < r; ++j) {
    if (images[j].size() != r) throw input_error("ParentMismatch", "generator image has wrong length");
    for (std::size_t i = 0; i < r; ++i) m[i * r + j] = mod(images[j][i], P.modulus(i));
  }
  if (!detail::respects_divisibility(P, m))
    throw input_error("DivisibilityViolation", "a generator is sent to an element of larger order");
  if (!detail::is_bijective(P, m)) throw input_error("NotBijective", "generator images do not generate " + P.name());
  return Automorphism(P, std::move(m));
}

Automorphism Automorphism::identity(const AbelianPGroup& P) {
  const std::size_t r = P.rank();
  std::vector<std::int64_t> m(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) m[i * r + i] = 1;
  return Automorphism(P, std::move(m));
}

Automorphism Automorphism::from_matrix_unchecked(const AbelianPGroup& P, std::vector<std::int64_t> m) {
  return Automorphism(P, std::move(m));
}

Images Automorphism::images() const {
  const std::size_t r = group_.rank();
  Images out(r, std::vector<std::int64_t>(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) out[j][i] = m_[i * r + j];
  return out;
}

GroupElement Automorphism::apply(const GroupElement& x) const {
  if (!group_.contains(x)) throw input_error("ParentMismatch", "element does not belong to " + group_.name());
  GroupElement y = group_.zero();
  detail::mat_vec(group_, m_, x.coords, y.coords);
  return y;
}

Automorphism Automorphism::compose(const Automorphism& rhs) const {
  if (!(group_ == rhs.group_)) throw input_error("ParentMismatch", "automorphisms of different groups");
  std::vector<std::int64_t> out(m_.size());
  detail::mat_mul(group_, m_, rhs.m_, out);
  return Automorphism(group_, std::move(out));
}

Automorphism Automorphism::inverse() const {
  std::vector<std::int64_t> out(m_.size());
  detail::mat_inverse(group_, m_, out);
  return Automorphism(group_, std::move(out));
}

bool Automorphism::is_identity() const { return *this == identity(group_); }

std::int64_t Automorphism::order() const {
  std::int64_t n = 1;
  Automorphism x = *this;
  while (!x.is_identity()) {
    x = x.compose(*this);
    ++n;
  }
  return n;
}

Automorphism make_automorphism(const AbelianPGroup& P, const Images& images) {
  return Automorphism::from_images(P, images);
}

GroupElement apply(const Automorphism& phi, const GroupElement& x) { return phi.apply(x); }

}  // namespace picgrp
