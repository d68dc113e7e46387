#pragma once

// Aut(P) for a finite abelian p-group P, as a FiniteGroupTable whose index 0
// is the identity and whose remaining elements are sorted by matrix key.

#include <cstdint>
#include <span>
#include <vector>

#include "picgrp/automorphism.hpp"
#include "picgrp/group_table.hpp"

namespace picgrp {

enum class AutMode {
  fast,    // backtracking over generator images, checked against a count
  oracle,  // every integer matrix with entries mod p^{e_i}, filtered
};

inline constexpr std::uint64_t kAutMaterializeLimit = std::uint64_t{1} << 24;

// |Aut(P)|, counted without materializing: generator images are chosen one
// at a time and the count is memoized on the span of the chosen socle
// elements.  Throws OrderBoundExceeded when the search state space or the
// result does not fit.
std::uint64_t aut_order(const AbelianPGroup& P);

FiniteGroupTable enumerate_aut(const AbelianPGroup& P, AutMode mode = AutMode::fast,
                               std::uint64_t limit = kAutMaterializeLimit);

// Subgroup of Aut(P) generated by gens, as its own table.
FiniteGroupTable closure(const AbelianPGroup& P, std::span<const Automorphism> gens);

// Order of <gens> by Schreier-Sims on the action on P's nonzero elements.
std::uint64_t generated_order(const AbelianPGroup& P, std::span<const Automorphism> gens);

std::vector<Automorphism> automorphisms_of(const FiniteGroupTable& G, const Subgroup& H);

}  // namespace picgrp
