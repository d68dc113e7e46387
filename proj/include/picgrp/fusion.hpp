#pragma once

// Inertial pairs (P, E) with E <= Aut(P), and the invariants of the fusion
// system of P x| E: the focal subgroup [P, E] and Out(P, F) = N_{Aut(P)}(E)/E.

#include <span>
#include <vector>

#include "picgrp/autgroup.hpp"
#include "picgrp/pgroup.hpp"

namespace picgrp {

struct InertialPair {
  AbelianPGroup P;
  FiniteGroupTable aut;         // Aut(P)
  Subgroup E;                   // in aut
  FiniteGroupTable e_group;     // E on its own
  Subgroup normalizer;          // N_{Aut(P)}(E), in aut
  FiniteGroupTable normalizer_group;
  Subgroup e_in_normalizer;     // E inside normalizer_group
  QuotientGroup out_pf;         // N_{Aut(P)}(E) / E
  SubgroupTable foc;

  bool is_p_prime = true;
  bool is_cyclic = true;
  bool acts_freely = true;
  bool is_frobenius = false;

  std::size_t e_order() const { return E.size(); }
  std::vector<Automorphism> e_elements() const { return automorphisms_of(aut, E); }
  std::vector<Automorphism> e_generators() const;
};

InertialPair build_inertial_pair(const AbelianPGroup& P, std::span<const Automorphism> gens);
// Same, reusing an already enumerated Aut(P).
InertialPair build_inertial_pair(const AbelianPGroup& P, const FiniteGroupTable& aut, const Subgroup& E);

// No nonidentity element of E fixes a nonzero element of P.
bool acts_freely(const AbelianPGroup& P, std::span<const Automorphism> elements);
// Fixes no nonzero element; decided on the socle by linear algebra over F_p.
bool is_fixed_point_free(const Automorphism& phi);

// <phi(x) - x : phi in gens, x a generator of P>
SubgroupTable focal_subgroup(const AbelianPGroup& P, std::span<const Automorphism> gens);

FiniteGroupTable out_PF(const InertialPair& pair);

// Every subgroup of Aut(P) acting freely on P \ {0}, one per Aut(P)-conjugacy
// class, ordered by size; the trivial subgroup comes first.  Free action
// forces |E| to divide |P| - 1, so all of them have p'-order.
std::vector<InertialPair> frobenius_complement_survey(const AbelianPGroup& P);
// Same, reusing an already enumerated Aut(P).
std::vector<InertialPair> frobenius_complement_survey(const AbelianPGroup& P, const FiniteGroupTable& aut);

}  // namespace picgrp
