#pragma once

// Picard groups of blocks with abelian defect group, assembled as abstract
// groups from an inertial pair (P, E), plus exactness and diagram checkers
// for sequences of finite groups.

#include <string>
#include <vector>

#include "picgrp/dade.hpp"
#include "picgrp/fusion.hpp"
#include "picgrp/identify.hpp"

namespace picgrp {

struct Constituent {
  std::string role;  // e.g. "Hom(E,k^x)", "Out(P,F)"
  FiniteGroupTable group;
  AbstractGroupId id;
};

struct PicardReport {
  std::string input;       // echo of the inputs
  std::string statement;   // which result the assembly follows
  FiniteGroupTable group;  // the assembled group
  AbstractGroupId id;
  std::vector<Constituent> constituents;
  std::vector<std::string> notes;  // assumptions and conventions
  bool upper_bound = false;        // the group bounds Pic(B) rather than equals it
};

// 1 -> Hom(E,k^x)[d] -> Hom(E,k^x)[d] x| N/E -> N/E -> 1, packaged.
struct CharacterExtension {
  FiniteGroupTable characters;  // Hom(E,k^x)[d]
  SemidirectProduct product;
  std::vector<HomomorphismData> sequence;  // 1 -> chars -> product -> N/E -> 1
};

// E abelian of p'-order.  Characters of E are written additively in
// Z/exp(E); N/E acts by n.chi = chi o (conjugation by n)^{-1}.  Only the
// characters of order dividing d are kept.
CharacterExtension character_extension(const InertialPair& pair, std::size_t d);

// Pic of O(P x| E) for E abelian p' with [P,E] = P.
PicardReport pic_local(const InertialPair& pair, CoefficientProfile profile = {});

struct FrobeniusBound {
  PicardReport report;
  std::vector<HomomorphismData> sequence;
};
// Hom(E,k^x) x| N_E, into which Pic(B) embeds when E is cyclic and free.
FrobeniusBound pic_frobenius_bound(const InertialPair& pair);

// P cyclic, E nontrivial; d = |Out_P(A)| divides |E| (0 means |E|).
PicardReport pic_cyclic(const InertialPair& pair, std::size_t d = 0);

enum class KleinFourCase { A4, A5_principal, nilpotent };
PicardReport pic_kleinfour(KleinFourCase which, CoefficientProfile profile = {});

// Pic(OP) = Hom(P,O^x) x| Aut(P).
PicardReport pic_nilpotent(const AbelianPGroup& P, CoefficientProfile profile = {});

struct NodeDiagnostic {
  std::size_t node = 0;  // position in the sequence, 0 is the first group
  bool exact = true;
  std::string detail;
};

struct ExactnessReport {
  bool ok = true;
  std::vector<NodeDiagnostic> nodes;  // interior nodes
};

// maps[i] : G_i -> G_{i+1}.  Checks image = kernel at every interior node;
// a trivial first (last) group makes this injectivity (surjectivity).
ExactnessReport verify_exact_sequence(const std::vector<HomomorphismData>& maps);

// One row 1 -> K -> X -> Y of the Picard diagram.
struct PicardRow {
  HomomorphismData head;  // K -> X
  HomomorphismData phi;   // X -> Y
};

// Rows for T(B) <= L(B) <= E(B) sharing K = Out_P(A), with the vertical
// inclusions between middle terms and between right-hand terms
// Out(P,F) <= Hom(P/foc,O^x) x| Out(P,F) <= D x| Out(P,F).
struct PicardDiagram {
  PicardRow t_row, l_row, e_row;
  HomomorphismData t_to_l, l_to_e;
  HomomorphismData right_t_to_l, right_l_to_e;
};

struct DiagramReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

// Throws ShapeMismatch when sources and targets do not line up.
DiagramReport verify_picard_diagram(const PicardDiagram& diagram);

// The diagram of the local block O(P x| E) with D the character context.
PicardDiagram local_block_diagram(const InertialPair& pair, CoefficientProfile profile = {});

}  // namespace picgrp
