#pragma once

#include <string>
#include <vector>

#include "satrev/dl.hpp"
#include "satrev/fol.hpp"
#include "satrev/horn.hpp"
#include "satrev/pl.hpp"
#include "satrev/revision.hpp"

namespace satrev::ops {

// Sentence-level relaxations by name, as accepted by the CLI.
Relaxation<pl::System> pl_relaxation(const pl::System& sys, const std::string& name);
Relaxation<horn::System> horn_relaxation(const horn::System& sys, const std::string& name);
Relaxation<fol::System> fol_relaxation(const fol::System& sys, const std::string& name);
Relaxation<dl::System> dl_relaxation(const dl::System& sys, const std::string& name,
                                     const dl::ExceptionSet& exceptions);

std::vector<std::string> pl_names();
std::vector<std::string> horn_names();
std::vector<std::string> fol_names();
std::vector<std::string> dl_names();

// Concept-level catalog, used by the operator-contract suites.
struct ConceptOp {
  std::string name;
  bool retraction = false;          // anti-extensive rather than extensive
  bool claimed_exhaustive = true;   // whether exhaustivity indices must exist
  bool serial_scope = false;        // contract holds over serial interpretations
  bool prefix_shaped = false;       // inputs are quantifier prefixes over a matrix
  dl::Fragment input = dl::Fragment::ALC;  // largest admissible input fragment
  std::function<dl::Concept(const dl::Concept&)> apply;
};

std::vector<ConceptOp> concept_catalog(const dl::System& sys, const dl::ExceptionSet& exceptions);

// Registry forms of the quantifier-flip operators. rho_q falls back to
// literal dilation of the matrix once no universal remains, so its iterates
// keep growing toward Top; both map over their own disjunctive or
// conjunctive output shapes.
dl::Concept rho_q_staged(const dl::Concept& c);
dl::Concept kappa_q_blocks(const dl::Concept& c);

}  // namespace satrev::ops
