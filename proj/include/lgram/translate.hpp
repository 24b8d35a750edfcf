#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lgram/diagram.hpp"
#include "lgram/formula.hpp"
#include "lgram/proof.hpp"

namespace lgram {

// Atom -> wire list. Modal operators never show up here.
struct SemanticAtoms {
  std::map<std::string, WireType> map;

  const WireType& of(const std::string& atom) const;
  // s:S; n, np, pp:N; gp, ap, to_inf: N*,S
  static SemanticAtoms defaults();
  // Each atom becomes one wire on a space named after the atom.
  static SemanticAtoms syntactic(const std::set<std::string>& atoms);
};

// Which atom occurrence (preorder index) and which wire of that atom's
// interpretation a boundary wire came from.
struct WireOrigin {
  int occurrence = 0;
  int sub = 0;
  friend bool operator==(const WireOrigin& a, const WireOrigin& b) {
    return a.occurrence == b.occurrence && a.sub == b.sub;
  }
};

struct TracedWires {
  WireType wires;
  std::vector<WireOrigin> origins;
};

WireType interpret_type(const Formula& f, const SemanticAtoms& atoms = SemanticAtoms::defaults());
TracedWires interpret_type_traced(const Formula& f, const SemanticAtoms& atoms, int first_occurrence = 0);

// Diagram of type interpret_type(source) -> interpret_type(target).
Diagram interpret_proof(const ProofTerm& p, const SemanticAtoms& atoms = SemanticAtoms::defaults());

struct AtomOccurrence {
  int index = 0;
  std::string atom;
  Polarity polarity = Polarity::Positive;
};

// Preorder over the atoms of the arrow, source first.
std::vector<AtomOccurrence> atom_occurrences(const Arrow& a);

struct AxiomLinking {
  std::vector<AtomOccurrence> occurrences;
  std::vector<std::pair<int, int>> links;  // each pair sorted, list sorted
};

AxiomLinking extract_axiom_links(const ProofTerm& p);
nlohmann::json linking_to_json(const AxiomLinking& l);

// Cup/cap/identity wiring source -> target realising the linking at the
// level of semantic wires.
Diagram linking_diagram(const Arrow& a, const AxiomLinking& l, const SemanticAtoms& atoms);

struct CompiledProof {
  Diagram initial;  // word states ; interpret_proof
  Diagram normal;
  Diagram linked;   // word states ; linking_diagram
  AxiomLinking linking;
};

// `states` are closed diagrams I -> interpret_type(word type), in word order.
CompiledProof compile_proof(const std::vector<Diagram>& states, const ProofTerm& p,
                            const SemanticAtoms& atoms = SemanticAtoms::defaults());

}  // namespace lgram
