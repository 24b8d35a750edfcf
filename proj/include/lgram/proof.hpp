#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgram/formula.hpp"

namespace lgram {

// A goal A -> B; not yet a proof.
struct Arrow {
  Formula lhs;
  Formula rhs;
  friend bool operator==(const Arrow& a, const Arrow& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

std::string print_arrow(const Arrow& a);

// An arrow of the Dosen-style axiomatisation. Every constructor checks that
// its parts compose and records the endpoints, so a ProofTerm that exists
// is well-typed; validate() recomputes everything from the leaves.
class ProofTerm {
 public:
  enum class Rule : std::uint8_t {
    Id,
    Compose,
    MonTensor,
    MonOver,
    MonUnder,
    MonDia,
    MonBox,
    EvUnder,    // A * A\B -> B
    CoevUnder,  // B -> A\(A*B)
    EvOver,     // B/A * A -> B
    CoevOver,   // B -> (B*A)/A
    EvBox,      // <m>[m]A -> A
    CoevBox,    // A -> [m]<m>A
    AlphaDia,   // (A*B)*<x>C -> A*(B*<x>C)
    SigmaDia,   // (A*B)*<x>C -> (A*<x>C)*B
  };

  static ProofTerm id(Formula a);
  // g after f.
  static ProofTerm compose(ProofTerm g, ProofTerm f);
  static ProofTerm mon_tensor(ProofTerm f, ProofTerm g);
  // f: A->B, g: C->D gives A/D -> B/C.
  static ProofTerm mon_over(ProofTerm f, ProofTerm g);
  // f: A->B, g: C->D gives B\C -> A\D.
  static ProofTerm mon_under(ProofTerm f, ProofTerm g);
  static ProofTerm mon_dia(Mode m, ProofTerm f);
  static ProofTerm mon_box(Mode m, ProofTerm f);
  static ProofTerm ev_under(Formula a, Formula b);
  static ProofTerm coev_under(Formula a, Formula b);
  static ProofTerm ev_over(Formula a, Formula b);
  static ProofTerm coev_over(Formula a, Formula b);
  static ProofTerm ev_box(Mode m, Formula a);
  static ProofTerm coev_box(Mode m, Formula a);
  static ProofTerm alpha(Formula a, Formula b, Formula c);
  static ProofTerm sigma(Formula a, Formula b, Formula c);

  Rule rule() const { return node_->rule; }
  Mode mode() const { return node_->mode; }
  const Formula& source() const { return node_->source; }
  const Formula& target() const { return node_->target; }
  Arrow arrow() const { return {node_->source, node_->target}; }
  const std::vector<ProofTerm>& children() const { return node_->children; }
  const std::vector<Formula>& params() const { return node_->params; }

  // Number of non-Id nodes.
  std::size_t size() const;

 private:
  struct Node {
    Rule rule = Rule::Id;
    Mode mode = Mode::X;
    std::vector<Formula> params;
    std::vector<ProofTerm> children;
    Formula source;
    Formula target;
  };
  explicit ProofTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static ProofTerm make(Rule r, Mode m, std::vector<Formula> params, std::vector<ProofTerm> kids,
                        Formula src, Formula tgt);
  std::shared_ptr<const Node> node_;
};

const char* rule_name(ProofTerm::Rule r);
bool rule_has_mode(ProofTerm::Rule r);

// Recomputes endpoints bottom-up; throws Error on any inconsistency.
Arrow validate(const ProofTerm& p);

// {rule, mode?, children, source, target}; formulas as strings.
nlohmann::json proof_to_json(const ProofTerm& p);
ProofTerm proof_from_json(const nlohmann::json& j, const AtomTable& atoms);

}  // namespace lgram
