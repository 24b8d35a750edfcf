#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lgram/formula.hpp"
#include "lgram/proof.hpp"

namespace lgram {

// Antecedent structures: binary trees of formulas with mode-tagged
// brackets. formula_of() reads `,` as tensor and <..> as diamond.
class Structure {
 public:
  enum class Kind : std::uint8_t { Leaf, Pair, Bracket };

  Structure() = default;
  static Structure leaf(Formula f);
  static Structure pair(Structure l, Structure r);
  static Structure bracket(Mode m, Structure body);

  Kind kind() const;
  bool is_leaf() const { return kind() == Kind::Leaf; }
  const Formula& formula() const;  // leaves only
  Mode mode() const;
  const Structure& left() const;
  const Structure& right() const;
  const Structure& body() const;
  bool empty() const { return node_ == nullptr; }

  Formula formula_of() const;
  std::size_t depth() const;
  std::size_t leaves() const;

 private:
  struct Node;
  explicit Structure(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Structure::Node {
  Kind kind = Kind::Leaf;
  Mode mode = Mode::X;
  Formula f;
  Structure l, r;  // l doubles as the bracket body
};

inline Structure::Kind Structure::kind() const { return node_->kind; }
inline const Formula& Structure::formula() const { return node_->f; }
inline Mode Structure::mode() const { return node_->mode; }
inline const Structure& Structure::left() const { return node_->l; }
inline const Structure& Structure::right() const { return node_->r; }
inline const Structure& Structure::body() const { return node_->l; }

std::string print_structure(const Structure& s);

struct SearchConfig {
  int max_proof_size = 40;
  // 0 picks twice the depth of the initial antecedent.
  int max_structural_per_dia = 0;
  bool find_all = false;
  bool memoize = true;
  bool count_pruning = true;
  // Cap on proofs kept per subgoal in find_all mode.
  std::size_t max_proofs = 100;
};

struct ProveResult {
  std::vector<ProofTerm> proofs;
  // True when the size bound (or the structural cap) cut off part of the search.
  bool bounded = false;
  // Deepest sequent that failed, rendered as "Gamma |- C".
  std::string deepest_failure;
  std::size_t deepest_level = 0;
  std::size_t goals_explored = 0;
};

ProveResult prove(const Arrow& goal, const SearchConfig& cfg);
ProveResult prove(const Structure& antecedent, const Formula& succedent, const SearchConfig& cfg);

enum class Residuation : std::uint8_t {
  TensorToOver,   // A*B -> C  gives  A -> C/B
  OverToTensor,   // A -> C/B  gives  A*B -> C
  TensorToUnder,  // A*B -> C  gives  B -> A\C
  UnderToTensor,  // B -> A\C  gives  A*B -> C
  DiaToBox,       // <m>A -> B  gives  A -> [m]B
  BoxToDia,       // A -> [m]B  gives  <m>A -> B
};

Residuation inverse(Residuation r);
const char* residuation_name(Residuation r);
Arrow residuate(const Arrow& goal, Residuation r);

enum class StructuralRule : std::uint8_t { Alpha, Sigma };

// Rewrites (A*B)*<x>C at `position` per the chosen postulate.
Formula apply_structural(const Formula& tree, StructuralRule rule, const Path& position);

}  // namespace lgram
