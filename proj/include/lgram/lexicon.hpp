#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgram/diagram.hpp"
#include "lgram/formula.hpp"
#include "lgram/prover.hpp"
#include "lgram/translate.hpp"

namespace lgram {

// ---- type derivation steps ------------------------------------------------

struct TypeStep {
  enum class Kind : std::uint8_t { GeachExpand, ProductExpand, SDistribute, ProdDistribute, Calibrate };
  enum class Edit : std::uint8_t { DropModal, AddModal };

  Kind kind = Kind::GeachExpand;
  Path position;
  Formula param;  // Geach divisor or product replacement
  Edit edit = Edit::DropModal;
  Mode mode = Mode::X;  // AddModal only
};

// geach@root{<x>[x]np}  sdist@L  pexpand@R.L{np*(np\s)}  pdist@R
// calibrate@L.Body.R.R{drop}  calibrate@R.L.L.R{add:x}
std::string print_step(const TypeStep& s);
TypeStep parse_step(std::string_view text, const AtomTable& atoms);
// Whitespace separated.
std::vector<TypeStep> parse_steps(std::string_view text, const AtomTable& atoms);

// A/B at pos becomes (A/C)/(B/C).
Formula geach_expand(const Formula& t, const Path& pos, const Formula& c);
// (A\B)/C at pos, boxes on A\B allowed, becomes (A/C)\(B/C) under the same boxes.
Formula s_distribute(const Formula& t, const Path& pos);
// Antitone occurrence B at pos replaced by A, where A -> B must be provable.
Formula product_expand(const Formula& t, const Path& pos, const Formula& replacement,
                       const SearchConfig& cfg = {});
// Antitone (A*B)/C at pos becomes (A/C)*(B/C). The linear premise
// (A/C*C)*(B/C*C) -> A*B is checked with the prover.
Formula prod_distribute(const Formula& t, const Path& pos, const SearchConfig& cfg = {});
Formula calibrate(const Formula& t, const Path& pos, TypeStep::Edit edit, Mode mode = Mode::X);

Formula apply_step(const Formula& t, const TypeStep& s, const SearchConfig& cfg = {});
// base followed by the result of each step
std::vector<Formula> replay(const Formula& base, const std::vector<TypeStep>& steps,
                            const SearchConfig& cfg = {});

// s; A\B and B/A when B is; modalities are looked through.
bool is_ctype(const Formula& f);
// Replaces atoms named by the binding.
Formula instantiate_schema(const Formula& schema, const std::map<std::string, Formula>& binding);

// ---- lexicon --------------------------------------------------------------

struct LexEntry {
  std::string word;  // with tag, e.g. "that^e"
  Formula syn;
  std::string syn_text;  // as written
  std::string sem;       // network name; empty means a generator named after the word
  std::string derived_from;
  std::vector<TypeStep> steps;
  std::string schema;  // schema name, when instantiated from one
  std::map<std::string, Formula> binding;
  int line = 0;

  bool derived() const { return !derived_from.empty(); }
  std::string base_word() const { return word.substr(0, word.find('^')); }
};

struct Lexicon {
  AtomTable atoms;
  SemanticAtoms sem_atoms = SemanticAtoms::defaults();
  std::map<std::string, Diagram> networks;
  std::map<std::string, Formula> schemas;
  std::vector<LexEntry> entries;
  // Lines in file order: comments and directives verbatim, entries by index.
  std::vector<std::pair<int, std::string>> layout;  // (-1, text) or (entry index, "")

  const LexEntry* find(const std::string& word) const;
  // "w^t" matches exactly; a bare word matches all its tagged variants.
  std::vector<const LexEntry*> lookup(const std::string& word) const;
  // State I -> interpret_type(syn).
  Diagram semantics(const LexEntry& e) const;
};

Lexicon parse_lexicon(std::string_view text, const std::string& base_dir = ".");
Lexicon load_lexicon(const std::string& path);
std::string save_lexicon(const Lexicon& lex);
std::string format_entry(const LexEntry& e);

}  // namespace lgram
