#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgram/error.hpp"

namespace lgram {

// Control modes for the unary connectives. X licenses the extraction
// postulates; I marks islands and has no structural rules at all.
enum class Mode : std::uint8_t { X, I };

enum class Polarity : std::uint8_t { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

char mode_letter(Mode m);
Mode mode_from_letter(char c);

// Immutable formula tree of the modal Lambek calculus. Cheap to copy;
// subtrees are shared.
//
//   Atom p | Tensor(A, B) | Over(A, B) = A/B | Under(A, B) = A\B | Dia_m A | Box_m A
//
// For Over, left() is the result and right() the argument; for Under,
// left() is the argument and right() the result. Textual order, in both cases.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Tensor, Over, Under, Dia, Box };

  Formula() = default;  // empty handle; only valid as an assignment target

  static Formula atom(std::string name);
  static Formula tensor(Formula left, Formula right);
  static Formula over(Formula result, Formula arg);
  static Formula under(Formula arg, Formula result);
  static Formula dia(Mode mode, Formula body);
  static Formula box(Mode mode, Formula body);

  Kind kind() const;
  bool is(Kind k) const;
  bool is_atom() const;
  bool is_binary() const;
  bool is_unary() const { return is(Kind::Dia) || is(Kind::Box); }

  const std::string& name() const;  // atoms only
  Mode mode() const;                // Dia / Box only
  const Formula& left() const;      // binary only
  const Formula& right() const;     // binary only
  const Formula& body() const;      // unary only

  // Over / Under accessors by role.
  const Formula& result() const;
  const Formula& arg() const;

  std::size_t hash() const;
  std::size_t size() const;
  bool same_node(const Formula& o) const { return node_ == o.node_; }
  bool empty() const { return node_ == nullptr; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind = Kind::Atom;
  Mode mode = Mode::X;
  std::string name;
  Formula left;   // also the body of unary nodes
  Formula right;
  std::size_t hash = 0;
  std::size_t size = 1;
  Node() = default;
};

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline bool Formula::is(Kind k) const { return node_->kind == k; }
inline bool Formula::is_atom() const { return node_->kind == Kind::Atom; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::size_t Formula::size() const { return node_->size; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Atom declarations plus abbreviation macros (e.g. iv := np\s). Macros are
// expanded by the parser and never appear in a Formula.
struct AtomTable {
  std::set<std::string> atoms;
  std::vector<std::pair<std::string, Formula>> macros;

  bool has_atom(std::string_view a) const { return atoms.count(std::string(a)) > 0; }
  const Formula* macro(std::string_view name) const;
};

// Atoms of the bundled fragment: n, np, s, gp, ap, pp, to_inf.
AtomTable default_atoms();

Formula parse_formula(std::string_view text, const AtomTable& atoms);

// Minimal-parenthesis rendering; unary connectives bind tightest and
// binary chains are always parenthesized.
std::string print_formula(const Formula& f);

// As above, but subtrees equal to a macro body are printed as the macro name.
std::string print_formula(const Formula& f,
                          const std::vector<std::pair<std::string, Formula>>& abbreviations);

int atom_count(const Formula& f, std::string_view atom, Polarity outer);

// All atom names occurring in f.
std::set<std::string> atoms_of(const Formula& f);

// Signed atom counts for every atom in f.
std::map<std::string, int> atom_counts(const Formula& f, Polarity outer);

// ---- paths --------------------------------------------------------------

enum class Step : std::uint8_t { L, R, Body };
using Path = std::vector<Step>;

std::string to_string(const Path& p);  // "root" or e.g. "L.Body.R"
Path parse_path(std::string_view text);

const Formula& subformula(const Formula& f, const Path& p);
Formula replace_at(const Formula& f, const Path& p, const Formula& replacement);

// Polarity of the subformula at p when f itself sits at `outer`.
Polarity polarity_at(const Formula& f, const Path& p, Polarity outer = Polarity::Positive);

}  // namespace lgram

template <>
struct std::hash<lgram::Formula> {
  std::size_t operator()(const lgram::Formula& f) const { return f.hash(); }
};
