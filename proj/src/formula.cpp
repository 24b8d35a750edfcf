#include "lgram/formula.hpp"

#include <cctype>
#include <sstream>

namespace lgram {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

char mode_letter(Mode m) { return m == Mode::X ? 'x' : 'i'; }

Mode mode_from_letter(char c) {
  if (c == 'x') return Mode::X;
  if (c == 'i') return Mode::I;
  throw Error(std::string("unknown mode '") + c + "'");
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw Error("atom name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->hash = mix(std::hash<std::string>{}(name), 0x51);
  n->name = std::move(name);
  return Formula(std::move(n));
}

namespace {

template <class NodeT>
void set_binary(NodeT& n, Formula::Kind k, Formula l, Formula r) {
  n.kind = k;
  n.hash = mix(mix(static_cast<std::size_t>(k) * 7919, l.hash()), r.hash());
  n.size = 1 + l.size() + r.size();
  n.left = std::move(l);
  n.right = std::move(r);
}

}  // namespace

Formula Formula::tensor(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  set_binary(*n, Kind::Tensor, std::move(left), std::move(right));
  return Formula(std::move(n));
}

Formula Formula::over(Formula result, Formula arg) {
  auto n = std::make_shared<Node>();
  set_binary(*n, Kind::Over, std::move(result), std::move(arg));
  return Formula(std::move(n));
}

Formula Formula::under(Formula arg, Formula result) {
  auto n = std::make_shared<Node>();
  set_binary(*n, Kind::Under, std::move(arg), std::move(result));
  return Formula(std::move(n));
}

Formula Formula::dia(Mode mode, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dia;
  n->mode = mode;
  n->hash = mix(mix(0xd1a, static_cast<std::size_t>(mode)), body.hash());
  n->size = 1 + body.size();
  n->left = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::box(Mode mode, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->mode = mode;
  n->hash = mix(mix(0xb0c, static_cast<std::size_t>(mode)), body.hash());
  n->size = 1 + body.size();
  n->left = std::move(body);
  return Formula(std::move(n));
}

bool Formula::is_binary() const {
  return is(Kind::Tensor) || is(Kind::Over) || is(Kind::Under);
}

const std::string& Formula::name() const {
  if (!is_atom()) throw Error("name() on a non-atomic formula");
  return node_->name;
}

Mode Formula::mode() const {
  if (!is_unary()) throw Error("mode() on a non-modal formula");
  return node_->mode;
}

const Formula& Formula::left() const {
  if (!is_binary()) throw Error("left() on a non-binary formula");
  return node_->left;
}

const Formula& Formula::right() const {
  if (!is_binary()) throw Error("right() on a non-binary formula");
  return node_->right;
}

const Formula& Formula::body() const {
  if (!is_unary()) throw Error("body() on a non-modal formula");
  return node_->left;
}

const Formula& Formula::result() const {
  if (is(Kind::Over)) return node_->left;
  if (is(Kind::Under)) return node_->right;
  throw Error("result() on a formula that is not a slash");
}

const Formula& Formula::arg() const {
  if (is(Kind::Over)) return node_->right;
  if (is(Kind::Under)) return node_->left;
  throw Error("arg() on a formula that is not a slash");
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Formula::Kind::Atom:
      return x.name == y.name;
    case Formula::Kind::Dia:
    case Formula::Kind::Box:
      return x.mode == y.mode && x.left == y.left;
    default:
      return x.left == y.left && x.right == y.right;
  }
}

const Formula* AtomTable::macro(std::string_view name) const {
  for (const auto& [k, v] : macros)
    if (k == name) return &v;
  return nullptr;
}

AtomTable default_atoms() {
  AtomTable t;
  t.atoms = {"n", "np", "s", "gp", "ap", "pp", "to_inf"};
  return t;
}

// ---- parsing --------------------------------------------------------------

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const AtomTable& atoms) : text_(text), atoms_(atoms) {}

  Formula parse() {
    Formula f = binary();
    skip_ws();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') fail("unbalanced ')'", pos_, pos_ + 1);
      fail("unexpected input", pos_, text_.size());
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t b, std::size_t e) const {
    std::ostringstream os;
    os << what << " at [" << b << "," << e << ") in \"" << text_ << "\"";
    if (e > b && e <= text_.size()) os << ": '" << text_.substr(b, e - b) << "'";
    throw ParseError(os.str(), b, e);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool is_op(char c) { return c == '/' || c == '\\' || c == '*'; }

  Formula binary() {
    Formula lhs = unary();
    skip_ws();
    if (pos_ >= text_.size() || !is_op(text_[pos_])) return lhs;
    char op = text_[pos_++];
    Formula rhs = unary();
    skip_ws();
    if (pos_ < text_.size() && is_op(text_[pos_]))
      fail("ambiguous chain of binary connectives; add parentheses", pos_, pos_ + 1);
    switch (op) {
      case '/':
        return Formula::over(lhs, rhs);
      case '\\':
        return Formula::under(lhs, rhs);
      default:
        return Formula::tensor(lhs, rhs);
    }
  }

  Formula unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of formula", pos_, pos_);
    char c = text_[pos_];
    if (c == '<' || c == '[') {
      std::size_t start = pos_;
      char close = c == '<' ? '>' : ']';
      if (pos_ + 2 >= text_.size() || text_[pos_ + 2] != close)
        fail("malformed modal prefix", start, std::min(text_.size(), pos_ + 3));
      char m = text_[pos_ + 1];
      if (m != 'x' && m != 'i') fail("unknown mode (expected x or i)", start, pos_ + 3);
      pos_ += 3;
      Formula body = unary();
      return c == '<' ? Formula::dia(mode_from_letter(m), body)
                      : Formula::box(mode_from_letter(m), body);
    }
    if (c == '(') {
      std::size_t open = pos_++;
      Formula inner = binary();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("unbalanced '('", open, open + 1);
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view id = text_.substr(start, pos_ - start);
      if (const Formula* m = atoms_.macro(id)) return *m;
      if (!atoms_.has_atom(id)) fail("unknown atom", start, pos_);
      return Formula::atom(std::string(id));
    }
    if (c == ')') fail("unbalanced ')'", pos_, pos_ + 1);
    fail("unexpected character", pos_, pos_ + 1);
  }

  std::string_view text_;
  const AtomTable& atoms_;
  std::size_t pos_ = 0;
};

using Abbrevs = std::vector<std::pair<std::string, Formula>>;

void print_into(std::string& out, const Formula& f, const Abbrevs& ab, bool wrap_binary) {
  for (const auto& [name, body] : ab) {
    if (!body.is_atom() && f == body) {
      out += name;
      return;
    }
  }
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Dia:
    case Formula::Kind::Box:
      out += f.is(Formula::Kind::Dia) ? '<' : '[';
      out += mode_letter(f.mode());
      out += f.is(Formula::Kind::Dia) ? '>' : ']';
      print_into(out, f.body(), ab, true);
      return;
    default: {
      if (wrap_binary) out += '(';
      print_into(out, f.left(), ab, true);
      out += f.is(Formula::Kind::Over) ? '/' : f.is(Formula::Kind::Under) ? '\\' : '*';
      print_into(out, f.right(), ab, true);
      if (wrap_binary) out += ')';
    }
  }
}

void count_into(const Formula& f, Polarity pol, std::map<std::string, int>& acc) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      acc[f.name()] += pol == Polarity::Positive ? 1 : -1;
      return;
    case Formula::Kind::Tensor:
      count_into(f.left(), pol, acc);
      count_into(f.right(), pol, acc);
      return;
    case Formula::Kind::Over:
    case Formula::Kind::Under:
      count_into(f.result(), pol, acc);
      count_into(f.arg(), flip(pol), acc);
      return;
    default:
      count_into(f.body(), pol, acc);
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const AtomTable& atoms) {
  return FormulaParser(text, atoms).parse();
}

std::string print_formula(const Formula& f) { return print_formula(f, {}); }

std::string print_formula(const Formula& f, const Abbrevs& abbreviations) {
  std::string out;
  print_into(out, f, abbreviations, false);
  return out;
}

int atom_count(const Formula& f, std::string_view atom, Polarity outer) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.name() != atom) return 0;
      return outer == Polarity::Positive ? 1 : -1;
    case Formula::Kind::Tensor:
      return atom_count(f.left(), atom, outer) + atom_count(f.right(), atom, outer);
    case Formula::Kind::Over:
    case Formula::Kind::Under:
      return atom_count(f.result(), atom, outer) + atom_count(f.arg(), atom, flip(outer));
    default:
      return atom_count(f.body(), atom, outer);
  }
}

std::map<std::string, int> atom_counts(const Formula& f, Polarity outer) {
  std::map<std::string, int> acc;
  count_into(f, outer, acc);
  return acc;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& [k, v] : atom_counts(f, Polarity::Positive)) out.insert(k);
  return out;
}

// ---- paths ----------------------------------------------------------------

std::string to_string(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += p[i] == Step::L ? "L" : p[i] == Step::R ? "R" : "Body";
  }
  return out;
}

Path parse_path(std::string_view text) {
  Path p;
  if (text == "root" || text.empty()) return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view tok = text.substr(start, dot == std::string_view::npos ? text.size() - start
                                                                            : dot - start);
    if (tok == "L")
      p.push_back(Step::L);
    else if (tok == "R")
      p.push_back(Step::R);
    else if (tok == "Body")
      p.push_back(Step::Body);
    else
      throw ParseError("bad path component '" + std::string(tok) + "'", start,
                       start + tok.size());
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

namespace {

const Formula& step_into(const Formula& f, Step s, const Path& full) {
  if (s == Step::Body) {
    if (!f.is_unary()) throw Error("path " + to_string(full) + ": Body step at a non-modal node");
    return f.body();
  }
  if (!f.is_binary())
    throw Error("path " + to_string(full) + ": L/R step at a non-binary node");
  return s == Step::L ? f.left() : f.right();
}

Formula rebuild(const Formula& f, Step s, Formula child) {
  switch (f.kind()) {
    case Formula::Kind::Tensor:
      return s == Step::L ? Formula::tensor(child, f.right()) : Formula::tensor(f.left(), child);
    case Formula::Kind::Over:
      return s == Step::L ? Formula::over(child, f.right()) : Formula::over(f.left(), child);
    case Formula::Kind::Under:
      return s == Step::L ? Formula::under(child, f.right()) : Formula::under(f.left(), child);
    case Formula::Kind::Dia:
      return Formula::dia(f.mode(), child);
    case Formula::Kind::Box:
      return Formula::box(f.mode(), child);
    default:
      throw Error("cannot rebuild an atom");
  }
}

Formula replace_rec(const Formula& f, const Path& p, std::size_t i, const Formula& repl) {
  if (i == p.size()) return repl;
  const Formula& child = step_into(f, p[i], p);
  return rebuild(f, p[i], replace_rec(child, p, i + 1, repl));
}

}  // namespace

const Formula& subformula(const Formula& f, const Path& p) {
  const Formula* cur = &f;
  for (Step s : p) cur = &step_into(*cur, s, p);
  return *cur;
}

Formula replace_at(const Formula& f, const Path& p, const Formula& replacement) {
  return replace_rec(f, p, 0, replacement);
}

Polarity polarity_at(const Formula& f, const Path& p, Polarity outer) {
  const Formula* cur = &f;
  Polarity pol = outer;
  for (Step s : p) {
    if ((cur->is(Formula::Kind::Over) && s == Step::R) ||
        (cur->is(Formula::Kind::Under) && s == Step::L))
      pol = flip(pol);
    cur = &step_into(*cur, s, p);
  }
  return pol;
}

}  // namespace lgram
