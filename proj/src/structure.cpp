#include <algorithm>

#include "lgram/prover.hpp"

namespace lgram {

using K = Formula::Kind;

Structure Structure::leaf(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->f = std::move(f);
  return Structure(std::move(n));
}

Structure Structure::pair(Structure l, Structure r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->l = std::move(l);
  n->r = std::move(r);
  return Structure(std::move(n));
}

Structure Structure::bracket(Mode m, Structure body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bracket;
  n->mode = m;
  n->l = std::move(body);
  return Structure(std::move(n));
}

Formula Structure::formula_of() const {
  switch (kind()) {
    case Kind::Leaf: return formula();
    case Kind::Pair: return Formula::tensor(left().formula_of(), right().formula_of());
    case Kind::Bracket: return Formula::dia(mode(), body().formula_of());
  }
  return formula();
}

std::size_t Structure::depth() const {
  switch (kind()) {
    case Kind::Leaf: return 1;
    case Kind::Pair: return 1 + std::max(left().depth(), right().depth());
    case Kind::Bracket: return 1 + body().depth();
  }
  return 1;
}

std::size_t Structure::leaves() const {
  switch (kind()) {
    case Kind::Leaf: return 1;
    case Kind::Pair: return left().leaves() + right().leaves();
    case Kind::Bracket: return body().leaves();
  }
  return 1;
}

std::string print_structure(const Structure& s) {
  switch (s.kind()) {
    case Structure::Kind::Leaf: {
      std::string f = print_formula(s.formula());
      return s.formula().is_binary() ? "(" + f + ")" : f;
    }
    case Structure::Kind::Pair:
      return "(" + print_structure(s.left()) + ", " + print_structure(s.right()) + ")";
    case Structure::Kind::Bracket:
      return std::string("<") + print_structure(s.body()) + ">" + mode_letter(s.mode());
  }
  return "";
}

Residuation inverse(Residuation r) {
  switch (r) {
    case Residuation::TensorToOver: return Residuation::OverToTensor;
    case Residuation::OverToTensor: return Residuation::TensorToOver;
    case Residuation::TensorToUnder: return Residuation::UnderToTensor;
    case Residuation::UnderToTensor: return Residuation::TensorToUnder;
    case Residuation::DiaToBox: return Residuation::BoxToDia;
    case Residuation::BoxToDia: return Residuation::DiaToBox;
  }
  return r;
}

const char* residuation_name(Residuation r) {
  switch (r) {
    case Residuation::TensorToOver: return "tensor-to-over";
    case Residuation::OverToTensor: return "over-to-tensor";
    case Residuation::TensorToUnder: return "tensor-to-under";
    case Residuation::UnderToTensor: return "under-to-tensor";
    case Residuation::DiaToBox: return "dia-to-box";
    case Residuation::BoxToDia: return "box-to-dia";
  }
  return "?";
}

namespace {

void require(const Formula& f, K k, const char* side, const char* conn) {
  if (f.kind() != k)
    throw Error(std::string("residuate: expected ") + conn + " at the top of the " + side +
                ", found " + print_formula(f));
}

}  // namespace

Arrow residuate(const Arrow& g, Residuation r) {
  switch (r) {
    case Residuation::TensorToOver:
      require(g.lhs, K::Tensor, "left-hand side", "'*'");
      return {g.lhs.left(), Formula::over(g.rhs, g.lhs.right())};
    case Residuation::OverToTensor:
      require(g.rhs, K::Over, "right-hand side", "'/'");
      return {Formula::tensor(g.lhs, g.rhs.arg()), g.rhs.result()};
    case Residuation::TensorToUnder:
      require(g.lhs, K::Tensor, "left-hand side", "'*'");
      return {g.lhs.right(), Formula::under(g.lhs.left(), g.rhs)};
    case Residuation::UnderToTensor:
      require(g.rhs, K::Under, "right-hand side", "'\\'");
      return {Formula::tensor(g.rhs.arg(), g.lhs), g.rhs.result()};
    case Residuation::DiaToBox:
      require(g.lhs, K::Dia, "left-hand side", "'<m>'");
      return {g.lhs.body(), Formula::box(g.lhs.mode(), g.rhs)};
    case Residuation::BoxToDia:
      require(g.rhs, K::Box, "right-hand side", "'[m]'");
      return {Formula::dia(g.rhs.mode(), g.lhs), g.rhs.body()};
  }
  return g;
}

Formula apply_structural(const Formula& tree, StructuralRule rule, const Path& position) {
  const Formula& t = subformula(tree, position);
  const char* name = rule == StructuralRule::Alpha ? "alpha" : "sigma";
  if (!t.is(K::Tensor) || !t.left().is(K::Tensor) || !t.right().is(K::Dia))
    throw Error(std::string(name) + ": subformula at " + to_string(position) +
                " does not match (A*B)*<m>C: " + print_formula(t));
  if (t.right().mode() != Mode::X)
    throw Error(std::string(name) + ": mode " + mode_letter(t.right().mode()) +
                " has no associated structural rules");
  const Formula& a = t.left().left();
  const Formula& b = t.left().right();
  const Formula& dc = t.right();
  Formula out = rule == StructuralRule::Alpha ? Formula::tensor(a, Formula::tensor(b, dc))
                                              : Formula::tensor(Formula::tensor(a, dc), b);
  return replace_at(tree, position, out);
}

}  // namespace lgram
