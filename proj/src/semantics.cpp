#include "lgram/translate.hpp"

namespace lgram {

namespace {

using K = Formula::Kind;
using R = ProofTerm::Rule;

TracedWires dual(const TracedWires& t) {
  TracedWires d;
  d.wires = lgram::dual(t.wires);
  d.origins.assign(t.origins.rbegin(), t.origins.rend());
  return d;
}

void append(TracedWires& a, const TracedWires& b) {
  a.wires.insert(a.wires.end(), b.wires.begin(), b.wires.end());
  a.origins.insert(a.origins.end(), b.origins.begin(), b.origins.end());
}

TracedWires traced(const Formula& f, const SemanticAtoms& atoms, int& next) {
  switch (f.kind()) {
    case K::Atom: {
      TracedWires t;
      t.wires = atoms.of(f.name());
      int occ = next++;
      for (int k = 0; k < static_cast<int>(t.wires.size()); ++k) t.origins.push_back({occ, k});
      return t;
    }
    case K::Dia:
    case K::Box: return traced(f.body(), atoms, next);
    case K::Tensor: {
      TracedWires a = traced(f.left(), atoms, next);
      append(a, traced(f.right(), atoms, next));
      return a;
    }
    case K::Over: {  // A/B = A, B*
      TracedWires a = traced(f.left(), atoms, next);
      append(a, dual(traced(f.right(), atoms, next)));
      return a;
    }
    case K::Under: {  // A\B = A*, B
      TracedWires a = dual(traced(f.left(), atoms, next));
      append(a, traced(f.right(), atoms, next));
      return a;
    }
  }
  throw Error("interpret_type: bad formula");
}

// w, w* -> I with nested cups
Diagram cups(const WireType& w) {
  Diagram d;
  d.inputs = w;
  WireType dw = lgram::dual(w);
  d.inputs.insert(d.inputs.end(), dw.begin(), dw.end());
  int k = static_cast<int>(w.size());
  for (int i = 0; i < k; ++i) {
    d.nodes.push_back(cup(w[i]));
    d.wires.push_back({Endpoint::input(i), Endpoint::leg(i, 0)});
    d.wires.push_back({Endpoint::input(2 * k - 1 - i), Endpoint::leg(i, 1)});
  }
  return d;
}

// I -> w, w*
Diagram caps(const WireType& w) {
  Diagram d;
  d.outputs = w;
  WireType dw = lgram::dual(w);
  d.outputs.insert(d.outputs.end(), dw.begin(), dw.end());
  int k = static_cast<int>(w.size());
  for (int i = 0; i < k; ++i) {
    d.nodes.push_back(cap(w[i]));
    d.wires.push_back({Endpoint::leg(i, 0), Endpoint::output(i)});
    d.wires.push_back({Endpoint::leg(i, 1), Endpoint::output(2 * k - 1 - i)});
  }
  return d;
}

}  // namespace

const WireType& SemanticAtoms::of(const std::string& atom) const {
  auto it = map.find(atom);
  if (it == map.end()) throw Error("no semantic interpretation for atom '" + atom + "'");
  return it->second;
}

SemanticAtoms SemanticAtoms::defaults() {
  SemanticAtoms a;
  a.map["s"] = {{"S", false}};
  for (const char* x : {"n", "np", "pp"}) a.map[x] = {{"N", false}};
  for (const char* x : {"gp", "ap", "to_inf"}) a.map[x] = {{"N", true}, {"S", false}};
  return a;
}

SemanticAtoms SemanticAtoms::syntactic(const std::set<std::string>& atoms) {
  SemanticAtoms a;
  for (const auto& x : atoms) a.map[x] = {{x, false}};
  return a;
}

WireType interpret_type(const Formula& f, const SemanticAtoms& atoms) {
  int next = 0;
  return traced(f, atoms, next).wires;
}

TracedWires interpret_type_traced(const Formula& f, const SemanticAtoms& atoms, int first_occurrence) {
  int next = first_occurrence;
  return traced(f, atoms, next);
}

Diagram interpret_proof(const ProofTerm& p, const SemanticAtoms& atoms) {
  auto T = [&](const Formula& f) { return interpret_type(f, atoms); };
  const auto& c = p.children();
  const auto& par = p.params();
  switch (p.rule()) {
    case R::Id: return identity(T(p.source()));
    case R::Compose: return compose(interpret_proof(c[1], atoms), interpret_proof(c[0], atoms));
    case R::MonTensor: return tensor_par(interpret_proof(c[0], atoms), interpret_proof(c[1], atoms));
    case R::MonOver: return tensor_par(interpret_proof(c[0], atoms), transpose(interpret_proof(c[1], atoms)));
    case R::MonUnder: return tensor_par(transpose(interpret_proof(c[0], atoms)), interpret_proof(c[1], atoms));
    case R::MonDia:
    case R::MonBox: return interpret_proof(c[0], atoms);
    case R::EvUnder:  // A * A\B -> B
      return tensor_par(cups(T(par[0])), identity(T(par[1])));
    case R::EvOver:  // B/A * A -> B
      return tensor_par(identity(T(par[1])), cups(lgram::dual(T(par[0]))));
    case R::CoevUnder:  // B -> A\(A*B)
      return tensor_par(caps(lgram::dual(T(par[0]))), identity(T(par[1])));
    case R::CoevOver:  // B -> (B*A)/A
      return tensor_par(identity(T(par[1])), caps(T(par[0])));
    case R::EvBox:
    case R::CoevBox:
    case R::AlphaDia: return identity(T(p.source()));
    case R::SigmaDia: {  // A,B,C -> A,C,B
      int a = static_cast<int>(T(par[0]).size()), b = static_cast<int>(T(par[1]).size());
      int cc = static_cast<int>(T(par[2]).size());
      std::vector<int> perm;
      for (int i = 0; i < a; ++i) perm.push_back(i);
      for (int i = 0; i < b; ++i) perm.push_back(a + cc + i);
      for (int i = 0; i < cc; ++i) perm.push_back(a + i);
      return permutation(T(p.source()), perm);
    }
  }
  throw Error("interpret_proof: unknown rule");
}

CompiledProof compile_proof(const std::vector<Diagram>& states, const ProofTerm& p, const SemanticAtoms& atoms) {
  Diagram lex;
  for (const auto& s : states) {
    if (!s.inputs.empty()) throw Error("lexical network must have no inputs");
    lex = tensor_par(lex, s);
  }
  WireType src = interpret_type(p.source(), atoms);
  if (lex.outputs != src)
    throw Error("lexical networks give [" + print_wire_type(lex.outputs) + "] but the proof expects [" +
                print_wire_type(src) + "]");
  CompiledProof out;
  out.initial = compose(lex, interpret_proof(p, atoms));
  out.normal = normalize(out.initial);
  out.linking = extract_axiom_links(p);
  out.linked = compose(lex, linking_diagram(p.arrow(), out.linking, atoms));
  return out;
}

}  // namespace lgram
