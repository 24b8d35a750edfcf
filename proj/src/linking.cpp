#include <algorithm>
#include <functional>
#include <numeric>

#include "lgram/translate.hpp"

namespace lgram {

namespace {

void collect(const Formula& f, Polarity pol, std::vector<AtomOccurrence>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: out.push_back({static_cast<int>(out.size()), f.name(), pol}); return;
    case Formula::Kind::Dia:
    case Formula::Kind::Box: collect(f.body(), pol, out); return;
    case Formula::Kind::Tensor:
      collect(f.left(), pol, out);
      collect(f.right(), pol, out);
      return;
    case Formula::Kind::Over:
      collect(f.left(), pol, out);
      collect(f.right(), flip(pol), out);
      return;
    case Formula::Kind::Under:
      collect(f.left(), flip(pol), out);
      collect(f.right(), pol, out);
      return;
  }
}

}  // namespace

std::vector<AtomOccurrence> atom_occurrences(const Arrow& a) {
  std::vector<AtomOccurrence> out;
  collect(a.lhs, Polarity::Negative, out);
  collect(a.rhs, Polarity::Positive, out);
  return out;
}

AxiomLinking extract_axiom_links(const ProofTerm& p) {
  Arrow a = validate(p);
  AxiomLinking l;
  l.occurrences = atom_occurrences(a);
  std::set<std::string> names;
  for (const auto& o : l.occurrences) names.insert(o.atom);
  SemanticAtoms syn = SemanticAtoms::syntactic(names);
  Diagram d = interpret_proof(p, syn);
  TracedWires src = interpret_type_traced(a.lhs, syn, 0);
  TracedWires tgt = interpret_type_traced(a.rhs, syn, static_cast<int>(src.origins.size()));

  // Only cups, caps and plain wires occur; follow them port to port.
  std::size_t nb = d.inputs.size() + d.outputs.size();
  std::vector<std::size_t> first(d.nodes.size());
  std::size_t np = nb;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    first[i] = np;
    np += d.nodes[i].legs();
  }
  auto port = [&](const Endpoint& e) -> std::size_t {
    switch (e.kind) {
      case Endpoint::Kind::Input: return e.index;
      case Endpoint::Kind::Output: return d.inputs.size() + e.index;
      case Endpoint::Kind::Leg: return first[e.node] + e.index;
    }
    return 0;
  };
  std::vector<std::size_t> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };
  for (const auto& [x, y] : d.wires) unite(port(x), port(y));
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    if (n.kind == NodeKind::Cup || n.kind == NodeKind::Cap) {
      unite(first[i], first[i] + 1);
    } else if (n.kind == NodeKind::Swap) {
      unite(first[i], first[i] + 3);
      unite(first[i] + 1, first[i] + 2);
    } else if (n.kind != NodeKind::Spider || n.legs() != 0) {
      throw Error("extract_axiom_links: unexpected node in proof wiring");
    }
  }
  std::map<std::size_t, std::vector<int>> groups;
  for (std::size_t k = 0; k < nb; ++k) {
    int occ = k < d.inputs.size() ? src.origins[k].occurrence : tgt.origins[k - d.inputs.size()].occurrence;
    groups[find(k)].push_back(occ);
  }
  for (auto& [root, occs] : groups) {
    if (occs.size() != 2) throw Error("extract_axiom_links: atom occurrence without a unique partner");
    l.links.push_back({std::min(occs[0], occs[1]), std::max(occs[0], occs[1])});
  }
  std::sort(l.links.begin(), l.links.end());
  return l;
}

nlohmann::json linking_to_json(const AxiomLinking& l) {
  nlohmann::json j;
  j["occurrences"] = nlohmann::json::array();
  for (const auto& o : l.occurrences)
    j["occurrences"].push_back(
        {{"index", o.index}, {"atom", o.atom}, {"polarity", o.polarity == Polarity::Positive ? "+" : "-"}});
  j["links"] = nlohmann::json::array();
  for (const auto& [a, b] : l.links) j["links"].push_back({a, b});
  return j;
}

Diagram linking_diagram(const Arrow& a, const AxiomLinking& l, const SemanticAtoms& atoms) {
  TracedWires src = interpret_type_traced(a.lhs, atoms, 0);
  std::vector<AtomOccurrence> only_src;
  collect(a.lhs, Polarity::Negative, only_src);
  int n_src_occ = static_cast<int>(only_src.size());
  TracedWires tgt = interpret_type_traced(a.rhs, atoms, n_src_occ);
  Diagram d;
  d.inputs = src.wires;
  d.outputs = tgt.wires;
  // (occurrence, sub) -> endpoint
  std::map<std::pair<int, int>, Endpoint> where;
  std::map<std::pair<int, int>, PolarSpace> type;
  for (std::size_t k = 0; k < src.origins.size(); ++k) {
    where[{src.origins[k].occurrence, src.origins[k].sub}] = Endpoint::input(static_cast<int>(k));
    type[{src.origins[k].occurrence, src.origins[k].sub}] = src.wires[k];
  }
  for (std::size_t k = 0; k < tgt.origins.size(); ++k) {
    where[{tgt.origins[k].occurrence, tgt.origins[k].sub}] = Endpoint::output(static_cast<int>(k));
    type[{tgt.origins[k].occurrence, tgt.origins[k].sub}] = tgt.wires[k];
  }
  for (const auto& [x, y] : l.links) {
    const WireType& w = atoms.of(l.occurrences.at(x).atom);
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
      Endpoint ex = where.at({x, k}), ey = where.at({y, k});
      bool ix = ex.kind == Endpoint::Kind::Input, iy = ey.kind == Endpoint::Kind::Input;
      if (ix && iy) {
        int id = static_cast<int>(d.nodes.size());
        d.nodes.push_back(cup(type.at({x, k})));
        d.wires.push_back({ex, Endpoint::leg(id, 0)});
        d.wires.push_back({ey, Endpoint::leg(id, 1)});
      } else if (!ix && !iy) {
        int id = static_cast<int>(d.nodes.size());
        d.nodes.push_back(cap(type.at({x, k})));
        d.wires.push_back({Endpoint::leg(id, 0), ex});
        d.wires.push_back({Endpoint::leg(id, 1), ey});
      } else {
        d.wires.push_back({ex, ey});
      }
    }
  }
  check_diagram(d);
  return d;
}

}  // namespace lgram
