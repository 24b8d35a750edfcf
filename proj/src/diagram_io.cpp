#include <sstream>

#include "lgram/diagram.hpp"

namespace lgram {

namespace {

using nlohmann::json;

json wire_type_json(const WireType& w) {
  json a = json::array();
  for (const auto& p : w) a.push_back(p.space + (p.dual ? "*" : ""));
  return a;
}

WireType wire_type_from(const json& a) {
  WireType w;
  for (const auto& s : a) {
    auto t = parse_wire_type(s.get<std::string>());
    if (t.size() != 1) throw Error("diagram json: bad space '" + s.get<std::string>() + "'");
    w.push_back(t[0]);
  }
  return w;
}

NodeKind kind_from(const std::string& s) {
  for (NodeKind k : {NodeKind::Generator, NodeKind::Cup, NodeKind::Cap, NodeKind::Swap, NodeKind::Spider})
    if (s == node_kind_name(k)) return k;
  throw Error("diagram json: unknown node kind '" + s + "'");
}

Endpoint endpoint_from(const std::string& s) {
  try {
    if (s.rfind("in", 0) == 0) return Endpoint::input(std::stoi(s.substr(2)));
    if (s.rfind("out", 0) == 0) return Endpoint::output(std::stoi(s.substr(3)));
    if (s.rfind("n", 0) == 0) {
      auto dot = s.find('.');
      if (dot != std::string::npos) return Endpoint::leg(std::stoi(s.substr(1, dot - 1)), std::stoi(s.substr(dot + 1)));
    }
  } catch (const std::logic_error&) {
  }
  throw Error("diagram json: bad port '" + s + "'");
}

}  // namespace

nlohmann::json diagram_to_json(const Diagram& d) {
  json j;
  j["inputs"] = wire_type_json(d.inputs);
  j["outputs"] = wire_type_json(d.outputs);
  j["nodes"] = json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    json o;
    o["id"] = i;
    o["kind"] = node_kind_name(n.kind);
    if (n.kind == NodeKind::Generator) o["name"] = n.name;
    if (n.kind == NodeKind::Spider) o["space"] = n.space;
    o["arities"] = {n.in.size(), n.out.size()};
    o["in"] = wire_type_json(n.in);
    o["out"] = wire_type_json(n.out);
    j["nodes"].push_back(o);
  }
  j["wires"] = json::array();
  for (const auto& [a, b] : d.wires) j["wires"].push_back({print_endpoint(a), print_endpoint(b)});
  return j;
}

Diagram diagram_from_json(const nlohmann::json& j) {
  Diagram d;
  d.inputs = wire_type_from(j.at("inputs"));
  d.outputs = wire_type_from(j.at("outputs"));
  for (const auto& o : j.at("nodes")) {
    if (o.at("id").get<std::size_t>() != d.nodes.size()) throw Error("diagram json: node ids must be 0..n-1 in order");
    Node n;
    n.kind = kind_from(o.at("kind").get<std::string>());
    if (n.kind == NodeKind::Generator) n.name = o.at("name").get<std::string>();
    if (n.kind == NodeKind::Spider) n.space = o.at("space").get<std::string>();
    if (o.contains("in") || o.contains("out")) {
      n.in = wire_type_from(o.at("in"));
      n.out = wire_type_from(o.at("out"));
    } else if (n.kind == NodeKind::Spider) {
      n = spider(o.at("space").get<std::string>(), o.at("arities").at(0).get<std::size_t>(),
                 o.at("arities").at(1).get<std::size_t>());
    } else {
      throw Error("diagram json: node " + std::to_string(d.nodes.size()) + " lacks in/out");
    }
    d.nodes.push_back(n);
  }
  for (const auto& w : j.at("wires"))
    d.wires.push_back({endpoint_from(w.at(0).get<std::string>()), endpoint_from(w.at(1).get<std::string>())});
  check_diagram(d);
  return d;
}

std::string diagram_to_dot(const Diagram& d, const std::string& name) {
  std::ostringstream o;
  o << "graph \"" << name << "\" {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t k = 0; k < d.inputs.size(); ++k)
    o << "  in" << k << " [shape=plaintext,label=\"" << print_wire_type({d.inputs[k]}) << "\"];\n";
  for (std::size_t k = 0; k < d.outputs.size(); ++k)
    o << "  out" << k << " [shape=plaintext,label=\"" << print_wire_type({d.outputs[k]}) << "\"];\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    o << "  n" << i << " [";
    switch (n.kind) {
      case NodeKind::Generator: o << "shape=box,label=\"" << n.name << "\""; break;
      case NodeKind::Spider:
        o << "shape=circle,style=filled,fillcolor=" << (n.space == "S" ? "\"#f4b6b6\"" : "\"#b6d0f4\"")
          << ",label=\"" << n.space << "\"";
        break;
      case NodeKind::Cup: o << "shape=point,label=\"cup\""; break;
      case NodeKind::Cap: o << "shape=point,label=\"cap\""; break;
      case NodeKind::Swap: o << "shape=diamond,label=\"swap\""; break;
    }
    o << "];\n";
  }
  auto id = [](const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Kind::Input: return "in" + std::to_string(e.index);
      case Endpoint::Kind::Output: return "out" + std::to_string(e.index);
      case Endpoint::Kind::Leg: return "n" + std::to_string(e.node);
    }
    return std::string();
  };
  auto space_of = [&](const Endpoint& e) -> std::string {
    switch (e.kind) {
      case Endpoint::Kind::Input: return d.inputs[e.index].space;
      case Endpoint::Kind::Output: return d.outputs[e.index].space;
      case Endpoint::Kind::Leg: return d.nodes[e.node].leg(e.index).space;
    }
    return "";
  };
  for (const auto& [a, b] : d.wires)
    o << "  " << id(a) << " -- " << id(b) << " [label=\"" << space_of(a) << "\"];\n";
  o << "}\n";
  return o.str();
}

}  // namespace lgram
