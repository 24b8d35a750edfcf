#include <algorithm>
#include <tuple>

#include "port_graph.hpp"

namespace lgram {

WireType dual(const WireType& w) {
  WireType out(w.rbegin(), w.rend());
  for (auto& p : out) p.dual = !p.dual;
  return out;
}

std::string print_wire_type(const WireType& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += w[i].space;
    if (w[i].dual) s += '*';
  }
  return s;
}

WireType parse_wire_type(std::string_view text) {
  WireType out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    PolarSpace p;
    if (cur.back() == '*') {
      p.dual = true;
      cur.pop_back();
    }
    if (cur.empty()) throw Error("empty space name in wire type");
    p.space = cur;
    out.push_back(p);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Generator: return "generator";
    case NodeKind::Cup: return "cup";
    case NodeKind::Cap: return "cap";
    case NodeKind::Swap: return "swap";
    case NodeKind::Spider: return "spider";
  }
  return "?";
}

Node generator(std::string name, WireType in, WireType out) {
  return Node{NodeKind::Generator, std::move(name), std::move(in), std::move(out), ""};
}

Node cup(const PolarSpace& a) {
  return Node{NodeKind::Cup, "", {a, PolarSpace{a.space, !a.dual}}, {}, ""};
}

Node cap(const PolarSpace& a) {
  return Node{NodeKind::Cap, "", {}, {a, PolarSpace{a.space, !a.dual}}, ""};
}

Node swap_node(const PolarSpace& a, const PolarSpace& b) {
  return Node{NodeKind::Swap, "", {a, b}, {b, a}, ""};
}

Node spider(const std::string& space, std::size_t m, std::size_t n) {
  return Node{NodeKind::Spider, "", WireType(m, PolarSpace{space, false}),
              WireType(n, PolarSpace{space, false}), space};
}

std::string print_endpoint(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Input: return "in" + std::to_string(e.index);
    case Endpoint::Kind::Output: return "out" + std::to_string(e.index);
    case Endpoint::Kind::Leg: return "n" + std::to_string(e.node) + "." + std::to_string(e.index);
  }
  return "?";
}

namespace {

const PolarSpace& port_type(const Diagram& d, const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Input:
      if (e.index < 0 || e.index >= static_cast<int>(d.inputs.size()))
        throw Error("wire refers to missing port " + print_endpoint(e));
      return d.inputs[e.index];
    case Endpoint::Kind::Output:
      if (e.index < 0 || e.index >= static_cast<int>(d.outputs.size()))
        throw Error("wire refers to missing port " + print_endpoint(e));
      return d.outputs[e.index];
    case Endpoint::Kind::Leg:
      if (e.node < 0 || e.node >= static_cast<int>(d.nodes.size()) || e.index < 0 ||
          e.index >= static_cast<int>(d.nodes[e.node].legs()))
        throw Error("wire refers to missing port " + print_endpoint(e));
      return d.nodes[e.node].leg(e.index);
  }
  throw Error("bad endpoint");
}

}  // namespace

void check_diagram(const Diagram& d) {
  std::map<std::tuple<int, int, int>, int> used;
  for (const auto& [a, b] : d.wires) {
    const PolarSpace& ta = port_type(d, a);
    const PolarSpace& tb = port_type(d, b);
    if (ta.space != tb.space)
      throw Error("wire " + print_endpoint(a) + " -- " + print_endpoint(b) + " joins space " + ta.space +
                  " to " + tb.space);
    for (const Endpoint& e : {a, b})
      if (++used[{static_cast<int>(e.kind), e.node, e.index}] > 1)
        throw Error("port " + print_endpoint(e) + " carries more than one wire");
  }
  auto need = [&](const Endpoint& e) {
    if (!used.count({static_cast<int>(e.kind), e.node, e.index}))
      throw Error("dangling port " + print_endpoint(e));
  };
  for (int k = 0; k < static_cast<int>(d.inputs.size()); ++k) need(Endpoint::input(k));
  for (int k = 0; k < static_cast<int>(d.outputs.size()); ++k) need(Endpoint::output(k));
  for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
    const Node& nd = d.nodes[n];
    if (nd.kind == NodeKind::Cup && (nd.in.size() != 2 || !nd.out.empty()))
      throw Error("cup n" + std::to_string(n) + " must have two inputs");
    if (nd.kind == NodeKind::Cap && (nd.out.size() != 2 || !nd.in.empty()))
      throw Error("cap n" + std::to_string(n) + " must have two outputs");
    if ((nd.kind == NodeKind::Cup || nd.kind == NodeKind::Cap) && nd.leg(0).space != nd.leg(1).space)
      throw Error("cup/cap n" + std::to_string(n) + " joins different spaces");
    if (nd.kind == NodeKind::Swap &&
        (nd.in.size() != 2 || nd.out.size() != 2 || nd.in[0].space != nd.out[1].space ||
         nd.in[1].space != nd.out[0].space))
      throw Error("malformed swap n" + std::to_string(n));
    if (nd.kind == NodeKind::Spider)
      for (std::size_t i = 0; i < nd.legs(); ++i)
        if (nd.leg(i).space != nd.space)
          throw Error("spider n" + std::to_string(n) + " mixes spaces");
    for (int i = 0; i < static_cast<int>(nd.legs()); ++i) need(Endpoint::leg(n, i));
  }
}

namespace detail {

PortGraph to_graph(const Diagram& d) {
  PortGraph g;
  g.inputs = d.inputs;
  g.outputs = d.outputs;
  for (std::size_t i = 0; i < d.inputs.size() + d.outputs.size(); ++i) g.add_port();
  for (const auto& n : d.nodes) g.add_node(n);
  auto port = [&](const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Kind::Input: return e.index;
      case Endpoint::Kind::Output: return g.n_in() + e.index;
      case Endpoint::Kind::Leg: return g.nodes.at(e.node).ports.at(e.index);
    }
    return -1;
  };
  for (const auto& [a, b] : d.wires) g.link(port(a), port(b));
  return g;
}

Diagram from_graph(const PortGraph& g) {
  Diagram d;
  d.inputs = g.inputs;
  d.outputs = g.outputs;
  std::vector<Endpoint> where(g.partner.size());
  for (int k = 0; k < g.n_in(); ++k) where[k] = Endpoint::input(k);
  for (int k = 0; k < g.n_out(); ++k) where[g.n_in() + k] = Endpoint::output(k);
  std::vector<int> order;
  for (int k = 0; k < g.n_in() + g.n_out(); ++k) order.push_back(k);
  for (const auto& n : g.nodes) {
    if (!n.alive) continue;
    int id = static_cast<int>(d.nodes.size());
    d.nodes.push_back(n.node);
    for (int i = 0; i < static_cast<int>(n.ports.size()); ++i) {
      where[n.ports[i]] = Endpoint::leg(id, i);
      order.push_back(n.ports[i]);
    }
  }
  std::vector<char> done(g.partner.size(), 0);
  for (int p : order) {
    if (done[p]) continue;
    int q = g.partner[p];
    if (q < 0) throw Error("internal: unwired port while rebuilding diagram");
    done[p] = done[q] = 1;
    d.wires.push_back({where[p], where[q]});
  }
  return d;
}

}  // namespace detail

using detail::PortGraph;

Diagram identity(const WireType& w) {
  Diagram d;
  d.inputs = w;
  d.outputs = w;
  for (int k = 0; k < static_cast<int>(w.size()); ++k) d.wires.push_back({Endpoint::input(k), Endpoint::output(k)});
  return d;
}

Diagram single(const Node& n) {
  Diagram d;
  d.inputs = n.in;
  d.outputs = n.out;
  d.nodes.push_back(n);
  int ni = static_cast<int>(n.in.size());
  for (int k = 0; k < ni; ++k) d.wires.push_back({Endpoint::input(k), Endpoint::leg(0, k)});
  for (int k = 0; k < static_cast<int>(n.out.size()); ++k)
    d.wires.push_back({Endpoint::leg(0, ni + k), Endpoint::output(k)});
  return d;
}

Diagram compose(const Diagram& first, const Diagram& second) {
  if (first.outputs.size() != second.inputs.size())
    throw Error("compose: boundary mismatch, " + std::to_string(first.outputs.size()) + " outputs against " +
                std::to_string(second.inputs.size()) + " inputs");
  for (std::size_t k = 0; k < first.outputs.size(); ++k)
    if (first.outputs[k] != second.inputs[k])
      throw Error("compose: boundary mismatch at port " + std::to_string(k) + ": " +
                  print_wire_type({first.outputs[k]}) + " vs " + print_wire_type({second.inputs[k]}));

  PortGraph g1 = detail::to_graph(first);
  PortGraph g2 = detail::to_graph(second);
  PortGraph g;
  g.inputs = first.inputs;
  g.outputs = second.outputs;
  for (std::size_t i = 0; i < g.inputs.size() + g.outputs.size(); ++i) g.add_port();

  // Map every non-middle port of either side to its new id; -1 marks the middle.
  std::vector<int> m1(g1.partner.size(), -1), m2(g2.partner.size(), -1);
  for (int k = 0; k < g1.n_in(); ++k) m1[k] = k;
  for (int k = 0; k < g2.n_out(); ++k) m2[g2.n_in() + k] = g.n_in() + k;
  for (const auto& n : g1.nodes) {
    int id = g.add_node(n.node);
    for (std::size_t i = 0; i < n.ports.size(); ++i) m1[n.ports[i]] = g.nodes[id].ports[i];
  }
  for (const auto& n : g2.nodes) {
    int id = g.add_node(n.node);
    for (std::size_t i = 0; i < n.ports.size(); ++i) m2[n.ports[i]] = g.nodes[id].ports[i];
  }

  int mid = static_cast<int>(first.outputs.size());
  std::vector<char> mid_seen(mid, 0);
  // Follow the wire leaving port p on side s until it reaches a real port.
  auto chase = [&](int side, int p) {
    for (;;) {
      int q = side == 1 ? g1.partner[p] : g2.partner[p];
      int mapped = side == 1 ? m1[q] : m2[q];
      if (mapped >= 0) return mapped;
      int k = side == 1 ? q - g1.n_in() : q;
      mid_seen[k] = 1;
      if (side == 1) {
        side = 2;
        p = k;
      } else {
        side = 1;
        p = g1.n_in() + k;
      }
    }
  };
  for (int p = 0; p < static_cast<int>(g1.partner.size()); ++p)
    if (m1[p] >= 0 && g.partner[m1[p]] < 0) g.link(m1[p], chase(1, p));
  for (int p = 0; p < static_cast<int>(g2.partner.size()); ++p)
    if (m2[p] >= 0 && g.partner[m2[p]] < 0) g.link(m2[p], chase(2, p));

  // Closed loops that never touch a real port evaluate to the dimension.
  for (int k = 0; k < mid; ++k) {
    if (mid_seen[k]) continue;
    int cur = k, side = 1;
    while (!mid_seen[cur]) {
      mid_seen[cur] = 1;
      if (side == 1) {
        cur = g1.partner[g1.n_in() + cur] - g1.n_in();
        side = 2;
      } else {
        cur = g2.partner[cur];
        side = 1;
      }
    }
    g.add_node(spider(first.outputs[k].space, 0, 0));
  }
  return detail::from_graph(g);
}

Diagram tensor_par(const Diagram& a, const Diagram& b) {
  Diagram d;
  d.inputs = a.inputs;
  d.inputs.insert(d.inputs.end(), b.inputs.begin(), b.inputs.end());
  d.outputs = a.outputs;
  d.outputs.insert(d.outputs.end(), b.outputs.begin(), b.outputs.end());
  d.nodes = a.nodes;
  d.nodes.insert(d.nodes.end(), b.nodes.begin(), b.nodes.end());
  d.wires = a.wires;
  int ni = static_cast<int>(a.inputs.size()), no = static_cast<int>(a.outputs.size());
  int nn = static_cast<int>(a.nodes.size());
  auto shift = [&](Endpoint e) {
    switch (e.kind) {
      case Endpoint::Kind::Input: e.index += ni; break;
      case Endpoint::Kind::Output: e.index += no; break;
      case Endpoint::Kind::Leg: e.node += nn; break;
    }
    return e;
  };
  for (const auto& [x, y] : b.wires) d.wires.push_back({shift(x), shift(y)});
  return d;
}

Diagram transpose(const Diagram& d) {
  Diagram t;
  t.inputs = dual(d.outputs);
  t.outputs = dual(d.inputs);
  t.nodes = d.nodes;
  int ni = static_cast<int>(d.inputs.size()), no = static_cast<int>(d.outputs.size());
  auto flip = [&](Endpoint e) {
    switch (e.kind) {
      case Endpoint::Kind::Input: return Endpoint::output(ni - 1 - e.index);
      case Endpoint::Kind::Output: return Endpoint::input(no - 1 - e.index);
      case Endpoint::Kind::Leg: return e;
    }
    return e;
  };
  for (const auto& [a, b] : d.wires) t.wires.push_back({flip(a), flip(b)});
  return t;
}

Diagram permutation(const WireType& in, const std::vector<int>& perm) {
  if (perm.size() != in.size()) throw Error("permutation: size mismatch");
  Diagram d;
  d.inputs = in;
  d.outputs.resize(in.size());
  std::vector<char> hit(in.size(), 0);
  for (std::size_t k = 0; k < in.size(); ++k) {
    int t = perm[k];
    if (t < 0 || t >= static_cast<int>(in.size()) || hit[t]) throw Error("permutation: not a bijection");
    hit[t] = 1;
    d.outputs[t] = in[k];
    d.wires.push_back({Endpoint::input(static_cast<int>(k)), Endpoint::output(t)});
  }
  return d;
}

std::size_t diagram_weight(const Diagram& d) { return d.nodes.size() + d.wires.size(); }

}  // namespace lgram
