#pragma once

#include <vector>

#include "lgram/diagram.hpp"

namespace lgram::detail {

// Mutable flat form of a Diagram. Ports 0..n_in-1 are the inputs, the next
// n_out are the outputs, node legs follow. partner[p] is the other end of
// p's wire.
struct GNode {
  Node node;
  std::vector<int> ports;  // in ++ out
  bool alive = true;
};

struct PortGraph {
  WireType inputs;
  WireType outputs;
  std::vector<int> partner;
  std::vector<GNode> nodes;

  int n_in() const { return static_cast<int>(inputs.size()); }
  int n_out() const { return static_cast<int>(outputs.size()); }
  int add_port() {
    partner.push_back(-1);
    return static_cast<int>(partner.size()) - 1;
  }
  void link(int a, int b) {
    partner[a] = b;
    partner[b] = a;
  }
  int add_node(Node n) {
    GNode g;
    for (std::size_t i = 0; i < n.legs(); ++i) g.ports.push_back(add_port());
    g.node = std::move(n);
    nodes.push_back(std::move(g));
    return static_cast<int>(nodes.size()) - 1;
  }
};

PortGraph to_graph(const Diagram& d);
Diagram from_graph(const PortGraph& g);

}  // namespace lgram::detail
