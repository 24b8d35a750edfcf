#include <algorithm>

#include "port_graph.hpp"

namespace lgram {

namespace {

using detail::GNode;
using detail::PortGraph;

std::size_t weight(const PortGraph& g) {
  std::size_t nodes = 0, ports = static_cast<std::size_t>(g.n_in() + g.n_out());
  for (const auto& n : g.nodes)
    if (n.alive) {
      ++nodes;
      ports += n.ports.size();
    }
  return nodes + ports / 2;
}

// Removes node n whose legs are joined in pairs (cup, cap, swap) and
// splices the wires through; pairs that close on themselves leave a loop.
void dissolve(PortGraph& g, int n, const std::vector<std::pair<int, int>>& through) {
  const std::vector<int> ports = g.nodes[n].ports;
  const Node node = g.nodes[n].node;
  g.nodes[n].alive = false;
  for (const auto& [i, j] : through) {
    int x = ports[i], y = ports[j];
    int a = g.partner[x], b = g.partner[y];
    if (a == y) {
      g.add_node(spider(node.leg(i).space, 0, 0));
    } else {
      g.link(a, b);
    }
    g.partner[x] = g.partner[y] = -1;
  }
}

void remove_legs(GNode& s, int i, int j) {
  if (i > j) std::swap(i, j);
  std::size_t n_in = s.node.in.size();
  for (int k : {j, i}) {
    if (static_cast<std::size_t>(k) < n_in) {
      s.node.in.erase(s.node.in.begin() + k);
      --n_in;
    } else {
      s.node.out.erase(s.node.out.begin() + (k - static_cast<long>(n_in)));
    }
    s.ports.erase(s.ports.begin() + k);
  }
}

// s absorbs t; the wire between s.ports[i] and t.ports[j] disappears.
void fuse(GNode& s, int i, const GNode& t, int j) {
  std::vector<int> in_ports, out_ports;
  WireType in, out;
  auto take = [&](const GNode& g, int skip) {
    std::size_t n_in = g.node.in.size();
    for (int k = 0; k < static_cast<int>(g.ports.size()); ++k) {
      if (k == skip) continue;
      if (static_cast<std::size_t>(k) < n_in) {
        in_ports.push_back(g.ports[k]);
        in.push_back(g.node.leg(k));
      } else {
        out_ports.push_back(g.ports[k]);
        out.push_back(g.node.leg(k));
      }
    }
  };
  take(s, i);
  take(t, j);
  s.node.in = in;
  s.node.out = out;
  s.ports = in_ports;
  s.ports.insert(s.ports.end(), out_ports.begin(), out_ports.end());
}

bool step(PortGraph& g, std::map<std::string, std::size_t>& by_rule) {
  std::vector<int> owner(g.partner.size(), -1), slot(g.partner.size(), -1);
  for (int n = 0; n < static_cast<int>(g.nodes.size()); ++n) {
    if (!g.nodes[n].alive) continue;
    for (int i = 0; i < static_cast<int>(g.nodes[n].ports.size()); ++i) {
      owner[g.nodes[n].ports[i]] = n;
      slot[g.nodes[n].ports[i]] = i;
    }
  }
  for (int n = 0; n < static_cast<int>(g.nodes.size()); ++n) {
    if (!g.nodes[n].alive) continue;
    NodeKind k = g.nodes[n].node.kind;
    if (k == NodeKind::Cup || k == NodeKind::Cap) {
      dissolve(g, n, {{0, 1}});
      ++by_rule[k == NodeKind::Cup ? "yank-cup" : "yank-cap"];
      return true;
    }
    if (k == NodeKind::Swap) {
      dissolve(g, n, {{0, 3}, {1, 2}});
      ++by_rule["swap"];
      return true;
    }
    if (k != NodeKind::Spider) continue;
    GNode& s = g.nodes[n];
    for (int i = 0; i < static_cast<int>(s.ports.size()); ++i) {
      int q = g.partner[s.ports[i]];
      if (owner[q] == n) {
        remove_legs(s, i, slot[q]);
        ++by_rule["spider-loop"];
        return true;
      }
    }
    for (int i = 0; i < static_cast<int>(s.ports.size()); ++i) {
      int q = g.partner[s.ports[i]];
      int m = owner[q];
      if (m < 0 || g.nodes[m].node.kind != NodeKind::Spider) continue;
      GNode& t = g.nodes[m];
      if (t.node.space != s.node.space) continue;
      fuse(s, i, t, slot[q]);
      t.alive = false;
      ++by_rule["spider-fusion"];
      return true;
    }
    if (s.ports.size() == 2) {
      int a = g.partner[s.ports[0]], b = g.partner[s.ports[1]];
      g.link(a, b);
      s.alive = false;
      ++by_rule["spider-identity"];
      return true;
    }
  }
  return false;
}

}  // namespace

Diagram normalize(const Diagram& d, NormalizeStats* stats) {
  check_diagram(d);
  PortGraph g = detail::to_graph(d);
  NormalizeStats local;
  std::size_t w = weight(g);
  while (step(g, local.by_rule)) {
    std::size_t w2 = weight(g);
    if (w2 >= w) throw Error("internal: normalization step did not shrink the diagram");
    w = w2;
    ++local.steps;
  }
  if (stats) *stats = local;
  return detail::from_graph(g);
}

}  // namespace lgram
