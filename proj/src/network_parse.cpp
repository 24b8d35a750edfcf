#include <cctype>
#include <set>
#include <sstream>

#include "port_graph.hpp"

namespace lgram {

namespace {

using detail::PortGraph;

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct Block {
  std::string name;
  std::vector<std::pair<int, std::string>> lines;  // line number, text
};

class NetworkBuilder {
 public:
  explicit NetworkBuilder(const Block& b) : block_(b) {}

  Diagram build() {
    for (const auto& [no, text] : block_.lines) {
      line_ = no;
      statement(text);
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("network " + block_.name + ", line " + std::to_string(line_) + ": " + msg);
  }

  void statement(const std::string& text) {
    std::string head, tail = text;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
      head = text.substr(0, colon);
      tail = text.substr(colon + 1);
    } else {
      head = text;
      tail.clear();
    }
    auto h = split_ws(head);
    auto names = split_ws(tail);
    if (h.empty()) return;
    const std::string& kw = h[0];
    if (kw == "in" || kw == "out") {
      if (colon != std::string::npos) fail("'" + kw + "' takes a space list, not wire names");
      WireType w = parse_wire_type(text.substr(text.find(kw) + kw.size()));
      (kw == "in" ? inputs_ : outputs_) = w;
      (kw == "in" ? have_in_ : have_out_) = true;
      return;
    }
    if (kw == "spider") {
      std::size_t m = 0, n = 0;
      if (h.size() == 2) {
        n = names.size();
      } else if (h.size() == 4) {
        m = std::stoul(h[2]);
        n = std::stoul(h[3]);
      } else {
        fail("expected 'spider SPACE [m n] : wires'");
      }
      add(spider(h[1], m, n), names);
    } else if (kw == "box") {
      if (h.size() < 2) fail("expected 'box NAME spaces -> spaces : wires'");
      std::string rest = head.substr(head.find(h[1]) + h[1].size());
      auto arrow = rest.find("->");
      WireType in, out;
      if (arrow == std::string::npos) {
        out = parse_wire_type(rest);
      } else {
        in = parse_wire_type(rest.substr(0, arrow));
        out = parse_wire_type(rest.substr(arrow + 2));
      }
      add(generator(h[1], in, out), names);
    } else if (kw == "cup" || kw == "cap") {
      if (h.size() != 2) fail("expected '" + kw + " SPACE : a b'");
      PolarSpace p = parse_wire_type(h[1]).at(0);
      add(kw == "cup" ? cup(p) : cap(p), names);
    } else if (kw == "swap") {
      if (h.size() != 3) fail("expected 'swap SPACE SPACE : a b c d'");
      add(swap_node(parse_wire_type(h[1]).at(0), parse_wire_type(h[2]).at(0)), names);
    } else if (kw == "link") {
      if (h.size() != 3 || colon != std::string::npos) fail("expected 'link a b'");
      Node pseudo{NodeKind::Cup, "", {PolarSpace{"?", false}, PolarSpace{"?", true}}, {}, ""};
      links_.push_back(static_cast<int>(nodes_.size()));
      add(pseudo, {h[1], h[2]});
    } else {
      fail("unknown statement '" + kw + "'");
    }
  }

  void add(const Node& n, const std::vector<std::string>& names) {
    if (names.size() != n.legs())
      fail(std::string(node_kind_name(n.kind)) + " has " + std::to_string(n.legs()) + " legs but " +
           std::to_string(names.size()) + " wire names were given");
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    for (int i = 0; i < static_cast<int>(names.size()); ++i) uses_[names[i]].push_back({id, i, line_});
  }

  Diagram finish() {
    PortGraph g;
    g.inputs = inputs_;
    g.outputs = outputs_;
    for (std::size_t i = 0; i < inputs_.size() + outputs_.size(); ++i) g.add_port();
    for (const auto& n : nodes_) g.add_node(n);
    std::set<std::string> boundary;
    auto boundary_port = [&](const std::string& name) -> int {
      if (name.size() < 2 || (name[0] != 'i' && name[0] != 'o')) return -1;
      for (std::size_t k = 1; k < name.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(name[k]))) return -1;
      int k = std::stoi(name.substr(1));
      if (name[0] == 'i') return k < g.n_in() ? k : -2;
      return k < g.n_out() ? g.n_in() + k : -2;
    };
    for (const auto& [name, uses] : uses_) {
      line_ = uses.front().line;
      int bp = boundary_port(name);
      if (bp == -2) fail("boundary wire " + name + " is out of range");
      if (bp >= 0) {
        if (uses.size() != 1) fail("boundary wire " + name + " must be used exactly once");
        g.link(bp, g.nodes[uses[0].node].ports[uses[0].leg]);
        boundary.insert(name);
      } else {
        if (uses.size() != 2)
          fail("internal wire " + name + " is used " + std::to_string(uses.size()) + " times, expected 2");
        g.link(g.nodes[uses[0].node].ports[uses[0].leg], g.nodes[uses[1].node].ports[uses[1].leg]);
      }
    }
    for (int k = 0; k < g.n_in(); ++k)
      if (!boundary.count("i" + std::to_string(k))) fail("input i" + std::to_string(k) + " is not connected");
    for (int k = 0; k < g.n_out(); ++k)
      if (!boundary.count("o" + std::to_string(k))) fail("output o" + std::to_string(k) + " is not connected");
    for (int n : links_) {
      int x = g.nodes[n].ports[0], y = g.nodes[n].ports[1];
      int a = g.partner[x], b = g.partner[y];
      if (a == y) fail("link closes on itself");
      g.link(a, b);
      g.partner[x] = g.partner[y] = -1;
      g.nodes[n].alive = false;
    }
    Diagram d = detail::from_graph(g);
    try {
      check_diagram(d);
    } catch (const Error& e) {
      throw Error("network " + block_.name + ": " + e.what());
    }
    return d;
  }

  struct Use {
    int node;
    int leg;
    int line;
  };

  const Block& block_;
  int line_ = 0;
  bool have_in_ = false, have_out_ = false;
  WireType inputs_, outputs_;
  std::vector<Node> nodes_;
  std::vector<int> links_;
  std::map<std::string, std::vector<Use>> uses_;
};

std::vector<Block> blocks(std::string_view text) {
  std::vector<Block> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  Block* cur = nullptr;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "network") {
      if (cur) throw Error("line " + std::to_string(no) + ": nested 'network'");
      if (toks.size() != 2) throw Error("line " + std::to_string(no) + ": expected 'network NAME'");
      out.push_back(Block{toks[1], {}});
      cur = &out.back();
    } else if (toks[0] == "end") {
      if (!cur) throw Error("line " + std::to_string(no) + ": 'end' without 'network'");
      cur = nullptr;
    } else {
      if (!cur) throw Error("line " + std::to_string(no) + ": statement outside a network block");
      cur->lines.push_back({no, line});
    }
  }
  if (cur) throw Error("network " + cur->name + " is missing 'end'");
  return out;
}

}  // namespace

Diagram parse_network(std::string_view text) {
  auto bs = blocks(text);
  if (bs.size() != 1) throw Error("expected exactly one network block, found " + std::to_string(bs.size()));
  return NetworkBuilder(bs[0]).build();
}

std::map<std::string, Diagram> parse_networks(std::string_view text) {
  std::map<std::string, Diagram> out;
  for (const auto& b : blocks(text)) {
    if (out.count(b.name)) throw Error("network " + b.name + " is defined twice");
    out.emplace(b.name, NetworkBuilder(b).build());
  }
  return out;
}

}  // namespace lgram
