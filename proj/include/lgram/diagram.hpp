#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lgram/error.hpp"

namespace lgram {

// A space with a dual flag. Concretely every space is self-dual, so the
// flag only matters for boundary bookkeeping.
struct PolarSpace {
  std::string space;
  bool dual = false;
  friend bool operator==(const PolarSpace& a, const PolarSpace& b) {
    return a.space == b.space && a.dual == b.dual;
  }
  friend bool operator!=(const PolarSpace& a, const PolarSpace& b) { return !(a == b); }
};

using WireType = std::vector<PolarSpace>;

// Reverses the list and flips each polarity.
WireType dual(const WireType& w);
std::string print_wire_type(const WireType& w);  // e.g. "N*, S"
WireType parse_wire_type(std::string_view text);  // whitespace or comma separated

enum class NodeKind : std::uint8_t { Generator, Cup, Cap, Swap, Spider };

const char* node_kind_name(NodeKind k);

struct Node {
  NodeKind kind = NodeKind::Generator;
  std::string name;  // generators only
  WireType in;
  WireType out;
  std::string space;  // spiders only; needed when a spider has no legs left

  std::size_t legs() const { return in.size() + out.size(); }
  const PolarSpace& leg(std::size_t i) const { return i < in.size() ? in[i] : out[i - in.size()]; }
};

Node generator(std::string name, WireType in, WireType out);
Node cup(const PolarSpace& a);   // a, a* -> I
Node cap(const PolarSpace& a);   // I -> a, a*
Node swap_node(const PolarSpace& a, const PolarSpace& b);
Node spider(const std::string& space, std::size_t m, std::size_t n);

struct Endpoint {
  enum class Kind : std::uint8_t { Input, Output, Leg };
  Kind kind = Kind::Input;
  int node = -1;  // Leg only
  int index = 0;

  static Endpoint input(int k) { return {Kind::Input, -1, k}; }
  static Endpoint output(int k) { return {Kind::Output, -1, k}; }
  static Endpoint leg(int node, int i) { return {Kind::Leg, node, i}; }
  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.kind == b.kind && a.node == b.node && a.index == b.index;
  }
};

std::string print_endpoint(const Endpoint& e);

using Wire = std::pair<Endpoint, Endpoint>;

// Open graph: every boundary port and every node leg sits on exactly one wire.
struct Diagram {
  WireType inputs;
  WireType outputs;
  std::vector<Node> nodes;
  std::vector<Wire> wires;
};

// Throws Error describing the first violation.
void check_diagram(const Diagram& d);

Diagram identity(const WireType& w);
Diagram single(const Node& n);  // one node, its legs exposed in order
Diagram compose(const Diagram& first, const Diagram& second);
Diagram tensor_par(const Diagram& a, const Diagram& b);
// Transpose: Y* -> X* for d : X -> Y, by bending boundary wires.
Diagram transpose(const Diagram& d);
// Wires input k to output perm[k].
Diagram permutation(const WireType& in, const std::vector<int>& perm);

std::size_t diagram_weight(const Diagram& d);  // nodes + wires

struct NormalizeStats {
  std::size_t steps = 0;
  std::map<std::string, std::size_t> by_rule;
};

Diagram normalize(const Diagram& d, NormalizeStats* stats = nullptr);

// ---- textual network descriptions ---------------------------------------

Diagram parse_network(std::string_view text);
// A file may hold several `network NAME ... end` blocks.
std::map<std::string, Diagram> parse_networks(std::string_view text);

// ---- export ---------------------------------------------------------------

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);
std::string diagram_to_dot(const Diagram& d, const std::string& name = "diagram");

}  // namespace lgram
