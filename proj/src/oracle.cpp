#include <functional>

#include "lgram/tensor.hpp"

namespace lgram {

namespace {

std::vector<std::string> leg_spaces(const Node& n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n.legs(); ++i) s.push_back(n.leg(i).space);
  return s;
}

std::vector<std::size_t> dims_of(const std::vector<std::string>& spaces, const TensorStore& store) {
  std::vector<std::size_t> d;
  for (const auto& s : spaces) d.push_back(store.dim(s));
  return d;
}

}  // namespace

Tensor node_tensor(const Node& n, const TensorStore& store) {
  auto spaces = leg_spaces(n);
  auto dims = dims_of(spaces, store);
  if (n.kind == NodeKind::Generator) return store.get(n.name, spaces);
  Tensor t = Tensor::zeros(spaces, dims);
  switch (n.kind) {
    case NodeKind::Cup:
    case NodeKind::Cap:
      for (std::size_t a = 0; a < dims[0]; ++a) t.at({a, a}) = 1.0;
      break;
    case NodeKind::Swap:
      // legs: in0 in1 out0 out1; in0 = out1, in1 = out0
      for (std::size_t a = 0; a < dims[0]; ++a)
        for (std::size_t b = 0; b < dims[1]; ++b) t.at({a, b, b, a}) = 1.0;
      break;
    case NodeKind::Spider:
      if (spaces.empty()) {
        t.data[0] = static_cast<double>(store.dim(n.space));
      } else {
        for (std::size_t a = 0; a < dims[0]; ++a) t.at(std::vector<std::size_t>(dims.size(), a)) = 1.0;
      }
      break;
    case NodeKind::Generator: break;
  }
  return t;
}

Tensor oracle_eval(const Diagram& d, const TensorStore& store, double max_terms) {
  check_diagram(d);
  // one variable per wire
  std::size_t n_in = d.inputs.size();
  std::vector<int> boundary_var(n_in + d.outputs.size(), -1);
  std::vector<std::vector<int>> leg_var(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) leg_var[i].assign(d.nodes[i].legs(), -1);
  std::vector<std::size_t> var_dim;
  auto attach = [&](const Endpoint& e, int v) -> std::string {
    switch (e.kind) {
      case Endpoint::Kind::Input: boundary_var[e.index] = v; return d.inputs[e.index].space;
      case Endpoint::Kind::Output: boundary_var[n_in + e.index] = v; return d.outputs[e.index].space;
      case Endpoint::Kind::Leg: leg_var[e.node][e.index] = v; return d.nodes[e.node].leg(e.index).space;
    }
    return "";
  };
  double terms = 1.0;
  for (const auto& [a, b] : d.wires) {
    int v = static_cast<int>(var_dim.size());
    std::string s = attach(a, v);
    attach(b, v);
    var_dim.push_back(store.dim(s));
    terms *= static_cast<double>(var_dim.back());
  }
  if (terms > max_terms)
    throw Error("oracle evaluation needs " + std::to_string(terms) + " terms, limit is " + std::to_string(max_terms));

  std::vector<Tensor> tens;
  for (const auto& n : d.nodes) tens.push_back(node_tensor(n, store));
  // evaluate each node as soon as its last variable is fixed
  std::vector<std::vector<int>> ready(var_dim.size() + 1);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    int last = -1;
    for (int v : leg_var[i]) last = std::max(last, v);
    ready[last + 1].push_back(static_cast<int>(i));
  }

  std::vector<std::string> out_spaces;
  std::vector<std::size_t> out_dims;
  for (const auto& p : d.inputs) out_spaces.push_back(p.space);
  for (const auto& p : d.outputs) out_spaces.push_back(p.space);
  out_dims = dims_of(out_spaces, store);
  Tensor out = Tensor::zeros(out_spaces, out_dims);

  std::vector<std::size_t> val(var_dim.size(), 0);
  auto node_value = [&](int i) {
    const Tensor& t = tens[i];
    std::size_t off = 0;
    for (std::size_t k = 0; k < t.dims.size(); ++k) off = off * t.dims[k] + val[leg_var[i][k]];
    return t.data[off];
  };
  double base = 1.0;
  for (int i : ready[0]) base *= node_value(i);
  std::function<void(std::size_t, double)> rec = [&](std::size_t v, double acc) {
    if (v == var_dim.size()) {
      std::size_t off = 0;
      for (std::size_t k = 0; k < boundary_var.size(); ++k) off = off * out_dims[k] + val[boundary_var[k]];
      out.data[off] += acc;
      return;
    }
    for (std::size_t x = 0; x < var_dim[v]; ++x) {
      val[v] = x;
      double a = acc;
      for (int i : ready[v + 1]) {
        a *= node_value(i);
        if (a == 0.0) break;
      }
      if (a != 0.0) rec(v + 1, a);
    }
  };
  if (base != 0.0) rec(0, base);
  return out;
}

}  // namespace lgram
