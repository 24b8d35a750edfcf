#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "lgram/tensor.hpp"

namespace lgram {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// A factor with one label per axis; labels distinct within a factor.
struct Factor {
  std::vector<int> labels;
  std::vector<double> data;
};

std::size_t volume(const std::vector<int>& labels, const std::vector<std::size_t>& dim) {
  std::size_t n = 1;
  for (int l : labels) n *= dim[l];
  return n;
}

// Strides of `labels` (row-major over `axes`), zero when absent.
std::vector<std::size_t> strides_for(const std::vector<int>& axes, const std::vector<int>& over,
                                     const std::vector<std::size_t>& dim) {
  std::vector<std::size_t> s(over.size(), 0);
  std::size_t st = 1;
  for (std::size_t k = axes.size(); k-- > 0;) {
    for (std::size_t j = 0; j < over.size(); ++j)
      if (over[j] == axes[k]) s[j] += st;
    st *= dim[axes[k]];
  }
  return s;
}

// Generic contraction: result over `keep`, summed over the rest of the
// labels of a and b. Kept labels run outermost so the sum order is fixed.
Factor contract(const Factor& a, const Factor& b, const std::vector<int>& keep, const std::vector<std::size_t>& dim) {
  std::vector<int> all = keep;
  for (const auto* f : {&a, &b})
    for (int l : f->labels)
      if (std::find(all.begin(), all.end(), l) == all.end()) all.push_back(l);
  auto sa = strides_for(a.labels, all, dim);
  auto sb = strides_for(b.labels, all, dim);
  std::size_t nk = keep.size();
  Factor r{keep, std::vector<double>(volume(keep, dim), 0.0)};
  std::vector<std::size_t> idx(all.size(), 0);
  std::size_t inner = 1;
  for (std::size_t k = nk; k < all.size(); ++k) inner *= dim[all[k]];
  for (std::size_t out = 0; out < r.data.size(); ++out) {
    // decode kept indices
    std::size_t rem = out;
    for (std::size_t k = nk; k-- > 0;) {
      idx[k] = rem % dim[all[k]];
      rem /= dim[all[k]];
    }
    std::size_t oa = 0, ob = 0;
    for (std::size_t k = 0; k < nk; ++k) {
      oa += idx[k] * sa[k];
      ob += idx[k] * sb[k];
    }
    for (std::size_t k = nk; k < all.size(); ++k) idx[k] = 0;
    double acc = 0.0;
    std::size_t ia = oa, ib = ob;
    for (std::size_t step = 0; step < inner; ++step) {
      acc += a.data[ia] * b.data[ib];
      // odometer over summed labels
      for (std::size_t k = all.size(); k-- > nk;) {
        if (++idx[k] < dim[all[k]]) {
          ia += sa[k];
          ib += sb[k];
          break;
        }
        ia -= (dim[all[k]] - 1) * sa[k];
        ib -= (dim[all[k]] - 1) * sb[k];
        idx[k] = 0;
      }
    }
    r.data[out] = acc;
  }
  return r;
}

// Restrict a tensor with repeated labels to its diagonal.
Factor diagonal(const Tensor& t, const std::vector<int>& raw, const std::vector<std::size_t>& dim) {
  Factor f;
  for (int l : raw)
    if (std::find(f.labels.begin(), f.labels.end(), l) == f.labels.end()) f.labels.push_back(l);
  if (f.labels.size() == raw.size()) {
    f.data = t.data;
    return f;
  }
  auto st = strides_for(raw, f.labels, dim);
  f.data.assign(volume(f.labels, dim), 0.0);
  for (std::size_t out = 0; out < f.data.size(); ++out) {
    std::size_t rem = out, off = 0;
    for (std::size_t k = f.labels.size(); k-- > 0;) {
      off += (rem % dim[f.labels[k]]) * st[k];
      rem /= dim[f.labels[k]];
    }
    f.data[out] = t.data[off];
  }
  return f;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

Tensor eval_diagram(const Diagram& d, const TensorStore& store) {
  check_diagram(d);
  std::size_t nb = d.inputs.size() + d.outputs.size();
  std::vector<std::size_t> first(d.nodes.size());
  std::size_t np = nb;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    first[i] = np;
    np += d.nodes[i].legs();
  }
  auto port = [&](const Endpoint& e) -> int {
    switch (e.kind) {
      case Endpoint::Kind::Input: return e.index;
      case Endpoint::Kind::Output: return static_cast<int>(d.inputs.size()) + e.index;
      case Endpoint::Kind::Leg: return static_cast<int>(first[e.node]) + e.index;
    }
    return -1;
  };
  std::vector<std::string> port_space(np);
  for (std::size_t k = 0; k < d.inputs.size(); ++k) port_space[k] = d.inputs[k].space;
  for (std::size_t k = 0; k < d.outputs.size(); ++k) port_space[d.inputs.size() + k] = d.outputs[k].space;
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (std::size_t l = 0; l < d.nodes[i].legs(); ++l) port_space[first[i] + l] = d.nodes[i].leg(l).space;

  // Structural nodes are all copy/identity tensors, so they merge indices.
  UnionFind uf(np);
  for (const auto& [a, b] : d.wires) uf.unite(port(a), port(b));
  double scalar = 1.0;
  std::vector<int> gens;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Node& n = d.nodes[i];
    int f = static_cast<int>(first[i]);
    switch (n.kind) {
      case NodeKind::Generator: gens.push_back(static_cast<int>(i)); break;
      case NodeKind::Cup:
      case NodeKind::Cap: uf.unite(f, f + 1); break;
      case NodeKind::Swap:
        uf.unite(f, f + 3);
        uf.unite(f + 1, f + 2);
        break;
      case NodeKind::Spider:
        if (n.legs() == 0) scalar *= static_cast<double>(store.dim(n.space));
        for (std::size_t l = 1; l < n.legs(); ++l) uf.unite(f, f + static_cast<int>(l));
        break;
    }
  }

  // WL refinement on generators for an order independent of node numbering.
  std::vector<std::uint64_t> colour(gens.size());
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> touching;  // class -> (gen, leg)
  std::map<int, std::vector<std::size_t>> class_outputs;
  for (std::size_t k = 0; k < nb; ++k) class_outputs[uf.find(static_cast<int>(k))].push_back(k);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Node& n = d.nodes[gens[g]];
    std::uint64_t h = hash_str(n.name);
    for (std::size_t l = 0; l < n.legs(); ++l) {
      int c = uf.find(static_cast<int>(first[gens[g]] + l));
      touching[c].push_back({g, l});
      h = mix(h, hash_str(n.leg(l).space));
      auto it = class_outputs.find(c);
      if (it != class_outputs.end())
        for (auto k : it->second) h = mix(h, 1000003ULL * (k + 1) + l);
    }
    colour[g] = h;
  }
  for (std::size_t round = 0; round < gens.size(); ++round) {
    std::vector<std::uint64_t> next(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::vector<std::uint64_t> sig;
      const Node& n = d.nodes[gens[g]];
      for (std::size_t l = 0; l < n.legs(); ++l) {
        int c = uf.find(static_cast<int>(first[gens[g]] + l));
        std::vector<std::uint64_t> nb_sig;
        for (auto [h, hl] : touching[c])
          if (!(h == g && hl == l)) nb_sig.push_back(mix(colour[h], hl));
        std::sort(nb_sig.begin(), nb_sig.end());
        std::uint64_t s = l;
        for (auto x : nb_sig) s = mix(s, x);
        sig.push_back(s);
      }
      std::uint64_t h = colour[g];
      for (auto x : sig) h = mix(h, x);
      next[g] = h;
    }
    std::set<std::uint64_t> before(colour.begin(), colour.end()), after(next.begin(), next.end());
    colour = next;
    if (after.size() == before.size()) break;
  }
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return colour[a] < colour[b]; });

  // canonical label numbering
  std::map<int, int> label_of;
  std::vector<std::size_t> dim;
  auto label = [&](int p) {
    int c = uf.find(p);
    auto it = label_of.find(c);
    if (it != label_of.end()) {
      if (dim[it->second] != store.dim(port_space[p])) throw Error("wired legs have different dimensions");
      return it->second;
    }
    int l = static_cast<int>(dim.size());
    label_of[c] = l;
    dim.push_back(store.dim(port_space[p]));
    return l;
  };
  std::vector<Factor> factors;
  for (auto g : order) {
    const Node& n = d.nodes[gens[g]];
    std::vector<int> raw;
    for (std::size_t l = 0; l < n.legs(); ++l) raw.push_back(label(static_cast<int>(first[gens[g]] + l)));
    factors.push_back(diagonal(node_tensor(n, store), raw, dim));
  }
  std::vector<int> out_labels;
  for (std::size_t k = 0; k < nb; ++k) out_labels.push_back(label(static_cast<int>(k)));
  // classes touching no generator and no boundary are closed loops
  {
    std::set<int> seen;
    for (std::size_t p = 0; p < np; ++p) {
      int c = uf.find(static_cast<int>(p));
      if (label_of.count(c) || !seen.insert(c).second) continue;
      scalar *= static_cast<double>(store.dim(port_space[p]));
    }
  }

  std::set<int> out_set(out_labels.begin(), out_labels.end());
  auto needed_elsewhere = [&](std::size_t skip_a, std::size_t skip_b, int l) {
    if (out_set.count(l)) return true;
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (k != skip_a && k != skip_b && std::count(factors[k].labels.begin(), factors[k].labels.end(), l)) return true;
    return false;
  };
  auto result_labels = [&](std::size_t i, std::size_t j) {
    std::vector<int> keep;
    for (std::size_t k : {i, j})
      for (int l : factors[k].labels)
        if (std::find(keep.begin(), keep.end(), l) == keep.end() && needed_elsewhere(i, j, l)) keep.push_back(l);
    return keep;
  };
  Factor unit{{}, {1.0}};
  // sum out private labels first
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<int> keep;
    for (int l : factors[i].labels)
      if (needed_elsewhere(i, i, l)) keep.push_back(l);
    if (keep.size() != factors[i].labels.size()) factors[i] = contract(factors[i], unit, keep, dim);
  }
  while (factors.size() > 1) {
    std::size_t bi = 0, bj = 1, best = SIZE_MAX;
    bool best_shared = false;
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = i + 1; j < factors.size(); ++j) {
        bool shared = false;
        for (int l : factors[i].labels)
          if (std::count(factors[j].labels.begin(), factors[j].labels.end(), l)) shared = true;
        std::size_t cost = volume(result_labels(i, j), dim);
        if ((shared && !best_shared) || (shared == best_shared && cost < best)) {
          bi = i, bj = j, best = cost, best_shared = shared;
        }
      }
    Factor r = contract(factors[bi], factors[bj], result_labels(bi, bj), dim);
    factors.erase(factors.begin() + static_cast<long>(bj));
    factors.erase(factors.begin() + static_cast<long>(bi));
    factors.push_back(std::move(r));
  }
  Factor last = factors.empty() ? unit : factors[0];

  std::vector<std::string> out_spaces;
  std::vector<std::size_t> out_dims;
  for (std::size_t k = 0; k < nb; ++k) {
    out_spaces.push_back(port_space[k]);
    out_dims.push_back(dim[out_labels[k]]);
  }
  Tensor out = Tensor::zeros(out_spaces, out_dims);
  auto st = strides_for(last.labels, out_labels, dim);
  std::vector<std::size_t> val(dim.size(), 0);
  std::vector<bool> set(dim.size(), false);
  for (std::size_t o = 0; o < out.data.size(); ++o) {
    std::size_t rem = o;
    std::vector<std::size_t> idx(nb);
    for (std::size_t k = nb; k-- > 0;) {
      idx[k] = rem % out_dims[k];
      rem /= out_dims[k];
    }
    std::fill(set.begin(), set.end(), false);
    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) {
      int l = out_labels[k];
      if (set[l] && val[l] != idx[k]) ok = false;
      val[l] = idx[k];
      set[l] = true;
    }
    if (!ok) continue;
    std::size_t off = 0;
    std::set<int> counted;
    for (std::size_t k = 0; k < nb; ++k)
      if (counted.insert(out_labels[k]).second) off += idx[k] * st[k];
    out.data[o] = scalar * last.data[off];
  }
  return out;
}

}  // namespace lgram
