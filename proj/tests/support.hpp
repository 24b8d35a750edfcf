#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lgram/diagram.hpp"
#include "lgram/formula.hpp"
#include "lgram/proof.hpp"
#include "lgram/tensor.hpp"

namespace lgram::testing {

inline std::string data_path(const std::string& file) { return std::string(LGRAM_DATA_DIR) + "/" + file; }

// All-equal tensor over k axes of one space.
inline Tensor delta(const std::string& space, std::size_t dim, std::size_t k) {
  Tensor t = Tensor::zeros(std::vector<std::string>(k, space), std::vector<std::size_t>(k, dim));
  if (k == 0) {
    t.data[0] = static_cast<double>(dim);
    return t;
  }
  for (std::size_t i = 0; i < dim; ++i) t.at(std::vector<std::size_t>(k, i)) = 1.0;
  return t;
}

// Random open diagram: generators, spiders, cups, caps, swaps, wired by a
// random space-respecting matching; leftover legs become boundary ports.
inline Diagram random_diagram(std::mt19937_64& rng, int n_nodes, int max_legs = 3) {
  const std::vector<std::string> spaces{"N", "S"};
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto sp = [&] { return PolarSpace{spaces[pick(2)], pick(2) == 1}; };
  Diagram d;
  for (int i = 0; i < n_nodes; ++i) {
    switch (pick(6)) {
      case 0:
      case 1: {
        WireType in, out;
        int a = pick(max_legs + 1), b = pick(max_legs + 1);
        if (a + b == 0) b = 1;
        for (int k = 0; k < a; ++k) in.push_back(sp());
        for (int k = 0; k < b; ++k) out.push_back(sp());
        d.nodes.push_back(generator("g" + std::to_string(i), in, out));
        break;
      }
      case 2: d.nodes.push_back(spider(spaces[pick(2)], pick(3), pick(3))); break;
      case 3: d.nodes.push_back(cup(sp())); break;
      case 4: d.nodes.push_back(cap(sp())); break;
      default: d.nodes.push_back(swap_node(sp(), sp())); break;
    }
  }
  std::map<std::string, std::vector<Endpoint>> free;
  for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n)
    for (int l = 0; l < static_cast<int>(d.nodes[n].legs()); ++l)
      free[d.nodes[n].leg(l).space].push_back(Endpoint::leg(n, l));
  for (auto& [space, eps] : free) {
    std::shuffle(eps.begin(), eps.end(), rng);
    // A few legs go to the boundary, the rest pair up.
    std::size_t open = eps.size() % 2 + 2 * static_cast<std::size_t>(pick(2));
    open = std::min(open, eps.size());
    for (std::size_t k = 0; k < open; ++k) {
      if (pick(2) == 0) {
        d.wires.push_back({Endpoint::input(static_cast<int>(d.inputs.size())), eps[k]});
        d.inputs.push_back({space, false});
      } else {
        d.wires.push_back({eps[k], Endpoint::output(static_cast<int>(d.outputs.size()))});
        d.outputs.push_back({space, false});
      }
    }
    for (std::size_t k = open; k + 1 < eps.size(); k += 2) d.wires.push_back({eps[k], eps[k + 1]});
  }
  return d;
}

// Connected graph of spiders on one space; `boundary` gets the number of open legs.
inline Diagram random_spider_graph(std::mt19937_64& rng, const std::string& space, std::size_t& boundary) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  int k = 1 + pick(6);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < k; ++i) edges.push_back({pick(i), i});
  for (int e = pick(4); e > 0; --e) edges.push_back({pick(k), pick(k)});
  std::vector<int> n_in(k), n_out(k), b_in(k), b_out(k);
  for (int i = 0; i < k; ++i) {
    b_in[i] = pick(3) == 0 ? 1 : 0;
    b_out[i] = pick(2);
  }
  for (auto [a, b] : edges) {
    ++n_out[a];
    ++n_in[b];
  }
  Diagram d;
  boundary = 0;
  std::vector<int> next_in(k), next_out(k);
  for (int i = 0; i < k; ++i) {
    d.nodes.push_back(spider(space, n_in[i] + b_in[i], n_out[i] + b_out[i]));
    next_in[i] = 0;
    next_out[i] = n_in[i] + b_in[i];
  }
  for (auto [a, b] : edges) d.wires.push_back({Endpoint::leg(a, next_out[a]++), Endpoint::leg(b, next_in[b]++)});
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < b_in[i]; ++j) {
      d.wires.push_back({Endpoint::input(static_cast<int>(d.inputs.size())), Endpoint::leg(i, next_in[i]++)});
      d.inputs.push_back({space, false});
    }
    for (int j = 0; j < b_out[i]; ++j) {
      d.wires.push_back({Endpoint::leg(i, next_out[i]++), Endpoint::output(static_cast<int>(d.outputs.size()))});
      d.outputs.push_back({space, false});
    }
  }
  boundary = d.inputs.size() + d.outputs.size();
  return d;
}

class ProofGen {
 public:
  explicit ProofGen(std::uint64_t seed) : rng_(seed) {}

  Formula formula(int depth) {
    static const char* atoms[] = {"n", "np", "s", "gp"};
    if (depth <= 0 || pick(3) == 0) return Formula::atom(atoms[pick(4)]);
    switch (pick(6)) {
      case 0: return Formula::tensor(formula(depth - 1), formula(depth - 1));
      case 1: return Formula::over(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::under(formula(depth - 1), formula(depth - 1));
      case 3: return Formula::dia(pick(2) ? Mode::X : Mode::I, formula(depth - 1));
      case 4: return Formula::box(pick(2) ? Mode::X : Mode::I, formula(depth - 1));
      default: return Formula::tensor(formula(depth - 1), Formula::dia(Mode::X, formula(depth - 1)));
    }
  }

  // Random proof with the given source.
  ProofTerm from(const Formula& x, int budget) {
    if (budget <= 0) return ProofTerm::id(x);
    std::vector<ProofTerm> c;
    auto small = [&] { return formula(1); };
    c.push_back(ProofTerm::coev_over(small(), x));
    c.push_back(ProofTerm::coev_under(small(), x));
    c.push_back(ProofTerm::coev_box(pick(2) ? Mode::X : Mode::I, x));
    switch (x.kind()) {
      case Formula::Kind::Tensor: {
        const Formula &p = x.left(), &q = x.right();
        c.push_back(ProofTerm::mon_tensor(from(p, budget / 2), from(q, budget / 2)));
        if (p.is(Formula::Kind::Over) && p.arg() == q) c.push_back(ProofTerm::ev_over(q, p.result()));
        if (q.is(Formula::Kind::Under) && q.arg() == p) c.push_back(ProofTerm::ev_under(p, q.result()));
        if (p.is(Formula::Kind::Tensor) && q.is(Formula::Kind::Dia) && q.mode() == Mode::X) {
          c.push_back(ProofTerm::alpha(p.left(), p.right(), q.body()));
          c.push_back(ProofTerm::sigma(p.left(), p.right(), q.body()));
        }
        break;
      }
      case Formula::Kind::Over: {
        ProofTerm g = ProofTerm::id(x.arg());
        const Formula& d = x.arg();
        if (d.is(Formula::Kind::Over) && d.result().is(Formula::Kind::Tensor) && d.result().right() == d.arg())
          g = ProofTerm::coev_over(d.arg(), d.result().left());
        c.push_back(ProofTerm::mon_over(from(x.result(), budget - 1), g));
        break;
      }
      case Formula::Kind::Under: {
        ProofTerm f = ProofTerm::id(x.arg());
        const Formula& b = x.arg();
        // f must end at the argument
        if (b.is(Formula::Kind::Box) && b.body().is(Formula::Kind::Dia) && b.mode() == b.body().mode())
          f = ProofTerm::coev_box(b.mode(), b.body().body());
        c.push_back(ProofTerm::mon_under(f, from(x.result(), budget - 1)));
        break;
      }
      case Formula::Kind::Dia:
        c.push_back(ProofTerm::mon_dia(x.mode(), from(x.body(), budget - 1)));
        if (x.body().is(Formula::Kind::Box) && x.body().mode() == x.mode())
          c.push_back(ProofTerm::ev_box(x.mode(), x.body().body()));
        break;
      case Formula::Kind::Box: c.push_back(ProofTerm::mon_box(x.mode(), from(x.body(), budget - 1))); break;
      case Formula::Kind::Atom: break;
    }
    ProofTerm step = c[pick(static_cast<int>(c.size()))];
    if (pick(3) == 0) return ProofTerm::compose(from(step.target(), budget - 2), step);
    return step;
  }

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace lgram::testing
