#include "lgram/prover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace lgram {

namespace {

using K = Formula::Kind;
using SK = Structure::Kind;

struct Found {
  ProofTerm term;
  int size;
};

struct Answer {
  std::vector<Found> proofs;
  bool budget_cut = false;  // more proofs may exist at a larger size bound
  bool cap_cut = false;     // the structural cap pruned something
};

struct MemoEntry {
  int explored = 0;
  Answer answer;
};

// Antecedent tensors and diamonds become structure.
Structure unfold(const Structure& s) {
  switch (s.kind()) {
    case SK::Leaf: {
      const Formula& f = s.formula();
      if (f.is(K::Tensor))
        return Structure::pair(unfold(Structure::leaf(f.left())), unfold(Structure::leaf(f.right())));
      if (f.is(K::Dia)) return Structure::bracket(f.mode(), unfold(Structure::leaf(f.body())));
      return s;
    }
    case SK::Pair:
      return Structure::pair(unfold(s.left()), unfold(s.right()));
    case SK::Bracket:
      return Structure::bracket(s.mode(), unfold(s.body()));
  }
  return s;
}

const Structure& at(const Structure& s, const Path& p, std::size_t i = 0) {
  if (i == p.size()) return s;
  switch (p[i]) {
    case Step::L: return at(s.left(), p, i + 1);
    case Step::R: return at(s.right(), p, i + 1);
    case Step::Body: return at(s.body(), p, i + 1);
  }
  return s;
}

Structure replace(const Structure& s, const Path& p, const Structure& rep, std::size_t i = 0) {
  if (i == p.size()) return rep;
  switch (p[i]) {
    case Step::L: return Structure::pair(replace(s.left(), p, rep, i + 1), s.right());
    case Step::R: return Structure::pair(s.left(), replace(s.right(), p, rep, i + 1));
    case Step::Body: return Structure::bracket(s.mode(), replace(s.body(), p, rep, i + 1));
  }
  return s;
}

// Extends t : X -> Y to Gamma[X] -> Gamma[Y] where X sits at p.
ProofTerm lift(const Structure& s, const Path& p, const ProofTerm& t, std::size_t i = 0) {
  if (i == p.size()) return t;
  switch (p[i]) {
    case Step::L:
      return ProofTerm::mon_tensor(lift(s.left(), p, t, i + 1), ProofTerm::id(s.right().formula_of()));
    case Step::R:
      return ProofTerm::mon_tensor(ProofTerm::id(s.left().formula_of()), lift(s.right(), p, t, i + 1));
    case Step::Body:
      return ProofTerm::mon_dia(s.mode(), lift(s.body(), p, t, i + 1));
  }
  return t;
}

void positions(const Structure& s, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  switch (s.kind()) {
    case SK::Leaf: return;
    case SK::Pair:
      cur.push_back(Step::L);
      positions(s.left(), cur, out);
      cur.back() = Step::R;
      positions(s.right(), cur, out);
      cur.pop_back();
      return;
    case SK::Bracket:
      cur.push_back(Step::Body);
      positions(s.body(), cur, out);
      cur.pop_back();
      return;
  }
}

int x_brackets(const Structure& s) {
  switch (s.kind()) {
    case SK::Leaf: return 0;
    case SK::Pair: return x_brackets(s.left()) + x_brackets(s.right());
    case SK::Bracket: return (s.mode() == Mode::X ? 1 : 0) + x_brackets(s.body());
  }
  return 0;
}

void count_structure(const Structure& s, std::map<std::string, int>& acc) {
  switch (s.kind()) {
    case SK::Leaf:
      for (const auto& [a, n] : atom_counts(s.formula(), Polarity::Positive)) acc[a] += n;
      return;
    case SK::Pair:
      count_structure(s.left(), acc);
      count_structure(s.right(), acc);
      return;
    case SK::Bracket:
      count_structure(s.body(), acc);
      return;
  }
}

bool counts_balance(const Structure& ant, const Formula& succ) {
  std::map<std::string, int> acc;
  count_structure(ant, acc);
  for (const auto& [a, n] : atom_counts(succ, Polarity::Positive)) acc[a] -= n;
  for (const auto& [a, n] : acc)
    if (n != 0) return false;
  return true;
}

bool is_pattern(const Structure& s) {
  return s.kind() == SK::Pair && s.left().kind() == SK::Pair && s.right().kind() == SK::Bracket &&
         s.right().mode() == Mode::X;
}

class Search {
 public:
  Search(const SearchConfig& cfg, int per_dia, ProveResult& stats)
      : cfg_(cfg), per_dia_(per_dia), stats_(stats) {}

  Answer solve(const Structure& ant0, const Formula& succ, int streak, int budget, std::size_t level) {
    Structure ant = unfold(ant0);
    switch (succ.kind()) {
      case K::Over: {
        Formula b = succ.arg();
        Formula gf = ant.formula_of();
        return invertible(Structure::pair(ant, Structure::leaf(b)), succ.result(), budget, level,
                          [&](const ProofTerm& t) {
                            return ProofTerm::compose(ProofTerm::mon_over(t, ProofTerm::id(b)),
                                                      ProofTerm::coev_over(b, gf));
                          });
      }
      case K::Under: {
        Formula b = succ.arg();
        Formula gf = ant.formula_of();
        return invertible(Structure::pair(Structure::leaf(b), ant), succ.result(), budget, level,
                          [&](const ProofTerm& t) {
                            return ProofTerm::compose(ProofTerm::mon_under(ProofTerm::id(b), t),
                                                      ProofTerm::coev_under(b, gf));
                          });
      }
      case K::Box: {
        Mode m = succ.mode();
        Formula gf = ant.formula_of();
        return invertible(Structure::bracket(m, ant), succ.body(), budget, level,
                          [&](const ProofTerm& t) {
                            return ProofTerm::compose(ProofTerm::mon_box(m, t), ProofTerm::coev_box(m, gf));
                          });
      }
      default:
        return focused(ant, succ, streak, budget, level);
    }
  }

 private:
  Answer invertible(const Structure& premise, const Formula& succ, int budget, std::size_t level,
                    const std::function<ProofTerm(const ProofTerm&)>& wrap) {
    Answer out;
    if (budget < 1) {
      out.budget_cut = true;
      return out;
    }
    Answer sub = solve(premise, succ, 0, budget - 1, level + 1);
    out.budget_cut = sub.budget_cut;
    out.cap_cut = sub.cap_cut;
    for (const auto& f : sub.proofs) out.proofs.push_back({wrap(f.term), f.size + 1});
    return out;
  }

  int intern(const Formula& f) {
    auto [it, fresh] = ids_.emplace(f, static_cast<int>(ids_.size()));
    (void)fresh;
    return it->second;
  }

  void key_into(const Structure& s, std::string& k) {
    switch (s.kind()) {
      case SK::Leaf:
        k += '#';
        k += std::to_string(intern(s.formula()));
        return;
      case SK::Pair:
        k += '(';
        key_into(s.left(), k);
        k += ',';
        key_into(s.right(), k);
        k += ')';
        return;
      case SK::Bracket:
        k += '<';
        key_into(s.body(), k);
        k += '>';
        k += mode_letter(s.mode());
        return;
    }
  }

  static Answer restrict(const Answer& a, int budget) {
    Answer out;
    out.cap_cut = a.cap_cut;
    out.budget_cut = a.budget_cut;
    for (const auto& f : a.proofs) {
      if (f.size <= budget)
        out.proofs.push_back(f);
      else
        out.budget_cut = true;
    }
    return out;
  }

  Answer focused(const Structure& ant, const Formula& succ, int streak, int budget, std::size_t level) {
    std::string key;
    if (cfg_.memoize) {
      key_into(ant, key);
      key += "|#" + std::to_string(intern(succ)) + "|" + std::to_string(streak);
      auto it = memo_.find(key);
      if (it != memo_.end() && (it->second.explored >= budget || !it->second.answer.budget_cut))
        return restrict(it->second.answer, budget);
    }
    ++stats_.goals_explored;
    Answer out;
    if (!cfg_.count_pruning || counts_balance(ant, succ)) out = expand(ant, succ, streak, budget, level);
    if (out.proofs.empty() && level >= stats_.deepest_level) {
      stats_.deepest_level = level;
      stats_.deepest_failure = print_structure(ant) + " |- " + print_formula(succ);
    }
    if (cfg_.memoize) memo_[key] = MemoEntry{budget, out};
    return out;
  }

  // Non-invertible phase, in fixed rule order.
  Answer expand(const Structure& ant, const Formula& succ, int streak, int budget, std::size_t level) {
    Answer out;
    int limit = budget;
    auto merge = [&](const Answer& a) {
      out.budget_cut = out.budget_cut || a.budget_cut;
      out.cap_cut = out.cap_cut || a.cap_cut;
    };
    auto add = [&](ProofTerm t, int size) {
      out.proofs.push_back({std::move(t), size});
      // Single-proof mode only needs strictly smaller proofs from here on.
      if (!cfg_.find_all) limit = std::min(limit, size - 1);
    };
    auto unary = [&](const Structure& pa, const Formula& pc, int st,
                     const std::function<ProofTerm(const ProofTerm&)>& wrap) {
      if (limit < 1) {
        out.budget_cut = true;
        return;
      }
      Answer sub = solve(pa, pc, st, limit - 1, level + 1);
      merge(sub);
      for (const auto& f : sub.proofs) add(wrap(f.term), f.size + 1);
    };
    auto binary = [&](const Structure& a1, const Formula& c1, const Structure& a2, const Formula& c2,
                      const std::function<ProofTerm(const ProofTerm&, const ProofTerm&)>& wrap) {
      if (limit < 1) {
        out.budget_cut = true;
        return;
      }
      Answer x = solve(a1, c1, 0, limit - 1, level + 1);
      merge(x);
      if (x.proofs.empty()) return;
      int min_x = x.proofs.front().size;
      for (const auto& f : x.proofs) min_x = std::min(min_x, f.size);
      Answer y = solve(a2, c2, 0, limit - 1 - min_x, level + 1);
      merge(y);
      int cap = limit;
      for (const auto& fx : x.proofs)
        for (const auto& fy : y.proofs)
          if (fx.size + fy.size + 1 <= cap) add(wrap(fx.term, fy.term), fx.size + fy.size + 1);
    };

    // axiom
    if (ant.is_leaf() && succ.is_atom() && ant.formula() == succ) add(ProofTerm::id(succ), 0);

    // monotonicity
    if (succ.is(K::Tensor) && ant.kind() == SK::Pair) {
      binary(ant.left(), succ.left(), ant.right(), succ.right(),
             [](const ProofTerm& f, const ProofTerm& g) { return ProofTerm::mon_tensor(f, g); });
    }
    if (succ.is(K::Dia) && ant.kind() == SK::Bracket && ant.mode() == succ.mode()) {
      Mode m = succ.mode();
      unary(ant.body(), succ.body(), 0, [m](const ProofTerm& f) { return ProofTerm::mon_dia(m, f); });
    }
    std::vector<Path> pos;
    Path cur;
    positions(ant, cur, pos);
    for (const Path& p : pos) {
      const Structure& s = at(ant, p);
      if (s.kind() != SK::Pair) continue;
      if (s.left().is_leaf() && s.left().formula().is(K::Over)) {
        Formula fn = s.left().formula();
        Formula a = fn.result(), b = fn.arg();
        Structure rest = replace(ant, p, Structure::leaf(a));
        binary(s.right(), b, rest, succ, [&](const ProofTerm& g, const ProofTerm& f) {
          ProofTerm step = ProofTerm::compose(ProofTerm::ev_over(b, a),
                                              ProofTerm::mon_tensor(ProofTerm::id(fn), g));
          return ProofTerm::compose(f, lift(ant, p, step));
        });
      }
      if (s.right().is_leaf() && s.right().formula().is(K::Under)) {
        Formula fn = s.right().formula();
        Formula a = fn.result(), b = fn.arg();
        Structure rest = replace(ant, p, Structure::leaf(a));
        binary(s.left(), b, rest, succ, [&](const ProofTerm& g, const ProofTerm& f) {
          ProofTerm step = ProofTerm::compose(ProofTerm::ev_under(b, a),
                                              ProofTerm::mon_tensor(g, ProofTerm::id(fn)));
          return ProofTerm::compose(f, lift(ant, p, step));
        });
      }
    }

    // box elimination under a matching bracket
    for (const Path& p : pos) {
      const Structure& s = at(ant, p);
      if (s.kind() != SK::Bracket || !s.body().is_leaf()) continue;
      const Formula& bx = s.body().formula();
      if (!bx.is(K::Box) || bx.mode() != s.mode()) continue;
      Mode m = s.mode();
      Formula a = bx.body();
      unary(replace(ant, p, Structure::leaf(a)), succ, 0, [&](const ProofTerm& f) {
        return ProofTerm::compose(f, lift(ant, p, ProofTerm::ev_box(m, a)));
      });
    }

    // structural postulates, mode x only
    int cap = per_dia_ * std::max(1, x_brackets(ant));
    for (int rule = 0; rule < 2; ++rule) {
      for (const Path& p : pos) {
        const Structure& s = at(ant, p);
        if (!is_pattern(s)) continue;
        if (streak >= cap) {
          out.cap_cut = true;
          continue;
        }
        const Structure& d1 = s.left().left();
        const Structure& d2 = s.left().right();
        const Structure& d3 = s.right();
        Structure moved = rule == 0 ? Structure::pair(d1, Structure::pair(d2, d3))
                                    : Structure::pair(Structure::pair(d1, d3), d2);
        Formula f1 = d1.formula_of(), f2 = d2.formula_of(), f3 = d3.body().formula_of();
        unary(replace(ant, p, moved), succ, streak + 1, [&](const ProofTerm& f) {
          ProofTerm st = rule == 0 ? ProofTerm::alpha(f1, f2, f3) : ProofTerm::sigma(f1, f2, f3);
          return ProofTerm::compose(f, lift(ant, p, st));
        });
      }
    }

    finish(out);
    return out;
  }

  void finish(Answer& out) {
    auto& ps = out.proofs;
    std::stable_sort(ps.begin(), ps.end(), [](const Found& a, const Found& b) { return a.size < b.size; });
    if (!cfg_.find_all) {
      if (ps.size() > 1) ps.erase(ps.begin() + 1, ps.end());
      if (!ps.empty()) out.budget_cut = false;
      return;
    }
    std::unordered_set<std::string> seen;
    std::vector<Found> kept;
    for (auto& f : ps) {
      if (!seen.insert(proof_to_json(f.term).dump()).second) continue;
      if (kept.size() == cfg_.max_proofs) {
        out.budget_cut = true;
        break;
      }
      kept.push_back(std::move(f));
    }
    ps = std::move(kept);
  }

  const SearchConfig& cfg_;
  int per_dia_;
  ProveResult& stats_;
  std::unordered_map<Formula, int, FormulaHash> ids_;
  std::unordered_map<std::string, MemoEntry> memo_;
};

}  // namespace

ProveResult prove(const Structure& antecedent, const Formula& succedent, const SearchConfig& cfg) {
  if (cfg.max_proof_size < 1) throw Error("max_proof_size must be at least 1");
  if (antecedent.empty() || succedent.empty()) throw Error("malformed goal");
  ProveResult res;
  int per_dia = cfg.max_structural_per_dia > 0
                    ? cfg.max_structural_per_dia
                    : 2 * static_cast<int>(unfold(antecedent).depth());
  Search search(cfg, per_dia, res);
  Formula source = antecedent.formula_of();
  Answer ans;
  if (cfg.find_all) {
    ans = search.solve(antecedent, succedent, 0, cfg.max_proof_size, 0);
  } else {
    for (int b = 0; b <= cfg.max_proof_size; ++b) {
      ans = search.solve(antecedent, succedent, 0, b, 0);
      if (!ans.proofs.empty() || !ans.budget_cut) break;
    }
  }
  res.bounded = ans.budget_cut || ans.cap_cut;
  for (auto& f : ans.proofs) {
    if (f.term.source() != source || f.term.target() != succedent)
      throw Error("internal: proof endpoints disagree with the goal");
    res.proofs.push_back(f.term);
  }
  if (!res.proofs.empty()) {
    res.deepest_failure.clear();
    res.deepest_level = 0;
  }
  return res;
}

ProveResult prove(const Arrow& goal, const SearchConfig& cfg) {
  if (goal.lhs.empty() || goal.rhs.empty()) throw Error("malformed goal");
  return prove(Structure::leaf(goal.lhs), goal.rhs, cfg);
}

}  // namespace lgram
