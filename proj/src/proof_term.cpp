#include "lgram/proof.hpp"

namespace lgram {

using K = Formula::Kind;
using Rule = ProofTerm::Rule;

std::string print_arrow(const Arrow& a) {
  return print_formula(a.lhs) + " -> " + print_formula(a.rhs);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Id: return "id";
    case Rule::Compose: return "compose";
    case Rule::MonTensor: return "mon_tensor";
    case Rule::MonOver: return "mon_over";
    case Rule::MonUnder: return "mon_under";
    case Rule::MonDia: return "mon_dia";
    case Rule::MonBox: return "mon_box";
    case Rule::EvUnder: return "ev_under";
    case Rule::CoevUnder: return "coev_under";
    case Rule::EvOver: return "ev_over";
    case Rule::CoevOver: return "coev_over";
    case Rule::EvBox: return "ev_box";
    case Rule::CoevBox: return "coev_box";
    case Rule::AlphaDia: return "alpha_dia";
    case Rule::SigmaDia: return "sigma_dia";
  }
  return "?";
}

bool rule_has_mode(Rule r) {
  switch (r) {
    case Rule::MonDia:
    case Rule::MonBox:
    case Rule::EvBox:
    case Rule::CoevBox:
    case Rule::AlphaDia:
    case Rule::SigmaDia:
      return true;
    default:
      return false;
  }
}

ProofTerm ProofTerm::make(Rule r, Mode m, std::vector<Formula> params,
                          std::vector<ProofTerm> kids, Formula src, Formula tgt) {
  auto n = std::make_shared<Node>();
  n->rule = r;
  n->mode = m;
  n->params = std::move(params);
  n->children = std::move(kids);
  n->source = std::move(src);
  n->target = std::move(tgt);
  return ProofTerm(std::move(n));
}

ProofTerm ProofTerm::id(Formula a) { return make(Rule::Id, Mode::X, {a}, {}, a, a); }

ProofTerm ProofTerm::compose(ProofTerm g, ProofTerm f) {
  if (f.target() != g.source())
    throw Error("compose: target of first arrow " + print_formula(f.target()) +
                " does not match source of second " + print_formula(g.source()));
  Formula src = f.source();
  Formula tgt = g.target();
  return make(Rule::Compose, Mode::X, {}, {std::move(g), std::move(f)}, src, tgt);
}

ProofTerm ProofTerm::mon_tensor(ProofTerm f, ProofTerm g) {
  Formula src = Formula::tensor(f.source(), g.source());
  Formula tgt = Formula::tensor(f.target(), g.target());
  return make(Rule::MonTensor, Mode::X, {}, {std::move(f), std::move(g)}, src, tgt);
}

ProofTerm ProofTerm::mon_over(ProofTerm f, ProofTerm g) {
  Formula src = Formula::over(f.source(), g.target());
  Formula tgt = Formula::over(f.target(), g.source());
  return make(Rule::MonOver, Mode::X, {}, {std::move(f), std::move(g)}, src, tgt);
}

ProofTerm ProofTerm::mon_under(ProofTerm f, ProofTerm g) {
  Formula src = Formula::under(f.target(), g.source());
  Formula tgt = Formula::under(f.source(), g.target());
  return make(Rule::MonUnder, Mode::X, {}, {std::move(f), std::move(g)}, src, tgt);
}

ProofTerm ProofTerm::mon_dia(Mode m, ProofTerm f) {
  Formula src = Formula::dia(m, f.source());
  Formula tgt = Formula::dia(m, f.target());
  return make(Rule::MonDia, m, {}, {std::move(f)}, src, tgt);
}

ProofTerm ProofTerm::mon_box(Mode m, ProofTerm f) {
  Formula src = Formula::box(m, f.source());
  Formula tgt = Formula::box(m, f.target());
  return make(Rule::MonBox, m, {}, {std::move(f)}, src, tgt);
}

ProofTerm ProofTerm::ev_under(Formula a, Formula b) {
  Formula src = Formula::tensor(a, Formula::under(a, b));
  return make(Rule::EvUnder, Mode::X, {a, b}, {}, src, b);
}

ProofTerm ProofTerm::coev_under(Formula a, Formula b) {
  Formula tgt = Formula::under(a, Formula::tensor(a, b));
  return make(Rule::CoevUnder, Mode::X, {a, b}, {}, b, tgt);
}

ProofTerm ProofTerm::ev_over(Formula a, Formula b) {
  Formula src = Formula::tensor(Formula::over(b, a), a);
  return make(Rule::EvOver, Mode::X, {a, b}, {}, src, b);
}

ProofTerm ProofTerm::coev_over(Formula a, Formula b) {
  Formula tgt = Formula::over(Formula::tensor(b, a), a);
  return make(Rule::CoevOver, Mode::X, {a, b}, {}, b, tgt);
}

ProofTerm ProofTerm::ev_box(Mode m, Formula a) {
  Formula src = Formula::dia(m, Formula::box(m, a));
  return make(Rule::EvBox, m, {a}, {}, src, a);
}

ProofTerm ProofTerm::coev_box(Mode m, Formula a) {
  Formula tgt = Formula::box(m, Formula::dia(m, a));
  return make(Rule::CoevBox, m, {a}, {}, a, tgt);
}

ProofTerm ProofTerm::alpha(Formula a, Formula b, Formula c) {
  Formula dc = Formula::dia(Mode::X, c);
  Formula src = Formula::tensor(Formula::tensor(a, b), dc);
  Formula tgt = Formula::tensor(a, Formula::tensor(b, dc));
  return make(Rule::AlphaDia, Mode::X, {a, b, c}, {}, src, tgt);
}

ProofTerm ProofTerm::sigma(Formula a, Formula b, Formula c) {
  Formula dc = Formula::dia(Mode::X, c);
  Formula src = Formula::tensor(Formula::tensor(a, b), dc);
  Formula tgt = Formula::tensor(Formula::tensor(a, dc), b);
  return make(Rule::SigmaDia, Mode::X, {a, b, c}, {}, src, tgt);
}

std::size_t ProofTerm::size() const {
  std::size_t n = rule() == Rule::Id ? 0 : 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

namespace {

ProofTerm rebuild(const ProofTerm& p) {
  const auto& ps = p.params();
  auto need = [&](std::size_t n) {
    if (ps.size() != n)
      throw Error(std::string("validate: ") + rule_name(p.rule()) + " expects " +
                  std::to_string(n) + " parameters");
  };
  std::vector<ProofTerm> kids;
  for (const auto& c : p.children()) kids.push_back(rebuild(c));
  auto need_kids = [&](std::size_t n) {
    if (kids.size() != n)
      throw Error(std::string("validate: ") + rule_name(p.rule()) + " expects " +
                  std::to_string(n) + " subproofs");
  };
  switch (p.rule()) {
    case Rule::Id: need(1); return ProofTerm::id(ps[0]);
    case Rule::Compose: need_kids(2); return ProofTerm::compose(kids[0], kids[1]);
    case Rule::MonTensor: need_kids(2); return ProofTerm::mon_tensor(kids[0], kids[1]);
    case Rule::MonOver: need_kids(2); return ProofTerm::mon_over(kids[0], kids[1]);
    case Rule::MonUnder: need_kids(2); return ProofTerm::mon_under(kids[0], kids[1]);
    case Rule::MonDia: need_kids(1); return ProofTerm::mon_dia(p.mode(), kids[0]);
    case Rule::MonBox: need_kids(1); return ProofTerm::mon_box(p.mode(), kids[0]);
    case Rule::EvUnder: need(2); return ProofTerm::ev_under(ps[0], ps[1]);
    case Rule::CoevUnder: need(2); return ProofTerm::coev_under(ps[0], ps[1]);
    case Rule::EvOver: need(2); return ProofTerm::ev_over(ps[0], ps[1]);
    case Rule::CoevOver: need(2); return ProofTerm::coev_over(ps[0], ps[1]);
    case Rule::EvBox: need(1); return ProofTerm::ev_box(p.mode(), ps[0]);
    case Rule::CoevBox: need(1); return ProofTerm::coev_box(p.mode(), ps[0]);
    case Rule::AlphaDia:
      need(3);
      if (p.mode() != Mode::X) throw Error("validate: alpha_dia is only available for mode x");
      return ProofTerm::alpha(ps[0], ps[1], ps[2]);
    case Rule::SigmaDia:
      need(3);
      if (p.mode() != Mode::X) throw Error("validate: sigma_dia is only available for mode x");
      return ProofTerm::sigma(ps[0], ps[1], ps[2]);
  }
  throw Error("validate: unknown rule");
}

}  // namespace

Arrow validate(const ProofTerm& p) {
  ProofTerm q = rebuild(p);
  if (q.source() != p.source() || q.target() != p.target())
    throw Error(std::string("validate: ") + rule_name(p.rule()) + " records " +
                print_arrow(p.arrow()) + " but derives " + print_arrow(q.arrow()));
  return q.arrow();
}

nlohmann::json proof_to_json(const ProofTerm& p) {
  nlohmann::json j;
  j["rule"] = rule_name(p.rule());
  if (rule_has_mode(p.rule())) j["mode"] = std::string(1, mode_letter(p.mode()));
  j["children"] = nlohmann::json::array();
  for (const auto& c : p.children()) j["children"].push_back(proof_to_json(c));
  j["source"] = print_formula(p.source());
  j["target"] = print_formula(p.target());
  return j;
}

namespace {

Rule rule_from_name(const std::string& s) {
  for (int r = 0; r <= static_cast<int>(Rule::SigmaDia); ++r)
    if (s == rule_name(static_cast<Rule>(r))) return static_cast<Rule>(r);
  throw Error("unknown proof rule '" + s + "'");
}

const Formula& expect(const Formula& f, K k, const char* what) {
  if (f.kind() != k) throw Error(std::string("proof json: malformed endpoint for ") + what);
  return f;
}

}  // namespace

ProofTerm proof_from_json(const nlohmann::json& j, const AtomTable& atoms) {
  Rule r = rule_from_name(j.at("rule").get<std::string>());
  Mode m = j.contains("mode") ? mode_from_letter(j.at("mode").get<std::string>().at(0)) : Mode::X;
  Formula src = parse_formula(j.at("source").get<std::string>(), atoms);
  Formula tgt = parse_formula(j.at("target").get<std::string>(), atoms);
  std::vector<ProofTerm> kids;
  for (const auto& c : j.at("children")) kids.push_back(proof_from_json(c, atoms));
  ProofTerm out = ProofTerm::id(src);
  const char* name = rule_name(r);
  switch (r) {
    case Rule::Id: out = ProofTerm::id(src); break;
    case Rule::Compose: out = ProofTerm::compose(kids.at(0), kids.at(1)); break;
    case Rule::MonTensor: out = ProofTerm::mon_tensor(kids.at(0), kids.at(1)); break;
    case Rule::MonOver: out = ProofTerm::mon_over(kids.at(0), kids.at(1)); break;
    case Rule::MonUnder: out = ProofTerm::mon_under(kids.at(0), kids.at(1)); break;
    case Rule::MonDia: out = ProofTerm::mon_dia(m, kids.at(0)); break;
    case Rule::MonBox: out = ProofTerm::mon_box(m, kids.at(0)); break;
    case Rule::EvUnder: out = ProofTerm::ev_under(expect(src, K::Tensor, name).left(), tgt); break;
    case Rule::CoevUnder: out = ProofTerm::coev_under(expect(tgt, K::Under, name).arg(), src); break;
    case Rule::EvOver: out = ProofTerm::ev_over(expect(src, K::Tensor, name).right(), tgt); break;
    case Rule::CoevOver: out = ProofTerm::coev_over(expect(tgt, K::Over, name).arg(), src); break;
    case Rule::EvBox: out = ProofTerm::ev_box(m, tgt); break;
    case Rule::CoevBox: out = ProofTerm::coev_box(m, src); break;
    case Rule::AlphaDia:
    case Rule::SigmaDia: {
      const Formula& l = expect(expect(src, K::Tensor, name).left(), K::Tensor, name);
      const Formula& c = expect(src.right(), K::Dia, name).body();
      out = r == Rule::AlphaDia ? ProofTerm::alpha(l.left(), l.right(), c)
                                : ProofTerm::sigma(l.left(), l.right(), c);
      break;
    }
  }
  if (out.source() != src || out.target() != tgt)
    throw Error(std::string("proof json: ") + name + " endpoints do not match its subproofs");
  return out;
}

}  // namespace lgram
