#include <cctype>

#include "lgram/lexicon.hpp"

namespace lgram {

namespace {

using K = Formula::Kind;

const Formula& at(const Formula& t, const Path& pos) {
  try {
    return subformula(t, pos);
  } catch (const Error& e) {
    throw Error("no subformula at " + to_string(pos) + " of " + print_formula(t));
  }
}

[[noreturn]] void shape(const std::string& step, const std::string& want, const Formula& got, const Path& pos) {
  throw Error(step + ": expected " + want + " at " + to_string(pos) + ", found " + print_formula(got));
}

void require_antitone(const std::string& step, const Formula& t, const Path& pos) {
  if (polarity_at(t, pos) != Polarity::Negative)
    throw Error(step + ": position " + to_string(pos) + " of " + print_formula(t) + " is not antitone");
}

const char* kind_name(TypeStep::Kind k) {
  switch (k) {
    case TypeStep::Kind::GeachExpand: return "geach";
    case TypeStep::Kind::ProductExpand: return "pexpand";
    case TypeStep::Kind::SDistribute: return "sdist";
    case TypeStep::Kind::ProdDistribute: return "pdist";
    case TypeStep::Kind::Calibrate: return "calibrate";
  }
  return "?";
}

bool provable(const Arrow& a, const SearchConfig& cfg) { return !prove(a, cfg).proofs.empty(); }

}  // namespace

std::string print_step(const TypeStep& s) {
  std::string out = std::string(kind_name(s.kind)) + "@" + to_string(s.position);
  switch (s.kind) {
    case TypeStep::Kind::GeachExpand:
    case TypeStep::Kind::ProductExpand: out += "{" + print_formula(s.param) + "}"; break;
    case TypeStep::Kind::Calibrate:
      out += s.edit == TypeStep::Edit::DropModal ? "{drop}" : std::string("{add:") + mode_letter(s.mode) + "}";
      break;
    default: break;
  }
  return out;
}

TypeStep parse_step(std::string_view text, const AtomTable& atoms) {
  std::string t(text);
  auto bad = [&](const std::string& why) -> Error { return Error("bad step '" + t + "': " + why); };
  auto atsign = t.find('@');
  if (atsign == std::string::npos) throw bad("missing '@position'");
  std::string name = t.substr(0, atsign);
  std::string rest = t.substr(atsign + 1), arg;
  bool has_arg = false;
  auto brace = rest.find('{');
  if (brace != std::string::npos) {
    if (rest.back() != '}') throw bad("unclosed '{'");
    arg = rest.substr(brace + 1, rest.size() - brace - 2);
    rest = rest.substr(0, brace);
    has_arg = true;
  }
  TypeStep s;
  bool found = false;
  for (auto k : {TypeStep::Kind::GeachExpand, TypeStep::Kind::ProductExpand, TypeStep::Kind::SDistribute,
                 TypeStep::Kind::ProdDistribute, TypeStep::Kind::Calibrate})
    if (name == kind_name(k)) s.kind = k, found = true;
  if (!found) throw bad("unknown step kind '" + name + "'");
  try {
    s.position = parse_path(rest);
  } catch (const Error& e) {
    throw bad(e.what());
  }
  switch (s.kind) {
    case TypeStep::Kind::GeachExpand:
    case TypeStep::Kind::ProductExpand:
      if (!has_arg) throw bad("needs a formula argument in braces");
      try {
        s.param = parse_formula(arg, atoms);
      } catch (const Error& e) {
        throw bad(e.what());
      }
      break;
    case TypeStep::Kind::Calibrate:
      if (arg == "drop") {
        s.edit = TypeStep::Edit::DropModal;
      } else if (arg.size() == 5 && arg.rfind("add:", 0) == 0) {
        s.edit = TypeStep::Edit::AddModal;
        try {
          s.mode = mode_from_letter(arg[4]);
        } catch (const Error& e) {
          throw bad(e.what());
        }
      } else {
        throw bad("calibrate takes {drop} or {add:x|i}");
      }
      break;
    default:
      if (has_arg) throw bad("takes no argument");
  }
  return s;
}

std::vector<TypeStep> parse_steps(std::string_view text, const AtomTable& atoms) {
  std::vector<TypeStep> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(parse_step(cur, atoms));
    cur.clear();
  };
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

Formula geach_expand(const Formula& t, const Path& pos, const Formula& c) {
  const Formula& s = at(t, pos);
  if (!s.is(K::Over)) shape("geach", "A/B", s, pos);
  return replace_at(t, pos, Formula::over(Formula::over(s.result(), c), Formula::over(s.arg(), c)));
}

Formula s_distribute(const Formula& t, const Path& pos) {
  const Formula& s = at(t, pos);
  if (!s.is(K::Over)) shape("sdist", "(A\\B)/C", s, pos);
  const Formula& c = s.arg();
  std::vector<Mode> boxes;
  Formula x = s.result();
  while (x.is(K::Box)) {
    boxes.push_back(x.mode());
    x = x.body();
  }
  if (!x.is(K::Under)) shape("sdist", "(A\\B)/C", s, pos);
  Formula r = Formula::under(Formula::over(x.arg(), c), Formula::over(x.result(), c));
  for (auto it = boxes.rbegin(); it != boxes.rend(); ++it) r = Formula::box(*it, r);
  return replace_at(t, pos, r);
}

Formula product_expand(const Formula& t, const Path& pos, const Formula& replacement, const SearchConfig& cfg) {
  const Formula& s = at(t, pos);
  require_antitone("pexpand", t, pos);
  Arrow witness{replacement, s};
  if (!provable(witness, cfg))
    throw Error("pexpand: witness " + print_arrow(witness) + " is not derivable");
  return replace_at(t, pos, replacement);
}

Formula prod_distribute(const Formula& t, const Path& pos, const SearchConfig& cfg) {
  const Formula& s = at(t, pos);
  require_antitone("pdist", t, pos);
  if (!s.is(K::Over) || !s.result().is(K::Tensor)) shape("pdist", "(A*B)/C", s, pos);
  const Formula& a = s.result().left();
  const Formula& b = s.result().right();
  const Formula& c = s.arg();
  Formula ac = Formula::over(a, c), bc = Formula::over(b, c);
  Arrow premise{Formula::tensor(Formula::tensor(ac, c), Formula::tensor(bc, c)), Formula::tensor(a, b)};
  if (!provable(premise, cfg)) throw Error("pdist: premise " + print_arrow(premise) + " is not derivable");
  return replace_at(t, pos, Formula::tensor(ac, bc));
}

Formula calibrate(const Formula& t, const Path& pos, TypeStep::Edit edit, Mode mode) {
  const Formula& s = at(t, pos);
  if (edit == TypeStep::Edit::AddModal) return replace_at(t, pos, Formula::dia(mode, Formula::box(mode, s)));
  if (!s.is(K::Dia) || !s.body().is(K::Box) || s.body().mode() != s.mode())
    throw Error("calibrate: no modal marking to drop at " + to_string(pos) + " (found " + print_formula(s) + ")");
  return replace_at(t, pos, s.body().body());
}

Formula apply_step(const Formula& t, const TypeStep& s, const SearchConfig& cfg) {
  switch (s.kind) {
    case TypeStep::Kind::GeachExpand: return geach_expand(t, s.position, s.param);
    case TypeStep::Kind::ProductExpand: return product_expand(t, s.position, s.param, cfg);
    case TypeStep::Kind::SDistribute: return s_distribute(t, s.position);
    case TypeStep::Kind::ProdDistribute: return prod_distribute(t, s.position, cfg);
    case TypeStep::Kind::Calibrate: return calibrate(t, s.position, s.edit, s.mode);
  }
  throw Error("unknown step");
}

std::vector<Formula> replay(const Formula& base, const std::vector<TypeStep>& steps, const SearchConfig& cfg) {
  std::vector<Formula> rows{base};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      rows.push_back(apply_step(rows.back(), steps[i], cfg));
    } catch (const Error& e) {
      throw Error("step " + std::to_string(i + 1) + " (" + print_step(steps[i]) + "): " + e.what());
    }
  }
  return rows;
}

bool is_ctype(const Formula& f) {
  switch (f.kind()) {
    case K::Atom: return f.name() == "s";
    case K::Dia:
    case K::Box: return is_ctype(f.body());
    case K::Over:
    case K::Under: return is_ctype(f.result());
    case K::Tensor: return false;
  }
  return false;
}

Formula instantiate_schema(const Formula& schema, const std::map<std::string, Formula>& binding) {
  switch (schema.kind()) {
    case K::Atom: {
      auto it = binding.find(schema.name());
      return it == binding.end() ? schema : it->second;
    }
    case K::Dia: return Formula::dia(schema.mode(), instantiate_schema(schema.body(), binding));
    case K::Box: return Formula::box(schema.mode(), instantiate_schema(schema.body(), binding));
    case K::Tensor:
      return Formula::tensor(instantiate_schema(schema.left(), binding), instantiate_schema(schema.right(), binding));
    case K::Over:
      return Formula::over(instantiate_schema(schema.left(), binding), instantiate_schema(schema.right(), binding));
    case K::Under:
      return Formula::under(instantiate_schema(schema.left(), binding), instantiate_schema(schema.right(), binding));
  }
  return schema;
}

}  // namespace lgram
